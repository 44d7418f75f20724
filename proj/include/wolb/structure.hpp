#pragma once

// Structure matrices M1, M2 of W(w,d), their commutator, and the
// simultaneous-diagonalizability test deciding whether W is an evolution
// algebra (it never is, for any admissible (w,d)).

#include <array>
#include <stdexcept>
#include <vector>

#include "wolb/algebra.hpp"
#include "wolb/model.hpp"

namespace wolb {

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Thrown when a numerical routine (eigen-decomposition) fails to converge.
/// Never swallowed: a solver failure must not read as a property verdict.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The k-th structure matrix has entry (a,b) = pi_k(e_a e_b) = P[s(a)][s(b)][k]/2
/// for opposite-sex pairs (s = type subscript of the basis element, first
/// factor's subscript first) and 0 for same-sex pairs.  M1 collects the
/// uninfected-offspring projections, M2 the infected ones; M2 is not
/// symmetric for d > 0.
struct StructureMatrixPair {
    Matrix4 m1;
    Matrix4 m2;
};

StructureMatrixPair build_structure_matrices(const WolbachiaParams& p);

Matrix4 matmul(const Matrix4& a, const Matrix4& b);

/// M1*M2 - M2*M1.
Matrix4 commutator(const StructureMatrixPair& pair);

/// Max absolute entry.
double max_abs(const Matrix4& m);

double trace(const Matrix4& m);

struct EvolutionAlgebraVerdict {
    double w = 0.0;
    double d = 0.0;
    double commutator_norm = 0.0;  // max abs entry of [M1, M2]
    bool m1_diagonalizable = false;
    bool m2_diagonalizable = false;
    bool is_evolution_algebra = false;
    std::vector<double> eig_m1;  // real parts, ascending
    std::vector<double> eig_m2;
    double eig_max_imag = 0.0;   // largest |imag| seen across both spectra
};

/// Engine-level verdict for an arbitrary matrix pair: diagonalizable iff for
/// every eigenvalue the geometric multiplicity (kernel dimension of A - yI)
/// matches the algebraic one; evolution-algebra iff both are diagonalizable
/// and the pair commutes within tol.
EvolutionAlgebraVerdict verdict_for_matrices(const Matrix4& m1, const Matrix4& m2, double tol);

/// Verdict for W(w,d).  False for every admissible parameter pair.
EvolutionAlgebraVerdict is_evolution_algebra(const WolbachiaParams& p, double tol = 1e-10);

/// Verification record for the sex differentiation subalgebra
/// U = span{f1, m1}: closed under the product, isomorphic to the
/// two-dimensional algebra with W^2 = M^2 = 0 and WM = (W+M)/2, not an
/// ideal (m1*f2 leaves U), and U^2 = span{f1+m1} with f1+m1 idempotent.
struct SubalgebraReport {
    bool u_closed = false;
    bool u_matches_sexdiff = false;
    bool u_is_ideal = true;
    Element not_ideal_witness;      // m1 * f2 computed through the tensor
    double witness_f2_coeff = 0.0;  // d/2 > 0, the component outside U
    bool u2_spanned_by_f1_plus_m1 = false;
    bool f1_plus_m1_idempotent = false;
    bool pass = false;
};

SubalgebraReport sexdiff_subalgebra_report(const WolbachiaParams& p);

}  // namespace wolb
