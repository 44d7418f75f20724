#pragma once

// Characters onto the reals (baric question) and homomorphisms onto the sex
// differentiation algebra U (dibaric question) for W(w,d).
//
// W is never baric: every basis element squares to zero, which forces any
// multiplicative linear form to vanish.  W is dibaric exactly at w = d = 1.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wolb/algebra.hpp"
#include "wolb/model.hpp"
#include "wolb/rng.hpp"

namespace wolb {

/// Candidate character: values on the four basis elements (f1, f2, m1, m2).
struct LinearForm {
    std::array<double, 4> values{0, 0, 0, 0};
};

/// Multiplicativity test for an arbitrary tensor: true iff
/// |sigma(e_a e_b) - sigma(e_a) sigma(e_b)| <= tol on all basis pairs,
/// with sigma extended linearly through the tensor.  The zero form counts
/// as multiplicative (it is excluded from baric-ness by the nonzero
/// requirement, not here).
bool is_character(const StructureTensor& t, std::span<const double> sigma, double tol);

bool is_character(const WolbachiaParams& p, const LinearForm& sigma, double tol);

/// Result of a Gauss-Newton root search on the multiplicativity system
/// sigma(e_a e_b) = sigma(e_a) sigma(e_b)  (n^2 equations, n unknowns).
struct CharacterSearchResult {
    std::uint64_t seed = kDefaultSeed;
    int seeds = 0;
    int zero_roots = 0;      // converged to the zero form
    int nonzero_roots = 0;   // converged to a nonzero character
    int non_converged = 0;
    double residual_tol = 1e-10;
    double nonzero_threshold = 1e-4;  // ||sigma||_inf above this counts as nonzero
    std::vector<std::vector<double>> nonzero_examples;
};

CharacterSearchResult character_search(const StructureTensor& t, int seeds,
                                       std::uint64_t seed = kDefaultSeed);

struct BaricReport {
    bool is_baric = false;
    /// Analytic forcing: e_a e_a = 0 through the tensor for every basis
    /// element, hence sigma(e_a)^2 = 0 and sigma = 0.
    bool squares_force_zero = false;
    CharacterSearchResult newton;
};

/// Always "not baric" for admissible (w,d); the Newton sweep is the numeric
/// confirmation of the analytic forcing chain.
BaricReport baric_verdict(const WolbachiaParams& p, int seeds = 100,
                          std::uint64_t seed = kDefaultSeed);

/// Element a*W + a'*M of the sex differentiation algebra U
/// (W^2 = M^2 = 0, WM = (W+M)/2).
struct SexDiffImage {
    double w_coeff = 0.0;
    double m_coeff = 0.0;
};

/// Product in U.
SexDiffImage u_mul(const SexDiffImage& a, const SexDiffImage& b);

/// Basis images of a linear map W(w,d) -> U.
struct SexDiffHom {
    SexDiffImage f1, f2, m1, m2;
};

/// phi extended linearly to an arbitrary element.
SexDiffImage apply_hom(const SexDiffHom& phi, const Element& z);

/// ||phi(z*t) - phi(z)phi(t)||_inf over the U components, for one pair.
double hom_deviation(const StructureTensor& t, const SexDiffHom& phi, const Element& z,
                     const Element& u);

/// Both onto homomorphisms when they exist (primary maps f1 to W, the mirror
/// swaps W and M), plus the per-family outcome of the case analysis.
struct DibaricSolution {
    std::optional<SexDiffHom> primary;
    std::optional<SexDiffHom> mirror;
    int families_checked = 0;
    int families_admitting = 0;  // families whose case chain reaches a solution
};

/// Exact case analysis over the 18 candidate shape families (each f-image
/// and m-image confined to one axis of U with some entries forced to zero).
/// Every family reduces to the same scalar chain, which admits an onto
/// solution iff w = 1 and d = 1; the homomorphism kills the infected pair:
/// phi(f2) = phi(m2) = 0.
DibaricSolution dibaric_solve_full(const WolbachiaParams& p);

/// The primary onto homomorphism, present iff w = 1 and d = 1.
std::optional<SexDiffHom> dibaric_solve(const WolbachiaParams& p);

/// Checks phi(z*t) = phi(z)*phi(t) on `samples` seeded random pairs and that
/// the images span U.  True iff the max deviation is <= tol and the map is
/// onto.
bool verify_hom(const WolbachiaParams& p, const SexDiffHom& phi, int samples, double tol,
                std::uint64_t seed = kDefaultSeed);

}  // namespace wolb
