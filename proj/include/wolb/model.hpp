#pragma once

// Construction of the Wolbachia population algebra W(w,d) from first
// principles: gamete emission -> Punnett zygote frequencies -> inheritance
// coefficients -> structure tensor.

#include <stdexcept>
#include <string>

#include "wolb/algebra.hpp"

namespace wolb {

/// Thrown when (w,d) leave the admissible domain (0,1]^2.
class ParamDomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Model parameters: w is the cytoplasmic-incompatibility (paternal
/// affection) rate, d the maternal transmission rate.  Both must lie in
/// (0,1]; w=0 and d=0 are rejected at construction.
struct WolbachiaParams {
    double w = 1.0;
    double d = 1.0;

    /// Validates the domain, throwing ParamDomainError otherwise.
    static WolbachiaParams checked(double w, double d);
};

/// Inheritance coefficients P[i][k][j]: probability that the offspring is of
/// type j when the mother is type i and the father type k (type 1 =
/// uninfected, type 2 = infected).  Female and male offspring share the same
/// coefficients, so a single copy is stored.
///
/// Index convention throughout: i = mother, k = father.
struct InheritanceTable {
    /// 1-based type arguments, matching the biological labels.
    double at(int mother, int father, int offspring) const {
        return p[((mother - 1) * 2 + (father - 1)) * 2 + (offspring - 1)];
    }
    double& at(int mother, int father, int offspring) {
        return p[((mother - 1) * 2 + (father - 1)) * 2 + (offspring - 1)];
    }

    /// Row sum over offspring types for a (mother, father) cross.  Equals 1
    /// for an uninfected father; 1-w and 1-w+dw for crosses with an infected
    /// father (mass lost to cytoplasmic incompatibility).
    double cross_mass(int mother, int father) const {
        return at(mother, father, 1) + at(mother, father, 2);
    }

    double p[8] = {0};
};

InheritanceTable build_inheritance_table(const WolbachiaParams& p);

/// The structure tensor of W(w,d): f_i f_j = m_k m_l = 0 and
/// f_i m_k = m_k f_i = (P[i][k][1] f1 + P[i][k][2] f2
///                      + P[i][k][1] m1 + P[i][k][2] m2) / 2.
/// Stored symmetrized; per-mating normalization (not whole-population).
StructureTensor build_algebra(const WolbachiaParams& p);

/// Independently re-derives the zygote frequencies from gamete emission
/// probabilities (infected female: X+ w.p. d; infected male: X+/Y+ w.p. w/2
/// each; uninfected egg with infected sperm dies), doubles them to
/// inheritance coefficients, and compares against build_inheritance_table
/// and build_algebra entry by entry.
bool punnett_cross_check(const WolbachiaParams& p, double tol = 1e-14);

}  // namespace wolb
