#pragma once

// Generic engine for finite-dimensional commutative algebras given by
// structure constants.  The Wolbachia population algebra W(w,d) is one
// instance (see model.hpp); the engine itself works for any dimension.

#include <cstdint>
#include <optional>
#include <vector>

#include "wolb/rng.hpp"

namespace wolb {

/// Basis convention for W(w,d): f1, f2 are uninfected/infected females,
/// m1, m2 uninfected/infected males.
inline constexpr int kF1 = 0;
inline constexpr int kF2 = 1;
inline constexpr int kM1 = 2;
inline constexpr int kM2 = 3;
inline constexpr int kDimW = 4;

/// Element of the algebra: coefficient vector over the ordered basis.
struct Element {
    std::vector<double> coeffs;

    Element() = default;
    explicit Element(std::vector<double> c) : coeffs(std::move(c)) {}

    static Element zero(int dim) { return Element(std::vector<double>(dim, 0.0)); }
    static Element basis(int dim, int i) {
        Element e = zero(dim);
        e.coeffs[i] = 1.0;
        return e;
    }

    int dim() const { return static_cast<int>(coeffs.size()); }
    double operator[](int i) const { return coeffs[i]; }
    double& operator[](int i) { return coeffs[i]; }
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(double s, const Element& a);

/// Max absolute coefficient.
double inf_norm(const Element& a);

/// Sum of all coefficients (signed).
double coeff_sum(const Element& a);

bool is_finite(const Element& a);

/// Cubic array c[i][j][k] defining basis products e_i e_j = sum_k c[i][j][k] e_k.
///
/// Tensors built through symmetrize() store (c[i][j][k]+c[j][i][k])/2, which
/// makes commutativity structural: multiply() then uses a pairing scheme that
/// returns bit-identical results for (a,b) and (b,a).  Raw (unsymmetrized)
/// tensors are supported for adversarial probes.
class StructureTensor {
public:
    explicit StructureTensor(int dim)
        : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

    int dim() const { return dim_; }

    double at(int i, int j, int k) const { return c_[idx(i, j, k)]; }
    void set(int i, int j, int k, double v) { c_[idx(i, j, k)] = v; }

    /// Average c[i][j][k] with c[j][i][k] and mark the storage symmetric.
    void symmetrize();

    bool symmetric_storage() const { return symmetric_; }

private:
    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
    }

    int dim_;
    std::vector<double> c_;
    bool symmetric_ = false;
};

/// Bilinear product through the tensor: sum_{i,j} a_i b_j c[i][j][k].
Element multiply(const Element& a, const Element& b, const StructureTensor& t);

/// Convenience wrapper: multiply(z, z, t).
Element square(const Element& z, const StructureTensor& t);

/// Exact entry-wise test c[i][j][k] == c[j][i][k].
bool check_commutative(const StructureTensor& t);

/// Outcome of a randomized identity probe.
struct PropertyReport {
    std::uint64_t seed = kDefaultSeed;
    int samples = 0;
    double tol = 0.0;
    double max_deviation = 0.0;
    bool pass = false;
};

/// ||(z t) z - z (t z)||_inf for one pair.
double flex_deviation(const Element& z, const Element& t_elem, const StructureTensor& t);

/// Evaluates the flexible law on `samples` seeded random pairs with
/// coefficients uniform in [-1,1]; passes iff the max deviation is <= tol.
PropertyReport probe_flexible(const StructureTensor& t, int samples, double tol,
                              std::uint64_t seed = kDefaultSeed);

struct AssociativityWitness {
    Element a, b, c;
    double deviation = 0.0;  // ||(ab)c - a(bc)||_inf
};

/// Searches basis triples, then seeded random triples, for a violation of
/// associativity larger than `threshold`.  Returns the first witness found.
std::optional<AssociativityWitness> associativity_counterexample(
    const StructureTensor& t, double threshold = 1e-9, int random_triples = 200,
    std::uint64_t seed = kDefaultSeed);

struct PowerAssociativityGap {
    double gap = 0.0;    // ||z2z2 - z2z_z||_inf
    Element z2z2;        // (zz)(zz)
    Element z2z_z;       // ((zz)z)z
};

PowerAssociativityGap power_associativity_gap(const StructureTensor& t, const Element& z);

}  // namespace wolb
