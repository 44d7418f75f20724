#include "wolb/algebra.hpp"

#include <cassert>
#include <cmath>

namespace wolb {

Element operator+(const Element& a, const Element& b) {
    assert(a.dim() == b.dim());
    Element r = a;
    for (int i = 0; i < r.dim(); ++i) r[i] += b[i];
    return r;
}

Element operator-(const Element& a, const Element& b) {
    assert(a.dim() == b.dim());
    Element r = a;
    for (int i = 0; i < r.dim(); ++i) r[i] -= b[i];
    return r;
}

Element operator*(double s, const Element& a) {
    Element r = a;
    for (int i = 0; i < r.dim(); ++i) r[i] *= s;
    return r;
}

double inf_norm(const Element& a) {
    double m = 0.0;
    for (double c : a.coeffs) m = std::max(m, std::fabs(c));
    return m;
}

double coeff_sum(const Element& a) {
    double s = 0.0;
    for (double c : a.coeffs) s += c;
    return s;
}

bool is_finite(const Element& a) {
    for (double c : a.coeffs)
        if (!std::isfinite(c)) return false;
    return true;
}

void StructureTensor::symmetrize() {
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                const double avg = 0.5 * (at(i, j, k) + at(j, i, k));
                set(i, j, k, avg);
                set(j, i, k, avg);
            }
    symmetric_ = true;
}

Element multiply(const Element& a, const Element& b, const StructureTensor& t) {
    assert(a.dim() == t.dim() && b.dim() == t.dim());
    const int n = t.dim();
    Element r = Element::zero(n);
    if (t.symmetric_storage()) {
        // Pairing (a_i b_j + a_j b_i) keeps the accumulation order identical
        // for multiply(a,b) and multiply(b,a), so commutativity holds
        // bit-for-bit, not just up to rounding.
        for (int i = 0; i < n; ++i) {
            const double aibi = a[i] * b[i];
            for (int k = 0; k < n; ++k) r[k] += aibi * t.at(i, i, k);
            for (int j = i + 1; j < n; ++j) {
                const double s = a[i] * b[j] + a[j] * b[i];
                for (int k = 0; k < n; ++k) r[k] += s * t.at(i, j, k);
            }
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double ab = a[i] * b[j];
                for (int k = 0; k < n; ++k) r[k] += ab * t.at(i, j, k);
            }
    }
    return r;
}

Element square(const Element& z, const StructureTensor& t) { return multiply(z, z, t); }

bool check_commutative(const StructureTensor& t) {
    const int n = t.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (t.at(i, j, k) != t.at(j, i, k)) return false;
    return true;
}

double flex_deviation(const Element& z, const Element& t_elem, const StructureTensor& t) {
    const Element zt = multiply(z, t_elem, t);
    const Element tz = multiply(t_elem, z, t);
    return inf_norm(multiply(zt, z, t) - multiply(z, tz, t));
}

PropertyReport probe_flexible(const StructureTensor& t, int samples, double tol,
                              std::uint64_t seed) {
    PropertyReport rep;
    rep.seed = seed;
    rep.samples = samples;
    rep.tol = tol;
    UniformRng rng(seed);
    const int n = t.dim();
    for (int s = 0; s < samples; ++s) {
        Element z = Element::zero(n), u = Element::zero(n);
        for (int i = 0; i < n; ++i) z[i] = rng.symmetric();
        for (int i = 0; i < n; ++i) u[i] = rng.symmetric();
        rep.max_deviation = std::max(rep.max_deviation, flex_deviation(z, u, t));
    }
    rep.pass = rep.max_deviation <= tol;
    return rep;
}

namespace {

double assoc_deviation(const Element& a, const Element& b, const Element& c,
                       const StructureTensor& t) {
    return inf_norm(multiply(multiply(a, b, t), c, t) - multiply(a, multiply(b, c, t), t));
}

}  // namespace

std::optional<AssociativityWitness> associativity_counterexample(const StructureTensor& t,
                                                                 double threshold,
                                                                 int random_triples,
                                                                 std::uint64_t seed) {
    const int n = t.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Element a = Element::basis(n, i);
                const Element b = Element::basis(n, j);
                const Element c = Element::basis(n, k);
                const double dev = assoc_deviation(a, b, c, t);
                if (dev > threshold) return AssociativityWitness{a, b, c, dev};
            }
    UniformRng rng(seed);
    for (int s = 0; s < random_triples; ++s) {
        Element a = Element::zero(n), b = Element::zero(n), c = Element::zero(n);
        for (int i = 0; i < n; ++i) a[i] = rng.symmetric();
        for (int i = 0; i < n; ++i) b[i] = rng.symmetric();
        for (int i = 0; i < n; ++i) c[i] = rng.symmetric();
        const double dev = assoc_deviation(a, b, c, t);
        if (dev > threshold) return AssociativityWitness{a, b, c, dev};
    }
    return std::nullopt;
}

PowerAssociativityGap power_associativity_gap(const StructureTensor& t, const Element& z) {
    const Element z2 = square(z, t);
    PowerAssociativityGap g;
    g.z2z2 = square(z2, t);
    g.z2z_z = multiply(multiply(z2, z, t), z, t);
    g.gap = inf_norm(g.z2z2 - g.z2z_z);
    return g;
}

}  // namespace wolb
