#include "wolb/characters.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace wolb {

bool is_character(const StructureTensor& t, std::span<const double> sigma, double tol) {
    const int n = t.dim();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            double lhs = 0.0;  // sigma applied to e_a e_b
            for (int k = 0; k < n; ++k) lhs += t.at(a, b, k) * sigma[k];
            if (std::fabs(lhs - sigma[a] * sigma[b]) > tol) return false;
        }
    }
    return true;
}

bool is_character(const WolbachiaParams& p, const LinearForm& sigma, double tol) {
    return is_character(build_algebra(p), std::span<const double>(sigma.values), tol);
}

namespace {

// Residual of the multiplicativity system, one entry per basis pair.
Eigen::VectorXd residual(const StructureTensor& t, const Eigen::VectorXd& sigma) {
    const int n = t.dim();
    Eigen::VectorXd f(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double lhs = 0.0;
            for (int k = 0; k < n; ++k) lhs += t.at(a, b, k) * sigma[k];
            f[a * n + b] = lhs - sigma[a] * sigma[b];
        }
    return f;
}

Eigen::MatrixXd jacobian(const StructureTensor& t, const Eigen::VectorXd& sigma) {
    const int n = t.dim();
    Eigen::MatrixXd j(n * n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int row = a * n + b;
            for (int k = 0; k < n; ++k) {
                double v = t.at(a, b, k);
                if (k == a) v -= sigma[b];
                if (k == b) v -= sigma[a];
                j(row, k) = v;
            }
        }
    return j;
}

}  // namespace

CharacterSearchResult character_search(const StructureTensor& t, int seeds, std::uint64_t seed) {
    CharacterSearchResult res;
    res.seed = seed;
    res.seeds = seeds;
    UniformRng rng(seed);
    const int n = t.dim();

    for (int s = 0; s < seeds; ++s) {
        Eigen::VectorXd sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = 2.0 * rng.symmetric();

        bool converged = false;
        for (int iter = 0; iter < 80; ++iter) {
            Eigen::VectorXd f = residual(t, sigma);
            if (f.lpNorm<Eigen::Infinity>() <= 1e-13) {
                converged = true;
                break;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(t, sigma),
                                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
            svd.setThreshold(1e-12);
            Eigen::VectorXd step = svd.solve(-f);
            // Backtracking keeps the Gauss-Newton step from overshooting.
            const double f0 = f.squaredNorm();
            double scale = 1.0;
            bool improved = false;
            for (int bt = 0; bt < 25; ++bt) {
                Eigen::VectorXd trial = sigma + scale * step;
                if (residual(t, trial).squaredNorm() < f0) {
                    sigma = trial;
                    improved = true;
                    break;
                }
                scale *= 0.5;
            }
            if (!improved || sigma.lpNorm<Eigen::Infinity>() > 1e3) break;
        }

        const double res_norm = residual(t, sigma).lpNorm<Eigen::Infinity>();
        if (converged || res_norm <= res.residual_tol) {
            if (sigma.lpNorm<Eigen::Infinity>() > res.nonzero_threshold) {
                ++res.nonzero_roots;
                res.nonzero_examples.push_back(
                    std::vector<double>(sigma.data(), sigma.data() + n));
            } else {
                ++res.zero_roots;
            }
        } else {
            ++res.non_converged;
        }
    }
    return res;
}

BaricReport baric_verdict(const WolbachiaParams& p, int seeds, std::uint64_t seed) {
    const StructureTensor t = build_algebra(p);
    BaricReport rep;
    rep.squares_force_zero = true;
    for (int a = 0; a < kDimW; ++a) {
        if (inf_norm(square(Element::basis(kDimW, a), t)) != 0.0) {
            rep.squares_force_zero = false;
        }
    }
    rep.newton = character_search(t, seeds, seed);
    rep.is_baric = !rep.squares_force_zero || rep.newton.nonzero_roots > 0;
    return rep;
}

SexDiffImage u_mul(const SexDiffImage& a, const SexDiffImage& b) {
    // (aW + a'M)(bW + b'M) = (ab' + a'b) WM = (ab' + a'b)(W + M)/2
    const double cross = 0.5 * (a.w_coeff * b.m_coeff + a.m_coeff * b.w_coeff);
    return SexDiffImage{cross, cross};
}

SexDiffImage apply_hom(const SexDiffHom& phi, const Element& z) {
    SexDiffImage out;
    const SexDiffImage* images[4] = {&phi.f1, &phi.f2, &phi.m1, &phi.m2};
    for (int i = 0; i < 4; ++i) {
        out.w_coeff += z[i] * images[i]->w_coeff;
        out.m_coeff += z[i] * images[i]->m_coeff;
    }
    return out;
}

double hom_deviation(const StructureTensor& t, const SexDiffHom& phi, const Element& z,
                     const Element& u) {
    const SexDiffImage lhs = apply_hom(phi, multiply(z, u, t));
    const SexDiffImage rhs = u_mul(apply_hom(phi, z), apply_hom(phi, u));
    return std::max(std::fabs(lhs.w_coeff - rhs.w_coeff), std::fabs(lhs.m_coeff - rhs.m_coeff));
}

namespace {

// One axis-aligned shape family: which of (f1, f2) and (m1, m2) may carry a
// nonzero scalar, and whether the f-images sit on the W axis (m-images then
// sit on M) or the other way around.
struct ShapeFamily {
    bool f1_free, f2_free;
    bool m1_free, m2_free;
    bool f_on_w;
};

// Scalar case chain shared by every family.  Unknowns a1, a2 (f-scalars) and
// b1, b2 (m-scalars); zero-forced slots per family.  Comparing W and M
// coefficients of phi(f_i m_j) = phi(f_i) phi(m_j) gives, for all i,j:
//   P[i][j][1] a1 + P[i][j][2] a2 = a_i b_j = P[i][j][1] b1 + P[i][j][2] b2.
// The chain below mirrors the exhaustive case split:
//   (1,1):  a1 = a1 b1 and b1 = a1 b1      =>  a1 = b1, a1 in {0, 1}
//   a1 = b1 = 0:  (2,1) gives d a2 = 0 and d b2 = 0, so the map is zero.
//   a1 = b1 = 1:  (2,1) halves give a2 = b2 (d > 0);
//                 (1,2) gives b2 = 1 - w hence a2 = 1 - w;
//                 (2,2) gives (1-w) = (1-w)^2, so w = 1 and a2 = b2 = 0;
//                 (2,1) then gives 1 - d = 0, so d = 1.
// An onto solution therefore exists iff w = 1 and d = 1, with scalars
// (a1, a2, b1, b2) = (1, 0, 1, 0).
bool family_admits_solution(const ShapeFamily& fam, const WolbachiaParams& p) {
    if (!fam.f1_free || !fam.m1_free) return false;  // forced into the zero branch
    if (p.w != 1.0) return false;
    if (p.d != 1.0) return false;
    return true;
}

SexDiffHom oriented_solution(bool f_on_w) {
    SexDiffHom phi;
    if (f_on_w) {
        phi.f1 = SexDiffImage{1.0, 0.0};
        phi.m1 = SexDiffImage{0.0, 1.0};
    } else {
        phi.f1 = SexDiffImage{0.0, 1.0};
        phi.m1 = SexDiffImage{1.0, 0.0};
    }
    phi.f2 = SexDiffImage{0.0, 0.0};
    phi.m2 = SexDiffImage{0.0, 0.0};
    return phi;
}

}  // namespace

DibaricSolution dibaric_solve_full(const WolbachiaParams& p0) {
    const WolbachiaParams p = WolbachiaParams::checked(p0.w, p0.d);
    DibaricSolution out;
    const bool patterns[3][2] = {{true, false}, {true, true}, {false, true}};
    for (const auto& fpat : patterns) {
        for (const auto& mpat : patterns) {
            for (bool f_on_w : {true, false}) {
                ShapeFamily fam{fpat[0], fpat[1], mpat[0], mpat[1], f_on_w};
                ++out.families_checked;
                if (!family_admits_solution(fam, p)) continue;
                ++out.families_admitting;
                auto& slot = f_on_w ? out.primary : out.mirror;
                if (!slot) slot = oriented_solution(f_on_w);
            }
        }
    }
    return out;
}

std::optional<SexDiffHom> dibaric_solve(const WolbachiaParams& p) {
    return dibaric_solve_full(p).primary;
}

bool verify_hom(const WolbachiaParams& p, const SexDiffHom& phi, int samples, double tol,
                std::uint64_t seed) {
    const StructureTensor t = build_algebra(p);
    UniformRng rng(seed);
    double max_dev = 0.0;
    for (int s = 0; s < samples; ++s) {
        Element z = Element::zero(kDimW), u = Element::zero(kDimW);
        for (int i = 0; i < kDimW; ++i) z[i] = rng.symmetric();
        for (int i = 0; i < kDimW; ++i) u[i] = rng.symmetric();
        max_dev = std::max(max_dev, hom_deviation(t, phi, z, u));
        if (max_dev > tol) return false;
    }

    // Surjectivity: the four images must span U.
    const SexDiffImage* images[4] = {&phi.f1, &phi.f2, &phi.m1, &phi.m2};
    double max_det = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double det =
                images[i]->w_coeff * images[j]->m_coeff - images[i]->m_coeff * images[j]->w_coeff;
            max_det = std::max(max_det, std::fabs(det));
        }
    return max_dev <= tol && max_det > 1e-12;
}

}  // namespace wolb
