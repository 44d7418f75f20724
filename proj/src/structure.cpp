#include "wolb/structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace wolb {

namespace {

// Type subscript (1 or 2) of a basis index.
int subscript(int a) { return (a == kF1 || a == kM1) ? 1 : 2; }

bool is_female(int a) { return a == kF1 || a == kF2; }

Eigen::Matrix4d to_eigen(const Matrix4& m) {
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = m[i][j];
    return e;
}

}  // namespace

StructureMatrixPair build_structure_matrices(const WolbachiaParams& p) {
    const InheritanceTable tab = build_inheritance_table(p);
    StructureMatrixPair pair;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (is_female(a) == is_female(b)) {
                pair.m1[a][b] = 0.0;
                pair.m2[a][b] = 0.0;
            } else {
                pair.m1[a][b] = 0.5 * tab.at(subscript(a), subscript(b), 1);
                pair.m2[a][b] = 0.5 * tab.at(subscript(a), subscript(b), 2);
            }
        }
    }
    return pair;
}

Matrix4 matmul(const Matrix4& a, const Matrix4& b) {
    Matrix4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

Matrix4 commutator(const StructureMatrixPair& pair) {
    const Matrix4 ab = matmul(pair.m1, pair.m2);
    const Matrix4 ba = matmul(pair.m2, pair.m1);
    Matrix4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = ab[i][j] - ba[i][j];
    return r;
}

double max_abs(const Matrix4& m) {
    double v = 0.0;
    for (const auto& row : m)
        for (double x : row) v = std::max(v, std::fabs(x));
    return v;
}

double trace(const Matrix4& m) { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }

namespace {

struct Spectrum {
    std::vector<std::complex<double>> eig;
    bool diagonalizable;
};

// Diagonalizable iff for each eigenvalue cluster the kernel dimension of
// (A - yI) equals the cluster size.  Clustering tolerance 1e-9; the spectra
// handled here are well separated (gaps >= d/2).
Spectrum analyze(const Matrix4& m) {
    const Eigen::Matrix4d a = to_eigen(m);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen-decomposition did not converge");
    }
    Spectrum s;
    for (int i = 0; i < 4; ++i) s.eig.push_back(solver.eigenvalues()(i));

    constexpr double kCluster = 1e-9;
    std::vector<bool> used(4, false);
    s.diagonalizable = true;
    for (int i = 0; i < 4; ++i) {
        if (used[i]) continue;
        int algebraic = 0;
        for (int j = 0; j < 4; ++j) {
            if (!used[j] && std::abs(s.eig[j] - s.eig[i]) <= kCluster) {
                used[j] = true;
                ++algebraic;
            }
        }
        Eigen::Matrix4cd shifted = a.cast<std::complex<double>>();
        for (int k = 0; k < 4; ++k) shifted(k, k) -= s.eig[i];
        Eigen::FullPivLU<Eigen::Matrix4cd> lu(shifted);
        lu.setThreshold(1e-9);
        const int geometric = 4 - static_cast<int>(lu.rank());
        if (geometric != algebraic) {
            s.diagonalizable = false;
        }
    }
    return s;
}

std::vector<double> real_sorted(const std::vector<std::complex<double>>& eig, double& max_imag) {
    std::vector<double> out;
    for (const auto& z : eig) {
        out.push_back(z.real());
        max_imag = std::max(max_imag, std::fabs(z.imag()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

EvolutionAlgebraVerdict verdict_for_matrices(const Matrix4& m1, const Matrix4& m2, double tol) {
    EvolutionAlgebraVerdict v;
    const Spectrum s1 = analyze(m1);
    const Spectrum s2 = analyze(m2);
    v.m1_diagonalizable = s1.diagonalizable;
    v.m2_diagonalizable = s2.diagonalizable;
    v.eig_m1 = real_sorted(s1.eig, v.eig_max_imag);
    v.eig_m2 = real_sorted(s2.eig, v.eig_max_imag);
    v.commutator_norm = max_abs(commutator(StructureMatrixPair{m1, m2}));
    v.is_evolution_algebra =
        v.m1_diagonalizable && v.m2_diagonalizable && v.commutator_norm <= tol;
    return v;
}

EvolutionAlgebraVerdict is_evolution_algebra(const WolbachiaParams& p, double tol) {
    const WolbachiaParams checked = WolbachiaParams::checked(p.w, p.d);
    const StructureMatrixPair pair = build_structure_matrices(checked);
    EvolutionAlgebraVerdict v = verdict_for_matrices(pair.m1, pair.m2, tol);
    v.w = checked.w;
    v.d = checked.d;
    return v;
}

SubalgebraReport sexdiff_subalgebra_report(const WolbachiaParams& p) {
    const StructureTensor t = build_algebra(p);
    SubalgebraReport rep;

    const Element f1 = Element::basis(kDimW, kF1);
    const Element m1 = Element::basis(kDimW, kM1);
    const Element f2 = Element::basis(kDimW, kF2);

    const Element f1f1 = square(f1, t);
    const Element m1m1 = square(m1, t);
    const Element f1m1 = multiply(f1, m1, t);

    // U closed: squares vanish and f1*m1 = (f1+m1)/2 stays inside span{f1,m1}.
    const bool squares_zero = inf_norm(f1f1) == 0.0 && inf_norm(m1m1) == 0.0;
    const bool product_in_u = f1m1[kF2] == 0.0 && f1m1[kM2] == 0.0;
    rep.u_closed = squares_zero && product_in_u;
    rep.u_matches_sexdiff =
        squares_zero && f1m1[kF1] == 0.5 && f1m1[kM1] == 0.5 && product_in_u;

    rep.not_ideal_witness = multiply(m1, f2, t);
    rep.witness_f2_coeff = rep.not_ideal_witness[kF2];
    rep.u_is_ideal = !(rep.witness_f2_coeff > 0.0);

    const Element u_gen = f1 + m1;
    const Element u_gen_sq = square(u_gen, t);
    rep.f1_plus_m1_idempotent = inf_norm(u_gen_sq - u_gen) == 0.0;
    // Every product of U elements is a multiple of f1+m1: it suffices that
    // the three basis products are.
    rep.u2_spanned_by_f1_plus_m1 =
        squares_zero && f1m1[kF1] == f1m1[kM1] && product_in_u;

    rep.pass = rep.u_closed && rep.u_matches_sexdiff && !rep.u_is_ideal &&
               rep.u2_spanned_by_f1_plus_m1 && rep.f1_plus_m1_idempotent;
    return rep;
}

}  // namespace wolb
