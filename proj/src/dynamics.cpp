#include "wolb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace wolb {

StateVector StateVector::validated(double x1, double x2, double y1, double y2, double tol) {
    const bool nonneg = x1 >= -tol && x2 >= -tol && y1 >= -tol && y2 >= -tol;
    const bool sums = std::fabs(x1 + x2 - 1.0) <= tol && std::fabs(y1 + y2 - 1.0) <= tol;
    if (!nonneg || !sums) {
        throw std::invalid_argument("state not on S1 x S1: (" + std::to_string(x1) + ", " +
                                    std::to_string(x2) + ", " + std::to_string(y1) + ", " +
                                    std::to_string(y2) + ")");
    }
    return StateVector{x1, x2, y1, y2};
}

double max_diff(const StateVector& a, const StateVector& b) {
    return std::max(std::max(std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2)),
                    std::max(std::fabs(a.y1 - b.y1), std::fabs(a.y2 - b.y2)));
}

double norm1_of_square(const WolbachiaParams& p, const StateVector& s) {
    return 1.0 - p.w * s.y2 + p.d * p.w * s.x2 * s.y2;
}

std::optional<StateVector> apply_V(const StructureTensor& t, const WolbachiaParams& p,
                                   const StateVector& s) {
    const double den = norm1_of_square(p, s);
    if (den <= kExtinctionEps) return std::nullopt;
    const Element q = square(s.to_element(), t);
    // z*z lies in span{f1+m1, f2+m2}; both sexes get the same normalized
    // frequencies, so the output has x = y by construction.
    const double a = q[kF1] / den;
    const double b = q[kF2] / den;
    return StateVector{a, b, a, b};
}

std::optional<StateVector> apply_V(const WolbachiaParams& p, const StateVector& s) {
    return apply_V(build_algebra(p), p, s);
}

namespace {

FixedPointKind classify(double x2) {
    if (x2 == 0.0) return FixedPointKind::TrivialUninfected;
    if (x2 == 1.0) return FixedPointKind::FullyInfected;
    return FixedPointKind::Interior;
}

double residual_at(const StructureTensor& t, const WolbachiaParams& p, const StateVector& s) {
    const auto next = apply_V(t, p, s);
    if (!next) return std::numeric_limits<double>::infinity();
    return max_diff(*next, s);
}

FixedPoint make_point(const StructureTensor& t, const WolbachiaParams& p, double x2,
                      int multiplicity) {
    FixedPoint fp;
    fp.state = StateVector::from_infected(x2, x2);
    fp.kind = classify(x2);
    fp.residual = residual_at(t, p, fp.state);
    fp.multiplicity = multiplicity;
    return fp;
}

}  // namespace

FixedPointSet fixed_points(const WolbachiaParams& p0) {
    const WolbachiaParams p = WolbachiaParams::checked(p0.w, p0.d);
    const StructureTensor t = build_algebra(p);

    FixedPointSet set;
    set.discriminant = p.w * (4.0 * p.d * p.d - 4.0 * p.d + p.w);
    set.points.push_back(make_point(t, p, 0.0, 1));

    if (p.d == 1.0) {
        // Own branch: the quadratic degenerates to w*x2*(x2-1), whose root
        // x2 = 0 duplicates the trivial point.
        set.points.push_back(make_point(t, p, 1.0, 1));
        return set;
    }

    // Roots of d*w*x2^2 - w*x2 + (1-d) = 0.  A discriminant this close to
    // zero (double-root curve w = 4d(1-d)) is treated as zero so the closed
    // form and the grid oracle agree at the tangency.
    double delta = set.discriminant;
    if (delta < 0.0 && delta > -1e-14) delta = 0.0;
    if (delta < 0.0) return set;

    const double sq = std::sqrt(delta) / p.w;
    const double lo = (1.0 - sq) / (2.0 * p.d);
    const double hi = (1.0 + sq) / (2.0 * p.d);
    constexpr double kFeasSlack = 1e-12;  // absorbs rounding like 1 + 2e-16 at w = 1
    auto add_root = [&](double root, int multiplicity) {
        if (root >= -kFeasSlack && root <= 1.0 + kFeasSlack) {
            set.points.push_back(make_point(t, p, std::clamp(root, 0.0, 1.0), multiplicity));
        } else {
            set.infeasible_roots.push_back(root);
        }
    };
    if (delta == 0.0) {
        add_root(lo, 2);
    } else {
        add_root(lo, 1);
        add_root(hi, 1);
    }
    return set;
}

namespace {

template <typename StepSink>
void iterate_core(const WolbachiaParams& p, const StateVector& s0, long max_steps, double tol,
                  StepSink&& sink, TrajectoryOutcome& outcome, std::optional<FixedPoint>& endpoint,
                  long& steps_taken, StateVector& final_state, double& final_residual) {
    const StructureTensor t = build_algebra(p);
    StateVector s = s0;
    outcome = TrajectoryOutcome::MaxSteps;
    endpoint.reset();
    for (long k = 0; k < max_steps; ++k) {
        const auto next = apply_V(t, p, s);
        if (!next) {
            sink(k, s, std::numeric_limits<double>::quiet_NaN());
            outcome = TrajectoryOutcome::Extinction;
            steps_taken = k;
            final_state = s;
            final_residual = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        const double res = max_diff(*next, s);
        sink(k, s, res);
        if (res <= tol) {
            outcome = TrajectoryOutcome::Converged;
            FixedPoint fp;
            fp.state = s;
            fp.residual = res;
            fp.kind = res <= tol && s.x2 <= 1e-9 ? FixedPointKind::TrivialUninfected
                      : s.x2 >= 1.0 - 1e-9       ? FixedPointKind::FullyInfected
                                                 : FixedPointKind::Interior;
            endpoint = fp;
            steps_taken = k;
            final_state = s;
            final_residual = res;
            return;
        }
        s = *next;
    }
    steps_taken = max_steps;
    final_state = s;
    final_residual = residual_at(t, p, s);
}

}  // namespace

TrajectoryRecord iterate(const WolbachiaParams& p, const StateVector& s0, long max_steps,
                         double tol) {
    if (max_steps < 1 || !(tol > 0.0)) {
        throw std::invalid_argument("iterate: max_steps must be >= 1 and tol > 0");
    }
    TrajectoryRecord rec;
    long taken = 0;
    StateVector fin;
    double fres = 0.0;
    iterate_core(
        p, s0, max_steps, tol,
        [&](long k, const StateVector& s, double res) {
            rec.steps.push_back(TrajectoryStep{k, s, res});
        },
        rec.outcome, rec.endpoint, taken, fin, fres);
    return rec;
}

IterateSummary iterate_summary(const WolbachiaParams& p, const StateVector& s0, long max_steps,
                               double tol) {
    if (max_steps < 1 || !(tol > 0.0)) {
        throw std::invalid_argument("iterate: max_steps must be >= 1 and tol > 0");
    }
    IterateSummary sum;
    iterate_core(
        p, s0, max_steps, tol, [](long, const StateVector&, double) {}, sum.outcome, sum.endpoint,
        sum.steps_taken, sum.final_state, sum.final_residual);
    return sum;
}

NilpotentReport absolute_nilpotents(const WolbachiaParams& p0, int grid_n) {
    const WolbachiaParams p = WolbachiaParams::checked(p0.w, p0.d);
    const StructureTensor t = build_algebra(p);
    NilpotentReport rep;
    rep.nontrivial = p.w == 1.0;
    rep.forced_y2 = 1.0 / p.w;

    const Element candidate = Element::basis(kDimW, kF1) + Element::basis(kDimW, kM2);
    rep.direction_square_norm = inf_norm(square(candidate, t));
    if (rep.nontrivial) rep.direction = candidate;

    rep.grid_min_norm = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n; ++i) {
        for (int j = 0; j <= grid_n; ++j) {
            const StateVector s = StateVector::from_infected(static_cast<double>(i) / grid_n,
                                                             static_cast<double>(j) / grid_n);
            const double norm = norm1_of_square(p, s);
            if (norm < rep.grid_min_norm) {
                rep.grid_min_norm = norm;
                rep.grid_argmin = s;
            }
        }
    }
    return rep;
}

namespace {

// Golden-section minimization of |g| on [a,b]; used for tangential roots
// where g touches zero without a sign change.
double golden_min(const std::function<double(double)>& f, double a, double b, double width) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = std::fabs(f(c));
    double fd = std::fabs(f(d));
    while (b - a > width) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = std::fabs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = std::fabs(f(d));
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> oracle_x2_roots(const WolbachiaParams& p0, int grid_n, double newton_tol) {
    const WolbachiaParams p = WolbachiaParams::checked(p0.w, p0.d);
    if (grid_n < 100) throw std::invalid_argument("oracle_fixed_points: grid_n must be >= 100");
    const StructureTensor t = build_algebra(p);

    // The surviving mass is strictly positive on the diagonal for admissible
    // parameters, so g is total on [0,1].
    const std::function<double(double)> g = [&](double x2) {
        const auto next = apply_V(t, p, StateVector::from_infected(x2, x2));
        return next->x2 - x2;
    };

    constexpr double kNodeZero = 1e-13;
    constexpr double kTouchScreen = 1e-6;
    constexpr double kTouchAccept = 1e-10;

    std::vector<double> nodes(grid_n + 1), gv(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) {
        nodes[i] = static_cast<double>(i) / grid_n;
        gv[i] = g(nodes[i]);
    }

    std::vector<double> roots;
    for (int i = 0; i <= grid_n; ++i) {
        if (std::fabs(gv[i]) <= kNodeZero) roots.push_back(nodes[i]);
    }
    for (int i = 0; i < grid_n; ++i) {
        if (std::fabs(gv[i]) <= kNodeZero || std::fabs(gv[i + 1]) <= kNodeZero) continue;
        if (gv[i] * gv[i + 1] < 0.0) {
            double a = nodes[i], b = nodes[i + 1];
            double fa = gv[i];
            for (int it = 0; it < 200 && b - a > newton_tol; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = g(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
    }
    // Tangential roots: deep local minima of |g| with no sign change.
    for (int i = 1; i < grid_n; ++i) {
        if (std::fabs(gv[i]) > kTouchScreen) continue;
        if (std::fabs(gv[i]) <= kNodeZero) continue;
        if (std::fabs(gv[i]) <= std::fabs(gv[i - 1]) && std::fabs(gv[i]) <= std::fabs(gv[i + 1]) &&
            gv[i - 1] * gv[i] > 0.0 && gv[i] * gv[i + 1] > 0.0) {
            const double x = golden_min(g, nodes[i - 1], nodes[i + 1], 1e-12);
            if (std::fabs(g(x)) <= kTouchAccept) roots.push_back(x);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (double r : roots) {
        if (unique_roots.empty() || r - unique_roots.back() > 1e-7) unique_roots.push_back(r);
    }
    return unique_roots;
}

std::vector<StateVector> oracle_fixed_points(const WolbachiaParams& p, int grid_n,
                                             double newton_tol) {
    std::vector<StateVector> out;
    for (double x2 : oracle_x2_roots(p, grid_n, newton_tol)) {
        out.push_back(StateVector::from_infected(x2, x2));
    }
    return out;
}

}  // namespace wolb
