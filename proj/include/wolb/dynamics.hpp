#pragma once

// The normalized evolutionary operator V on S^1 x S^1, trajectory iteration,
// closed-form fixed points and absolute nilpotents, and an independent
// grid-scan oracle for cross-checking the closed forms.

#include <cstdint>
#include <optional>
#include <vector>

#include "wolb/algebra.hpp"
#include "wolb/model.hpp"

namespace wolb {

/// Denominator threshold below which V is treated as extinction.  An exact
/// zero only occurs at w = 1 with (x,y) = ((1,0),(0,1)).
inline constexpr double kExtinctionEps = 1e-14;

/// Population state: x = female type frequencies, y = male; subscript 2 is
/// the Wolbachia-infected type.  Each pair is a point of the unit simplex.
struct StateVector {
    double x1 = 1.0, x2 = 0.0, y1 = 1.0, y2 = 0.0;

    /// Builds the state from the infected fractions, x1 = 1-x2, y1 = 1-y2.
    static StateVector from_infected(double x2, double y2) {
        return StateVector{1.0 - x2, x2, 1.0 - y2, y2};
    }

    /// Validates non-negativity and both simplex sums within tol.
    static StateVector validated(double x1, double x2, double y1, double y2, double tol = 1e-9);

    Element to_element() const { return Element({x1, x2, y1, y2}); }
};

double max_diff(const StateVector& a, const StateVector& b);

/// Surviving offspring mass 1 - w*y2 + d*w*x2*y2 (per sex; equals the
/// female-coefficient sum of z*z computed through the tensor).
double norm1_of_square(const WolbachiaParams& p, const StateVector& s);

/// One application of V: z*z through the tensor, normalized by
/// norm1_of_square.  Returns nullopt (extinction) when the surviving mass is
/// <= kExtinctionEps.  The output always has x = y exactly.
std::optional<StateVector> apply_V(const WolbachiaParams& p, const StateVector& s);

/// Hot-loop overload with a caller-cached tensor (must be build_algebra(p)).
std::optional<StateVector> apply_V(const StructureTensor& t, const WolbachiaParams& p,
                                   const StateVector& s);

enum class FixedPointKind { TrivialUninfected, FullyInfected, Interior };

struct FixedPoint {
    StateVector state;
    FixedPointKind kind = FixedPointKind::TrivialUninfected;
    double residual = 0.0;  // ||V(z) - z||_inf
    int multiplicity = 1;   // 2 for the discriminant-zero double root
};

/// Closed-form fixed points of V on the x = y diagonal.
/// Algebraic roots outside [0,1] are reported, not silently dropped.
struct FixedPointSet {
    std::vector<FixedPoint> points;
    std::vector<double> infeasible_roots;
    double discriminant = 0.0;  // w(4d^2 - 4d + w)
};

/// The trivial uninfected point x2 = 0 always; x2 = 1 when d = 1; otherwise
/// the real roots of d*w*x2^2 - w*x2 + (1-d) = 0 filtered to [0,1]
/// (feasibility slack 1e-12, then clamped).
FixedPointSet fixed_points(const WolbachiaParams& p);

enum class TrajectoryOutcome { Converged, Extinction, MaxSteps };

struct TrajectoryStep {
    long step = 0;
    StateVector state;
    double residual = 0.0;  // ||V(state) - state||_inf; NaN when V is extinct here
};

struct TrajectoryRecord {
    std::vector<TrajectoryStep> steps;
    TrajectoryOutcome outcome = TrajectoryOutcome::MaxSteps;
    std::optional<FixedPoint> endpoint;  // present iff converged
};

/// Applies V until the step residual is <= tol, extinction, or max_steps
/// applications; records every visited state.
TrajectoryRecord iterate(const WolbachiaParams& p, const StateVector& s0, long max_steps,
                         double tol);

/// Same loop without step storage (for sweeps and bulk runs).
struct IterateSummary {
    TrajectoryOutcome outcome = TrajectoryOutcome::MaxSteps;
    long steps_taken = 0;
    StateVector final_state;
    double final_residual = 0.0;
    std::optional<FixedPoint> endpoint;
};

IterateSummary iterate_summary(const WolbachiaParams& p, const StateVector& s0, long max_steps,
                               double tol);

/// Absolute nilpotents: the line through f1 + m2 when w = 1, only the zero
/// element otherwise.  Both branches are verified: the square through the
/// tensor, the elimination chain (x2 = 0 forced, then y2 = 1/w infeasible
/// for w < 1) and a grid sweep of the surviving-mass minimum.
struct NilpotentReport {
    bool nontrivial = false;               // w == 1
    std::optional<Element> direction;      // f1 + m2 when nontrivial
    double direction_square_norm = 0.0;    // ||(f1+m2)^2||_inf
    double grid_min_norm = 0.0;            // min of norm1_of_square over the grid
    StateVector grid_argmin;
    double forced_y2 = 0.0;                // 1/w from the elimination chain
};

NilpotentReport absolute_nilpotents(const WolbachiaParams& p, int grid_n = 100);

/// Independent fixed-point oracle: scans x2 in [0,1] at resolution 1/grid_n
/// on the x = y diagonal (any fixed point lies there), brackets sign changes
/// of g(x2) = V(s).x2 - x2 and polishes by bisection; tangential (double)
/// roots are caught as deep local minima of |g| and polished by golden
/// section.  grid_n must be >= 100.
std::vector<double> oracle_x2_roots(const WolbachiaParams& p, int grid_n, double newton_tol);

std::vector<StateVector> oracle_fixed_points(const WolbachiaParams& p, int grid_n,
                                             double newton_tol);

}  // namespace wolb
