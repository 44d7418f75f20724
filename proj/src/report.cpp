#include "wolb/report.hpp"

#include <charconv>
#include <ostream>

namespace wolb {

std::string fmt17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Json to_json(const Element& e) { return Json(e.coeffs); }

Json to_json(const PropertyReport& r) {
    return Json{{"seed", r.seed},
                {"samples", r.samples},
                {"tol", r.tol},
                {"max_deviation", r.max_deviation},
                {"pass", r.pass}};
}

Json to_json(const AssociativityWitness& w) {
    return Json{{"a", to_json(w.a)}, {"b", to_json(w.b)}, {"c", to_json(w.c)},
                {"deviation", w.deviation}};
}

Json to_json(const PowerAssociativityGap& g) {
    return Json{{"gap", g.gap}, {"z2z2", to_json(g.z2z2)}, {"z2z_z", to_json(g.z2z_z)}};
}

Json to_json(const EvolutionAlgebraVerdict& v) {
    return Json{{"w", v.w},
                {"d", v.d},
                {"commutator_norm", v.commutator_norm},
                {"m1_diagonalizable", v.m1_diagonalizable},
                {"m2_diagonalizable", v.m2_diagonalizable},
                {"is_evolution_algebra", v.is_evolution_algebra},
                {"eig_m1", v.eig_m1},
                {"eig_m2", v.eig_m2}};
}

Json to_json(const SubalgebraReport& r) {
    return Json{{"u_closed", r.u_closed},
                {"u_matches_sexdiff", r.u_matches_sexdiff},
                {"u_is_ideal", r.u_is_ideal},
                {"not_ideal_witness", to_json(r.not_ideal_witness)},
                {"witness_f2_coeff", r.witness_f2_coeff},
                {"u2_spanned_by_f1_plus_m1", r.u2_spanned_by_f1_plus_m1},
                {"f1_plus_m1_idempotent", r.f1_plus_m1_idempotent},
                {"pass", r.pass}};
}

Json to_json(const CharacterSearchResult& r) {
    return Json{{"seed", r.seed},
                {"seeds", r.seeds},
                {"zero_roots", r.zero_roots},
                {"nonzero_roots", r.nonzero_roots},
                {"non_converged", r.non_converged},
                {"residual_tol", r.residual_tol},
                {"nonzero_threshold", r.nonzero_threshold}};
}

Json to_json(const BaricReport& r) {
    return Json{{"is_baric", r.is_baric},
                {"squares_force_zero", r.squares_force_zero},
                {"newton", to_json(r.newton)}};
}

Json to_json(const SexDiffImage& img) { return Json{img.w_coeff, img.m_coeff}; }

Json to_json(const SexDiffHom& phi) {
    return Json{{"f1", to_json(phi.f1)},
                {"f2", to_json(phi.f2)},
                {"m1", to_json(phi.m1)},
                {"m2", to_json(phi.m2)}};
}

Json to_json(const DibaricSolution& sol) {
    Json j{{"exists", sol.primary.has_value()},
           {"families_checked", sol.families_checked},
           {"families_admitting", sol.families_admitting}};
    j["phi"] = sol.primary ? to_json(*sol.primary) : Json(nullptr);
    j["phi_mirror"] = sol.mirror ? to_json(*sol.mirror) : Json(nullptr);
    return j;
}

Json to_json(const StateVector& s) {
    return Json{{"x1", s.x1}, {"x2", s.x2}, {"y1", s.y1}, {"y2", s.y2}};
}

std::string kind_name(FixedPointKind k) {
    switch (k) {
        case FixedPointKind::TrivialUninfected: return "trivial_uninfected";
        case FixedPointKind::FullyInfected: return "fully_infected";
        case FixedPointKind::Interior: return "interior";
    }
    return "interior";
}

std::string outcome_name(TrajectoryOutcome o) {
    switch (o) {
        case TrajectoryOutcome::Converged: return "converged";
        case TrajectoryOutcome::Extinction: return "extinction";
        case TrajectoryOutcome::MaxSteps: return "max_steps";
    }
    return "max_steps";
}

Json to_json(const FixedPoint& fp) {
    return Json{{"state", to_json(fp.state)},
                {"kind", kind_name(fp.kind)},
                {"residual", fp.residual},
                {"multiplicity", fp.multiplicity}};
}

Json to_json(const FixedPointSet& set) {
    Json pts = Json::array();
    for (const auto& fp : set.points) pts.push_back(to_json(fp));
    return Json{{"points", pts},
                {"infeasible_roots", set.infeasible_roots},
                {"discriminant", set.discriminant}};
}

Json to_json(const NilpotentReport& rep) {
    Json j{{"nontrivial", rep.nontrivial},
           {"direction_square_norm", rep.direction_square_norm},
           {"grid_min_norm", rep.grid_min_norm},
           {"grid_argmin", to_json(rep.grid_argmin)},
           {"forced_y2", rep.forced_y2}};
    j["direction"] = rep.direction ? to_json(*rep.direction) : Json(nullptr);
    return j;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec) {
    os << "step,x1,x2,y1,y2,residual\n";
    for (const auto& st : rec.steps) {
        os << st.step << ',' << fmt17(st.state.x1) << ',' << fmt17(st.state.x2) << ','
           << fmt17(st.state.y1) << ',' << fmt17(st.state.y2) << ',' << fmt17(st.residual)
           << '\n';
    }
    Json summary{{"outcome", outcome_name(rec.outcome)}};
    summary["fixed_point"] = rec.endpoint ? to_json(*rec.endpoint) : Json(nullptr);
    os << summary.dump() << '\n';
}

}  // namespace wolb
