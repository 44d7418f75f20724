#pragma once

// JSON / CSV serialization of the verdict and report types.  All floating
// output is locale-independent; CSV uses '.' decimals with 17 significant
// digits so that repeated runs are byte-identical.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "wolb/algebra.hpp"
#include "wolb/characters.hpp"
#include "wolb/dynamics.hpp"
#include "wolb/structure.hpp"

namespace wolb {

using Json = nlohmann::json;

/// Shortest-unambiguous 17-significant-digit rendering, locale-independent.
std::string fmt17(double v);

Json to_json(const Element& e);
Json to_json(const PropertyReport& r);
Json to_json(const AssociativityWitness& w);
Json to_json(const PowerAssociativityGap& g);
Json to_json(const EvolutionAlgebraVerdict& v);
Json to_json(const SubalgebraReport& r);
Json to_json(const CharacterSearchResult& r);
Json to_json(const BaricReport& r);
Json to_json(const SexDiffImage& img);
Json to_json(const SexDiffHom& phi);
Json to_json(const DibaricSolution& sol);
Json to_json(const StateVector& s);
Json to_json(const FixedPoint& fp);
Json to_json(const FixedPointSet& set);
Json to_json(const NilpotentReport& rep);

std::string kind_name(FixedPointKind k);
std::string outcome_name(TrajectoryOutcome o);

/// Header, one row per recorded step, then one trailing JSON summary line
/// {"outcome": ..., "fixed_point": ...|null}.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec);

}  // namespace wolb
