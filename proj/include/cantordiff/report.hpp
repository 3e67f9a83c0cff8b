#pragma once

#include <string>

#include "cantordiff/dimension.hpp"
#include "cantordiff/full_interval.hpp"
#include "cantordiff/ifs.hpp"
#include "cantordiff/nonlinear.hpp"
#include "cantordiff/renorm.hpp"
#include "json.hpp"

namespace cantordiff {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "cantordiff/1";

/// {"exact": "2+3*g", "lo": ..., "hi": ...}; the exact string re-parses
/// with the generator of the scalar's field.
Json to_json(const Scalar& x);
Json to_json(const Rational& x);
Json to_json(const Enclosure& e);
Json to_json(const Interval& iv);
Json to_json(const IntervalSet& s);
Json to_json(const CantorSet& c);
Json to_json(const LineIFS& ifs);
Json to_json(const CoverageReport& r);
Json to_json(const MembershipResult& r);
Json to_json(const FullIntervalAnalysis& a);
Json to_json(const FullCertificate& c);
Json to_json(const FiniteTypeReport& r);
Json to_json(const SpectralResult& r);
Json to_json(const DimensionResult& r);
Json to_json(const CountingBound& b);
/// states (positions as exact strings), matrix (dense rows) and start vector.
Json automaton_json(const NeighborAutomaton& a);
Json to_json(const RecurrentRegion& r);
Json to_json(const RecurrenceReport& r);
Json to_json(const LinkReport& r);
Json to_json(const Certificate& c);
Json to_json(const SmokeResult& r);
Json to_json(const WeakStableRange& w);

/// Reads back {"exact": ...} (or a bare string) with an optional generator.
Scalar scalar_from_json(const Json& j, const std::optional<Scalar>& generator);

}  // namespace cantordiff
