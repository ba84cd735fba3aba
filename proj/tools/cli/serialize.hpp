#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "radplap/asymptotics.hpp"
#include "radplap/conditions.hpp"
#include "radplap/degiorgi.hpp"
#include "radplap/solver.hpp"

namespace radplap::cli {

using nlohmann::json;

/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
json num(double x);

json to_json(const ConditionReport& r);
json to_json(const SolverDiagnostics& d);
json to_json(const AsymptoticVerdict& v);
json to_json(const RecursionParams& p);
json to_json(const BoundCheck& b);
json to_json(const SweepSummary& s);

/// %.17g, so values survive a round trip through text.
std::string fmt(double x);

/// Columns r, u, flux, offset. The first line is a "# r_end=..." comment; the
/// offset column keeps r - R1 at full precision near R1.
std::string eigenfunction_csv(const Eigenpair& eig);

/// Reads a file written by eigenfunction_csv. Files without the offset column
/// or the r_end comment are accepted; offsets are then r - R1 and r_end falls
/// back to R2 (or the last radius on exterior domains).
Eigenpair read_eigenfunction_csv(const std::filesystem::path& path, const ProblemSpec& ps);

}  // namespace radplap::cli
