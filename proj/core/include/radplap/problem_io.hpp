#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "radplap/weights.hpp"

namespace radplap {

/// Parses `{"N", "p", "R1", "R2", "v", "w", "lambda"?}` where R2 and a piece's
/// "hi" may be the string "inf" and a piece is `{"lo", "hi", "c", "a", "b", "l"}`
/// with c defaulting to 1 and the exponents to 0. Throws SpecError naming the
/// offending field, or the line and column for malformed JSON.
ProblemSpec parse_problem(std::string_view json_text);
ProblemSpec load_problem(const std::filesystem::path& path);

/// Canonical JSON with sorted keys, so equal specs serialize identically.
std::string problem_to_json(const ProblemSpec& ps, int indent = 2);

/// 64-bit FNV-1a digest of the canonical JSON, as 16 hex digits.
std::string problem_hash(const ProblemSpec& ps);
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace radplap
