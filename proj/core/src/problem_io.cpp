#include "radplap/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radplap/errors.hpp"

namespace radplap {
namespace {

using nlohmann::json;

double number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInfinity;
  }
  throw SpecError(field, "expected a number or \"inf\"");
}

double required(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(path + "/" + key, "missing field");
  return number(*it, path + "/" + key);
}

double optional_number(const json& obj, const char* key, const std::string& path, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "/" + key);
}

WeightModel parse_weight(const json& root, const char* key, double R1) {
  const std::string path = std::string("/") + key;
  const auto it = root.find(key);
  if (it == root.end()) throw SpecError(path, "missing field");
  if (!it->is_array() || it->empty()) throw SpecError(path, "expected a non-empty array of pieces");
  std::vector<PowerLogPiece> pieces;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& pj = (*it)[i];
    const std::string pp = path + "/" + std::to_string(i);
    if (!pj.is_object()) throw SpecError(pp, "expected an object");
    PowerLogPiece pc;
    pc.lo = required(pj, "lo", pp);
    pc.hi = required(pj, "hi", pp);
    pc.c = optional_number(pj, "c", pp, 1.0);
    pc.a = optional_number(pj, "a", pp, 0.0);
    pc.b = optional_number(pj, "b", pp, 0.0);
    pc.l = optional_number(pj, "l", pp, 0.0);
    pieces.push_back(pc);
  }
  try {
    return WeightModel(R1, std::move(pieces));
  } catch (const SpecError& e) {
    const std::string f = e.field();
    const std::string what = f.empty() ? e.what() : std::string(e.what()).substr(f.size() + 2);
    throw SpecError(path + f, what);
  }
}

json finite_or_inf(double x) { return std::isinf(x) ? json("inf") : json(x); }

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError("", "JSON syntax error at line " + std::to_string(line) + ", column " +
                            std::to_string(col));
  }
  if (!root.is_object()) throw SpecError("", "top level must be an object");
  const auto nit = root.find("N");
  if (nit == root.end()) throw SpecError("/N", "missing field");
  if (!nit->is_number_integer()) throw SpecError("/N", "expected an integer");
  const int N = nit->get<int>();
  const double p = required(root, "p", "");
  const double R1 = required(root, "R1", "");
  const double R2 = required(root, "R2", "");
  WeightModel v = parse_weight(root, "v", R1);
  WeightModel w = parse_weight(root, "w", R1);
  std::optional<double> lambda;
  if (const auto it = root.find("lambda"); it != root.end() && !it->is_null()) {
    lambda = number(*it, "/lambda");
  }
  return ProblemSpec(N, p, R1, R2, std::move(v), std::move(w), lambda);
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string problem_to_json(const ProblemSpec& ps, int indent) {
  auto weight = [](const WeightModel& m) {
    json arr = json::array();
    for (const auto& pc : m.pieces()) {
      arr.push_back({{"lo", pc.lo}, {"hi", finite_or_inf(pc.hi)}, {"c", pc.c},
                     {"a", pc.a}, {"b", pc.b}, {"l", pc.l}});
    }
    return arr;
  };
  json j = {{"N", ps.N()}, {"p", ps.p()}, {"R1", ps.R1()}, {"R2", finite_or_inf(ps.R2())},
            {"v", weight(ps.v())}, {"w", weight(ps.w())}};
  if (ps.lambda()) j["lambda"] = *ps.lambda();
  return j.dump(indent);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string problem_hash(const ProblemSpec& ps) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(problem_to_json(ps, -1))));
  return buf;
}

}  // namespace radplap
