#include "cli/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "radplap/errors.hpp"

namespace radplap::cli {

json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const ConditionReport& r) {
  json w = json::object();
  for (const auto& [k, v] : r.witnesses) w[k] = num(v);
  json j = {{"condition", std::string(to_string(r.id))},
            {"verdict", std::string(to_string(r.verdict))},
            {"witnesses", w}};
  if (!r.failed_clause.empty()) j["failed_clause"] = r.failed_clause;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json to_json(const SolverDiagnostics& d) {
  json ladder = json::array();
  for (const auto& [R, lam] : d.ladder) ladder.push_back({{"R_max", num(R)}, {"lambda", num(lam)}});
  json j = {{"method", d.method},
            {"bisection_width", num(d.bisection_width)},
            {"truncation_radius", num(d.truncation_radius)},
            {"residual_norm", num(d.residual_norm)},
            {"iterations", d.iterations},
            {"inconclusive", d.inconclusive}};
  if (!d.ladder.empty()) j["ladder"] = ladder;
  if (d.extrapolated) j["extrapolated"] = num(*d.extrapolated);
  if (!d.notes.empty()) j["notes"] = d.notes;
  return j;
}

json to_json(const AsymptoticVerdict& v) {
  json j = {{"boundary", std::string(to_string(v.boundary))},
            {"window", {num(v.window.first), num(v.window.second)}},
            {"samples", v.samples},
            {"ratio_min", num(v.ratio_min)},
            {"ratio_max", num(v.ratio_max)},
            {"flux_min", num(v.flux_min)},
            {"flux_max", num(v.flux_max)},
            {"fitted_exponent", num(v.fitted_exponent)},
            {"fit_residual", num(v.fit_residual)},
            {"pass", v.pass}};
  j["theoretical_exponent"] = v.theoretical_exponent ? num(*v.theoretical_exponent) : json(nullptr);
  return j;
}

json to_json(const RecursionParams& p) {
  json j = {{"K", num(p.K)},
            {"eta", num(p.eta)},
            {"delta1", num(p.delta1)},
            {"delta2", num(p.delta2)},
            {"J0", num(p.J0)},
            {"n_max", p.n_max}};
  if (p.log_J0) j["log_J0"] = num(*p.log_J0);
  return j;
}

json to_json(const BoundCheck& b) {
  json j = {{"precondition_met", b.precondition_met},
            {"holds", b.holds},
            {"checked", b.checked}};
  j["n0"] = b.n0 ? json(*b.n0) : json(nullptr);
  j["first_violation"] = b.first_violation ? json(*b.first_violation) : json(nullptr);
  return j;
}

json to_json(const SweepSummary& s) {
  json failures = json::array();
  for (const auto& p : s.failures) failures.push_back(to_json(p));
  return {{"draws", s.draws},
          {"counterexamples", s.counterexamples},
          {"missing_n0", s.missing_n0},
          {"overflows", s.overflows},
          {"min_log_margin", num(s.min_log_margin)},
          {"failures", failures}};
}

std::string eigenfunction_csv(const Eigenpair& eig) {
  std::ostringstream os;
  os << "# r_end=" << fmt(eig.mesh.r_end()) << '\n';
  os << "r,u,flux,offset\n";
  for (std::size_t i = 0; i < eig.mesh.size(); ++i) {
    os << fmt(eig.mesh.radius(i)) << ',' << fmt(eig.u[i]) << ',' << fmt(eig.flux[i]) << ','
       << fmt(eig.mesh.offset(i)) << '\n';
  }
  return os.str();
}

Eigenpair read_eigenfunction_csv(const std::filesystem::path& path, const ProblemSpec& ps) {
  std::ifstream in(path);
  if (!in) throw SpecError("--eig", "cannot open " + path.string());
  double r_end = ps.exterior() ? 0.0 : ps.R2();
  std::vector<double> offsets, u, flux;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool has_offset = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("r_end=");
      if (pos != std::string::npos) r_end = std::stod(line.substr(pos + 6));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("r,u,flux", 0) != 0) {
        throw SpecError("--eig", "line " + std::to_string(lineno) + ": expected header r,u,flux");
      }
      has_offset = line.find("offset") != std::string::npos;
      continue;
    }
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw SpecError("--eig", "line " + std::to_string(lineno) + ": not a number");
    }
    if (cols.size() < (has_offset ? 4u : 3u)) {
      throw SpecError("--eig", "line " + std::to_string(lineno) + ": too few columns");
    }
    offsets.push_back(has_offset ? cols[3] : cols[0] - ps.R1());
    u.push_back(cols[1]);
    flux.push_back(cols[2]);
  }
  if (offsets.empty()) throw SpecError("--eig", "no data rows");
  if (!(r_end > 0.0)) r_end = ps.R1() + offsets.back() * (1.0 + 1e-12);
  Eigenpair eig;
  eig.mesh = Mesh(ps.R1(), r_end, std::move(offsets));
  eig.u = std::move(u);
  eig.flux = std::move(flux);
  return eig;
}

}  // namespace radplap::cli
