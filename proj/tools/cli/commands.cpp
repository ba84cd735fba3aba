#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cli/cli.hpp"
#include "cli/serialize.hpp"
#include "radplap/asymptotics.hpp"
#include "radplap/conditions.hpp"
#include "radplap/degiorgi.hpp"
#include "radplap/presets.hpp"
#include "radplap/problem_io.hpp"
#include "radplap/solver.hpp"

namespace radplap::cli {
namespace {

constexpr double kAgreementTol = 1e-3;
// Truncation radius for boundary fits at infinity, as a multiple of max(R1, 1).
constexpr int kFarTruncationLog2 = 30;

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Boundary> boundaries(const std::string& which) {
  if (which == "left") return {Boundary::left};
  if (which == "right") return {Boundary::right};
  return {Boundary::left, Boundary::right};
}

double far_radius(const ProblemSpec& ps) {
  return std::ldexp(ps.R1() > 0.0 ? ps.R1() : 1.0, kFarTruncationLog2);
}

/// Eigenpair used for boundary asymptotics: one solve, truncated far out on
/// exterior domains so the window at infinity sits well inside the mesh.
Eigenpair solve_for_asymptotics(const ProblemSpec& ps, std::size_t nodes, double tol) {
  SolveOptions so;
  so.mesh.nodes = nodes;
  so.rel_tol = tol;
  if (ps.exterior()) so.truncation_radii = {far_radius(ps)};
  return find_lambda1(ps, so);
}

struct BoundaryOutcome {
  json j;
  bool pass = false;
};

BoundaryOutcome check_boundary(RunContext& ctx, const ProblemSpec& ps, const Eigenpair& eig,
                               Boundary b) {
  BoundaryOutcome res;
  std::optional<double> eps;
  try {
    eps = b == Boundary::left ? search_eps_L(ps) : search_eps_R(ps);
  } catch (const std::exception&) {
  }
  try {
    const AsymptoticVerdict v = sandwich_check(ps, eig, b);
    res.j = to_json(v);
    res.pass = v.pass;
    std::ostringstream csv;
    csv << "r,u,envelope,ratio\n";
    for (const auto& row : envelope_table(ps, eig, b, v.window)) {
      csv << fmt(row.r) << ',' << fmt(row.u) << ',' << fmt(row.envelope) << ',' << fmt(row.ratio)
          << '\n';
    }
    ctx.write("envelope_" + std::string(to_string(b)) + ".csv", csv.str());
  } catch (const std::invalid_argument& e) {
    res.j = {{"boundary", std::string(to_string(b))}, {"pass", false}, {"error", e.what()}};
  }
  res.j["precondition_eps_infimum"] = eps ? num(*eps) : json(nullptr);
  return res;
}

std::string verdict_line(const json& v) {
  std::ostringstream os;
  os << v["boundary"].get<std::string>() << ": ";
  if (v.contains("error")) {
    os << "error (" << v["error"].get<std::string>() << ")";
    return os.str();
  }
  os << "exponent " << v["fitted_exponent"].dump();
  if (!v["theoretical_exponent"].is_null()) os << " (theory " << v["theoretical_exponent"].dump() << ")";
  os << ", ratio " << v["ratio_min"].dump() << ".." << v["ratio_max"].dump() << ", "
     << (v["pass"].get<bool>() ? "pass" : "FAIL");
  return os.str();
}

}  // namespace

void RunContext::write(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(global.out_dir);
  const auto path = global.out_dir / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  outputs.push_back(name);
}

void RunContext::write_json(const std::string& name, const json& j) {
  write(name, j.dump(2) + "\n");
}

void RunContext::report(const json& j, const std::string& text) {
  if (global.json) {
    out << j.dump(2) << '\n';
  } else {
    out << text;
  }
}

ProblemSpec ProblemSource::load() const {
  if (!path.empty() && !preset.empty()) throw std::invalid_argument("give either --problem or --preset");
  if (!path.empty()) return load_problem(path);
  if (!preset.empty()) return preset_by_name(preset);
  throw std::invalid_argument("a problem is required (--problem FILE or --preset NAME)");
}

int cmd_check_conditions(RunContext& ctx, const CheckArgs& a) {
  const ProblemSpec ps = a.problem.load();
  ctx.problem_hash = problem_hash(ps);
  const auto reports = check_all(ps, a.xi, a.eps, ctx.global.tol);
  json arr = json::array();
  std::ostringstream text;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    text << to_string(r.id) << ": " << to_string(r.verdict);
    if (!r.failed_clause.empty()) text << " (" << r.failed_clause << ")";
    text << '\n';
  }
  ctx.write_json("conditions.json", arr);
  ctx.report(arr, text.str());
  return reports.front().verdict == CheckVerdict::holds ? kPass : kVerdictFail;
}

int cmd_solve(RunContext& ctx, const SolveArgs& a) {
  const ProblemSpec ps = a.problem.load();
  ctx.problem_hash = problem_hash(ps);
  if (a.method != "shoot" && a.method != "rayleigh" && a.method != "both") {
    throw std::invalid_argument("--method must be shoot, rayleigh or both");
  }
  if (a.truncation != "dirichlet" && a.truncation != "decay") {
    throw std::invalid_argument("--truncation must be dirichlet or decay");
  }
  if (!ps.exterior() && (a.rmax || a.ladder)) {
    throw std::invalid_argument("--rmax and --ladder apply to exterior domains only");
  }
  if (!a.force) {
    const auto A = check_A(ps, ctx.global.tol);
    if (A.verdict != CheckVerdict::holds) {
      ctx.err << "condition (A) is " << to_string(A.verdict)
              << "; the eigenvalue may not exist (use --force to solve anyway)\n";
      return kVerdictFail;
    }
  }
  SolveOptions so;
  so.mesh.nodes = a.nodes;
  so.rel_tol = ctx.global.tol;
  so.truncation = a.truncation == "decay" ? TruncationCondition::decay_matching
                                          : TruncationCondition::dirichlet;
  if (ps.exterior()) {
    if (a.rmax) {
      so.truncation_radii = {*a.rmax};
    } else if (a.ladder) {
      if (*a.ladder < 2) throw std::invalid_argument("--ladder must be at least 2");
      so.truncation_radii = default_truncation_ladder(ps, 2, *a.ladder);
    }
  }

  json doc = {{"command", "solve"}, {"problem_hash", ctx.problem_hash}, {"method", a.method}};
  bool ok = true;
  std::ostringstream text;
  std::optional<Eigenpair> shot;
  if (a.method != "rayleigh") {
    shot = find_lambda1(ps, so);
    const auto& d = shot->diagnostics;
    const double lam = d.extrapolated.value_or(shot->lambda);
    doc["lambda1"] = num(lam);
    doc["zero_count"] = shot->zero_count;
    doc["shoot"] = to_json(d);
    if (ps.exterior()) doc["lambda1_truncated"] = num(shot->lambda);
    ok = ok && shot->zero_count == 0 && d.notes.empty();
    ctx.write("eigenfunction.csv", eigenfunction_csv(*shot));
    text << "lambda1 = " << fmt(lam) << '\n';
    if (ps.exterior()) {
      for (const auto& [R, l] : d.ladder) text << "  R_max = " << fmt(R) << ": " << fmt(l) << '\n';
    }
  }
  if (a.method != "shoot") {
    const double r_end = ps.exterior()
                             ? (so.truncation_radii.empty() ? default_truncation_ladder(ps).back()
                                                            : so.truncation_radii.back())
                             : ps.R2();
    const Mesh mesh = shot ? shot->mesh : Mesh::graded(ps, r_end, so.mesh);
    const Eigenpair ray = rayleigh_minimize(ps, mesh);
    doc["rayleigh"] = to_json(ray.diagnostics);
    doc["rayleigh"]["lambda"] = num(ray.lambda);
    ok = ok && !ray.diagnostics.inconclusive;
    ctx.write(shot ? "eigenfunction_rayleigh.csv" : "eigenfunction.csv", eigenfunction_csv(ray));
    text << "rayleigh lambda = " << fmt(ray.lambda) << '\n';
    if (shot) {
      const double rel = std::abs(shot->lambda - ray.lambda) / shot->lambda;
      doc["agreement"] = num(rel);
      ok = ok && rel <= kAgreementTol;
      text << "relative difference = " << fmt(rel) << '\n';
    } else {
      doc["lambda1"] = num(ray.lambda);
      doc["zero_count"] = ray.zero_count;
    }
  }
  doc["pass"] = ok;
  ctx.write_json("solve.json", doc);
  ctx.report(doc, text.str());
  return ok ? kPass : kVerdictFail;
}

int cmd_asymptotics(RunContext& ctx, const AsymptoticsArgs& a) {
  const ProblemSpec ps = a.problem.load();
  ctx.problem_hash = problem_hash(ps);
  if (a.boundary != "left" && a.boundary != "right" && a.boundary != "both") {
    throw std::invalid_argument("--boundary must be left, right or both");
  }
  const Eigenpair eig = a.eig.empty() ? solve_for_asymptotics(ps, a.nodes, ctx.global.tol)
                                      : read_eigenfunction_csv(a.eig, ps);
  json verdicts = json::array();
  bool ok = true;
  std::ostringstream text;
  for (Boundary b : boundaries(a.boundary)) {
    const auto outcome = check_boundary(ctx, ps, eig, b);
    verdicts.push_back(outcome.j);
    ok = ok && outcome.pass;
    text << verdict_line(outcome.j) << '\n';
  }
  json doc = {{"command", "asymptotics"},
              {"problem_hash", ctx.problem_hash},
              {"truncation_radius", num(eig.mesh.r_end())},
              {"verdicts", verdicts},
              {"pass", ok}};
  ctx.write_json("asymptotics.json", doc);
  ctx.report(doc, text.str());
  return ok ? kPass : kVerdictFail;
}

int cmd_degiorgi(RunContext& ctx, const DegiorgiArgs& a) {
  RecursionParams p;
  p.K = a.K;
  p.eta = a.eta;
  p.delta1 = a.d1;
  p.delta2 = a.d2;
  p.n_max = a.n_max;
  if (a.alternative != "first" && a.alternative != "second" && a.alternative != "both") {
    throw std::invalid_argument("--alternative must be first, second or both");
  }
  if (a.sweep) {
    json doc = {{"command", "degiorgi"}, {"seed", ctx.global.seed}, {"draws", *a.sweep}};
    std::ostringstream text;
    bool ok = true;
    for (const char* alt : {"first", "second"}) {
      if (a.alternative != "both" && a.alternative != alt) continue;
      const auto choice = std::string(alt) == "first" ? ThresholdChoice::first : ThresholdChoice::second;
      const SweepSummary s = sweep(*a.sweep, ctx.global.seed, choice, a.n_max);
      doc[alt] = to_json(s);
      ok = ok && s.counterexamples == 0;
      text << alt << " threshold: " << s.counterexamples << " counterexamples in " << s.draws
           << " draws\n";
    }
    doc["pass"] = ok;
    ctx.problem_hash = hex64(fnv1a(doc.dump()));
    ctx.write_json("degiorgi.json", doc);
    ctx.report(doc, text.str());
    return ok ? kPass : kVerdictFail;
  }
  if (!a.J0) throw std::invalid_argument("--J0 is required unless --sweep is given");
  p.J0 = *a.J0;
  p.validate();
  const Thresholds thr = threshold(p);
  const RecursionTrace tr = simulate(p);
  const BoundCheck bc = verify_bound(p);
  json head = json::array();
  for (std::size_t n = 0; n < tr.J.size() && n < 20; ++n) head.push_back(num(tr.J[n]));
  json doc = {{"command", "degiorgi"},
              {"params", to_json(p)},
              {"thresholds", {{"first", num(thr.first)}, {"second", num(thr.second)}}},
              {"trace_length", tr.J.size()},
              {"overflow", tr.overflow},
              {"truncated", tr.truncated},
              {"J_head", head},
              {"bound", to_json(bc)}};
  const bool ok = !bc.precondition_met || bc.holds;
  doc["pass"] = ok;
  ctx.problem_hash = hex64(fnv1a(to_json(p).dump()));
  std::ostringstream csv;
  csv << "n,J,log_J,log_bound\n";
  for (std::size_t n = 0; n < tr.J.size(); ++n) {
    csv << n << ',' << fmt(tr.J[n]) << ',' << fmt(tr.log_J[n]) << ',' << fmt(log_decay_bound(p, n))
        << '\n';
  }
  ctx.write("degiorgi_trace.csv", csv.str());
  ctx.write_json("degiorgi.json", doc);
  std::ostringstream text;
  text << "thresholds: " << fmt(thr.first) << ", " << fmt(thr.second) << '\n'
       << "precondition " << (bc.precondition_met ? "met" : "not met") << ", n0 = "
       << (bc.n0 ? std::to_string(*bc.n0) : std::string("none")) << ", bound "
       << (bc.holds ? "holds" : "violated") << '\n';
  ctx.report(doc, text.str());
  return ok ? kPass : kVerdictFail;
}

int cmd_example(RunContext& ctx, const ExampleArgs& a) {
  const ProblemSpec ps = preset_by_name(a.name);
  ctx.problem_hash = problem_hash(ps);
  ctx.write("problem.json", problem_to_json(ps) + "\n");
  json doc = {{"command", "example"},
              {"preset", a.name},
              {"description", preset_description(a.name)},
              {"problem_hash", ctx.problem_hash}};
  std::ostringstream text;
  text << a.name << ": " << preset_description(a.name) << '\n';

  const auto reports = check_all(ps, std::nullopt, std::nullopt, ctx.global.tol);
  json conds = json::array();
  for (const auto& r : reports) {
    conds.push_back(to_json(r));
    text << "  " << to_string(r.id) << ": " << to_string(r.verdict) << '\n';
  }
  ctx.write_json("conditions.json", conds);
  doc["conditions"] = conds;
  if (reports.front().verdict != CheckVerdict::holds) {
    doc["pass"] = false;
    doc["notes"] = "condition (A) does not hold; solve skipped";
    text << "  condition (A) does not hold; solve skipped\n";
    ctx.write_json("example.json", doc);
    ctx.report(doc, text.str());
    return kVerdictFail;
  }

  SolveOptions so;
  so.mesh.nodes = a.nodes;
  so.rel_tol = ctx.global.tol;
  const Eigenpair eig = find_lambda1(ps, so);
  const double lam = eig.diagnostics.extrapolated.value_or(eig.lambda);
  doc["lambda1"] = num(lam);
  doc["zero_count"] = eig.zero_count;
  doc["solve"] = to_json(eig.diagnostics);
  ctx.write("eigenfunction.csv", eigenfunction_csv(eig));
  text << "  lambda1 = " << fmt(lam) << '\n';
  bool ok = eig.zero_count == 0;

  const Eigenpair far = ps.exterior() ? solve_for_asymptotics(ps, a.nodes, ctx.global.tol) : eig;
  if (ps.exterior()) doc["lambda1_far_truncation"] = num(far.lambda);
  json verdicts = json::array();
  std::ostringstream table;
  table << "boundary,fitted_exponent,theoretical_exponent,ratio_min,ratio_max,pass\n";
  for (Boundary b : {Boundary::left, Boundary::right}) {
    const auto outcome = check_boundary(ctx, ps, far, b);
    verdicts.push_back(outcome.j);
    ok = ok && outcome.pass;
    text << "  " << verdict_line(outcome.j) << '\n';
    const json& v = outcome.j;
    auto cell = [&](const char* key) {
      if (!v.contains(key) || v[key].is_null()) return std::string();
      return v[key].is_string() ? v[key].get<std::string>() : fmt(v[key].get<double>());
    };
    table << to_string(b) << ',' << cell("fitted_exponent") << ',' << cell("theoretical_exponent")
          << ',' << cell("ratio_min") << ',' << cell("ratio_max") << ','
          << (outcome.pass ? "true" : "false") << '\n';
  }
  doc["asymptotics"] = verdicts;
  doc["pass"] = ok;
  ctx.write("summary.csv", table.str());
  ctx.write_json("example.json", doc);
  ctx.report(doc, text.str());
  return ok ? kPass : kVerdictFail;
}

}  // namespace radplap::cli
