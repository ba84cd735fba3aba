#include "cli/cli.hpp"

#include <chrono>
#include <ctime>
#include <exception>
#include <functional>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/serialize.hpp"
#include "radplap/errors.hpp"
#include "radplap/presets.hpp"

#ifndef RADPLAP_VERSION
#define RADPLAP_VERSION "unknown"
#endif

namespace radplap::cli {
namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void add_problem_options(CLI::App* sub, ProblemSource& src) {
  sub->add_option("--problem", src.path, "Problem spec JSON file");
  sub->add_option("--preset", src.preset, "Built-in problem (see `example --help`)");
}

std::string preset_help() {
  std::string s = "Presets:\n";
  for (const auto& name : preset_names()) s += "  " + name + ": " + preset_description(name) + "\n";
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal eigenpairs of radial weighted p-Laplacian problems", "radial_plap"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", RADPLAP_VERSION);

  GlobalOptions global;
  app.add_option("--tol", global.tol, "Relative tolerance for quadrature and eigenvalues")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", global.out_dir, "Directory for output files");
  app.add_flag("--json", global.json, "Print the JSON result instead of a summary");
  app.add_option("--seed", global.seed, "Seed for randomized sweeps");

  CheckArgs check;
  auto* c = app.add_subcommand("check-conditions", "Check the weight conditions for a problem");
  add_problem_options(c, check.problem);
  c->add_option("--xi", check.xi, "Split point for the endpoint conditions");
  c->add_option("--eps", check.eps, "Exponent eps in (0, p-1) for the endpoint conditions");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute the principal eigenpair");
  add_problem_options(s, solve.problem);
  auto* rmax = s->add_option("--rmax", solve.rmax, "Single truncation radius (exterior domains)");
  s->add_option("--ladder", solve.ladder, "Truncation ladder R1*2^k for k = 2..K (exterior domains)")
      ->excludes(rmax);
  s->add_option("--method", solve.method, "shoot, rayleigh or both")
      ->check(CLI::IsMember({"shoot", "rayleigh", "both"}));
  s->add_option("--truncation", solve.truncation, "Condition at the truncation radius: dirichlet or decay")
      ->check(CLI::IsMember({"dirichlet", "decay"}));
  s->add_option("--nodes", solve.nodes, "Mesh nodes")->check(CLI::Range(16, 10000000));
  s->add_flag("--force", solve.force, "Solve even when condition (A) is not certified");

  AsymptoticsArgs asym;
  auto* a = app.add_subcommand("asymptotics", "Compare the eigenfunction with the boundary envelopes");
  add_problem_options(a, asym.problem);
  a->add_option("--eig", asym.eig, "Eigenfunction CSV written by `solve` (solved afresh when omitted)");
  a->add_option("--boundary", asym.boundary, "left, right or both")
      ->check(CLI::IsMember({"left", "right", "both"}));
  a->add_option("--nodes", asym.nodes, "Mesh nodes when solving")->check(CLI::Range(16, 10000000));

  DegiorgiArgs dg;
  auto* d = app.add_subcommand("degiorgi", "Simulate the recursion J_{n+1} <= K eta^n (J_n^{1+d1} + J_n^{1+d2})");
  d->add_option("--K", dg.K, "K > 0");
  d->add_option("--eta", dg.eta, "eta > 1");
  d->add_option("--d1", dg.d1, "delta1 > 0");
  d->add_option("--d2", dg.d2, "delta2 >= delta1");
  d->add_option("--J0", dg.J0, "Initial value");
  d->add_option("--sweep", dg.sweep, "Run a randomized sweep with this many draws instead");
  d->add_option("--alternative", dg.alternative, "Threshold used by the sweep: first, second or both")
      ->check(CLI::IsMember({"first", "second", "both"}));
  d->add_option("--n-max", dg.n_max, "Iteration cap");

  ExampleArgs ex;
  auto* e = app.add_subcommand("example", "Run check, solve and asymptotics on a preset");
  e->add_option("name", ex.name, "Preset name")->required();
  e->add_option("--nodes", ex.nodes, "Mesh nodes")->check(CLI::Range(16, 10000000));
  e->footer(preset_help());

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << RADPLAP_VERSION << '\n';
    return kPass;
  } catch (const CLI::ParseError& pe) {
    // Subcommand help requests arrive as ParseError with exit code 0.
    if (pe.get_exit_code() == 0) {
      const auto subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs.front()->help());
      return kPass;
    }
    err << "error: " << pe.what() << '\n';
    return kUsage;
  }

  RunContext ctx(global, out, err);
  const std::string started = utc_now();
  std::string command;
  std::function<int()> action;
  if (c->parsed()) {
    command = "check-conditions";
    action = [&] { return cmd_check_conditions(ctx, check); };
  } else if (s->parsed()) {
    command = "solve";
    action = [&] { return cmd_solve(ctx, solve); };
  } else if (a->parsed()) {
    command = "asymptotics";
    action = [&] { return cmd_asymptotics(ctx, asym); };
  } else if (d->parsed()) {
    command = "degiorgi";
    action = [&] { return cmd_degiorgi(ctx, dg); };
  } else {
    command = "example";
    action = [&] { return cmd_example(ctx, ex); };
  }

  int code;
  try {
    code = action();
  } catch (const SpecError& ex_) {
    err << "error: invalid problem: " << ex_.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& ex_) {
    err << "error: " << ex_.what() << '\n';
    return kUsage;
  } catch (const SolverError& ex_) {
    err << "error: solver failed: " << ex_.what();
    if (!std::isnan(ex_.location())) err << " at r = " << fmt(ex_.location());
    err << '\n';
    return kVerdictFail;
  } catch (const std::exception& ex_) {
    err << "error: " << ex_.what() << '\n';
    return kVerdictFail;
  }

  json manifest = {{"command", command},
                   {"tool_version", RADPLAP_VERSION},
                   {"problem_hash", ctx.problem_hash},
                   {"started_at", started},
                   {"finished_at", utc_now()},
                   {"exit_code", code}};
  json outputs = ctx.outputs;
  outputs.push_back("manifest.json");
  manifest["outputs"] = outputs;
  try {
    ctx.write_json("manifest.json", manifest);
  } catch (const std::exception& ex_) {
    err << "error: " << ex_.what() << '\n';
    return kVerdictFail;
  }
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace radplap::cli
