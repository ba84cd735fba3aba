#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radplap/weights.hpp"

namespace radplap::cli {

struct GlobalOptions {
  double tol = 1e-10;
  std::filesystem::path out_dir = "radplap-out";
  bool json = false;
  std::uint64_t seed = 20240601;
};

/// Shared state of one invocation: where to write and what has been written.
class RunContext {
 public:
  RunContext(GlobalOptions g, std::ostream& out, std::ostream& err)
      : global(std::move(g)), out(out), err(err) {}

  /// Writes `content` to out_dir/name and records it for the manifest.
  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  /// The document printed under --json, or a line of text otherwise.
  void report(const nlohmann::json& j, const std::string& text);

  GlobalOptions global;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> outputs;
  std::string problem_hash;
};

/// Either a spec file or a preset name.
struct ProblemSource {
  std::string path;
  std::string preset;
  ProblemSpec load() const;
};

struct CheckArgs {
  ProblemSource problem;
  std::optional<double> xi;
  std::optional<double> eps;
};

struct SolveArgs {
  ProblemSource problem;
  std::optional<double> rmax;
  std::optional<int> ladder;
  std::string method = "shoot";
  std::string truncation = "dirichlet";
  std::size_t nodes = 2000;
  bool force = false;
};

struct AsymptoticsArgs {
  ProblemSource problem;
  std::string eig;
  std::string boundary = "both";
  std::size_t nodes = 2000;
};

struct DegiorgiArgs {
  double K = 1.0;
  double eta = 2.0;
  double d1 = 1.0;
  double d2 = 1.0;
  std::optional<double> J0;
  std::optional<std::size_t> sweep;
  std::string alternative = "both";
  std::size_t n_max = 10000;
};

struct ExampleArgs {
  std::string name;
  std::size_t nodes = 2000;
};

int cmd_check_conditions(RunContext& ctx, const CheckArgs& a);
int cmd_solve(RunContext& ctx, const SolveArgs& a);
int cmd_asymptotics(RunContext& ctx, const AsymptoticsArgs& a);
int cmd_degiorgi(RunContext& ctx, const DegiorgiArgs& a);
int cmd_example(RunContext& ctx, const ExampleArgs& a);

}  // namespace radplap::cli
