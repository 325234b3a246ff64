// virtage: command-line front end for the virtual-age repair model.
//
// Subcommands:
//   expected   E[N(tau)] for one first-repair degree (quadrature, MC or both)
//   table1     E[N(tau)] across degrees 0.0..1.0 in steps of 0.1
//   simulate   Monte Carlo summary, optionally with a full trajectory CSV
//   sweep      E[N(tau)] over a uniform degree grid, as CSV
//
// Exit codes: 0 success, 2 invalid arguments or config, 3 numerical failure,
// 4 table1 reference mismatch.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "virtage/analytic.hpp"
#include "virtage/config.hpp"
#include "virtage/csv.hpp"
#include "virtage/errors.hpp"
#include "virtage/simulate.hpp"

namespace {

using virtage::EstimateResult;
using virtage::HazardSpec;
using virtage::RepairDegree;
using virtage::RepairPolicy;
using virtage::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitMismatch = 4;

// Reference values for the canonical configuration (lambda=1, alpha1=0.6,
// alpha2=0.5, beta1=2.5, beta2=2.8, a1=4, a2=8, tau=10). Entries published to
// two decimals carry tolerance 0.005; the two published to one decimal, 0.05.
struct ReferenceEntry {
  double delta;
  double value;
  double tolerance;
};

constexpr ReferenceEntry kReferenceTable[] = {
    {0.0, 33.78, 0.005}, {0.1, 27.3, 0.05},  {0.2, 22.4, 0.05},  {0.3, 18.81, 0.005},
    {0.4, 16.29, 0.005}, {0.5, 14.64, 0.005}, {0.6, 13.63, 0.005}, {0.7, 13.09, 0.005},
    {0.8, 12.86, 0.005}, {0.9, 12.79, 0.005}, {1.0, 12.78, 0.005},
};

bool matches_reference_setup(const HazardSpec& h, double tau) {
  return h.has_burn_in() && h.has_wear_out() && h.lambda() == 1.0 && h.alpha1() == 0.6 &&
         h.alpha2() == 0.5 && h.beta1() == 2.5 && h.beta2() == 2.8 && h.a1() == 4.0 &&
         h.a2() == 8.0 && tau == 10.0;
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    virtage::write_file_atomic(out_path, text);
  }
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  emit_text(j.dump(2) + "\n", out_path);
}

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string method;
  std::optional<double> delta;
  std::optional<std::uint64_t> reps;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_path, "output file (default: stdout)");
}

RepairPolicy effective_policy(const RunConfig& config, const CommonArgs& args) {
  return args.delta ? config.policy.with_scalar_degree(*args.delta) : config.policy;
}

RepairDegree strategy_degree(const RepairPolicy& policy) {
  if (policy.kind() != virtage::PolicyKind::FirstImperfectThenMinimal) {
    throw std::invalid_argument(
        "the closed-form estimate covers the first_imperfect_then_minimal policy only; "
        "use --method mc for other policies");
  }
  return RepairDegree(policy.scalar_degree());
}

EstimateResult run_mc(const RunConfig& config, const RepairPolicy& policy,
                      const CommonArgs& args, virtage::SamplingMethod sampler) {
  const virtage::McSettings mc = config.mc_or_default();
  const std::uint64_t reps = args.reps.value_or(mc.reps);
  const std::uint64_t seed = args.seed.value_or(mc.seed);
  return virtage::estimate_expected_failures_mc(config.hazard, policy, config.tau, reps, seed,
                                                sampler, args.threads);
}

int run_expected(const CommonArgs& args) {
  const RunConfig config = RunConfig::load_file(args.config_path);
  const RepairPolicy policy = effective_policy(config, args);

  nlohmann::json output;
  if (args.method == "quadrature" || args.method == "both") {
    const EstimateResult quad = virtage::expected_failures_strategy(
        config.hazard, strategy_degree(policy), config.tau, config.quadrature_or_default());
    output = quad.to_json();
  }
  if (args.method == "mc" || args.method == "both") {
    const EstimateResult mc = run_mc(config, policy, args, virtage::SamplingMethod::Inversion);
    if (args.method == "both") {
      output = nlohmann::json::array({output, mc.to_json()});
    } else {
      output = mc.to_json();
    }
  }
  emit_json(output, args.out_path);
  return kExitOk;
}

int run_table1(const CommonArgs& args) {
  const RunConfig config = RunConfig::load_file(args.config_path);
  const bool compare = matches_reference_setup(config.hazard, config.tau);

  std::ostringstream csv;
  csv << "delta,expected_failures,method,error_bound,reference_value,pass\n";
  bool all_pass = true;
  for (const ReferenceEntry& entry : kReferenceTable) {
    const EstimateResult r = virtage::expected_failures_strategy(
        config.hazard, RepairDegree(entry.delta), config.tau, config.quadrature_or_default());
    csv << virtage::format_decimal(entry.delta, 10) << ','
        << virtage::format_decimal(r.value, 10) << ",quadrature,"
        << virtage::format_decimal(r.error_bound, 10) << ',';
    if (compare) {
      const bool pass = std::fabs(r.value - entry.value) <= entry.tolerance;
      all_pass = all_pass && pass;
      csv << virtage::format_decimal(entry.value, 10) << ',' << (pass ? "pass" : "fail");
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  emit_text(csv.str(), args.out_path);
  if (compare && !all_pass) {
    std::cerr << "table1: computed values deviate from the reference column\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int run_simulate(const CommonArgs& args) {
  const RunConfig config = RunConfig::load_file(args.config_path);
  const RepairPolicy policy = effective_policy(config, args);
  const virtage::SamplingMethod sampler =
      virtage::sampling_method_from_string(args.method.empty() ? "inversion" : args.method);
  const virtage::McSettings mc = config.mc_or_default();
  const std::uint64_t reps = args.reps.value_or(mc.reps);
  const std::uint64_t seed = args.seed.value_or(mc.seed);
  if (reps < 1) throw std::invalid_argument("simulate: reps must be at least 1");

  std::optional<virtage::AtomicFileWriter> writer;
  if (!args.out_path.empty()) {
    writer.emplace(args.out_path);
    writer->stream() << "replication,index,time,degree,age_after\n";
  }

  virtage::CountAccumulator acc;
  virtage::for_each_trajectory_ordered(
      config.hazard, policy, config.tau, reps, seed, sampler, args.threads,
      [&](const virtage::Trajectory& traj) {
        acc.add(static_cast<double>(traj.failure_times.size()));
        if (writer) {
          for (std::size_t i = 0; i < traj.events.size(); ++i) {
            const virtage::RepairEvent& e = traj.events[i];
            writer->stream() << traj.replication << ',' << (i + 1) << ','
                             << virtage::format_decimal(e.time, 12) << ','
                             << virtage::format_decimal(e.degree.value(), 12) << ','
                             << virtage::format_decimal(e.age_after, 12) << '\n';
          }
        }
      });
  if (writer) writer->commit();

  std::cout << acc.result(seed, sampler).to_mc_json().dump(2) << "\n";
  return kExitOk;
}

int run_sweep(const CommonArgs& args, double from, double to, unsigned points) {
  const RunConfig config = RunConfig::load_file(args.config_path);
  if (!(from >= 0.0 && to <= 1.0 && from < to)) {
    throw std::invalid_argument("sweep: need 0 <= from < to <= 1");
  }
  if (points < 2) throw std::invalid_argument("sweep: need at least 2 grid points");

  std::vector<double> grid(points);
  for (unsigned i = 0; i < points; ++i) {
    grid[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.front() = from;
  grid.back() = to;

  const bool use_mc = args.method == "mc";
  std::ostringstream csv;
  csv << "delta,expected_failures,method,error_bound\n";
  for (double delta : grid) {
    double value = 0.0;
    double error = 0.0;
    if (use_mc) {
      CommonArgs mc_args = args;
      const EstimateResult r =
          run_mc(config, RepairPolicy::first_imperfect_then_minimal(delta), mc_args,
                 virtage::SamplingMethod::Inversion);
      value = r.value;
      error = r.error_bound;
    } else {
      const EstimateResult r = virtage::expected_failures_strategy(
          config.hazard, RepairDegree(delta), config.tau, config.quadrature_or_default());
      value = r.value;
      error = r.error_bound;
    }
    csv << virtage::format_decimal(delta, 10) << ',' << virtage::format_decimal(value, 10)
        << ',' << (use_mc ? "monte_carlo" : "quadrature") << ','
        << virtage::format_decimal(error, 10) << '\n';
  }
  emit_text(csv.str(), args.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual-age repair model for systems with a bathtub failure rate"};
  app.require_subcommand(1);

  CommonArgs expected_args;
  expected_args.method = "quadrature";
  CLI::App* expected = app.add_subcommand(
      "expected", "Expected failure count E[N(tau)] for one first-repair degree");
  add_common_options(expected, expected_args);
  expected->add_option("--method", expected_args.method, "quadrature, mc or both")
      ->check(CLI::IsMember({"quadrature", "mc", "both"}));
  double expected_delta = 0.0;
  CLI::Option* expected_delta_opt =
      expected->add_option("--delta", expected_delta, "override the first-repair degree")
          ->check(CLI::Range(0.0, 1.0));
  std::uint64_t expected_reps = 0;
  CLI::Option* expected_reps_opt =
      expected->add_option("--reps", expected_reps, "Monte Carlo replications");
  std::uint64_t expected_seed = 0;
  CLI::Option* expected_seed_opt =
      expected->add_option("--seed", expected_seed, "Monte Carlo master seed");
  expected->add_option("--threads", expected_args.threads, "worker threads for Monte Carlo");

  CommonArgs table1_args;
  CLI::App* table1 = app.add_subcommand(
      "table1", "Expected failure counts across degrees 0.0..1.0 in steps of 0.1");
  add_common_options(table1, table1_args);

  CommonArgs simulate_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo replications: summary JSON plus optional trajectory CSV");
  simulate->add_option("--config", simulate_args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", simulate_args.out_path, "trajectory CSV path");
  simulate->add_option("--method", simulate_args.method, "inversion or thinning")
      ->check(CLI::IsMember({"inversion", "thinning"}));
  double simulate_delta = 0.0;
  CLI::Option* simulate_delta_opt =
      simulate->add_option("--delta", simulate_delta, "override the policy's repair degree")
          ->check(CLI::Range(0.0, 1.0));
  std::uint64_t simulate_reps = 0;
  CLI::Option* simulate_reps_opt =
      simulate->add_option("--reps", simulate_reps, "number of replications");
  std::uint64_t simulate_seed = 0;
  CLI::Option* simulate_seed_opt = simulate->add_option("--seed", simulate_seed, "master seed");
  simulate->add_option("--threads", simulate_args.threads, "worker threads");

  CommonArgs sweep_args;
  sweep_args.method = "quadrature";
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Expected failure count over a uniform first-repair degree grid");
  add_common_options(sweep, sweep_args);
  sweep->add_option("--method", sweep_args.method, "quadrature or mc")
      ->check(CLI::IsMember({"quadrature", "mc"}));
  double sweep_from = 0.0;
  double sweep_to = 1.0;
  unsigned sweep_points = 101;
  sweep->add_option("--from", sweep_from, "first degree (default 0)");
  sweep->add_option("--to", sweep_to, "last degree (default 1)");
  sweep->add_option("--points", sweep_points, "grid size (default 101)");
  std::uint64_t sweep_reps = 0;
  CLI::Option* sweep_reps_opt =
      sweep->add_option("--reps", sweep_reps, "Monte Carlo replications (with --method mc)");
  std::uint64_t sweep_seed = 0;
  CLI::Option* sweep_seed_opt =
      sweep->add_option("--seed", sweep_seed, "Monte Carlo master seed (with --method mc)");
  sweep->add_option("--threads", sweep_args.threads, "worker threads (with --method mc)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (expected_delta_opt->count() > 0) expected_args.delta = expected_delta;
  if (expected_reps_opt->count() > 0) expected_args.reps = expected_reps;
  if (expected_seed_opt->count() > 0) expected_args.seed = expected_seed;
  if (simulate_delta_opt->count() > 0) simulate_args.delta = simulate_delta;
  if (simulate_reps_opt->count() > 0) simulate_args.reps = simulate_reps;
  if (simulate_seed_opt->count() > 0) simulate_args.seed = simulate_seed;
  if (sweep_reps_opt->count() > 0) sweep_args.reps = sweep_reps;
  if (sweep_seed_opt->count() > 0) sweep_args.seed = sweep_seed;

  try {
    if (expected->parsed()) return run_expected(expected_args);
    if (table1->parsed()) return run_table1(table1_args);
    if (simulate->parsed()) return run_simulate(simulate_args);
    if (sweep->parsed()) return run_sweep(sweep_args, sweep_from, sweep_to, sweep_points);
    std::cerr << "error: no subcommand given\n";
    return kExitConfig;
  } catch (const virtage::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
