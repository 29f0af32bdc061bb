// Command-line front end: variate generation, OU path simulation, moment
// validation and method timing.
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsou/bench.hpp"
#include "tsou/dgga.hpp"
#include "tsou/ibgm.hpp"
#include "tsou/iga.hpp"
#include "tsou/numeric.hpp"
#include "tsou/ou.hpp"
#include "tsou/report_io.hpp"
#include "tsou/tempered_stable.hpp"
#include "tsou/validation.hpp"

namespace {

struct DistFlags {
  double beta = 0.9;
  double gamma = 1.0;
  double p = 1.0;
  double eta = 2.0;
};

struct TsFlags {
  double alpha = 0.5;
  double p = 1.5;
  double c = 1.0;
  double beta_temper = 1.0;
  double b = 0.0;
};

struct OuFlags {
  std::string kind = "tsou";
  TsFlags ts;
  double lambda = 10.0;
  double t_step = 0.1;
  int n_steps = 100;
  int paths = 10;
  double y0 = 0.0;
};

tsou::TSParams make_ts_params(const TsFlags& f) {
  return tsou::TSParams(f.alpha, f.p,
                        tsou::rdts_measure(f.c, f.beta_temper, f.alpha), f.b);
}

tsou::OUSpec make_ou_spec(const OuFlags& f) {
  const tsou::OUKind kind =
      f.kind == "tsou" ? tsou::OUKind::TSOU : tsou::OUKind::OUTS;
  return tsou::OUSpec(f.lambda, kind, make_ts_params(f.ts));
}

std::function<double(tsou::RandomStream&)> make_draw(
    const std::string& dist, const std::string& method, const DistFlags& d,
    const TsFlags& ts, std::vector<std::shared_ptr<void>>& keep_alive) {
  if (dist == "iga") {
    auto sampler = std::make_shared<tsou::IGaSampler>(
        tsou::IGaParams(d.beta, d.gamma, d.p, d.eta),
        tsou::iga_method_from_string(method.empty() ? "args" : method));
    keep_alive.push_back(sampler);
    return [sampler](tsou::RandomStream& s) { return sampler->draw(s); };
  }
  if (dist == "ibgm") {
    const tsou::IBGMParams params(d.beta, static_cast<int>(d.gamma), d.p, d.eta);
    const tsou::IBGMMethod m = method.empty()
                                   ? tsou::ibgm_auto_method(params)
                                   : tsou::ibgm_method_from_string(method);
    auto sampler = std::make_shared<tsou::IBGMSampler>(params, m);
    keep_alive.push_back(sampler);
    return [sampler](tsou::RandomStream& s) { return sampler->draw(s); };
  }
  if (dist == "dgga") {
    const tsou::DGGaParams params(d.gamma, d.p, d.eta);
    return [params](tsou::RandomStream& s) { return sample_dgga(s, params); };
  }
  if (dist == "ts") {
    auto sampler =
        std::make_shared<tsou::TempStableSampler>(make_ts_params(ts));
    keep_alive.push_back(sampler);
    return [sampler](tsou::RandomStream& s) { return sampler->draw(s); };
  }
  throw tsou::config_error("unknown distribution: " + dist);
}

std::function<double(int)> make_oracle(const std::string& dist,
                                       const DistFlags& d) {
  if (dist == "iga") {
    const tsou::IGaParams params(d.beta, d.gamma, d.p, d.eta);
    return [params](int k) { return tsou::iga_moment(params, k); };
  }
  if (dist == "ibgm") {
    const tsou::IBGMParams params(d.beta, static_cast<int>(d.gamma), d.p,
                                  d.eta);
    return [params](int k) { return tsou::ibgm_moment(params, k); };
  }
  if (dist == "dgga") {
    const tsou::DGGaParams params(d.gamma, d.p, d.eta);
    return [params](int k) { return tsou::dgga_moment(params, k); };
  }
  return nullptr;
}

std::vector<long long> parse_sizes(const std::string& text) {
  std::vector<long long> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    sizes.push_back(std::stoll(item));
  }
  return sizes;
}

void add_dist_flags(CLI::App* cmd, DistFlags& d) {
  cmd->add_option("--beta", d.beta, "beta parameter");
  cmd->add_option("--gamma", d.gamma, "gamma parameter");
  cmd->add_option("--p", d.p, "p parameter");
  cmd->add_option("--eta", d.eta, "eta parameter (> 1)");
}

void add_ts_flags(CLI::App* cmd, TsFlags& f) {
  cmd->add_option("--alpha", f.alpha, "stability index (< 2)");
  cmd->add_option("--p", f.p, "tempering exponent");
  cmd->add_option("--c", f.c, "atom intensity c");
  cmd->add_option("--beta-temper", f.beta_temper, "tempering rate beta");
  cmd->add_option("--b", f.b, "shift");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tempered stable OU process simulation toolkit"};
  app.require_subcommand(1);

  // --- sample ---
  auto* sample_cmd = app.add_subcommand("sample", "draw variates");
  std::string sample_dist = "iga";
  std::string sample_method;
  long long sample_n = 10;
  std::uint64_t sample_seed = 0;
  std::string sample_out = "-";
  DistFlags sample_flags;
  TsFlags sample_ts;
  sample_cmd->add_option("--dist", sample_dist, "iga|ibgm|dgga|ts")->required();
  sample_cmd->add_option("--method", sample_method,
                         "iga: args|inverse|arg|arbd; ibgm: inverse|args|ggsm");
  sample_cmd->add_option("--n", sample_n, "number of draws");
  sample_cmd->add_option("--seed", sample_seed, "RNG seed (default 0)");
  sample_cmd->add_option("--out", sample_out, "output CSV path or -");
  add_dist_flags(sample_cmd, sample_flags);
  add_ts_flags(sample_cmd, sample_ts);

  // --- ou simulate ---
  auto* ou_cmd = app.add_subcommand("ou", "OU process commands");
  ou_cmd->require_subcommand(1);
  auto* sim_cmd = ou_cmd->add_subcommand("simulate", "simulate paths on a grid");
  OuFlags ou_flags;
  std::uint64_t ou_seed = 0;
  std::string ou_out = "-";
  std::string ou_plot;
  sim_cmd->add_option("--kind", ou_flags.kind, "tsou|outs")->required();
  add_ts_flags(sim_cmd, ou_flags.ts);
  sim_cmd->add_option("--lambda", ou_flags.lambda, "mean reversion rate");
  sim_cmd->add_option("--t-step", ou_flags.t_step, "grid spacing");
  sim_cmd->add_option("--n-steps", ou_flags.n_steps, "number of steps");
  sim_cmd->add_option("--paths", ou_flags.paths, "number of paths");
  sim_cmd->add_option("--y0", ou_flags.y0, "initial value");
  sim_cmd->add_option("--seed", ou_seed, "RNG seed (default 0)");
  sim_cmd->add_option("--out", ou_out, "output CSV path or -");
  sim_cmd->add_option("--plot-script", ou_plot,
                      "also emit a matplotlib script referencing the CSV");

  // --- validate ---
  auto* val_cmd = app.add_subcommand("validate", "empirical vs oracle moments");
  std::string val_target = "iga";
  std::string val_method;
  long long val_n = 50000;
  std::uint64_t val_seed = 0;
  std::string val_out = "-";
  std::string val_format = "json";
  DistFlags val_flags;
  OuFlags val_ou;
  val_cmd->add_option("--target", val_target, "iga|ibgm|dgga|tsou|outs")
      ->required();
  val_cmd->add_option("--method", val_method, "sampler method where applicable");
  val_cmd->add_option("--n", val_n, "sample size");
  val_cmd->add_option("--seed", val_seed, "RNG seed (default 0)");
  val_cmd->add_option("--out", val_out, "output path or -");
  val_cmd->add_option("--format", val_format, "json|csv");
  add_dist_flags(val_cmd, val_flags);
  add_ts_flags(val_cmd, val_ou.ts);
  val_cmd->add_option("--lambda", val_ou.lambda, "mean reversion rate");
  val_cmd->add_option("--t-step", val_ou.t_step, "transition horizon");
  val_cmd->add_option("--y0", val_ou.y0, "conditioning value");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "method timing comparison");
  std::string bench_dist = "iga";
  std::string bench_methods = "args,inverse,arg,arbd";
  std::string bench_sizes = "1000,10000,20000,50000";
  int bench_reps = 5;
  std::uint64_t bench_seed = 0;
  std::string bench_out = "-";
  std::string bench_format = "csv";
  DistFlags bench_flags;
  bench_cmd->add_option("--dist", bench_dist, "iga|ibgm")->required();
  bench_cmd->add_option("--methods", bench_methods,
                        "comma-separated; first is the baseline");
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated sample sizes");
  bench_cmd->add_option("--reps", bench_reps, "repetitions (>= 3)");
  bench_cmd->add_option("--seed", bench_seed, "RNG seed (default 0)");
  bench_cmd->add_option("--out", bench_out, "output path or -");
  bench_cmd->add_option("--format", bench_format, "csv|json");
  add_dist_flags(bench_cmd, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (*sample_cmd) {
      std::vector<std::shared_ptr<void>> keep_alive;
      auto draw =
          make_draw(sample_dist, sample_method, sample_flags, sample_ts,
                    keep_alive);
      tsou::RandomStream stream(sample_seed);
      std::vector<double> values(static_cast<std::size_t>(sample_n));
      for (auto& v : values) v = draw(stream);
      tsou::write_values_csv(values, "value", sample_out);
      return 0;
    }

    if (*sim_cmd) {
      const auto spec = make_ou_spec(ou_flags);
      const tsou::TrajectoryGrid grid(ou_flags.t_step, ou_flags.n_steps,
                                      ou_flags.paths, ou_flags.y0);
      tsou::RandomStream stream(ou_seed);
      const auto paths = tsou::simulate_paths(stream, spec, grid);
      tsou::write_path_csv(paths, ou_out);
      if (!ou_plot.empty()) {
        tsou::write_plot_script(ou_out, paths.n_paths, ou_plot);
      }
      return 0;
    }

    if (*val_cmd) {
      tsou::ValidationReport report;
      if (val_target == "tsou" || val_target == "outs") {
        val_ou.kind = val_target;
        const auto spec = make_ou_spec(val_ou);
        const auto decomposition =
            tsou::TransitionDecomposition::build(spec, val_ou.t_step);
        const double y0 = val_ou.y0;
        report = tsou::validate_moments(
            val_target, "transition",
            [&](tsou::RandomStream& s) {
              return decomposition.sample(s, y0);
            },
            [&](int k) {
              return tsou::transition_cumulant(spec, k, y0, val_ou.t_step);
            },
            4, val_n, val_seed, /*cumulants=*/true);
      } else {
        std::vector<std::shared_ptr<void>> keep_alive;
        auto draw = make_draw(val_target, val_method, val_flags, val_ou.ts,
                              keep_alive);
        auto oracle = make_oracle(val_target, val_flags);
        std::string method_name = val_method.empty() ? "default" : val_method;
        report = tsou::validate_moments(val_target, method_name, draw, oracle,
                                        4, val_n, val_seed,
                                        /*cumulants=*/false);
      }
      if (val_format == "csv") {
        tsou::write_report_csv(report, val_out);
      } else {
        tsou::write_report_json(report, val_out);
      }
      return report.all_passed() ? 0 : 2;
    }

    if (*bench_cmd) {
      std::vector<tsou::BenchTask> tasks;
      std::vector<std::shared_ptr<void>> keep_alive;
      std::stringstream ss(bench_methods);
      std::string method;
      while (std::getline(ss, method, ',')) {
        tasks.push_back({method, make_draw(bench_dist, method, bench_flags,
                                           TsFlags{}, keep_alive)});
      }
      const auto report = tsou::run_bench(bench_dist, tasks,
                                          parse_sizes(bench_sizes), bench_reps,
                                          bench_seed);
      if (bench_format == "json") {
        tsou::write_bench_json(report, bench_out);
      } else {
        tsou::write_bench_csv(report, bench_out);
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 1;
  } catch (const tsou::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
