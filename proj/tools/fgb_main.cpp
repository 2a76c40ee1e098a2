#include <filesystem>
#include <fstream>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgb/config.hpp"
#include "fgb/csv.hpp"
#include "fgb/errors.hpp"
#include "fgb/graph.hpp"
#include "fgb/runner.hpp"
#include "fgb/svg.hpp"
#include "fgb/trace.hpp"

namespace {

nlohmann::json metadata_json(const fgb::RunResult& result) {
  const fgb::RunMetadata& m = result.meta;
  nlohmann::json j;
  j["k"] = m.num_actions;
  j["T"] = m.horizon;
  j["reps"] = m.reps;
  j["seed"] = m.master_seed;
  j["delta"] = m.delta;
  j["learner"] = m.learner;
  j["protocol"] = m.protocol;
  j["stats_source"] = m.stats_source;
  j["sum_alpha"] = m.bounds.sum_alpha;
  j["max_alpha"] = m.bounds.max_alpha;
  j["sum_d"] = m.bounds.sum_d;
  j["sum_alpha_tilde"] = m.bounds.sum_alpha_tilde;
  j["max_alpha_tilde"] = m.bounds.max_alpha_tilde;
  j["params"] = m.resolved_params;
  j["eps_clamped_rounds"] = m.total_clamps;
  j["bound_ratio"] =
      fgb::bound_ratio(result.traces, m.bounds, m.delta, m.learner);
  std::vector<double> finals;
  for (const auto& tr : result.traces) finals.push_back(tr.final_regret());
  j["final_regret_median"] = fgb::nearest_rank_quantile(finals, 0.5);
  j["final_regret_q90"] = fgb::nearest_rank_quantile(finals, 0.9);
  return j;
}

struct RunOverrides {
  std::optional<std::string> out;
  std::optional<int> reps;
  std::optional<long long> seed;
  std::optional<int> workers;
};

int cmd_run(const std::string& config_path, const RunOverrides& over) {
  fgb::RunConfig cfg = fgb::load_run_config(config_path);
  if (over.out) cfg.out_dir = *over.out;
  if (over.reps) cfg.reps = *over.reps;
  if (over.seed) cfg.master_seed = static_cast<std::uint64_t>(*over.seed);
  if (over.workers) cfg.workers = *over.workers;
  if (cfg.reps < 1) throw fgb::ConfigError("reps must be >= 1");
  if (cfg.workers < 1) throw fgb::ConfigError("workers must be >= 1");

  std::filesystem::create_directories(cfg.out_dir);
  const fgb::RunResult result = fgb::run_experiment(cfg);

  const std::string csv_path =
      (std::filesystem::path(cfg.out_dir) / "results.csv").string();
  fgb::write_csv(result.traces, csv_path);
  const std::string meta_path =
      (std::filesystem::path(cfg.out_dir) / "meta.json").string();
  std::ofstream meta(meta_path);
  meta << metadata_json(result).dump(2) << "\n";

  std::cout << "wrote " << csv_path << " (" << result.traces.size()
            << " reps x " << cfg.horizon << " rounds)\n";
  std::cout << "wrote " << meta_path << "\n";
  return 0;
}

int cmd_plot(const std::string& in_path, std::vector<double> quantiles,
             const std::string& out_path, bool loglog) {
  if (quantiles.empty()) quantiles.push_back(0.5);
  for (double q : quantiles) {
    if (!(q > 0.0 && q < 1.0)) {
      throw fgb::ConfigError("quantile levels must lie in (0, 1)");
    }
  }
  const fgb::CsvRuns runs = fgb::read_run_csv(in_path);

  const std::size_t horizon = runs.regret.front().size();
  for (const auto& r : runs.regret) {
    if (r.size() != horizon) {
      throw fgb::ConfigError("CSV repetitions have unequal lengths");
    }
  }
  std::vector<fgb::PlotCurve> curves;
  std::vector<double> column(runs.regret.size());
  for (double q : quantiles) {
    fgb::PlotCurve curve;
    curve.label = "q" + fgb::format_double(q);
    curve.values.resize(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t r = 0; r < runs.regret.size(); ++r) {
        column[r] = runs.regret[r][t];
      }
      curve.values[t] = fgb::nearest_rank_quantile(column, q);
    }
    curves.push_back(std::move(curve));
  }
  fgb::write_svg(
      fgb::render_line_chart(curves, "round", "cumulative regret", loglog),
      out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_graph_info(const std::string& path) {
  const auto graphs = fgb::read_graph_sequence_file(path);
  for (std::size_t idx = 0; idx < graphs.size(); ++idx) {
    const fgb::FeedbackGraph& g = graphs[idx];
    if (graphs.size() > 1) std::cout << "graph " << idx << ":\n";
    std::cout << "K = " << g.num_nodes() << "\n";
    std::cout << "classification = " << fgb::to_string(fgb::classify(g))
              << "\n";
    auto print_set = [](const std::vector<int>& s) {
      std::string out = "{";
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
      }
      return out + "}";
    };
    std::cout << "self_loops = " << print_set(g.self_loop_set()) << "\n";
    if (fgb::classify(g) != fgb::Observability::kUnobservable) {
      std::cout << "greedy_weak_dominating_set = "
                << print_set(fgb::greedy_weak_dominating_set(g)) << "\n";
    }
    if (g.num_nodes() <= fgb::kMaxExactIndependenceNodes) {
      std::cout << "independence_number = "
                << fgb::independence_number_exact(g) << "\n";
    }
    if (g.num_nodes() <= fgb::kMaxExactDominationNodes &&
        fgb::classify(g) != fgb::Observability::kUnobservable) {
      std::cout << "weak_domination_number = "
                << fgb::weak_domination_number_exact(g) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation harness for bandits with feedback graphs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int reps = 0, workers = 0;
  long long seed = 0;
  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("--config", config_path, "config file")->required();
  auto* out_opt = run->add_option("--out", out_dir,
                                  "output directory (overrides config)");
  auto* reps_opt = run->add_option("--reps", reps, "repetition count override");
  auto* seed_opt = run->add_option("--seed", seed, "master seed override");
  auto* workers_opt =
      run->add_option("--workers", workers, "worker thread override");

  std::string plot_in, plot_out;
  std::vector<double> quantiles;
  bool loglog = false;
  CLI::App* plot = app.add_subcommand("plot", "plot quantile regret curves");
  plot->add_option("--in", plot_in, "results.csv from a run")->required();
  plot->add_option("--quantile", quantiles, "quantile level(s) in (0,1)");
  plot->add_option("--out", plot_out, "output SVG path")->required();
  plot->add_flag("--loglog", loglog, "log-log axes");

  std::string graph_path;
  CLI::App* ginfo = app.add_subcommand("graph-info", "inspect a graph file");
  ginfo->add_option("--graph", graph_path, "graph text file")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      RunOverrides over;
      if (*out_opt) over.out = out_dir;
      if (*reps_opt) over.reps = reps;
      if (*seed_opt) over.seed = seed;
      if (*workers_opt) over.workers = workers;
      return cmd_run(config_path, over);
    }
    if (plot->parsed()) return cmd_plot(plot_in, quantiles, plot_out, loglog);
    if (ginfo->parsed()) return cmd_graph_info(graph_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors; --help is not
  } catch (const fgb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fgb::ProtocolError& e) {
    std::cerr << "protocol violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
