#include "fgb/runner.hpp"

#include <stdexcept>

#include "fgb/errors.hpp"

namespace fgb {

std::shared_ptr<GraphSource> make_graph_source(const GraphConfig& cfg) {
  if (cfg.family == "self_loops_only") return make_self_loops_only(cfg.k);
  if (cfg.family == "union_of_cliques") {
    return make_union_of_cliques(cfg.clique_sizes);
  }
  if (cfg.family == "loopless_complete") return make_loopless_complete(cfg.k);
  if (cfg.family == "revealing_action") return make_revealing_action(cfg.k);
  if (cfg.family == "star_weak") return make_star_weak(cfg.k, cfg.hubs);
  if (cfg.family == "erdos_renyi") {
    return make_erdos_renyi_self_aware(cfg.k, cfg.density, cfg.seed);
  }
  if (cfg.family == "sequence") return make_sequence_source(cfg.file);
  throw ConfigError("unknown graph family: " + cfg.family);
}

std::unique_ptr<LossModel> make_loss_model(const LossConfig& cfg, int k) {
  if (cfg.model == "bernoulli") {
    if (static_cast<int>(cfg.means.size()) != k) {
      throw ConfigError("loss.means length must equal K");
    }
    return make_stochastic_losses(cfg.means);
  }
  if (cfg.model == "late_switch") return make_late_switch(k, cfg.switch_round);
  if (cfg.model == "adaptive_targeting") {
    return make_adaptive_targeting(k, cfg.window, cfg.safe_arm);
  }
  throw ConfigError("unknown loss model: " + cfg.model);
}

namespace {

std::unique_ptr<Learner> make_learner_impl(
    const RunConfig& cfg, int k, const HorizonStats& stats,
    std::map<std::string, double>* resolved) {
  auto note = [&](const std::string& name, double value) {
    if (resolved) (*resolved)[name] = value;
  };
  if (cfg.learner == "exp3ix") {
    auto [eta, gamma] = exp3ix_params(stats.sum_alpha, cfg.delta);
    if (cfg.eta) eta = *cfg.eta;
    if (cfg.gamma) gamma = *cfg.gamma;
    note("eta", eta);
    note("gamma", gamma);
    return std::make_unique<Exp3IXLearner>(k, eta, gamma);
  }
  if (cfg.learner == "strong") {
    StrongParams p = strong_params(stats.sum_alpha, cfg.delta);
    if (cfg.eta) p.eta = *cfg.eta;
    if (cfg.gamma) p.gamma = *cfg.gamma;
    if (cfg.beta) p.beta = *cfg.beta;
    note("eta", p.eta);
    note("gamma", p.gamma);
    note("beta", p.beta);
    return std::make_unique<StrongObsLearner>(k, p);
  }
  if (cfg.learner == "weak") {
    WeakParams p = weak_params(cfg.horizon, stats.sum_d, stats.sum_alpha_tilde,
                               cfg.delta);
    if (cfg.eta) p.eta = *cfg.eta;
    if (cfg.gamma) p.gamma = *cfg.gamma;
    if (cfg.eps) p.eps = *cfg.eps;
    note("eta", p.eta);
    note("gamma", p.gamma);
    note("eps", p.eps);
    return std::make_unique<WeakObsLearner>(k, p);
  }
  if (cfg.learner == "strong+doubling") {
    note("initial_guess", cfg.doubling_initial_guess);
    const double delta = cfg.delta;
    return std::make_unique<DoublingWrapper>(
        [k](StrongParams p) { return std::make_unique<StrongObsLearner>(k, p); },
        cfg.doubling_initial_guess, delta);
  }
  throw ConfigError("unknown learner: " + cfg.learner);
}

}  // namespace

std::unique_ptr<Learner> make_learner(const RunConfig& cfg, int k,
                                      const HorizonStats& stats,
                                      std::map<std::string, double>* resolved) {
  // Parameters come from the config (schedule or overrides), so a rejected
  // combination is a configuration error.
  try {
    return make_learner_impl(cfg, k, stats, resolved);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid learner parameters: ") + e.what());
  }
}

RegretTrace run_protocol(Learner& learner, Environment& env, long long horizon,
                         rng::Stream sampling, bool keep_losses) {
  const int k = env.num_actions();
  const bool informed = learner.protocol() == Protocol::kInformed;
  RegretTrace trace;
  trace.learner_losses.reserve(horizon);
  trace.actions.reserve(horizon);
  trace.q.reserve(horizon);
  trace.bias_triggered.reserve(horizon);
  trace.epoch.reserve(horizon);
  std::vector<std::vector<double>> arm_losses(
      k, std::vector<double>(horizon, 0.0));

  for (long long t = 0; t < horizon; ++t) {
    env.begin_round();
    const Decision d = informed ? learner.decide(env.current_graph(), sampling)
                                : learner.decide(sampling);
    const RoundFeedback fb = env.observe(d.action);
    learner.update(env.current_graph(), fb);

    const std::vector<double>& losses = env.current_losses();
    trace.learner_losses.push_back(losses[d.action]);
    trace.actions.push_back(d.action);
    trace.q.push_back(learner.last_q());
    trace.bias_triggered.push_back(learner.last_bias_triggered() ? 1 : 0);
    trace.epoch.push_back(learner.epoch());
    for (int i = 0; i < k; ++i) arm_losses[i][t] = losses[i];
    env.end_round(d.action);
  }

  trace.regret = compute_regret(trace.learner_losses, arm_losses);
  trace.arm_totals.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (long long t = 0; t < horizon; ++t) {
      trace.arm_totals[i] += arm_losses[i][t];
    }
  }
  trace.clamp_count = learner.clamp_count();
  if (const auto* d = dynamic_cast<const DoublingWrapper*>(&learner)) {
    trace.epoch_guesses = d->epoch_guesses();
  }
  if (keep_losses) trace.arm_losses = std::move(arm_losses);
  return trace;
}

RegretTrace run_single_rep(const RunConfig& cfg,
                           std::shared_ptr<const GraphSource> graphs, int rep) {
  const int k = graphs->num_nodes();
  const HorizonStats stats = graphs->horizon(cfg.horizon);
  const rng::Stream run_stream =
      rng::Stream::for_run(cfg.master_seed, static_cast<std::uint64_t>(rep));
  Environment env(graphs, make_loss_model(cfg.loss, k),
                  run_stream.substream("environment"));
  std::unique_ptr<Learner> learner = make_learner(cfg, k, stats, nullptr);
  const bool informed = learner->protocol() == Protocol::kInformed;
  if (informed != (cfg.protocol == "informed")) {
    throw ConfigError("learner/protocol mismatch");
  }
  return run_protocol(*learner, env, cfg.horizon,
                      run_stream.substream("sampling"), cfg.keep_losses);
}

namespace {

RunMetadata make_metadata(const RunConfig& cfg, const GraphSource& graphs) {
  RunMetadata meta;
  meta.num_actions = graphs.num_nodes();
  meta.horizon = cfg.horizon;
  meta.reps = cfg.reps;
  meta.master_seed = cfg.master_seed;
  meta.delta = cfg.delta;
  meta.learner = cfg.learner;
  meta.protocol = cfg.protocol;
  meta.stats_source = graphs.stats_source();
  const HorizonStats stats = graphs.horizon(cfg.horizon);
  meta.bounds = DeclaredBounds{stats.sum_alpha,       stats.max_alpha,
                               stats.sum_d,           stats.sum_alpha_tilde,
                               stats.max_alpha_tilde, cfg.horizon};
  make_learner(cfg, graphs.num_nodes(), stats, &meta.resolved_params);
  return meta;
}

void finish(RunResult& result) {
  for (const auto& tr : result.traces) {
    result.meta.total_clamps += tr.clamp_count;
  }
}

}  // namespace

RunResult run_experiment_serial(const RunConfig& cfg) {
  auto graphs = make_graph_source(cfg.graph);
  RunResult result;
  result.meta = make_metadata(cfg, *graphs);
  result.traces.resize(cfg.reps);
  for (int rep = 0; rep < cfg.reps; ++rep) {
    result.traces[rep] = run_single_rep(cfg, graphs, rep);
  }
  finish(result);
  return result;
}

RunResult run_experiment_parallel(const RunConfig& cfg) {
#ifdef FGB_HAVE_OPENMP
  auto graphs = make_graph_source(cfg.graph);
  RunResult result;
  result.meta = make_metadata(cfg, *graphs);
  result.traces.resize(cfg.reps);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers)
  for (int rep = 0; rep < cfg.reps; ++rep) {
    try {
      result.traces[rep] = run_single_rep(cfg, graphs, rep);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  finish(result);
  return result;
#else
  return run_experiment_serial(cfg);
#endif
}

RunResult run_experiment(const RunConfig& cfg) {
  return cfg.workers > 1 ? run_experiment_parallel(cfg)
                         : run_experiment_serial(cfg);
}

}  // namespace fgb
