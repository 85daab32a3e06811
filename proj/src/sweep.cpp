#include "majority/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "majority/attributes.hpp"
#include "majority/statistics.hpp"
#include "majority/tuning.hpp"

namespace majority {

namespace {

// Seed-derivation tags; coordinates follow the tag.
constexpr std::uint64_t kGraphTag = 1;
constexpr std::uint64_t kRewireTag = 2;
constexpr std::uint64_t kActivateTag = 3;
constexpr std::uint64_t kSwapTag = 4;
constexpr std::uint64_t kVariantTag = 5;

template <class F>
void parallel_for(std::size_t count, std::size_t workers, F&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
}

std::string describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::string csv_safe(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  return text;
}

std::string number(double v) { return fmt::format("{:.6f}", v); }
std::string number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

/// A base graph after rewiring, with the statistics every cell reuses.
struct TunedGraph {
  Graph graph;
  DegreeStats stats;
  JointDegreeDistribution joint;
  double r = 0;
  bool r_converged = true;
  std::string error;
};

TunedGraph tune_graph(Graph base, const SweepConfig& cfg, std::size_t r_index, std::size_t replicate) {
  TunedGraph t;
  try {
    if (!cfg.r_targets.empty()) {
      RewireOptions opt;
      opt.tolerance = cfg.tuning.r_tolerance;
      opt.max_iters = static_cast<std::size_t>(cfg.tuning.rewire_iters_per_edge * static_cast<double>(base.edge_count()));
      opt.seed = derive_seed(cfg.base_seed, {kRewireTag, r_index, replicate});
      RewireOutcome out = rewire_to_assortativity(base, cfg.r_targets[r_index], opt);
      t.graph = std::move(out.graph);
      t.r = out.result.achieved;
      t.r_converged = out.result.converged;
    } else {
      t.graph = std::move(base);
    }
    t.stats = degree_stats(t.graph);
    t.joint = joint_degree_distribution(t.graph, t.stats);
    if (cfg.r_targets.empty()) t.r = assortativity(t.stats, t.joint);
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

struct AttributeRun {
  AttributeAssignment assignment;
  double rho = 0;
  bool rho_converged = false;
};

AttributeRun tune_attributes(const Graph& g, const SweepConfig& cfg, double fraction, double rho_target,
                             Seed activate_seed, Seed swap_seed) {
  AttributeAssignment start = activate_random(g, fraction, activate_seed);
  SwapOptions opt;
  opt.tolerance = cfg.tuning.rho_tolerance;
  opt.max_iters = static_cast<std::size_t>(cfg.tuning.swap_iters_per_node * static_cast<double>(g.node_count()));
  opt.seed = swap_seed;
  SwapOutcome out = swap_attributes_to_rho(g, std::move(start), rho_target, opt);
  return {std::move(out.assignment), out.result.achieved, out.result.converged};
}

struct ReplicateResult {
  double empirical = 0;
  double model = 0;
  std::optional<double> gaussian;
  double rho = 0;
  double r = 0;
  bool rho_converged = true;
  bool r_converged = true;
  Seed seed = 0;
  std::string error;
};

}  // namespace

void SweepConfig::validate() const {
  if (rho_targets.empty()) throw std::invalid_argument("rho_targets must not be empty");
  if (active_fractions.empty()) throw std::invalid_argument("active_fractions must not be empty");
  if (replicates == 0) throw std::invalid_argument("replicates must be at least 1");
  for (const auto* list : {&r_targets, &rho_targets, &active_fractions})
    for (double v : *list)
      if (!std::isfinite(v)) throw std::invalid_argument("targets must be finite");
  for (double f : active_fractions)
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("active fractions must lie in (0, 1)");
  if (!(tuning.r_tolerance > 0) || !(tuning.rho_tolerance > 0) || !(ensemble.r_tolerance > 0))
    throw std::invalid_argument("tolerances must be positive");
  Threshold(phi, comparison);
  std::visit([](const auto& s) { s.validate(); }, source);
}

SweepConfig sweep_config_from_json(const Json& j) {
  auto get = [&](const Json& obj, const char* key, auto fallback) {
    using T = decltype(fallback);
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    try {
      return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string("bad value for '") + key + "'");
    }
  };

  SweepConfig cfg;
  if (!j.contains("graph")) throw std::invalid_argument("missing key 'graph'");
  const Json& graph = j.at("graph");
  if (graph.contains("dataset")) {
    cfg.source = dataset_spec_from_json(graph.at("dataset"));
  } else {
    const std::string generator = get(graph, "generator", std::string());
    if (generator == "powerlaw") cfg.source = powerlaw_config_from_json(graph);
    else if (generator == "er") cfg.source = er_config_from_json(graph);
    else throw std::invalid_argument("graph.generator must be 'powerlaw' or 'er' (or give graph.dataset)");
  }
  cfg.r_targets = get(j, "r_targets", std::vector<double>{});
  cfg.rho_targets = get(j, "rho_targets", std::vector<double>{});
  cfg.active_fractions = get(j, "active_fractions", std::vector<double>{});
  cfg.phi = get(j, "phi", cfg.phi);
  cfg.comparison = parse_comparison(get(j, "comparison", std::string("strict")));
  cfg.replicates = get(j, "replicates", cfg.replicates);
  cfg.base_seed = get(j, "base_seed", cfg.base_seed);
  cfg.output_path = get(j, "output_path", cfg.output_path);
  cfg.workers = get(j, "workers", cfg.workers);
  if (j.contains("data_root")) cfg.data_root = get(j, "data_root", std::string());
  if (j.contains("tuning")) {
    const Json& t = j.at("tuning");
    cfg.tuning.r_tolerance = get(t, "r_tolerance", cfg.tuning.r_tolerance);
    cfg.tuning.rho_tolerance = get(t, "rho_tolerance", cfg.tuning.rho_tolerance);
    cfg.tuning.rewire_iters_per_edge = get(t, "rewire_iters_per_edge", cfg.tuning.rewire_iters_per_edge);
    cfg.tuning.swap_iters_per_node = get(t, "swap_iters_per_node", cfg.tuning.swap_iters_per_node);
  }
  if (j.contains("ensemble")) {
    const Json& e = j.at("ensemble");
    cfg.ensemble.variants = get(e, "variants", cfg.ensemble.variants);
    cfg.ensemble.swaps = get(e, "swaps", cfg.ensemble.swaps);
    cfg.ensemble.r_tolerance = get(e, "r_tolerance", cfg.ensemble.r_tolerance);
  }
  cfg.validate();
  return cfg;
}

Graph build_source_graph(const GraphSource& source, Seed seed,
                         const std::optional<std::filesystem::path>& data_root) {
  return std::visit(
      [&](const auto& s) -> Graph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PowerLawConfig>) {
          PowerLawConfig c = s;
          c.seed = seed;
          return powerlaw_configuration_model(c).graph;
        } else if constexpr (std::is_same_v<T, ErConfig>) {
          ErConfig c = s;
          c.seed = seed;
          return erdos_renyi(c);
        } else {
          return load_dataset(s, data_root).graph;
        }
      },
      source);
}

std::string source_kind(const GraphSource& source) {
  if (std::holds_alternative<PowerLawConfig>(source)) return "powerlaw";
  if (std::holds_alternative<ErConfig>(source)) return "er";
  return std::get<DatasetSpec>(source).name;
}

std::string source_parameter(const GraphSource& source) {
  if (const auto* p = std::get_if<PowerLawConfig>(&source)) return fmt::format("{}", p->alpha);
  if (const auto* e = std::get_if<ErConfig>(&source)) return fmt::format("{}", e->mean_degree);
  return {};
}

std::string SweepCell::flags() const {
  if (!error.empty()) return "error=" + csv_safe(error);
  std::vector<std::string> parts;
  if (r_not_converged) parts.push_back(fmt::format("r_nc={}/{}", r_not_converged, replicates));
  if (rho_not_converged) parts.push_back(fmt::format("rho_nc={}/{}", rho_not_converged, replicates));
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ";") + p;
  return out;
}

std::vector<SweepCell> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.replicates;
  const std::size_t r_levels = cfg.r_levels();
  const std::size_t n_rho = cfg.rho_targets.size();
  const std::size_t n_frac = cfg.active_fractions.size();

  // Datasets are deterministic: load once and share across replicates.
  std::optional<Graph> dataset_graph;
  std::string dataset_error;
  if (std::holds_alternative<DatasetSpec>(cfg.source)) {
    try {
      dataset_graph = build_source_graph(cfg.source, 0, cfg.data_root);
    } catch (const std::exception& e) {
      dataset_error = e.what();
    }
  }

  std::vector<TunedGraph> tuned(r_levels * reps);
  parallel_for(tuned.size(), cfg.workers, [&](std::size_t task) {
    const std::size_t r_index = task / reps;
    const std::size_t rep = task % reps;
    if (!dataset_error.empty()) {
      tuned[task].error = dataset_error;
      return;
    }
    try {
      Graph base = dataset_graph ? *dataset_graph
                                 : build_source_graph(cfg.source, derive_seed(cfg.base_seed, {kGraphTag, rep}), cfg.data_root);
      tuned[task] = tune_graph(std::move(base), cfg, r_index, rep);
    } catch (...) {
      tuned[task].error = describe(std::current_exception());
    }
  });

  const Threshold threshold(cfg.phi, cfg.comparison);
  const std::size_t cell_count = r_levels * n_rho * n_frac;
  std::vector<ReplicateResult> results(cell_count * reps);
  parallel_for(results.size(), cfg.workers, [&](std::size_t task) {
    const std::size_t cell = task / reps;
    const std::size_t rep = task % reps;
    const std::size_t r_index = cell / (n_rho * n_frac);
    const std::size_t rho_index = (cell / n_frac) % n_rho;
    const std::size_t f_index = cell % n_frac;
    ReplicateResult& out = results[task];
    const TunedGraph& t = tuned[r_index * reps + rep];
    if (!t.error.empty()) {
      out.error = t.error;
      return;
    }
    try {
      out.seed = derive_seed(cfg.base_seed, {kSwapTag, r_index, rho_index, f_index, rep});
      AttributeRun run = tune_attributes(t.graph, cfg, cfg.active_fractions[f_index], cfg.rho_targets[rho_index],
                                         derive_seed(cfg.base_seed, {kActivateTag, f_index, rep}), out.seed);
      const AttributeProfile profile = activity_profile(t.graph, t.stats, run.assignment);
      out.empirical = empirical_illusion(t.graph, run.assignment, threshold).empirical_fraction;
      out.model = model_illusion(t.stats, t.joint, profile, threshold).fraction;
      if (profile.rho_kx && t.stats.sigma_k() > 0) out.gaussian = gaussian_model_illusion(t.stats, profile, threshold);
      out.rho = run.rho;
      out.rho_converged = run.rho_converged;
      out.r = t.r;
      out.r_converged = t.r_converged;
    } catch (...) {
      out.error = describe(std::current_exception());
    }
  });

  std::vector<SweepCell> cells(cell_count);
  for (std::size_t cell = 0; cell < cell_count; ++cell) {
    SweepCell& c = cells[cell];
    c.r_index = cell / (n_rho * n_frac);
    c.rho_index = (cell / n_frac) % n_rho;
    c.fraction_index = cell % n_frac;
    if (!cfg.r_targets.empty()) c.r_requested = cfg.r_targets[c.r_index];
    c.rho_requested = cfg.rho_targets[c.rho_index];
    c.active_fraction = cfg.active_fractions[c.fraction_index];

    std::vector<double> model, gauss;
    bool gauss_everywhere = true;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const ReplicateResult& r = results[cell * reps + rep];
      if (!r.error.empty()) {
        if (c.error.empty()) c.error = r.error;
        continue;
      }
      c.seeds.push_back(r.seed);
      c.empirical.push_back(r.empirical);
      c.rho_samples.push_back(r.rho);
      c.r_samples.push_back(r.r);
      model.push_back(r.model);
      if (r.gaussian) gauss.push_back(*r.gaussian);
      else gauss_everywhere = false;
      c.r_not_converged += !r.r_converged;
      c.rho_not_converged += !r.rho_converged;
    }
    c.replicates = c.empirical.size();
    if (c.replicates == 0) continue;
    c.error.clear();  // partial failures still leave usable replicates
    c.r_achieved = mean_of(c.r_samples);
    c.rho_achieved = mean_of(c.rho_samples);
    c.empirical_mean = mean_of(c.empirical);
    c.empirical_std = sample_std(c.empirical);
    c.model_fraction = mean_of(model);
    if (gauss_everywhere) c.gaussian_fraction = mean_of(gauss);
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepCell>& cells) {
  out << "graph,alpha_or_meank,r_req,r_ach,rho_req,rho_ach,frac_active,phi,cmp,emp_mean,emp_std,model,gauss,reps,flags\n";
  const std::string kind = csv_safe(source_kind(cfg.source));
  const std::string param = source_parameter(cfg.source);
  for (const auto& c : cells) {
    const bool ok = c.replicates > 0;
    out << kind << ',' << param << ',' << number(c.r_requested) << ',' << (ok ? number(c.r_achieved) : "") << ','
        << number(c.rho_requested) << ',' << (ok ? number(c.rho_achieved) : "") << ',' << number(c.active_fraction)
        << ',' << number(cfg.phi) << ',' << to_string(cfg.comparison) << ',' << (ok ? number(c.empirical_mean) : "")
        << ',' << (ok ? number(c.empirical_std) : "") << ',' << (ok ? number(c.model_fraction) : "") << ','
        << number(c.gaussian_fraction) << ',' << c.replicates << ',' << c.flags() << '\n';
  }
}

double EnsembleLevel::mean() const { return mean_of(empirical); }
double EnsembleLevel::std_dev() const { return sample_std(empirical); }
double EnsembleLevel::spread() const {
  if (empirical.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(empirical.begin(), empirical.end());
  return *hi - *lo;
}

std::vector<EnsembleLevel> run_fixed_r_ensemble(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t r_levels = cfg.r_levels();
  const std::size_t n_rho = cfg.rho_targets.size();
  const std::size_t n_frac = cfg.active_fractions.size();
  const Threshold threshold(cfg.phi, cfg.comparison);

  std::vector<EnsembleLevel> levels(r_levels * n_rho * n_frac);
  parallel_for(levels.size(), cfg.workers, [&](std::size_t index) {
    EnsembleLevel& level = levels[index];
    const std::size_t r_index = index / (n_rho * n_frac);
    const std::size_t rho_index = (index / n_frac) % n_rho;
    const std::size_t f_index = index % n_frac;
    if (!cfg.r_targets.empty()) level.r_requested = cfg.r_targets[r_index];
    level.rho_requested = cfg.rho_targets[rho_index];
    level.active_fraction = cfg.active_fractions[f_index];
    try {
      Graph base = build_source_graph(cfg.source, derive_seed(cfg.base_seed, {kGraphTag, 0}), cfg.data_root);
      TunedGraph t = tune_graph(std::move(base), cfg, r_index, 0);
      if (!t.error.empty()) throw std::runtime_error(t.error);
      level.r_initial = t.r;
      AttributeRun run = tune_attributes(t.graph, cfg, level.active_fraction, level.rho_requested,
                                         derive_seed(cfg.base_seed, {kActivateTag, f_index, 0}),
                                         derive_seed(cfg.base_seed, {kSwapTag, r_index, rho_index, f_index, 0}));
      level.rho_achieved = run.rho;
      for (std::size_t v = 0; v < cfg.ensemble.variants; ++v) {
        RandomizeOutcome variant =
            randomize_at_fixed_r(t.graph, cfg.ensemble.r_tolerance, cfg.ensemble.swaps,
                                 derive_seed(cfg.base_seed, {kVariantTag, r_index, rho_index, f_index, v}));
        level.accepted_swaps.push_back(variant.accepted);
        if (variant.final_r && variant.initial_r)
          level.max_r_drift = std::max(level.max_r_drift, std::abs(*variant.final_r - *variant.initial_r));
        level.empirical.push_back(empirical_illusion(variant.graph, run.assignment, threshold).empirical_fraction);
      }
    } catch (...) {
      level.error = describe(std::current_exception());
    }
  });
  return levels;
}

void write_ensemble_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<EnsembleLevel>& levels) {
  out << "graph,alpha_or_meank,r_req,r_init,rho_req,rho_ach,frac_active,phi,cmp,variants,emp_mean,emp_std,emp_min,"
         "emp_max,spread,swaps_mean,max_r_drift,flags\n";
  const std::string kind = csv_safe(source_kind(cfg.source));
  const std::string param = source_parameter(cfg.source);
  for (const auto& l : levels) {
    const bool ok = l.error.empty() && !l.empirical.empty();
    std::string lo, hi, swaps;
    if (ok) {
      const auto [mn, mx] = std::minmax_element(l.empirical.begin(), l.empirical.end());
      lo = number(*mn);
      hi = number(*mx);
      const double total = std::accumulate(l.accepted_swaps.begin(), l.accepted_swaps.end(), 0.0);
      swaps = number(total / static_cast<double>(l.accepted_swaps.size()));
    }
    out << kind << ',' << param << ',' << number(l.r_requested) << ',' << (l.error.empty() ? number(l.r_initial) : "")
        << ',' << number(l.rho_requested) << ',' << (l.error.empty() ? number(l.rho_achieved) : "") << ','
        << number(l.active_fraction) << ',' << number(cfg.phi) << ',' << to_string(cfg.comparison) << ','
        << l.empirical.size() << ',' << (ok ? number(l.mean()) : "") << ',' << (ok ? number(l.std_dev()) : "") << ','
        << lo << ',' << hi << ',' << (ok ? number(l.spread()) : "") << ',' << swaps << ','
        << (ok ? number(l.max_r_drift) : "") << ',' << (l.error.empty() ? "" : "error=" + csv_safe(l.error)) << '\n';
  }
}

}  // namespace majority
