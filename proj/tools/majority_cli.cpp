#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "majority/attributes.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/illusion.hpp"
#include "majority/io.hpp"
#include "majority/serialize.hpp"
#include "majority/statistics.hpp"
#include "majority/sweep.hpp"
#include "majority/tuning.hpp"

using namespace majority;
namespace fs = std::filesystem;

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> maybe_assortativity(const DegreeStats& stats, const JointDegreeDistribution& joint) {
  if (!assortativity_defined(stats.moments())) return std::nullopt;
  return assortativity(stats, joint);
}

Json graph_summary(const Graph& g) {
  const DegreeStats stats = degree_stats(g);
  const JointDegreeDistribution joint = joint_degree_distribution(g, stats);
  Json j = stats;
  j["r"] = optional_number(maybe_assortativity(stats, joint));
  return j;
}

void emit(const Json& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report.dump(2) << '\n';
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

AttributeAssignment load_assignment(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_assignment(in, g);
}

void save_assignment(const std::string& path, const Graph& g, const AttributeAssignment& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_assignment(out, g, a);
}

struct ThresholdArgs {
  double phi = 0.5;
  std::string comparison = "strict";
  Threshold get() const { return Threshold(phi, parse_comparison(comparison)); }
};

void add_threshold(CLI::App* cmd, ThresholdArgs& t) {
  cmd->add_option("--phi", t.phi, "activation threshold in (0,1)");
  cmd->add_option("--comparison", t.comparison, "strict (>) or inclusive (>=)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"majority illusion toolkit"};
  app.require_subcommand(1);

  std::string graph_path, assignment_path, out_path, report_path;
  ThresholdArgs threshold;

  // generate
  std::string model = "powerlaw";
  PowerLawConfig pl;
  ErConfig er;
  std::optional<int> k_max;
  Seed seed = 1;
  auto* generate = app.add_subcommand("generate", "sample a synthetic network");
  generate->add_option("--model", model, "powerlaw or er")->check(CLI::IsMember({"powerlaw", "er"}));
  generate->add_option("--n", pl.n, "node count");
  generate->add_option("--alpha", pl.alpha, "power-law exponent");
  generate->add_option("--k-min", pl.k_min);
  generate->add_option("--k-max", k_max);
  generate->add_option("--mean-degree", er.mean_degree);
  generate->add_option("--seed", seed);
  generate->add_option("--out", out_path, "edge list to write")->required();
  generate->add_option("--report", report_path);

  // ingest
  std::string spec_path, data_dir;
  auto* ingest = app.add_subcommand("ingest", "load and preprocess a dataset");
  ingest->add_option("--spec", spec_path, "dataset spec (JSON)")->required();
  ingest->add_option("--data-dir", data_dir, "dataset root (default $MAJORITY_DATA_DIR)");
  ingest->add_option("--out", out_path);
  ingest->add_option("--report", report_path);

  auto* stats_cmd = app.add_subcommand("stats", "degree statistics and assortativity");
  stats_cmd->add_option("--graph", graph_path)->required();

  // rewire
  double target = 0, tolerance = 0.01;
  std::optional<std::size_t> max_iters;
  auto* rewire = app.add_subcommand("rewire", "degree-preserving rewiring toward a target r");
  rewire->add_option("--graph", graph_path)->required();
  rewire->add_option("--target", target)->required();
  rewire->add_option("--tolerance", tolerance);
  rewire->add_option("--max-iters", max_iters);
  rewire->add_option("--seed", seed);
  rewire->add_option("--out", out_path)->required();
  rewire->add_option("--report", report_path);

  // activate
  double fraction = 0.1;
  bool top_degree = false;
  auto* activate = app.add_subcommand("activate", "choose the initially active nodes");
  activate->add_option("--graph", graph_path)->required();
  activate->add_option("--fraction", fraction)->required();
  activate->add_option("--seed", seed);
  activate->add_flag("--top-degree", top_degree, "activate the highest-degree nodes");
  activate->add_option("--out", out_path)->required();

  // tune-rho
  auto* tune_rho = app.add_subcommand("tune-rho", "swap node states toward a target degree-attribute correlation");
  tune_rho->add_option("--graph", graph_path)->required();
  tune_rho->add_option("--assignment", assignment_path)->required();
  tune_rho->add_option("--target", target)->required();
  tune_rho->add_option("--tolerance", tolerance);
  tune_rho->add_option("--max-iters", max_iters);
  tune_rho->add_option("--seed", seed);
  tune_rho->add_option("--out", out_path)->required();
  tune_rho->add_option("--report", report_path);

  auto* measure = app.add_subcommand("measure", "paradox metrics and illusion fractions");
  measure->add_option("--graph", graph_path)->required();
  measure->add_option("--assignment", assignment_path)->required();
  add_threshold(measure, threshold);

  std::string per_k_path;
  auto* model_cmd = app.add_subcommand("model", "illusion model with the per-degree breakdown");
  model_cmd->add_option("--graph", graph_path)->required();
  model_cmd->add_option("--assignment", assignment_path)->required();
  model_cmd->add_option("--per-k-csv", per_k_path);
  add_threshold(model_cmd, threshold);

  auto* cascade = app.add_subcommand("cascade", "synchronous threshold cascade");
  cascade->add_option("--graph", graph_path)->required();
  cascade->add_option("--assignment", assignment_path)->required();
  cascade->add_option("--out", out_path, "final state");
  add_threshold(cascade, threshold);

  std::string config_path;
  std::optional<Seed> seed_override;
  std::optional<std::size_t> workers;
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path)->required();
    cmd->add_option("--seed", seed_override, "override base_seed");
    cmd->add_option("--workers", workers);
    cmd->add_option("--data-dir", data_dir);
    cmd->add_option("--out", out_path, "CSV path (default: output_path from the config, else stdout)");
  };
  auto* sweep = app.add_subcommand("sweep", "run an (r, rho, fraction) grid");
  add_grid(sweep);
  auto* ensemble = app.add_subcommand("ensemble", "structure-randomized variants at fixed r and rho");
  add_grid(ensemble);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      Json report;
      Graph g;
      if (model == "powerlaw") {
        pl.k_max = k_max;
        pl.seed = seed;
        pl.validate();
        ConfigurationModelResult r = powerlaw_configuration_model(pl);
        report["config"] = pl;
        report["build"] = r.report;
        g = std::move(r.graph);
      } else {
        er.n = pl.n;
        er.seed = seed;
        er.validate();
        report["config"] = er;
        g = erdos_renyi(er);
      }
      write_graph_file(out_path, g);
      report["graph"] = graph_summary(g);
      emit(report, report_path);
    } else if (ingest->parsed()) {
      const DatasetSpec spec = dataset_spec_from_json(read_json(spec_path));
      std::optional<fs::path> root;
      if (!data_dir.empty()) root = data_dir;
      const LoadedDataset data = load_dataset(spec, root);
      if (!out_path.empty()) write_graph_file(out_path, data.graph);
      Json report;
      report["provenance"] = data.provenance;
      report["graph"] = graph_summary(data.graph);
      emit(report, report_path);
    } else if (stats_cmd->parsed()) {
      emit(graph_summary(read_graph_file(graph_path)), "");
    } else if (rewire->parsed()) {
      const Graph g = read_graph_file(graph_path);
      RewireOptions opt;
      opt.tolerance = tolerance;
      opt.max_iters = max_iters;
      opt.seed = seed;
      const RewireOutcome r = rewire_to_assortativity(g, target, opt);
      write_graph_file(out_path, r.graph);
      emit(Json(r.result), report_path);
    } else if (activate->parsed()) {
      const Graph g = read_graph_file(graph_path);
      const AttributeAssignment a = top_degree ? activate_top_degree(g, fraction) : activate_random(g, fraction, seed);
      save_assignment(out_path, g, a);
      const DegreeStats stats = degree_stats(g);
      emit(Json(activity_profile(g, stats, a)), "");
    } else if (tune_rho->parsed()) {
      const Graph g = read_graph_file(graph_path);
      SwapOptions opt;
      opt.tolerance = tolerance;
      opt.max_iters = max_iters;
      opt.seed = seed;
      const SwapOutcome r = swap_attributes_to_rho(g, load_assignment(assignment_path, g), target, opt);
      save_assignment(out_path, g, r.assignment);
      emit(Json(r.result), report_path);
    } else if (measure->parsed() || model_cmd->parsed()) {
      const Graph g = read_graph_file(graph_path);
      const AttributeAssignment a = load_assignment(assignment_path, g);
      const IllusionReport r = illusion_report(g, a, threshold.get());
      Json report;
      report["graph"] = graph_summary(g);
      report["attributes"] = activity_profile(g, degree_stats(g), a);
      report["paradox"] = paradox_metrics(g, a);
      report["illusion"] = r;
      if (measure->parsed()) report["illusion"].erase("per_k_model");
      if (!per_k_path.empty()) {
        std::ofstream csv(per_k_path);
        if (!csv) throw std::runtime_error("cannot write " + per_k_path);
        write_per_k_csv(csv, r);
      }
      emit(report, "");
    } else if (cascade->parsed()) {
      const Graph g = read_graph_file(graph_path);
      const CascadeResult r = run_threshold_cascade(g, load_assignment(assignment_path, g), threshold.get());
      if (!out_path.empty()) save_assignment(out_path, g, r.final_state);
      emit(Json(r), "");
    } else if (sweep->parsed() || ensemble->parsed()) {
      SweepConfig cfg = sweep_config_from_json(read_json(config_path));
      if (seed_override) cfg.base_seed = *seed_override;
      if (workers) cfg.workers = *workers;
      if (!data_dir.empty()) cfg.data_root = data_dir;
      if (!out_path.empty()) cfg.output_path = out_path;
      std::ofstream file;
      if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) throw std::runtime_error("cannot write " + cfg.output_path);
      }
      std::ostream& out = cfg.output_path.empty() ? std::cout : file;
      if (sweep->parsed()) write_sweep_csv(out, cfg, run_sweep(cfg));
      else write_ensemble_csv(out, cfg, run_fixed_r_ensemble(cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
