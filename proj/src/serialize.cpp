#include "majority/serialize.hpp"

#include <fmt/format.h>

#include <ostream>
#include <stdexcept>

namespace majority {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <class T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("bad value for '") + key + "'");
  }
}

template <class T>
T optional_key(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("bad value for '") + key + "'");
  }
}

}  // namespace

void to_json(Json& j, const BuildReport& r) {
  j = Json{{"input_edges", r.input_edges},
           {"self_loops_dropped", r.self_loops_dropped},
           {"duplicates_dropped", r.duplicates_dropped}};
}

void to_json(Json& j, const DegreeStats& s) {
  j = Json{{"nodes", s.node_count()},
           {"edges", s.edge_count()},
           {"isolated", s.isolated_count()},
           {"mean_degree", s.mean_degree()},
           {"sigma_k", s.sigma_k()},
           {"mean_q_degree", s.mean_q_degree()},
           {"sigma_q", s.sigma_q()},
           {"fp_strength", s.paradox_strength()},
           {"max_degree", s.classes().empty() ? 0 : s.classes().back()}};
}

void to_json(Json& j, const AttributeProfile& p) {
  Json given = Json::array();
  for (std::size_t c = 0; c < p.classes.size(); ++c)
    given.push_back({p.classes[c], p.p_active_given_k[static_cast<Eigen::Index>(c)]});
  j = Json{{"p_active", p.p_active},
           {"sigma_x", p.sigma_x},
           {"sigma_k", p.sigma_k},
           {"mean_degree", p.mean_degree},
           {"mean_degree_active", p.mean_degree_active},
           {"rho_kx", optional_number(p.rho_kx)},
           {"p_active_given_k", std::move(given)}};
}

void to_json(Json& j, const ParadoxMetrics& m) {
  j = Json{{"neighbor_active_prob", m.neighbor_active_prob},
           {"node_active_prob", m.node_active_prob},
           {"gfp_strength", m.gfp_strength},
           {"fp_strength", m.fp_strength}};
}

void to_json(Json& j, const TuneResult& r) {
  j = Json{{"achieved", r.achieved},       {"target", r.target},       {"tolerance", r.tolerance},
           {"iterations", r.iterations},   {"accepted", r.accepted},   {"converged", r.converged},
           {"swap_acceptance_rate", r.swap_acceptance_rate}};
}

void to_json(Json& j, const IllusionReport& r) {
  Json per_k = Json::array();
  for (const auto& d : r.per_k_model)
    per_k.push_back(Json{{"k", d.k}, {"p_k", d.p_k}, {"h_k", d.h_k}, {"P_gt_phi_k", d.p_exceed}});
  j = Json{{"phi", r.phi},
           {"comparison", std::string(to_string(r.comparison))},
           {"nodes", r.node_count},
           {"isolated", r.isolated},
           {"n_illusioned", r.n_illusioned},
           {"empirical_fraction", r.empirical_fraction},
           {"model_fraction", optional_number(r.model_fraction)},
           {"gaussian_fraction", optional_number(r.gaussian_fraction)},
           {"per_k_model", std::move(per_k)}};
}

void to_json(Json& j, const CascadeResult& r) {
  j = Json{{"rounds", r.rounds},
           {"active_per_round", r.active_per_round},
           {"final_active_fraction", r.final_active_fraction}};
}

void to_json(Json& j, const ProvenanceReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(Json{{"step", s.step}, {"nodes", s.nodes}, {"edges", s.edges}});
  j = Json{{"name", r.name}, {"path", r.path}, {"steps", std::move(steps)}, {"build", r.build}};
}

void to_json(Json& j, const PowerLawConfig& c) {
  j = Json{{"generator", "powerlaw"}, {"n", c.n},          {"alpha", c.alpha},
           {"k_min", c.k_min},        {"k_max", c.effective_k_max()}, {"seed", c.seed}};
}

void to_json(Json& j, const ErConfig& c) {
  j = Json{{"generator", "er"}, {"n", c.n}, {"mean_degree", c.mean_degree}, {"seed", c.seed}};
}

void to_json(Json& j, const DatasetSpec& s) {
  Json steps = Json::array();
  for (auto step : s.preprocessing) steps.push_back(to_string(step));
  j = Json{{"name", s.name},
           {"path", s.path.string()},
           {"format", to_string(s.format)},
           {"directed", s.directed},
           {"preprocessing", std::move(steps)},
           {"source_column", s.columns.source},
           {"target_column", s.columns.target}};
}

DatasetSpec dataset_spec_from_json(const Json& j) {
  DatasetSpec s;
  s.name = require<std::string>(j, "name");
  s.path = require<std::string>(j, "path");
  const auto format = optional_key<std::string>(j, "format", "edge_list");
  if (format == "edge_list") s.format = DatasetFormat::edge_list;
  else if (format == "gml") s.format = DatasetFormat::gml;
  else throw std::invalid_argument("unknown dataset format '" + format + "'");
  s.directed = optional_key<bool>(j, "directed", false);
  for (const auto& step : optional_key<std::vector<std::string>>(j, "preprocessing", {})) {
    if (step == "mutualize") s.preprocessing.push_back(PreprocessStep::mutualize);
    else if (step == "largest_component") s.preprocessing.push_back(PreprocessStep::largest_component);
    else if (step == "simplify") s.preprocessing.push_back(PreprocessStep::simplify);
    else throw std::invalid_argument("unknown preprocessing step '" + step + "'");
  }
  s.columns.source = optional_key<std::size_t>(j, "source_column", 0);
  s.columns.target = optional_key<std::size_t>(j, "target_column", 1);
  s.validate();
  return s;
}

PowerLawConfig powerlaw_config_from_json(const Json& j) {
  PowerLawConfig c;
  c.n = optional_key<std::size_t>(j, "n", c.n);
  c.alpha = optional_key<double>(j, "alpha", c.alpha);
  c.k_min = optional_key<int>(j, "k_min", c.k_min);
  if (j.contains("k_max") && !j.at("k_max").is_null()) c.k_max = require<int>(j, "k_max");
  c.seed = optional_key<Seed>(j, "seed", c.seed);
  c.validate();
  return c;
}

ErConfig er_config_from_json(const Json& j) {
  ErConfig c;
  c.n = optional_key<std::size_t>(j, "n", c.n);
  c.mean_degree = optional_key<double>(j, "mean_degree", c.mean_degree);
  c.seed = optional_key<Seed>(j, "seed", c.seed);
  c.validate();
  return c;
}

void write_per_k_csv(std::ostream& out, const IllusionReport& r) {
  out << "k,p_k,h_k,P_gt_phi_k\n";
  for (const auto& d : r.per_k_model) out << fmt::format("{},{:.10g},{:.10g},{:.10g}\n", d.k, d.p_k, d.h_k, d.p_exceed);
}

}  // namespace majority
