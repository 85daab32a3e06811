#pragma once

#include <json.hpp>

#include "majority/attributes.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/illusion.hpp"
#include "majority/io.hpp"
#include "majority/statistics.hpp"
#include "majority/tuning.hpp"

namespace majority {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const BuildReport& r);
void to_json(Json& j, const DegreeStats& s);
void to_json(Json& j, const AttributeProfile& p);
void to_json(Json& j, const ParadoxMetrics& m);
void to_json(Json& j, const TuneResult& r);
void to_json(Json& j, const IllusionReport& r);
void to_json(Json& j, const CascadeResult& r);
void to_json(Json& j, const ProvenanceReport& r);
void to_json(Json& j, const PowerLawConfig& c);
void to_json(Json& j, const ErConfig& c);
void to_json(Json& j, const DatasetSpec& s);

/// Reads {"name", "path", "format", "directed", "preprocessing",
/// "source_column", "target_column"}. Throws std::invalid_argument on bad
/// values.
DatasetSpec dataset_spec_from_json(const Json& j);
PowerLawConfig powerlaw_config_from_json(const Json& j);
ErConfig er_config_from_json(const Json& j);

/// Per-degree model breakdown as CSV with header k,p_k,h_k,P_gt_phi_k.
void write_per_k_csv(std::ostream& out, const IllusionReport& r);

}  // namespace majority
