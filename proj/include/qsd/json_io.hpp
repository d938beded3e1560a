#pragma once

#include <json.hpp>

#include "qsd/channel.hpp"
#include "qsd/optimality.hpp"
#include "qsd/solvers.hpp"

namespace qsd {

using Json = nlohmann::json;

// Complex scalars are encoded as [re, im] pairs, matrices as row-major
// nested arrays of pairs.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, const std::string& context);
Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j, const std::string& context);

// File formats.
Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);
Json pom_to_json(const Pom& pom);
Pom pom_from_json(const Json& j);
Json channel_to_json(const ChannelSpec& spec);
ChannelSpec channel_from_json(const Json& j);

// Report formats.
Json report_to_json(const ValidationReport& r);
Json report_to_json(const OutcomeTable& t);
Json report_to_json(const OptimalityReport& r);
Json report_to_json(const NoMeasurementReport& r);
Json report_to_json(const SolverResult& r);
Json report_to_json(const SimResult& r);
Json checks_to_json(const std::vector<PureStateCheck>& checks);
Json checks_to_json(const std::vector<MixedComponentCheck>& checks);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const Json& j, const std::filesystem::path& path);

}  // namespace qsd
