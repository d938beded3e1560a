#include "qsd/json_io.hpp"

#include <cmath>
#include <fstream>

namespace qsd {

namespace {

double number_at(const Json& j, const std::string& key, const std::string& context) {
  if (!j.contains(key)) {
    throw ParseError(context + ": missing field '" + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw ParseError(context + ": field '" + key + "' is not a number");
  }
  return j.at(key).get<double>();
}

Eigen::Index dimension_at(const Json& j, const std::string& context) {
  if (!j.contains("dimension")) {
    throw ParseError(context + ": missing field 'dimension'");
  }
  if (!j.at("dimension").is_number_integer() || j.at("dimension").get<long>() < 1) {
    throw ParseError(context + ": 'dimension' must be a positive integer");
  }
  return j.at("dimension").get<Eigen::Index>();
}

Complex complex_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(context + ": complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(context + ": matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  Mat m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      throw ParseError(context + ": row " + std::to_string(r) +
                       " does not make the matrix square");
    }
    for (Eigen::Index c = 0; c < rows; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  context + " row " + std::to_string(r));
    }
  }
  return m;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec vector_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(context + ": vector must be a non-empty array");
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = complex_from_json(j[static_cast<std::size_t>(i)], context);
  }
  return v;
}

Json ensemble_to_json(const Ensemble& e) {
  Json members = Json::array();
  for (const EnsembleMember& m : e.members) {
    members.push_back({{"prior", m.prior}, {"matrix", matrix_to_json(m.state.matrix)}});
  }
  return {{"dimension", e.dim}, {"members", std::move(members)}};
}

Ensemble ensemble_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("ensemble: top level must be an object");
  Ensemble e;
  e.dim = dimension_at(j, "ensemble");
  if (!j.contains("members") || !j.at("members").is_array()) {
    throw ParseError("ensemble: missing 'members' array");
  }
  std::size_t index = 0;
  for (const Json& mj : j.at("members")) {
    const std::string context = "member " + std::to_string(index);
    if (!mj.is_object()) throw ParseError(context + ": must be an object");
    EnsembleMember m;
    m.prior = number_at(mj, "prior", context);
    const bool has_matrix = mj.contains("matrix");
    const bool has_pure = mj.contains("pure");
    if (has_matrix == has_pure) {
      throw ParseError(context + ": exactly one of 'matrix' or 'pure' required");
    }
    if (has_matrix) {
      m.state.matrix = matrix_from_json(mj.at("matrix"), context);
    } else {
      const Vec amplitudes = vector_from_json(mj.at("pure"), context);
      // Outer product without the normalization gate: validation reports the
      // deviation instead of the parser repairing or rejecting it here.
      m.state.matrix = amplitudes * amplitudes.adjoint();
    }
    e.members.push_back(std::move(m));
    ++index;
  }
  return e;
}

Json pom_to_json(const Pom& pom) {
  Json elements = Json::array();
  for (const Mat& el : pom.elements) elements.push_back(matrix_to_json(el));
  return {{"dimension", pom.dim}, {"elements", std::move(elements)}};
}

Pom pom_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("POM: top level must be an object");
  Pom pom;
  pom.dim = dimension_at(j, "POM");
  if (!j.contains("elements") || !j.at("elements").is_array()) {
    throw ParseError("POM: missing 'elements' array");
  }
  std::size_t index = 0;
  for (const Json& ej : j.at("elements")) {
    pom.elements.push_back(matrix_from_json(ej, "element " + std::to_string(index)));
    ++index;
  }
  if (pom.elements.empty()) throw ParseError("POM: 'elements' is empty");
  return pom;
}

Json channel_to_json(const ChannelSpec& spec) {
  Json signals = Json::array();
  for (const Vec& s : spec.signals) signals.push_back(vector_to_json(s));
  return {{"dimension", spec.dim},
          {"signals", std::move(signals)},
          {"failure_prob", spec.failure_prob}};
}

ChannelSpec channel_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("channel: top level must be an object");
  ChannelSpec spec;
  spec.dim = dimension_at(j, "channel");
  if (!j.contains("signals") || !j.at("signals").is_array()) {
    throw ParseError("channel: missing 'signals' array");
  }
  std::size_t index = 0;
  for (const Json& sj : j.at("signals")) {
    spec.signals.push_back(vector_from_json(sj, "signal " + std::to_string(index)));
    ++index;
  }
  spec.failure_prob = number_at(j, "failure_prob", "channel");
  return spec;
}

Json report_to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    Json entry = {{"kind", v.kind}, {"residual", v.residual}, {"message", v.message}};
    entry["member"] = v.member.has_value() ? Json(*v.member) : Json(nullptr);
    violations.push_back(std::move(entry));
  }
  return {{"valid", r.valid}, {"violations", std::move(violations)}};
}

Json report_to_json(const OutcomeTable& t) {
  Json p_cond = Json::array();
  for (Eigen::Index k = 0; k < t.p_cond.rows(); ++k) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < t.p_cond.cols(); ++j) row.push_back(t.p_cond(k, j));
    p_cond.push_back(std::move(row));
  }
  Json marginal = Json::array();
  for (Eigen::Index k = 0; k < t.p_marginal.size(); ++k) marginal.push_back(t.p_marginal(k));
  Json posterior = Json::array();
  for (Eigen::Index j = 0; j < t.posterior.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < t.posterior.cols(); ++k) {
      const double value = t.posterior(j, k);
      row.push_back(std::isnan(value) ? Json(nullptr) : Json(value));
    }
    posterior.push_back(std::move(row));
  }
  return {{"p_cond", std::move(p_cond)},
          {"p_marginal", std::move(marginal)},
          {"posterior", std::move(posterior)},
          {"posterior_defined", t.posterior_defined}};
}

Json report_to_json(const OptimalityReport& r) {
  return {{"lagrangian", matrix_to_json(r.lagrangian)},
          {"hermiticity_residual", r.hermiticity_residual},
          {"per_k_min_eigenvalue", r.per_k_min_eigenvalue},
          {"per_k_stationarity_residual", r.per_k_stationarity_residual},
          {"satisfied_sufficient", r.satisfied_sufficient},
          {"satisfied_necessary", r.satisfied_necessary}};
}

Json report_to_json(const NoMeasurementReport& r) {
  Json margins = Json::array();
  for (const NoMeasurementMargin& m : r.per_k_min_eigenvalue) {
    margins.push_back({{"k", m.k}, {"min_eigenvalue", m.min_eigenvalue}});
  }
  return {{"candidate_j", r.candidate_j},
          {"candidates_tested", r.candidates_tested},
          {"per_k_min_eigenvalue", std::move(margins)},
          {"prior_condition", r.prior_condition},
          {"span_condition", r.span_condition},
          {"satisfied", r.satisfied},
          {"margin", r.margin}};
}

Json report_to_json(const SolverResult& r) {
  return {{"pom", pom_to_json(r.pom)},
          {"error_probability", r.error_probability},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"optimality", report_to_json(r.optimality)}};
}

Json report_to_json(const SimResult& r) {
  return {{"trials", r.trials},
          {"strategy_errors", r.strategy_errors},
          {"empirical_error", r.empirical_error},
          {"guess_baseline", r.guess_baseline},
          {"seed", r.seed}};
}

Json checks_to_json(const std::vector<PureStateCheck>& checks) {
  Json out = Json::array();
  for (const PureStateCheck& c : checks) {
    out.push_back({{"k", c.k}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
  }
  return out;
}

Json checks_to_json(const std::vector<MixedComponentCheck>& checks) {
  Json out = Json::array();
  for (const MixedComponentCheck& c : checks) {
    out.push_back({{"k", c.k},
                   {"component", c.component},
                   {"weight", c.weight},
                   {"lhs", c.lhs},
                   {"rhs", c.rhs},
                   {"ok", c.ok}});
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

void write_json_file(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qsd
