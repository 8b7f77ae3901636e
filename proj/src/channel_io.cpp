#include "qce/channel_io.hpp"

#include <fstream>

namespace qce {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& context) {
  if (!j.is_number()) throw ParseError(context + ": expected a number");
  return j.get<double>();
}

std::size_t dim_at(const json& j, const std::string& context) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() == 0)
    throw ParseError(context + ": expected a positive integer");
  return j.get<std::size_t>();
}

const json& field(const json& j, const std::string& key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(context + ": missing field '" + key + "'");
  return *it;
}

cxd entry_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(context + ": matrix entries must be [re, im] pairs");
  return {number_at(j[0], context + "[0]"), number_at(j[1], context + "[1]")};
}

}  // namespace

CMatrix matrix_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) throw ParseError(context + ": expected a list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw ParseError(context + ": rows must be non-empty lists");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_ctx = context + ".row[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(row_ctx + ": ragged matrix (expected " + std::to_string(cols) +
                       " entries)");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          entry_from_json(j[r][c], row_ctx + "[" + std::to_string(c) + "]");
  }
  return m;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

LoadedChannel from_family(const json& j) {
  const std::string family = field(j, "family", "channel").get<std::string>();
  LoadedChannel loaded;

  if (family == "identity") {
    const std::size_t d = dim_at(field(j, "d", family), family + ".d");
    loaded.channel = identity_channel(d);
    loaded.description = "identity(d=" + std::to_string(d) + ")";
  } else if (family == "depolarizing" || family == "depolarizing_keep") {
    const std::size_t d = dim_at(field(j, "d", family), family + ".d");
    const double p = number_at(field(j, "p", family), family + ".p");
    loaded.channel = family == "depolarizing" ? depolarizing(d, p) : depolarizing_keep(d, p);
    loaded.description = family + "(d=" + std::to_string(d) + ", p=" + std::to_string(p) + ")";
  } else if (family == "global_depolarizing") {
    const std::size_t d = dim_at(field(j, "d", family), family + ".d");
    const double p = number_at(field(j, "p", family), family + ".p");
    loaded.channel = global_depolarizing(d * d, p);
    loaded.description =
        "global_depolarizing(D=" + std::to_string(d * d) + ", p=" + std::to_string(p) + ")";
  } else if (family == "transpose_depolarizing") {
    const std::size_t d = dim_at(field(j, "d", family), family + ".d");
    const double t = number_at(field(j, "t", family), family + ".t");
    loaded.channel = transpose_depolarizing(d * d, t);
    loaded.description =
        "transpose_depolarizing(D=" + std::to_string(d * d) + ", t=" + std::to_string(t) + ")";
  } else if (family == "replacer") {
    const std::size_t dim_in = dim_at(field(j, "dim_in", family), family + ".dim_in");
    const CMatrix sigma = matrix_from_json(field(j, "sigma", family), family + ".sigma");
    DimSpec dims{static_cast<std::size_t>(sigma.rows())};
    loaded.channel = replacer(DensityOperator::make(sigma, dims), dim_in);
    loaded.description = "replacer(dim_in=" + std::to_string(dim_in) + ")";
  } else if (family == "holevo") {
    const json& prep = field(j, "prepare", family);
    const json& povm = field(j, "povm", family);
    if (!prep.is_array() || !povm.is_array())
      throw ParseError("holevo: 'prepare' and 'povm' must be lists of matrices");
    std::vector<DensityOperator> states;
    std::vector<CMatrix> elements;
    for (std::size_t k = 0; k < prep.size(); ++k) {
      const CMatrix r = matrix_from_json(prep[k], "holevo.prepare[" + std::to_string(k) + "]");
      states.push_back(DensityOperator::make(r, DimSpec{static_cast<std::size_t>(r.rows())}));
    }
    for (std::size_t k = 0; k < povm.size(); ++k)
      elements.push_back(matrix_from_json(povm[k], "holevo.povm[" + std::to_string(k) + "]"));
    loaded.channel = holevo_eb(states, elements);
    loaded.description = "holevo(" + std::to_string(prep.size()) + " terms)";
  } else {
    throw ParseError("unknown channel family '" + family + "'");
  }
  return loaded;
}

}  // namespace

LoadedChannel parse_channel_json(const json& j) {
  if (!j.is_object()) throw ParseError("channel document must be a JSON object");
  if (j.contains("family")) return from_family(j);

  const std::size_t dim_in = dim_at(field(j, "dim_in", "channel"), "channel.dim_in");
  const std::size_t dim_out = dim_at(field(j, "dim_out", "channel"), "channel.dim_out");
  const json& kraus = field(j, "kraus", "channel");
  if (!kraus.is_array() || kraus.empty())
    throw ParseError("channel.kraus: expected a non-empty list of matrices");

  KrausChannel channel;
  channel.dim_in = dim_in;
  channel.dim_out = dim_out;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    CMatrix op = matrix_from_json(kraus[k], "channel.kraus[" + std::to_string(k) + "]");
    if (op.rows() != static_cast<Eigen::Index>(dim_out) ||
        op.cols() != static_cast<Eigen::Index>(dim_in))
      throw ParseError("channel.kraus[" + std::to_string(k) + "]: expected a " +
                       std::to_string(dim_out) + "x" + std::to_string(dim_in) + " matrix");
    channel.kraus.push_back(std::move(op));
  }
  LoadedChannel loaded;
  loaded.channel = std::move(channel);
  loaded.description = "kraus(" + std::to_string(kraus.size()) + " operators, " +
                       std::to_string(dim_in) + "->" + std::to_string(dim_out) + ")";
  return loaded;
}

LoadedChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open channel file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("channel file '" + path + "': " + e.what());
  }
  return parse_channel_json(j);
}

DensityOperator parse_state_json(const json& j) {
  if (!j.is_object()) throw ParseError("state document must be a JSON object");
  const json& dims_json = field(j, "dims", "state");
  if (!dims_json.is_array() || dims_json.empty())
    throw ParseError("state.dims: expected a non-empty list of dimensions");
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < dims_json.size(); ++k)
    dims.push_back(dim_at(dims_json[k], "state.dims[" + std::to_string(k) + "]"));

  if (j.contains("vector")) {
    const json& vec = j["vector"];
    if (!vec.is_array() || vec.empty()) throw ParseError("state.vector: expected a list");
    CVector v(static_cast<Eigen::Index>(vec.size()));
    for (std::size_t k = 0; k < vec.size(); ++k)
      v(static_cast<Eigen::Index>(k)) =
          entry_from_json(vec[k], "state.vector[" + std::to_string(k) + "]");
    try {
      return pure_state_density(v, DimSpec(dims));
    } catch (const Error& e) {
      throw ParseError(std::string("state.vector: ") + e.what());
    }
  }
  if (j.contains("matrix")) {
    const CMatrix m = matrix_from_json(j["matrix"], "state.matrix");
    try {
      return DensityOperator::make(m, DimSpec(dims));
    } catch (const Error& e) {
      throw ParseError(std::string("state.matrix: ") + e.what());
    }
  }
  throw ParseError("state: needs either 'vector' or 'matrix'");
}

DensityOperator load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("state file '" + path + "': " + e.what());
  }
  return parse_state_json(j);
}

nlohmann::json state_to_json(const DensityOperator& rho) {
  json j;
  j["dims"] = rho.dims.dims;
  j["matrix"] = matrix_to_json(rho.matrix);
  return j;
}

nlohmann::json channel_to_json(const KrausChannel& channel) {
  json j;
  j["dim_in"] = channel.dim_in;
  j["dim_out"] = channel.dim_out;
  json kraus = json::array();
  for (const CMatrix& k : channel.kraus) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  return j;
}

nlohmann::json verdict_to_json(const Verdict& verdict) {
  json j;
  j["status"] = to_string(verdict.status);
  j["method"] = verdict.method;
  j["detail"] = verdict.detail;
  j["tolerance"] = verdict.tolerance;
  json cert = json::object();
  if (verdict.certificate.violating_eigenvalue)
    cert["violating_eigenvalue"] = *verdict.certificate.violating_eigenvalue;
  if (verdict.certificate.witness_value)
    cert["witness_value"] = *verdict.certificate.witness_value;
  if (verdict.certificate.witness_state)
    cert["witness_state"] = state_to_json(*verdict.certificate.witness_state);
  if (verdict.certificate.search) {
    const auto& s = *verdict.certificate.search;
    cert["search"] = {{"restarts", s.restarts},
                      {"max_iterations", s.max_iterations},
                      {"seed", s.seed},
                      {"evaluations", s.evaluations},
                      {"best_value", s.best_value}};
  }
  j["certificate"] = std::move(cert);
  return j;
}

}  // namespace qce
