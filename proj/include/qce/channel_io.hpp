#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "qce/channels.hpp"
#include "qce/classify.hpp"

namespace qce {

/// Channel file contents: either a Kraus channel (explicit list or a named
/// family) or the apply-only transpose depolarizing map.
struct LoadedChannel {
  std::variant<KrausChannel, TransposeDepolarizing> channel;
  std::string description;

  bool is_kraus() const { return std::holds_alternative<KrausChannel>(channel); }
  const KrausChannel& kraus() const { return std::get<KrausChannel>(channel); }
  const TransposeDepolarizing& transpose_dep() const {
    return std::get<TransposeDepolarizing>(channel);
  }
};

/// Channel file format: either
///   {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
/// with each matrix a list of rows of [re, im] pairs, or a named family
///   {"family": "depolarizing", "d": 2, "p": 0.5}
/// (families: identity, depolarizing, depolarizing_keep, global_depolarizing,
/// transpose_depolarizing, replacer, holevo).
LoadedChannel parse_channel_json(const nlohmann::json& j);
LoadedChannel load_channel_file(const std::string& path);

/// State file format: {"dims": [...], "vector": [[re,im], ...]} for pure
/// states or {"dims": [...], "matrix": rows} for density operators.
DensityOperator parse_state_json(const nlohmann::json& j);
DensityOperator load_state_file(const std::string& path);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json state_to_json(const DensityOperator& rho);
nlohmann::json channel_to_json(const KrausChannel& channel);
nlohmann::json verdict_to_json(const Verdict& verdict);

}  // namespace qce
