#include <nlohmann/json.hpp>

#include "gsys/speclang.hpp"

namespace gsys {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const Config& g, const Magma& m) {
  // Element names keyed by variable, preserving variable order.
  ordered_json out = ordered_json::object();
  const std::vector<std::string>& names = g.vars().names();
  for (std::size_t i = 0; i < names.size(); ++i)
    out[names[i]] = m.element_name(g.values()[i]);
  return out;
}

ordered_json system_to_json(const GSystem& s) {
  ordered_json out = ordered_json::object();
  out["vars"] = s.vars().names();
  if (const std::vector<Term>* rules = s.rules()) {
    ordered_json rule_obj = ordered_json::object();
    const std::vector<std::string>& names = s.vars().names();
    for (std::size_t i = 0; i < rules->size(); ++i)
      rule_obj[names[i]] = to_string((*rules)[i]);
    out["rules"] = std::move(rule_obj);
  } else if (const auto* table = s.table()) {
    ordered_json rows = ordered_json::array();
    for (const auto& [in, step_out] : *table) {
      ordered_json row = ordered_json::object();
      row["in"] = config_to_json(in, s.magma());
      row["out"] = config_to_json(step_out, s.magma());
      rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
  }
  if (s.has_restricted_domain()) {
    ordered_json domain = ordered_json::array();
    for (const Config& g : s.domain()->rows()) domain.push_back(config_to_json(g, s.magma()));
    out["domain"] = std::move(domain);
  }
  return out;
}

ordered_json result_to_json(const QueryResult& r) {
  ordered_json out = ordered_json::object();
  out["query"] = r.query;
  out["kind"] = r.kind;
  if (r.holds.has_value()) out["holds"] = *r.holds;
  if (!r.value.is_null()) out["value"] = r.value;
  if (!r.witness.is_null()) out["witness"] = r.witness;
  out["stats"] = ordered_json{{"configs_enumerated", r.configs_enumerated},
                              {"millis", r.millis}};
  return out;
}

}  // namespace gsys
