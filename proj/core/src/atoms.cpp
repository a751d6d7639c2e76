#include "gsys/atoms.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace gsys {

namespace {

void require_subset(const VarSet& part, const VarSet& whole, const char* what) {
  if (!part.subset_of(whole)) {
    throw Error(ErrorKind::UnknownVariable,
                std::string(what) + " mentions a variable outside the system");
  }
}

Team team_or_domain(const GSystem& s, std::optional<Team> team, std::uint64_t cap) {
  if (team) {
    if (!team->vars().same_names(s.vars())) {
      throw Error(ErrorKind::VarSetMismatch, "team variables differ from system variables");
    }
    return *std::move(team);
  }
  return s.domain_or_full(cap);
}

// Positions of `part` inside the layout of `vars`.
std::vector<std::size_t> positions(const VarSet& part, const VarSet& vars) {
  std::vector<std::size_t> out;
  out.reserve(part.size());
  for (const auto& name : part.names()) out.push_back(*vars.index_of(name));
  return out;
}

std::vector<int> project(const Config& g, const std::vector<std::size_t>& at) {
  std::vector<int> out;
  out.reserve(at.size());
  for (std::size_t i : at) out.push_back(g.value_at(i));
  return out;
}

}  // namespace

DepResult dep_holds(const GSystem& s, const VarSet& a, const VarSet& b,
                    std::optional<Team> team, DepScan scan, std::uint64_t cap) {
  require_subset(a, s.vars(), "dependence antecedent");
  require_subset(b, s.vars(), "dependence consequent");
  Team c = team_or_domain(s, std::move(team), cap);

  const std::vector<Config>& rows = c.rows();
  std::vector<std::size_t> a_at = positions(a, c.vars());
  std::vector<std::size_t> b_at = positions(b, s.vars());

  // Step outputs projected to B, computed once per row.
  std::vector<std::vector<int>> out_b;
  out_b.reserve(rows.size());
  for (const Config& g : rows) {
    stats::add_enumerated(1);
    out_b.push_back(project(s.step(g), b_at));
  }

  if (scan == DepScan::Bucketed) {
    // First row of each A-class; comparing every later member against it
    // finds the earliest violating pair (see the naive scan's order).
    std::map<std::vector<int>, std::size_t> first_of;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      auto [it, inserted] = first_of.emplace(project(rows[j], a_at), j);
      if (inserted) continue;
      std::size_t i = it->second;
      if (out_b[i] != out_b[j]) return {false, std::make_pair(rows[i], rows[j])};
    }
    return {true, std::nullopt};
  }

  for (std::size_t j = 1; j < rows.size(); ++j) {
    std::vector<int> key = project(rows[j], a_at);
    for (std::size_t i = 0; i < j; ++i) {
      if (project(rows[i], a_at) == key && out_b[i] != out_b[j]) {
        return {false, std::make_pair(rows[i], rows[j])};
      }
    }
  }
  return {true, std::nullopt};
}

CauseResult cause_holds(const GSystem& s, const VarSet& a, const VarSet& b,
                        std::optional<Team> team, std::uint64_t cap) {
  require_subset(a, s.vars(), "cause antecedent");
  require_subset(b, s.vars(), "cause consequent");
  Team c = team_or_domain(s, std::move(team), cap);

  std::vector<std::size_t> b_at = positions(b, s.vars());
  ConfigRange overrides = enumerate_configs(s.magma(), a, cap);
  const ConfigSet* domain = s.domain();

  CauseResult result;
  result.interventions.reserve(c.size());
  for (const Config& g : c.rows()) {
    stats::add_enumerated(1);
    std::vector<int> base = project(s.step(g), b_at);
    bool moved = false;
    for (const Config& intervention : overrides) {
      Config poked = substitute(reorder(g, s.vars()), intervention);
      if (domain && !domain->contains(poked)) continue;
      if (project(s.step(poked), b_at) != base) {
        result.interventions.emplace_back(g, intervention);
        moved = true;
        break;
      }
    }
    if (!moved) {
      return {false, {}, g};
    }
  }
  result.holds = true;
  return result;
}

Team export_team(const GSystem& s, const Team& team, const VarSet& a, const VarSet& b,
                 ExportMode mode) {
  require_subset(a, s.vars(), "export input side");
  require_subset(b, s.vars(), "export output side");
  if (!team.vars().same_names(s.vars())) {
    throw Error(ErrorKind::VarSetMismatch, "team variables differ from system variables");
  }

  const VarSet& in_side = mode == ExportMode::Concat ? s.vars() : a;
  const VarSet& out_side = mode == ExportMode::Concat ? s.vars() : b;

  std::vector<std::string> columns = in_side.names();
  std::set<std::string> taken(columns.begin(), columns.end());
  for (const auto& name : out_side.names()) {
    std::string primed = name + "'";
    while (taken.count(primed)) primed += "'";
    taken.insert(primed);
    columns.push_back(primed);
  }
  VarSet table_vars = VarSet::of(std::move(columns));

  std::vector<std::size_t> in_at = positions(in_side, team.vars());
  std::vector<std::size_t> out_at = positions(out_side, s.vars());
  std::vector<Config> rows;
  rows.reserve(team.size());
  for (const Config& g : team.rows()) {
    stats::add_enumerated(1);
    std::vector<int> values = project(g, in_at);
    std::vector<int> outs = project(s.step(g), out_at);
    values.insert(values.end(), outs.begin(), outs.end());
    rows.push_back(Config::make(table_vars, std::move(values)));
  }
  return Team::of(table_vars, std::move(rows));
}

bool fd_holds(const Team& table, const VarSet& lhs, const VarSet& rhs) {
  require_subset(lhs, table.vars(), "dependency left side");
  require_subset(rhs, table.vars(), "dependency right side");
  std::vector<std::size_t> l_at = positions(lhs, table.vars());
  std::vector<std::size_t> r_at = positions(rhs, table.vars());
  std::map<std::vector<int>, std::vector<int>> image;
  for (const Config& row : table.rows()) {
    auto [it, inserted] = image.emplace(project(row, l_at), project(row, r_at));
    if (!inserted && it->second != project(row, r_at)) return false;
  }
  return true;
}

}  // namespace gsys
