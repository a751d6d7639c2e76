#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gsys/classical.hpp>
#include <gsys/coupling.hpp>
#include <gsys/system.hpp>

namespace testutil {

using Rng = std::mt19937_64;

inline gsys::Magma z2() { return gsys::cyclic_group(2); }

// The binary join table on {0,1}, used as an auxiliary function symbol.
inline gsys::FnTable max_fn(const gsys::Magma& m) {
  return gsys::FnTable::make("max", 2, {0, 1, 1, 1}, m);
}

// Four-bit system over Z/2Z:
//   b0 := b0; b1 := max(b0, b2); b2 := b3; b3 := b3.
inline gsys::GSystem gamma_system() {
  gsys::Magma m = z2();
  gsys::VarSet vars = gsys::VarSet::of({"b0", "b1", "b2", "b3"});
  gsys::FnEnv fns = gsys::FnEnv().with(max_fn(m));
  std::vector<std::pair<std::string, gsys::Term>> rules;
  rules.emplace_back("b0", gsys::Term::var("b0"));
  rules.emplace_back("b1", gsys::Term::call("max", {gsys::Term::var("b0"), gsys::Term::var("b2")}));
  rules.emplace_back("b2", gsys::Term::var("b3"));
  rules.emplace_back("b3", gsys::Term::var("b3"));
  return gsys::GSystem::from_rules(m, vars, std::move(rules), fns);
}

// The square of gamma_system, built directly from its closed-form rules:
//   b0 := b0; b1 := max(b0, b3); b2 := b3; b3 := b3.
inline gsys::GSystem gamma_squared_direct() {
  gsys::Magma m = z2();
  gsys::VarSet vars = gsys::VarSet::of({"b0", "b1", "b2", "b3"});
  gsys::FnEnv fns = gsys::FnEnv().with(max_fn(m));
  std::vector<std::pair<std::string, gsys::Term>> rules;
  rules.emplace_back("b0", gsys::Term::var("b0"));
  rules.emplace_back("b1", gsys::Term::call("max", {gsys::Term::var("b0"), gsys::Term::var("b3")}));
  rules.emplace_back("b2", gsys::Term::var("b3"));
  rules.emplace_back("b3", gsys::Term::var("b3"));
  return gsys::GSystem::from_rules(m, vars, std::move(rules), fns);
}

inline gsys::Config random_config(Rng& rng, const gsys::Magma& m, const gsys::VarSet& vars) {
  std::uniform_int_distribution<int> dist(0, m.size() - 1);
  std::vector<int> values(vars.size());
  for (auto& v : values) v = dist(rng);
  return gsys::Config::make(vars, std::move(values));
}

// Uniformly random total step function on G^X, materialized as a table.
inline gsys::GSystem random_tabulated_system(Rng& rng, const gsys::Magma& m,
                                             const gsys::VarSet& vars) {
  gsys::ConfigRange range = gsys::enumerate_configs(m, vars);
  std::uniform_int_distribution<std::uint64_t> dist(0, range.total() - 1);
  std::vector<std::pair<gsys::Config, gsys::Config>> rows;
  rows.reserve(range.total());
  for (const gsys::Config& g : range) rows.emplace_back(g, range.at(dist(rng)));
  return gsys::GSystem::from_table(m, vars, std::move(rows));
}

inline gsys::Team random_team(Rng& rng, const gsys::Magma& m, const gsys::VarSet& vars,
                              std::size_t rows) {
  std::vector<gsys::Config> members;
  members.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) members.push_back(random_config(rng, m, vars));
  return gsys::Team::of(vars, std::move(members));
}

// Standard small-magma pool for the randomized suites: the two- and
// four-element cyclic groups, the Klein four-group, and the three-element
// join chain.
inline std::vector<gsys::Magma> property_magmas() {
  return {gsys::cyclic_group(2), gsys::cyclic_group(4),
          gsys::direct_product(gsys::cyclic_group(2), gsys::cyclic_group(2)),
          gsys::chain_join(3)};
}

// Smallest superset of the seeds closed under the step function and under
// left and right translation by every configuration over `overlap`.
inline gsys::ConfigSet orbit_closure(const gsys::GSystem& s, const gsys::VarSet& overlap,
                                     std::vector<gsys::Config> seeds) {
  const gsys::Magma& m = s.magma();
  std::vector<gsys::Config> work = std::move(seeds);
  std::set<std::vector<int>> seen;
  std::vector<gsys::Config> members;
  while (!work.empty()) {
    gsys::Config g = gsys::reorder(work.back(), s.vars());
    work.pop_back();
    if (!seen.insert(g.values()).second) continue;
    members.push_back(g);
    work.push_back(s.step(g));
    for (const gsys::Config& t : gsys::enumerate_configs(m, overlap)) {
      work.push_back(gsys::translate(t, g, m));
      work.push_back(gsys::translate_right(g, t, m));
    }
  }
  return gsys::ConfigSet::of(s.vars(), std::move(members));
}

// The same step function, re-declared over the domain h (which must be
// closed under it).
inline gsys::GSystem restrict_system(const gsys::GSystem& s, const gsys::ConfigSet& h) {
  std::vector<std::pair<gsys::Config, gsys::Config>> rows;
  rows.reserve(h.size());
  for (const gsys::Config& g : h.rows()) rows.emplace_back(g, s.step(g));
  return gsys::GSystem::from_table(s.magma(), s.vars(), std::move(rows), h);
}

inline std::vector<std::string> var_names(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// A random automaton/controller pair with each component size drawn from
// [1, max_n].  All four tables are filled with uniform in-range entries.
inline gsys::ClassicalModel random_model(Rng& rng, int max_n = 3) {
  std::uniform_int_distribution<int> size_dist(1, max_n);
  const int nx = size_dist(rng);
  const int nu = size_dist(rng);
  const int ny = size_dist(rng);
  const int ni = size_dist(rng);
  auto table = [&rng](int cells, int range) {
    std::uniform_int_distribution<int> d(0, range - 1);
    std::vector<int> t(static_cast<std::size_t>(cells));
    for (int& v : t) v = d(rng);
    return t;
  };
  return gsys::ClassicalModel::make(nx, nu, ny, ni, table(nx * nu, nx), table(nx, ny),
                                    table(ni * ny, ni), table(ni, nu));
}

}  // namespace testutil
