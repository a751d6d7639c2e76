#include "gsys/coupling.hpp"

#include <map>
#include <set>

namespace gsys {

namespace {

std::string config_text(const Config& g, const Magma& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ", ";
    out += g.vars().name(i) + "=" + m.element_name(g.value_at(i));
  }
  return out + "}";
}

}  // namespace

GluingMap::GluingMap() = default;

GluingMap GluingMap::make(std::vector<std::pair<std::string, std::string>> pairs) {
  std::set<std::string> sources;
  std::set<std::string> targets;
  for (const auto& [a, b] : pairs) {
    if (!sources.insert(a).second) {
      throw Error(ErrorKind::BadGluing, "gluing source '" + a + "' appears twice");
    }
    if (!targets.insert(b).second) {
      throw Error(ErrorKind::BadGluing, "gluing target '" + b + "' appears twice");
    }
  }
  GluingMap z;
  std::vector<std::string> src, tgt;
  src.reserve(pairs.size());
  tgt.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    src.push_back(a);
    tgt.push_back(b);
  }
  z.source_ = VarSet::of(std::move(src));
  z.target_ = VarSet::of(std::move(tgt));
  z.pairs_ = std::move(pairs);
  return z;
}

std::optional<std::string> GluingMap::target_of(std::string_view source) const {
  for (const auto& [a, b] : pairs_) {
    if (a == source) return b;
  }
  return std::nullopt;
}

std::optional<std::string> GluingMap::source_of(std::string_view target) const {
  for (const auto& [a, b] : pairs_) {
    if (b == target) return a;
  }
  return std::nullopt;
}

Config translate_right(const Config& h, const Config& t, const Magma& m) {
  if (!t.vars().subset_of(h.vars())) {
    throw Error(ErrorKind::UnknownVariable,
                "translating configuration assigns variables outside the target");
  }
  std::vector<int> values = h.values();
  for (std::size_t i = 0; i < t.vars().size(); ++i) {
    std::size_t j = *h.vars().index_of(t.vars().name(i));
    values[j] = m.op(values[j], t.value_at(i));
  }
  return Config::make(h.vars(), std::move(values));
}

ConfigSet star_set(const ConfigSet& h0, const ConfigSet& h1) {
  VarSet z = VarSet::union_of(h0.vars(), h1.vars());
  VarSet overlap = VarSet::intersection(h0.vars(), h1.vars());
  // Overlap positions inside each side's row layout.
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  shared.reserve(overlap.size());
  for (const auto& name : overlap.names()) {
    shared.emplace_back(*h0.vars().index_of(name), *h1.vars().index_of(name));
  }
  std::vector<Config> rows;
  for (const Config& g0 : h0.rows()) {
    for (const Config& g1 : h1.rows()) {
      bool compatible = true;
      for (const auto& [i0, i1] : shared) {
        if (g0.value_at(i0) != g1.value_at(i1)) {
          compatible = false;
          break;
        }
      }
      if (!compatible) continue;
      rows.push_back(merge(g0, g1));
      stats::add_enumerated(1);
    }
  }
  return ConfigSet::of(z, std::move(rows));
}

ClosureResult is_closed(const ConfigSet& h, const GSystem& s) {
  if (!h.vars().same_names(s.vars())) {
    throw Error(ErrorKind::VarSetMismatch,
                "closure check requires the set and the system to share variables");
  }
  for (const Config& g : h.rows()) {
    stats::add_enumerated(1);
    Config out = s.step(g);
    if (!h.contains(out)) return {false, g, out};
  }
  return {true, std::nullopt, std::nullopt};
}

namespace {

// The coupled output over z for one ambient configuration, by the
// three-case formula. xi/yi give, per z position, the position of that
// variable in each side's layout (-1 when absent).
Config coupled_output(const Config& h, const GSystem& sx, const GSystem& sy, const VarSet& z,
                      const std::vector<int>& xi, const std::vector<int>& yi, const Magma& m) {
  Config ax = sx.step(restrict_to(h, sx.vars()));
  Config by = sy.step(restrict_to(h, sy.vars()));
  std::vector<int> values;
  values.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (xi[i] >= 0 && yi[i] >= 0) {
      values.push_back(m.op(ax.value_at(static_cast<std::size_t>(xi[i])),
                            by.value_at(static_cast<std::size_t>(yi[i]))));
    } else if (xi[i] >= 0) {
      values.push_back(ax.value_at(static_cast<std::size_t>(xi[i])));
    } else {
      values.push_back(by.value_at(static_cast<std::size_t>(yi[i])));
    }
  }
  return Config::make(z, std::move(values));
}

}  // namespace

GSystem couple(const GSystem& sx, const GSystem& sy, std::uint64_t cap) {
  if (!(sx.magma() == sy.magma())) {
    throw Error(ErrorKind::MagmaMismatch, "coupling requires one common magma");
  }
  if (sx.has_restricted_domain() != sy.has_restricted_domain()) {
    throw Error(ErrorKind::DomainMismatch,
                "coupling requires both domains restricted or both full");
  }
  const Magma& m = sx.magma();
  VarSet z = VarSet::union_of(sx.vars(), sy.vars());
  std::optional<ConfigSet> domain;
  if (sx.has_restricted_domain()) domain = star_set(*sx.domain(), *sy.domain());

  if (!sx.is_tabulated() && !sy.is_tabulated()) {
    std::vector<std::pair<std::string, Term>> rules;
    rules.reserve(z.size());
    for (const auto& name : z.names()) {
      auto ix = sx.vars().index_of(name);
      auto iy = sy.vars().index_of(name);
      if (ix && iy) {
        rules.emplace_back(name, Term::op((*sx.rules())[*ix], (*sy.rules())[*iy]));
      } else if (ix) {
        rules.emplace_back(name, (*sx.rules())[*ix]);
      } else {
        rules.emplace_back(name, (*sy.rules())[*iy]);
      }
    }
    FnEnv fns = FnEnv::merged(sx.fns(), sy.fns());
    if (!domain) return GSystem::from_rules(m, z, std::move(rules), std::move(fns));
    GSystem plain = GSystem::from_rules(m, z, rules, fns);
    ClosureResult c = is_closed(*domain, plain);
    if (!c.closed) {
      throw Error(ErrorKind::ClosureViolation,
                  "star set not closed under the coupled step: " + config_text(*c.witness, m) +
                      " steps to " + config_text(*c.image, m));
    }
    return GSystem::from_rules(m, z, std::move(rules), std::move(fns), std::move(domain));
  }

  std::vector<int> xi(z.size(), -1), yi(z.size(), -1);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (auto ix = sx.vars().index_of(z.name(i))) xi[i] = static_cast<int>(*ix);
    if (auto iy = sy.vars().index_of(z.name(i))) yi[i] = static_cast<int>(*iy);
  }
  std::vector<std::pair<Config, Config>> rows;
  if (domain) {
    rows.reserve(domain->size());
    for (const Config& h : domain->rows()) {
      Config out = coupled_output(h, sx, sy, z, xi, yi, m);
      if (!domain->contains(out)) {
        throw Error(ErrorKind::ClosureViolation,
                    "star set not closed under the coupled step: " + config_text(h, m) +
                        " steps to " + config_text(out, m));
      }
      rows.emplace_back(h, std::move(out));
    }
  } else {
    ConfigRange range = enumerate_configs(m, z, cap);
    rows.reserve(range.total());
    for (const Config& h : range) rows.emplace_back(h, coupled_output(h, sx, sy, z, xi, yi, m));
  }
  return GSystem::from_table(m, z, std::move(rows), std::move(domain), cap);
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& map) {
  switch (t.kind) {
    case Term::Kind::Var:
      return Term::var(map.at(t.name));
    case Term::Kind::Elem:
      return t;
    case Term::Kind::Op:
      return Term::op(rename_term(t.args[0], map), rename_term(t.args[1], map));
    case Term::Kind::Call: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(rename_term(a, map));
      return Term::call(t.name, std::move(args));
    }
  }
  return t;
}

GSystem rename_system(const GSystem& s,
                      const std::vector<std::pair<std::string, std::string>>& renames,
                      std::uint64_t cap) {
  std::map<std::string, std::string> map(renames.begin(), renames.end());
  std::vector<std::string> names;
  names.reserve(s.vars().size());
  for (const auto& n : s.vars().names()) names.push_back(map.at(n));
  VarSet vars = VarSet::of(std::move(names));

  std::optional<ConfigSet> domain;
  if (s.has_restricted_domain()) {
    std::vector<Config> rows;
    rows.reserve(s.domain()->size());
    for (const Config& g : s.domain()->rows()) rows.push_back(Config::make(vars, g.values()));
    domain = ConfigSet::of(vars, std::move(rows));
  }
  if (!s.is_tabulated()) {
    std::vector<std::pair<std::string, Term>> rules;
    rules.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      rules.emplace_back(vars.name(i), rename_term((*s.rules())[i], map));
    }
    return GSystem::from_rules(s.magma(), vars, std::move(rules), s.fns(), std::move(domain));
  }
  std::vector<std::pair<Config, Config>> rows;
  rows.reserve(s.table()->size());
  for (const auto& [in, out] : *s.table()) {
    rows.emplace_back(Config::make(vars, in.values()), Config::make(vars, out.values()));
  }
  return GSystem::from_table(s.magma(), vars, std::move(rows), std::move(domain), cap);
}

}  // namespace

GluedCoupling couple_glued(const GSystem& sx, const GSystem& sy, const GluingMap& zeta,
                           std::uint64_t cap) {
  for (const auto& [a, b] : zeta.pairs()) {
    if (!sx.vars().contains(a)) {
      throw Error(ErrorKind::BadGluing,
                  "gluing source '" + a + "' is not a variable of the first system");
    }
    if (!sy.vars().contains(b)) {
      throw Error(ErrorKind::BadGluing,
                  "gluing target '" + b + "' is not a variable of the second system");
    }
  }
  // Decide the final name of each second-system variable, in declaration
  // order: glued variables adopt their partner's name; the rest keep their
  // own, primed until fresh if it is already spoken for.
  std::vector<std::pair<std::string, std::string>> renames;
  renames.reserve(sy.vars().size());
  std::set<std::string> taken;
  for (const auto& y : sy.vars().names()) {
    std::string target;
    if (auto a = zeta.source_of(y)) {
      target = *a;
    } else {
      target = y;
      while (sx.vars().contains(target) || taken.count(target)) target += "'";
    }
    taken.insert(target);
    renames.emplace_back(y, target);
  }
  GSystem renamed = rename_system(sy, renames, cap);
  return {couple(sx, renamed, cap), std::move(renames)};
}

bool check_closure_condition1(const ConfigSet& h0, const ConfigSet& h1, const GSystem& sx,
                              const GSystem& sy) {
  if (!(sx.magma() == sy.magma())) {
    throw Error(ErrorKind::MagmaMismatch, "closure condition requires one common magma");
  }
  if (!h0.vars().same_names(sx.vars()) || !h1.vars().same_names(sy.vars())) {
    throw Error(ErrorKind::VarSetMismatch,
                "closure condition requires sets over the systems' variables");
  }
  const Magma& m = sx.magma();
  VarSet overlap = VarSet::intersection(sx.vars(), sy.vars());
  if (overlap.empty()) return true;
  // On the overlap the second system's output multiplies from the right;
  // the first must absorb it.
  for (const Config& hp : h1.rows()) {
    Config t = restrict_to(sy.step(hp), overlap);
    for (const Config& h : h0.rows()) {
      stats::add_enumerated(1);
      if (!h0.contains(translate_right(h, t, m))) return false;
    }
  }
  // And the first system's output multiplies from the left into the second.
  for (const Config& h : h0.rows()) {
    Config t = restrict_to(sx.step(h), overlap);
    for (const Config& hp : h1.rows()) {
      stats::add_enumerated(1);
      if (!h1.contains(translate(t, hp, m))) return false;
    }
  }
  return true;
}

bool check_closure_condition2(const ConfigSet& h0, const ConfigSet& h1, const VarSet& overlap,
                              const Magma& m, std::uint64_t cap) {
  if (!overlap.subset_of(h0.vars()) || !overlap.subset_of(h1.vars())) {
    throw Error(ErrorKind::VarSetMismatch,
                "overlap variables must belong to both configuration sets");
  }
  if (overlap.empty()) return true;
  for (const Config& t : enumerate_configs(m, overlap, cap)) {
    for (const Config& h : h0.rows()) {
      if (!h0.contains(translate(t, h, m))) return false;
      if (!h0.contains(translate_right(h, t, m))) return false;
    }
    for (const Config& h : h1.rows()) {
      if (!h1.contains(translate(t, h, m))) return false;
      if (!h1.contains(translate_right(h, t, m))) return false;
    }
  }
  return true;
}

}  // namespace gsys
