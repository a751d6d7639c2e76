#include "gsys/system.hpp"

#include <algorithm>

namespace gsys {

Term Term::var(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  return t;
}

Term Term::elem(std::string name) {
  Term t;
  t.kind = Kind::Elem;
  t.name = std::move(name);
  return t;
}

Term Term::op(Term lhs, Term rhs) {
  Term t;
  t.kind = Kind::Op;
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  return t;
}

Term Term::call(std::string fn, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Call;
  t.name = std::move(fn);
  t.args = std::move(args);
  return t;
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.name == b.name && a.args == b.args;
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.name;
    case Term::Kind::Elem:
      return "#" + t.name;
    case Term::Kind::Op: {
      // The operation is left-associative; parenthesize compound right
      // arguments (and right-nested operations on the left for clarity).
      std::string lhs = to_string(t.args[0]);
      std::string rhs = to_string(t.args[1]);
      if (t.args[1].kind == Term::Kind::Op) rhs = "(" + rhs + ")";
      return lhs + " • " + rhs;
    }
    case Term::Kind::Call: {
      std::string out = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

FnTable FnTable::make(std::string name, int arity, std::vector<int> values,
                      const Magma& m) {
  if (arity < 1) {
    throw Error(ErrorKind::BadParameter, "function arity must be at least 1");
  }
  std::uint64_t expected = 1;
  for (int i = 0; i < arity; ++i) {
    expected *= static_cast<std::uint64_t>(m.size());
    if (expected > (1u << 20)) {
      throw Error(ErrorKind::BadParameter, "function table too large");
    }
  }
  if (values.size() != expected) {
    throw Error(ErrorKind::MalformedTable,
                "function '" + name + "' table has " + std::to_string(values.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  for (int v : values) {
    if (v < 0 || v >= m.size()) {
      throw Error(ErrorKind::MalformedTable,
                  "function '" + name + "' table entry " + std::to_string(v) +
                      " out of range");
    }
  }
  FnTable t;
  t.name_ = std::move(name);
  t.arity_ = arity;
  t.values_ = std::move(values);
  return t;
}

int FnTable::apply(std::span<const int> args, const Magma& m) const {
  std::size_t index = 0;
  for (int a : args) index = index * static_cast<std::size_t>(m.size()) + static_cast<std::size_t>(a);
  return values_[index];
}

bool operator==(const FnTable& a, const FnTable& b) {
  return a.name_ == b.name_ && a.arity_ == b.arity_ && a.values_ == b.values_;
}

namespace {
using FnMap = std::map<std::string, FnTable, std::less<>>;
const std::shared_ptr<const FnMap>& empty_fn_map() {
  static const std::shared_ptr<const FnMap> m = std::make_shared<FnMap>();
  return m;
}
}  // namespace

FnEnv::FnEnv() : tables_(empty_fn_map()) {}

FnEnv FnEnv::with(FnTable table) const {
  auto copy = std::make_shared<FnMap>(*tables_);
  auto name = table.name();
  auto [it, inserted] = copy->insert_or_assign(std::move(name), std::move(table));
  (void)it;
  (void)inserted;
  FnEnv env;
  env.tables_ = std::move(copy);
  return env;
}

const FnTable* FnEnv::find(std::string_view name) const {
  auto it = tables_->find(name);
  if (it == tables_->end()) return nullptr;
  return &it->second;
}

const FnMap& FnEnv::tables() const { return *tables_; }

FnEnv FnEnv::merged(const FnEnv& a, const FnEnv& b) {
  if (a.tables_ == b.tables_ || b.tables_->empty()) return a;
  if (a.tables_->empty()) return b;
  auto copy = std::make_shared<FnMap>(*a.tables_);
  for (const auto& [name, table] : *b.tables_) {
    auto [it, inserted] = copy->emplace(name, table);
    if (!inserted && !(it->second == table)) {
      throw Error(ErrorKind::BadParameter,
                  "function '" + name + "' bound to two different tables");
    }
  }
  FnEnv env;
  env.tables_ = std::move(copy);
  return env;
}

// Rules are compiled once at construction: variable and element names are
// resolved to indices and calls to table pointers, so stepping never does
// string lookups.
namespace {
struct CompiledTerm {
  Term::Kind kind = Term::Kind::Var;
  int index = 0;            // variable index or element index
  const FnTable* fn = nullptr;
  std::vector<CompiledTerm> args;
};

CompiledTerm compile_term(const Term& t, const VarSet& vars, const Magma& m,
                          const FnEnv& fns) {
  CompiledTerm c;
  c.kind = t.kind;
  switch (t.kind) {
    case Term::Kind::Var: {
      auto i = vars.index_of(t.name);
      if (!i) {
        throw Error(ErrorKind::UnboundVariable,
                    "rule mentions undeclared variable '" + t.name + "'");
      }
      c.index = static_cast<int>(*i);
      break;
    }
    case Term::Kind::Elem: {
      auto i = m.element_index(t.name);
      if (!i) {
        throw Error(ErrorKind::UnknownElement, "unknown element '" + t.name + "'");
      }
      c.index = *i;
      break;
    }
    case Term::Kind::Op: {
      if (t.args.size() != 2) {
        throw Error(ErrorKind::BadParameter, "operation takes exactly two arguments");
      }
      c.args.push_back(compile_term(t.args[0], vars, m, fns));
      c.args.push_back(compile_term(t.args[1], vars, m, fns));
      break;
    }
    case Term::Kind::Call: {
      const FnTable* fn = fns.find(t.name);
      if (!fn) {
        throw Error(ErrorKind::UnknownName, "unknown function '" + t.name + "'");
      }
      if (static_cast<std::size_t>(fn->arity()) != t.args.size()) {
        throw Error(ErrorKind::ArityMismatch,
                    "function '" + t.name + "' takes " + std::to_string(fn->arity()) +
                        " arguments, got " + std::to_string(t.args.size()));
      }
      c.fn = fn;
      for (const auto& a : t.args) c.args.push_back(compile_term(a, vars, m, fns));
      break;
    }
  }
  return c;
}

int eval_term(const CompiledTerm& t, const std::vector<int>& values, const Magma& m) {
  switch (t.kind) {
    case Term::Kind::Var:
      return values[static_cast<std::size_t>(t.index)];
    case Term::Kind::Elem:
      return t.index;
    case Term::Kind::Op:
      return m.op(eval_term(t.args[0], values, m), eval_term(t.args[1], values, m));
    case Term::Kind::Call: {
      std::vector<int> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(eval_term(a, values, m));
      return t.fn->apply(args, m);
    }
  }
  return 0;
}
}  // namespace

struct GSystem::Impl {
  Magma magma;
  VarSet vars;
  FnEnv fns;
  std::optional<ConfigSet> domain;

  std::optional<std::vector<Term>> rules;  // parallel to vars
  std::vector<CompiledTerm> compiled;      // parallel to vars when rule-based

  std::optional<std::vector<std::pair<Config, Config>>> table;  // sorted by input

  Impl(Magma m, VarSet v, FnEnv f) : magma(std::move(m)), vars(std::move(v)), fns(std::move(f)) {}

  Config raw_step(const Config& g) const {
    if (rules) {
      std::vector<int> out;
      out.reserve(vars.size());
      for (const auto& c : compiled) out.push_back(eval_term(c, g.values(), magma));
      return Config::make(vars, std::move(out));
    }
    auto it = std::lower_bound(table->begin(), table->end(), g,
                               [](const std::pair<Config, Config>& row, const Config& probe) {
                                 return row.first.values() < probe.values();
                               });
    if (it == table->end() || !(it->first.values() == g.values())) {
      throw Error(ErrorKind::OutOfDomain, "configuration outside the system's domain");
    }
    return it->second;
  }
};

namespace {
std::string config_brief(const Config& g, const Magma& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ", ";
    out += g.vars().name(i) + "=" + m.element_name(g.value_at(i));
  }
  return out + "}";
}
}  // namespace

GSystem GSystem::from_rules(Magma m, VarSet vars,
                            std::vector<std::pair<std::string, Term>> rules,
                            FnEnv fns, std::optional<ConfigSet> domain) {
  auto impl = std::make_shared<Impl>(std::move(m), std::move(vars), std::move(fns));
  std::vector<const Term*> by_var(impl->vars.size(), nullptr);
  for (const auto& [target, term] : rules) {
    auto i = impl->vars.index_of(target);
    if (!i) {
      throw Error(ErrorKind::UnboundVariable,
                  "rule for undeclared variable '" + target + "'");
    }
    if (by_var[*i]) {
      throw Error(ErrorKind::BadParameter, "variable '" + target + "' has two rules");
    }
    by_var[*i] = &term;
  }
  for (std::size_t i = 0; i < by_var.size(); ++i) {
    if (!by_var[i]) {
      throw Error(ErrorKind::IncompleteRules,
                  "variable '" + impl->vars.name(i) + "' has no rule");
    }
  }
  std::vector<Term> ordered;
  ordered.reserve(by_var.size());
  for (const Term* t : by_var) ordered.push_back(*t);
  impl->compiled.reserve(ordered.size());
  for (const auto& t : ordered) {
    impl->compiled.push_back(compile_term(t, impl->vars, impl->magma, impl->fns));
  }
  impl->rules = std::move(ordered);

  if (domain) {
    if (!domain->vars().same_names(impl->vars)) {
      throw Error(ErrorKind::VarSetMismatch, "domain variables differ from system variables");
    }
    if (!(domain->vars() == impl->vars)) {
      std::vector<Config> rows = domain->rows();
      *domain = ConfigSet::of(impl->vars, std::move(rows));
    }
    for (const Config& g : domain->rows()) {
      Config out = impl->raw_step(g);
      if (!domain->contains(out)) {
        throw Error(ErrorKind::DomainNotClosed,
                    "domain not closed: " + config_brief(g, impl->magma) + " steps to " +
                        config_brief(out, impl->magma));
      }
    }
    impl->domain = std::move(domain);
  }
  return GSystem(std::move(impl));
}

GSystem GSystem::from_table(Magma m, VarSet vars,
                            std::vector<std::pair<Config, Config>> rows,
                            std::optional<ConfigSet> domain, std::uint64_t cap) {
  auto impl = std::make_shared<Impl>(std::move(m), std::move(vars), FnEnv());
  const int carrier = impl->magma.size();
  for (auto& [in, out] : rows) {
    if (!in.vars().same_names(impl->vars) || !out.vars().same_names(impl->vars)) {
      throw Error(ErrorKind::VarSetMismatch, "table row variables differ from system variables");
    }
    if (!(in.vars() == impl->vars)) in = reorder(in, impl->vars);
    if (!(out.vars() == impl->vars)) out = reorder(out, impl->vars);
    for (int v : in.values()) {
      if (v < 0 || v >= carrier)
        throw Error(ErrorKind::MalformedTable, "table input value out of range");
    }
    for (int v : out.values()) {
      if (v < 0 || v >= carrier)
        throw Error(ErrorKind::MalformedTable, "table output value out of range");
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const std::pair<Config, Config>& a, const std::pair<Config, Config>& b) {
              return a.first.values() < b.first.values();
            });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first.values() == rows[i - 1].first.values()) {
      if (rows[i].second.values() == rows[i - 1].second.values()) continue;
      throw Error(ErrorKind::MalformedTable,
                  "conflicting rows for input " + config_brief(rows[i].first, impl->magma));
    }
  }
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const std::pair<Config, Config>& a, const std::pair<Config, Config>& b) {
                           return a.first.values() == b.first.values();
                         }),
             rows.end());

  if (domain) {
    if (!domain->vars().same_names(impl->vars)) {
      throw Error(ErrorKind::VarSetMismatch, "domain variables differ from system variables");
    }
    if (!(domain->vars() == impl->vars)) {
      std::vector<Config> dom_rows = domain->rows();
      *domain = ConfigSet::of(impl->vars, std::move(dom_rows));
    }
    if (domain->size() != rows.size()) {
      throw Error(ErrorKind::MalformedTable,
                  "table has " + std::to_string(rows.size()) + " rows for a domain of " +
                      std::to_string(domain->size()));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!(rows[i].first.values() == domain->rows()[i].values())) {
        throw Error(ErrorKind::MalformedTable,
                    "table rows do not cover the domain exactly");
      }
      if (!domain->contains(rows[i].second)) {
        throw Error(ErrorKind::DomainNotClosed,
                    "domain not closed: " + config_brief(rows[i].first, impl->magma) +
                        " steps to " + config_brief(rows[i].second, impl->magma));
      }
    }
    impl->domain = std::move(domain);
  } else {
    auto expected = config_space_size(impl->magma, impl->vars);
    if (!expected || *expected > cap) {
      throw Error(ErrorKind::EnumerationCapExceeded,
                  "full transition table exceeds enumeration cap");
    }
    if (rows.size() != *expected) {
      throw Error(ErrorKind::MalformedTable,
                  "table has " + std::to_string(rows.size()) + " rows, expected " +
                      std::to_string(*expected));
    }
  }
  impl->table = std::move(rows);
  return GSystem(std::move(impl));
}

const Magma& GSystem::magma() const { return impl_->magma; }
const VarSet& GSystem::vars() const { return impl_->vars; }
const FnEnv& GSystem::fns() const { return impl_->fns; }
bool GSystem::is_tabulated() const { return impl_->table.has_value(); }
bool GSystem::has_restricted_domain() const { return impl_->domain.has_value(); }
const ConfigSet* GSystem::domain() const { return impl_->domain ? &*impl_->domain : nullptr; }
const std::vector<Term>* GSystem::rules() const { return impl_->rules ? &*impl_->rules : nullptr; }
const std::vector<std::pair<Config, Config>>* GSystem::table() const {
  return impl_->table ? &*impl_->table : nullptr;
}

Config GSystem::step(const Config& g) const {
  const Config* probe = &g;
  Config reordered;
  if (!(g.vars() == impl_->vars)) {
    reordered = reorder(g, impl_->vars);
    probe = &reordered;
  }
  if (impl_->domain && !impl_->domain->contains(*probe)) {
    throw Error(ErrorKind::OutOfDomain,
                "configuration " + config_brief(*probe, impl_->magma) +
                    " outside the system's domain");
  }
  return impl_->raw_step(*probe);
}

std::vector<Config> GSystem::iterate(const Config& g, int k) const {
  if (k < 0) throw Error(ErrorKind::BadParameter, "negative step count");
  std::vector<Config> trace;
  trace.reserve(static_cast<std::size_t>(k) + 1);
  trace.push_back(reorder(g, impl_->vars));
  for (int i = 0; i < k; ++i) trace.push_back(step(trace.back()));
  return trace;
}

ConfigSet GSystem::domain_or_full(std::uint64_t cap) const {
  if (impl_->domain) return *impl_->domain;
  std::vector<Config> rows;
  ConfigRange range = enumerate_configs(impl_->magma, impl_->vars, cap);
  rows.reserve(range.total());
  for (const Config& g : range) rows.push_back(g);
  return ConfigSet::of(impl_->vars, std::move(rows));
}

namespace {
void require_same_shape(const GSystem& a, const GSystem& b, const char* what) {
  if (!(a.magma() == b.magma())) {
    throw Error(ErrorKind::MagmaMismatch, std::string(what) + " requires one common magma");
  }
  if (!a.vars().same_names(b.vars())) {
    throw Error(ErrorKind::VarSetMismatch, std::string(what) + " requires one variable set");
  }
}

bool same_domain(const GSystem& a, const GSystem& b) {
  if (a.has_restricted_domain() != b.has_restricted_domain()) return false;
  if (!a.has_restricted_domain()) return true;
  const ConfigSet& da = *a.domain();
  const ConfigSet& db = *b.domain();
  if (da.size() != db.size()) return false;
  for (const Config& g : da.rows())
    if (!db.contains(g)) return false;
  return true;
}

Term substitute_vars(const Term& t, const std::map<std::string, const Term*>& binding) {
  switch (t.kind) {
    case Term::Kind::Var:
      return *binding.at(t.name);
    case Term::Kind::Elem:
      return t;
    case Term::Kind::Op:
      return Term::op(substitute_vars(t.args[0], binding), substitute_vars(t.args[1], binding));
    case Term::Kind::Call: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(substitute_vars(a, binding));
      return Term::call(t.name, std::move(args));
    }
  }
  return t;
}
}  // namespace

GSystem compose(const GSystem& second, const GSystem& first, std::uint64_t cap) {
  require_same_shape(second, first, "composition");
  if (!second.is_tabulated() && !first.is_tabulated()) {
    // Symbolic composition: plug first's rules into second's variables.
    std::map<std::string, const Term*> binding;
    const auto& fvars = first.vars();
    for (std::size_t i = 0; i < fvars.size(); ++i) {
      binding.emplace(fvars.name(i), &(*first.rules())[i]);
    }
    std::vector<std::pair<std::string, Term>> rules;
    const auto& svars = second.vars();
    for (std::size_t i = 0; i < svars.size(); ++i) {
      rules.emplace_back(svars.name(i), substitute_vars((*second.rules())[i], binding));
    }
    // Reorder targets to first's variable order for a stable layout.
    FnEnv fns = FnEnv::merged(first.fns(), second.fns());
    std::optional<ConfigSet> domain;
    if (first.has_restricted_domain()) {
      domain = *first.domain();
      if (second.has_restricted_domain()) {
        for (const Config& g : domain->rows()) {
          Config mid = first.step(g);
          if (!second.domain()->contains(mid)) {
            throw Error(ErrorKind::OutOfDomain,
                        "first stage leaves the second stage's domain");
          }
        }
      }
    } else if (second.has_restricted_domain()) {
      throw Error(ErrorKind::DomainMismatch,
                  "cannot compose a full-domain stage into a restricted stage");
    }
    return GSystem::from_rules(first.magma(), first.vars(), std::move(rules), std::move(fns),
                               std::move(domain));
  }
  std::optional<ConfigSet> domain;
  std::vector<std::pair<Config, Config>> rows;
  if (first.has_restricted_domain()) {
    domain = *first.domain();
    rows.reserve(domain->size());
    for (const Config& g : domain->rows()) rows.emplace_back(g, second.step(first.step(g)));
  } else {
    ConfigRange range = enumerate_configs(first.magma(), first.vars(), cap);
    rows.reserve(range.total());
    for (const Config& g : range) rows.emplace_back(g, second.step(first.step(g)));
  }
  return GSystem::from_table(first.magma(), first.vars(), std::move(rows), std::move(domain), cap);
}

GSystem pointwise_combine(const GSystem& s1, const GSystem& s2, std::uint64_t cap) {
  require_same_shape(s1, s2, "pointwise combination");
  if (!same_domain(s1, s2)) {
    throw Error(ErrorKind::DomainMismatch, "pointwise combination requires one common domain");
  }
  if (!s1.is_tabulated() && !s2.is_tabulated()) {
    std::vector<std::pair<std::string, Term>> rules;
    const auto& vars = s1.vars();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const Term& lhs = (*s1.rules())[i];
      const Term& rhs = (*s2.rules())[*s2.vars().index_of(vars.name(i))];
      rules.emplace_back(vars.name(i), Term::op(lhs, rhs));
    }
    FnEnv fns = FnEnv::merged(s1.fns(), s2.fns());
    std::optional<ConfigSet> domain;
    if (s1.has_restricted_domain()) domain = *s1.domain();
    return GSystem::from_rules(s1.magma(), vars, std::move(rules), std::move(fns),
                               std::move(domain));
  }
  const Magma& m = s1.magma();
  std::vector<std::pair<Config, Config>> rows;
  std::optional<ConfigSet> domain;
  auto combine = [&](const Config& g) {
    Config o1 = s1.step(g);
    Config o2 = reorder(s2.step(g), s1.vars());
    std::vector<int> out;
    out.reserve(o1.size());
    for (std::size_t i = 0; i < o1.size(); ++i) out.push_back(m.op(o1.value_at(i), o2.value_at(i)));
    rows.emplace_back(g, Config::make(s1.vars(), std::move(out)));
  };
  if (s1.has_restricted_domain()) {
    domain = *s1.domain();
    rows.reserve(domain->size());
    for (const Config& g : domain->rows()) combine(g);
  } else {
    ConfigRange range = enumerate_configs(m, s1.vars(), cap);
    rows.reserve(range.total());
    for (const Config& g : range) combine(g);
  }
  return GSystem::from_table(m, s1.vars(), std::move(rows), std::move(domain), cap);
}

GSystem tabulate(const GSystem& s, std::uint64_t cap) {
  std::vector<std::pair<Config, Config>> rows;
  std::optional<ConfigSet> domain;
  if (s.has_restricted_domain()) {
    domain = *s.domain();
    rows.reserve(domain->size());
    for (const Config& g : domain->rows()) rows.emplace_back(g, s.step(g));
  } else {
    ConfigRange range = enumerate_configs(s.magma(), s.vars(), cap);
    rows.reserve(range.total());
    for (const Config& g : range) rows.emplace_back(g, s.step(g));
  }
  return GSystem::from_table(s.magma(), s.vars(), std::move(rows), std::move(domain), cap);
}

EqualityResult systems_equal(const GSystem& a, const GSystem& b, std::uint64_t cap) {
  require_same_shape(a, b, "equality");
  if (!same_domain(a, b)) {
    throw Error(ErrorKind::DomainMismatch, "equality requires one common domain");
  }
  auto check = [&](const Config& g) -> bool {
    Config oa = a.step(g);
    Config ob = reorder(b.step(g), a.vars());
    return oa.values() == ob.values();
  };
  if (a.has_restricted_domain()) {
    for (const Config& g : a.domain()->rows()) {
      stats::add_enumerated(1);
      if (!check(g)) return {false, g};
    }
    return {true, std::nullopt};
  }
  ConfigRange range = enumerate_configs(a.magma(), a.vars(), cap);
  for (const Config& g : range) {
    if (!check(g)) return {false, g};
  }
  return {true, std::nullopt};
}

}  // namespace gsys
