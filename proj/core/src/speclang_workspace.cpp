#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gsys/atoms.hpp"
#include "gsys/speclang.hpp"

namespace gsys {

using ordered_json = nlohmann::ordered_json;

namespace {

// Re-throws a library error as a positioned error, keeping its kind.
template <typename F>
auto at_span(const Span& span, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SourceError&) {
    throw;
  } catch (const Error& e) {
    std::string what = e.what();
    const std::size_t p = what.find(": ");
    throw SourceError(e.kind(), p == std::string::npos ? what : what.substr(p + 2), span);
  }
}

[[noreturn]] void duplicate_name(const char* kind, const std::string& name, Span span) {
  throw SourceError(ErrorKind::BadParameter,
                  std::string("duplicate ") + kind + " name '" + name + "'", span);
}

// Builds a configuration from (variable, element-name) pairs; every variable
// must be covered exactly once.
Config resolve_config(const std::vector<std::pair<std::string, std::string>>& pairs,
                      const VarSet& vars, const Magma& m) {
  std::vector<int> values(static_cast<std::size_t>(vars.size()), -1);
  for (const auto& [var, elem] : pairs) {
    if (!vars.contains(var))
      throw Error(ErrorKind::UnknownVariable,
                  "'" + var + "' is not a variable of the system");
    const std::optional<int> idx = m.element_index(elem);
    if (!idx)
      throw Error(ErrorKind::UnknownElement, "'" + elem + "' is not a magma element");
    std::size_t pos = 0;
    while (vars.names()[pos] != var) ++pos;
    if (values[pos] != -1)
      throw Error(ErrorKind::BadParameter, "variable '" + var + "' assigned twice");
    values[pos] = *idx;
  }
  for (std::size_t pos = 0; pos < values.size(); ++pos)
    if (values[pos] == -1)
      throw Error(ErrorKind::BadParameter,
                  "variable '" + vars.names()[pos] + "' not assigned");
  return Config::make(vars, std::move(values));
}

// Fixed argument signatures of the query forms, for error messages.
struct FormSpec {
  const char* name;
  const char* shape;
};

constexpr FormSpec kForms[] = {
    {"dep", "dep(system, {A}, {B}[, team])"},
    {"cause", "cause(system, {A}, {B}[, team])"},
    {"reducible", "reducible(system, {X}, {Y}) or reducible(system, cover)"},
    {"emergent", "emergent(system, [factors], {X}, {Y}) or emergent(system, [factors], cover)"},
    {"couple", "couple(system, system)"},
    {"glue", "glue(system, system, {a -> b, ...})"},
    {"simulate", "simulate(system, {a = e, ...}, steps)"},
    {"embed_equiv", "embed_equiv(model, steps)"},
    {"closed", "closed(team, system)"},
};

const FormSpec* find_form(const std::string& name) {
  for (const FormSpec& f : kForms)
    if (name == f.name) return &f;
  return nullptr;
}

class Builder {
 public:
  Workspace take() && { return std::move(w_); }

  void operator()(const MagmaDef& def) {
    if (w_.magmas.count(def.name)) duplicate_name("magma", def.name, def.span);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < def.elements.size(); ++i) {
      if (!index.emplace(def.elements[i], static_cast<int>(i)).second)
        throw SourceError(ErrorKind::DuplicateElement,
                        "element '" + def.elements[i] + "' listed twice", def.span);
    }
    std::vector<std::vector<int>> table;
    table.reserve(def.op.size());
    for (const std::vector<std::string>& row : def.op) {
      std::vector<int> out;
      out.reserve(row.size());
      for (const std::string& entry : row) {
        const auto it = index.find(entry);
        if (it == index.end())
          throw SourceError(ErrorKind::UnknownElement,
                          "op table entry '" + entry + "' is not an element", def.span);
        out.push_back(it->second);
      }
      table.push_back(std::move(out));
    }
    at_span(def.span, [&] {
      w_.magmas.emplace(def.name, Magma::make(def.elements, std::move(table)));
    });
  }

  void operator()(const FnDef& def) {
    if (w_.fns.count(def.name)) duplicate_name("fn", def.name, def.span);
    const Magma& m = magma_at(def.magma, def.span);
    std::vector<int> values;
    values.reserve(def.values.size());
    for (const std::string& entry : def.values) {
      const std::optional<int> idx = m.element_index(entry);
      if (!idx)
        throw SourceError(ErrorKind::UnknownElement,
                        "value '" + entry + "' is not an element of magma '" +
                            def.magma + "'",
                        def.span);
      values.push_back(*idx);
    }
    at_span(def.span, [&] {
      FnTable table = FnTable::make(def.name, def.arity, std::move(values), m);
      envs_[def.magma] = envs_[def.magma].with(table);
      w_.fns.emplace(def.name, std::move(table));
    });
    w_.fn_magmas.emplace(def.name, def.magma);
  }

  void operator()(const SystemDef& def) {
    if (w_.systems.count(def.name)) duplicate_name("system", def.name, def.span);
    const Magma& m = magma_at(def.magma, def.span);
    const VarSet vars = at_span(def.span, [&] { return VarSet::of(def.vars); });
    const FnEnv& env = envs_[def.magma];
    for (const RuleDef& rule : def.rules) check_term(rule, def, m, env);
    std::optional<ConfigSet> domain;
    if (def.domain) {
      const auto it = w_.teams.find(*def.domain);
      if (it == w_.teams.end())
        throw SourceError(ErrorKind::UnknownName, "unknown team '" + *def.domain + "'",
                        def.span);
      if (w_.team_magmas.at(*def.domain) != def.magma)
        throw SourceError(ErrorKind::MagmaMismatch,
                        "team '" + *def.domain + "' uses a different magma", def.span);
      domain = it->second;
    }
    std::vector<std::pair<std::string, Term>> rules;
    rules.reserve(def.rules.size());
    for (const RuleDef& rule : def.rules) rules.emplace_back(rule.var, rule.term);
    at_span(def.span, [&] {
      w_.systems.emplace(def.name,
                         GSystem::from_rules(m, vars, std::move(rules), env, domain));
    });
  }

  void operator()(const TeamDef& def) {
    if (w_.teams.count(def.name)) duplicate_name("team", def.name, def.span);
    const Magma& m = magma_at(def.magma, def.span);
    const VarSet vars = at_span(def.span, [&] { return VarSet::of(def.vars); });
    std::vector<Config> rows;
    rows.reserve(def.rows.size());
    for (const std::vector<std::string>& row : def.rows) {
      if (row.size() != def.vars.size())
        throw SourceError(ErrorKind::BadParameter,
                        "team row has " + std::to_string(row.size()) + " entries for " +
                            std::to_string(def.vars.size()) + " variables",
                        def.span);
      std::vector<int> values;
      values.reserve(row.size());
      for (const std::string& entry : row) {
        const std::optional<int> idx = m.element_index(entry);
        if (!idx)
          throw SourceError(ErrorKind::UnknownElement,
                          "'" + entry + "' is not an element of magma '" + def.magma + "'",
                          def.span);
        values.push_back(*idx);
      }
      rows.push_back(Config::make(vars, std::move(values)));
    }
    w_.teams.emplace(def.name, ConfigSet::of(vars, std::move(rows)));
    w_.team_magmas.emplace(def.name, def.magma);
  }

  void operator()(const CoverDef& def) {
    if (w_.covers.count(def.name)) duplicate_name("cover", def.name, def.span);
    at_span(def.span, [&] {
      VarSet::of(def.x);  // rejects duplicates inside each side
      VarSet::of(def.y);
    });
    w_.covers.emplace(def.name, def);
  }

  void operator()(const ClassicalDef& def) {
    if (w_.models.count(def.name)) duplicate_name("classical", def.name, def.span);
    auto flatten = [&](const std::vector<std::vector<int>>& rows, int cols,
                       const char* what) {
      std::vector<int> flat;
      for (const std::vector<int>& row : rows) {
        if (static_cast<int>(row.size()) != cols)
          throw SourceError(ErrorKind::BadParameter,
                          std::string(what) + " row has " + std::to_string(row.size()) +
                              " entries, expected " + std::to_string(cols),
                          def.span);
        flat.insert(flat.end(), row.begin(), row.end());
      }
      return flat;
    };
    const std::vector<int> transition = flatten(def.transition, def.motor, "transition");
    const std::vector<int> internal_transition =
        flatten(def.internal_transition, def.sensor, "internal_transition");
    at_span(def.span, [&] {
      w_.models.emplace(def.name,
                        ClassicalModel::make(def.external, def.motor, def.sensor,
                                             def.internal, transition, def.sensor_map,
                                             internal_transition, def.policy));
    });
  }

  void operator()(const QueryDef& def) {
    for (const QueryDef& q : w_.queries)
      if (q.name == def.name) duplicate_name("query", def.name, def.span);
    const FormSpec* form = find_form(def.form);
    if (!form)
      throw SourceError(ErrorKind::UnknownName, "unknown query form '" + def.form + "'",
                      def.span);
    check_query(def, *form);
    w_.queries.push_back(def);
  }

 private:
  const Magma& magma_at(const std::string& name, Span span) const {
    const auto it = w_.magmas.find(name);
    if (it == w_.magmas.end())
      throw SourceError(ErrorKind::UnknownName, "unknown magma '" + name + "'", span);
    return it->second;
  }

  const GSystem& system_at(const std::string& name, Span span) const {
    const auto it = w_.systems.find(name);
    if (it == w_.systems.end())
      throw SourceError(ErrorKind::UnknownName, "unknown system '" + name + "'", span);
    return it->second;
  }

  void check_term(const RuleDef& rule, const SystemDef& def, const Magma& m,
                  const FnEnv& env) const {
    walk_term(rule.term, rule, def, m, env);
  }

  void walk_term(const Term& t, const RuleDef& rule, const SystemDef& def, const Magma& m,
                 const FnEnv& env) const {
    switch (t.kind) {
      case Term::Kind::Var: {
        bool found = false;
        for (const std::string& v : def.vars) found = found || v == t.name;
        if (!found)
          throw SourceError(ErrorKind::UnboundVariable,
                          "variable '" + t.name + "' is not declared by system '" +
                              def.name + "'",
                          rule.span);
        return;
      }
      case Term::Kind::Elem:
        if (!m.element_index(t.name))
          throw SourceError(ErrorKind::UnknownElement,
                          "'" + t.name + "' is not an element of magma '" + def.magma +
                              "'",
                          rule.span);
        return;
      case Term::Kind::Op:
        walk_term(t.args[0], rule, def, m, env);
        walk_term(t.args[1], rule, def, m, env);
        return;
      case Term::Kind::Call: {
        const FnTable* fn = env.find(t.name);
        if (!fn)
          throw SourceError(ErrorKind::UnknownName,
                          "unknown function '" + t.name + "' over magma '" + def.magma +
                              "'",
                          rule.span);
        if (fn->arity() != static_cast<int>(t.args.size()))
          throw SourceError(ErrorKind::ArityMismatch,
                          "function '" + t.name + "' takes " +
                              std::to_string(fn->arity()) + " arguments, got " +
                              std::to_string(t.args.size()),
                          rule.span);
        for (const Term& arg : t.args) walk_term(arg, rule, def, m, env);
        return;
      }
    }
  }

  // --- query type-checking ---

  [[noreturn]] void bad_query(const QueryDef& def, const FormSpec& form,
                              const std::string& why, Span span) const {
    throw SourceError(ErrorKind::BadParameter,
                    "in query '" + def.name + "': " + why + "; expected " + form.shape,
                    span);
  }

  void need_args(const QueryDef& def, const FormSpec& form, std::size_t lo,
                 std::size_t hi) const {
    if (def.args.size() < lo || def.args.size() > hi)
      throw SourceError(ErrorKind::ArityMismatch,
                      "query form '" + def.form + "' expects " + form.shape, def.span);
  }

  const QueryArg& arg_of(const QueryDef& def, const FormSpec& form, std::size_t i,
                         QueryArg::Kind kind, const char* what) const {
    const QueryArg& arg = def.args[i];
    if (arg.kind != kind)
      bad_query(def, form, std::string("argument ") + std::to_string(i + 1) +
                               " must be " + what,
                arg.span);
    return arg;
  }

  const GSystem& query_system(const QueryDef& def, const FormSpec& form,
                              std::size_t i) const {
    const QueryArg& arg = arg_of(def, form, i, QueryArg::Kind::Name, "a system name");
    return system_at(arg.name, arg.span);
  }

  VarSet query_set(const QueryDef& def, const FormSpec& form, std::size_t i,
                   const GSystem& s) const {
    const QueryArg& arg = arg_of(def, form, i, QueryArg::Kind::Set, "a variable set");
    const VarSet set = at_span(arg.span, [&] { return VarSet::of(arg.names); });
    for (const std::string& v : set.names())
      if (!s.vars().contains(v))
        throw SourceError(ErrorKind::UnknownVariable,
                        "variable '" + v + "' is not a variable of the system", arg.span);
    return set;
  }

  void query_team(const QueryDef& def, const FormSpec& form, std::size_t i,
                  const GSystem& s) const {
    const QueryArg& arg = arg_of(def, form, i, QueryArg::Kind::Name, "a team name");
    const auto it = w_.teams.find(arg.name);
    if (it == w_.teams.end())
      throw SourceError(ErrorKind::UnknownName, "unknown team '" + arg.name + "'", arg.span);
    if (!it->second.vars().same_names(s.vars()))
      throw SourceError(ErrorKind::VarSetMismatch,
                      "team '" + arg.name + "' is not over the system's variables",
                      arg.span);
  }

  // reducible/emergent accept either two inline sets or a named cover as the
  // trailing cover description starting at argument `i`.
  void query_cover(const QueryDef& def, const FormSpec& form, std::size_t i,
                   const GSystem& s) const {
    if (def.args.size() == i + 2) {
      const VarSet x = query_set(def, form, i, s);
      const VarSet y = query_set(def, form, i + 1, s);
      at_span(def.span, [&] { Cover::make(x, y, s.vars()); });
      return;
    }
    const QueryArg& arg = arg_of(def, form, i, QueryArg::Kind::Name, "a cover name");
    const auto it = w_.covers.find(arg.name);
    if (it == w_.covers.end())
      throw SourceError(ErrorKind::UnknownName, "unknown cover '" + arg.name + "'",
                      arg.span);
    at_span(arg.span, [&] {
      Cover::make(VarSet::of(it->second.x), VarSet::of(it->second.y), s.vars());
    });
  }

  void check_query(const QueryDef& def, const FormSpec& form) const {
    if (def.form == "dep" || def.form == "cause") {
      need_args(def, form, 3, 4);
      const GSystem& s = query_system(def, form, 0);
      query_set(def, form, 1, s);
      query_set(def, form, 2, s);
      if (def.args.size() == 4) query_team(def, form, 3, s);
      return;
    }
    if (def.form == "reducible") {
      need_args(def, form, 2, 3);
      const GSystem& s = query_system(def, form, 0);
      query_cover(def, form, 1, s);
      return;
    }
    if (def.form == "emergent") {
      need_args(def, form, 3, 4);
      const GSystem& s = query_system(def, form, 0);
      const QueryArg& list = arg_of(def, form, 1, QueryArg::Kind::List, "a system list");
      for (const std::string& name : list.names) system_at(name, list.span);
      query_cover(def, form, 2, s);
      return;
    }
    if (def.form == "couple") {
      need_args(def, form, 2, 2);
      query_system(def, form, 0);
      query_system(def, form, 1);
      return;
    }
    if (def.form == "glue") {
      need_args(def, form, 3, 3);
      const GSystem& sx = query_system(def, form, 0);
      const GSystem& sy = query_system(def, form, 1);
      const QueryArg& map = arg_of(def, form, 2, QueryArg::Kind::Map, "a gluing map");
      at_span(map.span, [&] { GluingMap::make(map.pairs); });
      for (const auto& [src, tgt] : map.pairs) {
        if (!sx.vars().contains(src))
          throw SourceError(ErrorKind::UnknownVariable,
                          "'" + src + "' is not a variable of the first system", map.span);
        if (!sy.vars().contains(tgt))
          throw SourceError(ErrorKind::UnknownVariable,
                          "'" + tgt + "' is not a variable of the second system",
                          map.span);
      }
      return;
    }
    if (def.form == "simulate") {
      need_args(def, form, 3, 3);
      const GSystem& s = query_system(def, form, 0);
      const QueryArg& init =
          arg_of(def, form, 1, QueryArg::Kind::Assign, "a configuration literal");
      at_span(init.span, [&] { resolve_config(init.pairs, s.vars(), s.magma()); });
      const QueryArg& steps = arg_of(def, form, 2, QueryArg::Kind::Int, "a step count");
      if (steps.number < 0)
        bad_query(def, form, "step count must be nonnegative", steps.span);
      return;
    }
    if (def.form == "embed_equiv") {
      need_args(def, form, 2, 2);
      const QueryArg& model = arg_of(def, form, 0, QueryArg::Kind::Name, "a model name");
      if (!w_.models.count(model.name))
        throw SourceError(ErrorKind::UnknownName, "unknown classical model '" + model.name +
                            "'",
                        model.span);
      const QueryArg& steps = arg_of(def, form, 1, QueryArg::Kind::Int, "a step count");
      if (steps.number < 0)
        bad_query(def, form, "step count must be nonnegative", steps.span);
      return;
    }
    if (def.form == "closed") {
      need_args(def, form, 2, 2);
      const QueryArg& team = arg_of(def, form, 0, QueryArg::Kind::Name, "a team name");
      if (!w_.teams.count(team.name))
        throw SourceError(ErrorKind::UnknownName, "unknown team '" + team.name + "'",
                        team.span);
      const GSystem& s = query_system(def, form, 1);
      if (!w_.teams.at(team.name).vars().same_names(s.vars()))
        throw SourceError(ErrorKind::VarSetMismatch,
                        "team '" + team.name + "' is not over the system's variables",
                        team.span);
      return;
    }
  }

  Workspace w_;
  std::map<std::string, FnEnv> envs_;
};

}  // namespace

Workspace validate(const Document& d) {
  Builder builder;
  for (const Item& item : d.items) std::visit(builder, item);
  return std::move(builder).take();
}

namespace {

ordered_json certificate_to_json(const IrreducibilityCertificate& cert, const Magma& m) {
  ordered_json out = ordered_json::object();
  if (const auto* dep = std::get_if<DepCounterexample>(&cert)) {
    out["type"] = "side_dependence";
    out["coordinate"] = dep->coordinate;
    out["first"] = config_to_json(dep->first, m);
    out["second"] = config_to_json(dep->second, m);
  } else if (const auto* rect = std::get_if<RectangleCounterexample>(&cert)) {
    out["type"] = "rectangle";
    out["coordinate"] = rect->coordinate;
    out["side_x"] = config_to_json(rect->side_x, m);
    out["overlap"] = config_to_json(rect->overlap, m);
    out["side_y"] = config_to_json(rect->side_y, m);
  } else if (const auto* search = std::get_if<SearchExhausted>(&cert)) {
    out["type"] = "search_exhausted";
    out["coordinate"] = search->coordinate;
  }
  return out;
}

Cover cover_for(const Workspace& w, const QueryDef& q, std::size_t i, const GSystem& s) {
  if (q.args.size() == i + 2)
    return Cover::make(VarSet::of(q.args[i].names), VarSet::of(q.args[i + 1].names),
                       s.vars());
  const CoverDef& def = w.covers.at(q.args[i].name);
  return Cover::make(VarSet::of(def.x), VarSet::of(def.y), s.vars());
}

void run_dispatch(const Workspace& w, const QueryDef& q, std::uint64_t cap,
                  QueryResult& res) {
  if (q.form == "dep" || q.form == "cause") {
    const GSystem& s = w.systems.at(q.args[0].name);
    const VarSet a = VarSet::of(q.args[1].names);
    const VarSet b = VarSet::of(q.args[2].names);
    std::optional<Team> team;
    if (q.args.size() == 4) team = w.teams.at(q.args[3].name);
    if (q.form == "dep") {
      const DepResult r = dep_holds(s, a, b, team, DepScan::Bucketed, cap);
      res.holds = r.holds;
      if (r.witness)
        res.witness = ordered_json{{"first", config_to_json(r.witness->first, s.magma())},
                                   {"second", config_to_json(r.witness->second, s.magma())}};
    } else {
      const CauseResult r = cause_holds(s, a, b, team, cap);
      res.holds = r.holds;
      if (r.holds) {
        ordered_json list = ordered_json::array();
        for (const auto& [member, intervention] : r.interventions)
          list.push_back(
              ordered_json{{"member", config_to_json(member, s.magma())},
                           {"intervention", config_to_json(intervention, s.magma())}});
        res.witness = ordered_json{{"interventions", std::move(list)}};
      } else if (r.stuck) {
        res.witness = ordered_json{{"stuck", config_to_json(*r.stuck, s.magma())}};
      }
    }
    return;
  }
  if (q.form == "reducible") {
    const GSystem& s = w.systems.at(q.args[0].name);
    const Cover c = cover_for(w, q, 1, s);
    const ReduceResult r = decide_reducible(s, c, ReducePath::Auto, cap);
    res.holds = r.reducible();
    if (r.decomposition)
      res.value = ordered_json{{"x_system", system_to_json(r.decomposition->sx)},
                               {"y_system", system_to_json(r.decomposition->sy)}};
    if (r.certificate) res.witness = certificate_to_json(*r.certificate, s.magma());
    return;
  }
  if (q.form == "emergent") {
    const GSystem& s = w.systems.at(q.args[0].name);
    std::vector<GSystem> factors;
    for (const std::string& name : q.args[1].names) factors.push_back(w.systems.at(name));
    const Cover c = cover_for(w, q, 2, s);
    const EmergenceResult r = verify_emergence(s, factors, c, ReducePath::Auto, cap);
    res.holds = r.holds;
    if (!r.holds) {
      ordered_json witness = ordered_json::object();
      if (r.failing_factor) witness["failing_factor"] = *r.failing_factor;
      if (r.certificate)
        witness["certificate"] = certificate_to_json(*r.certificate, s.magma());
      if (r.composition_witness)
        witness["composition_witness"] = config_to_json(*r.composition_witness, s.magma());
      res.witness = std::move(witness);
    }
    return;
  }
  if (q.form == "couple") {
    const GSystem coupled =
        couple(w.systems.at(q.args[0].name), w.systems.at(q.args[1].name), cap);
    res.value = system_to_json(coupled);
    return;
  }
  if (q.form == "glue") {
    const GluedCoupling glued =
        couple_glued(w.systems.at(q.args[0].name), w.systems.at(q.args[1].name),
                     GluingMap::make(q.args[2].pairs), cap);
    ordered_json renames = ordered_json::object();
    for (const auto& [from, to] : glued.y_renames) renames[from] = to;
    res.value = ordered_json{{"system", system_to_json(glued.system)},
                             {"renames", std::move(renames)}};
    return;
  }
  if (q.form == "simulate") {
    const GSystem& s = w.systems.at(q.args[0].name);
    const Config init = resolve_config(q.args[1].pairs, s.vars(), s.magma());
    const std::vector<Config> trace = s.iterate(init, static_cast<int>(q.args[2].number));
    ordered_json steps = ordered_json::array();
    for (const Config& g : trace) steps.push_back(config_to_json(g, s.magma()));
    res.value = ordered_json{{"trace", std::move(steps)}};
    return;
  }
  if (q.form == "embed_equiv") {
    const ClassicalModel& m = w.models.at(q.args[0].name);
    const EquivalenceResult r = equivalence_check(m, static_cast<int>(q.args[1].number));
    res.holds = r.equal;
    if (!r.equal)
      res.witness = ordered_json{{"init_index", *r.init_index}, {"step", *r.step}};
    return;
  }
  if (q.form == "closed") {
    const ConfigSet& team = w.teams.at(q.args[0].name);
    const GSystem& s = w.systems.at(q.args[1].name);
    const ClosureResult r = is_closed(team, s);
    res.holds = r.closed;
    if (!r.closed)
      res.witness = ordered_json{{"member", config_to_json(*r.witness, s.magma())},
                                 {"image", config_to_json(*r.image, s.magma())}};
    return;
  }
  throw Error(ErrorKind::UnknownName, "unknown query form '" + q.form + "'");
}

}  // namespace

QueryResult run_query(const Workspace& w, const std::string& name, std::uint64_t cap) {
  const QueryDef* query = nullptr;
  for (const QueryDef& q : w.queries)
    if (q.name == name) query = &q;
  if (!query) throw Error(ErrorKind::UnknownName, "unknown query '" + name + "'");

  QueryResult res;
  res.query = query->name;
  res.kind = query->form;
  const std::uint64_t before = stats::enumerated();
  const auto start = std::chrono::steady_clock::now();
  try {
    run_dispatch(w, *query, cap, res);
  } catch (const Error& e) {
    std::string what = e.what();
    const std::size_t p = what.find(": ");
    throw Error(e.kind(), "in query '" + name + "': " +
                              (p == std::string::npos ? what : what.substr(p + 2)));
  }
  const auto end = std::chrono::steady_clock::now();
  res.configs_enumerated = stats::enumerated() - before;
  res.millis = std::chrono::duration<double, std::milli>(end - start).count();
  return res;
}

}  // namespace gsys
