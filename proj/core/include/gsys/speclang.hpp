#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsys/classical.hpp"
#include "gsys/coupling.hpp"
#include "gsys/reduce.hpp"
#include "gsys/system.hpp"

namespace gsys {

// ---------------------------------------------------------------------------
// Document AST
// ---------------------------------------------------------------------------
// Positions use Span and SourceError from errors.hpp; columns count code
// points (so "•" advances by one), 1-based.

struct MagmaDef {
  std::string name;
  std::vector<std::string> elements;
  // Operation table entries as element names, row-major.
  std::vector<std::vector<std::string>> op;
  Span span;
};

struct FnDef {
  std::string name;
  int arity = 0;
  std::string magma;
  // Nested value lists flattened row-major (first argument most
  // significant); entries are element names.
  std::vector<std::string> values;
  Span span;
};

struct RuleDef {
  std::string var;
  Term term;
  Span span;
};

struct SystemDef {
  std::string name;
  std::string magma;
  std::vector<std::string> vars;
  std::optional<std::string> domain;  // team name, when restricted
  std::vector<RuleDef> rules;
  Span span;
};

struct TeamDef {
  std::string name;
  std::string magma;
  std::vector<std::string> vars;
  // Each row lists one element name per variable, in declared order.
  std::vector<std::vector<std::string>> rows;
  Span span;
};

struct CoverDef {
  std::string name;
  std::vector<std::string> x;
  std::vector<std::string> y;
  Span span;
};

struct ClassicalDef {
  std::string name;
  int external = 0;
  int motor = 0;
  int sensor = 0;
  int internal = 0;
  std::vector<std::vector<int>> transition;           // external x motor
  std::vector<int> sensor_map;                        // per external state
  std::vector<std::vector<int>> internal_transition;  // internal x sensor
  std::vector<int> policy;                            // per internal state
  Span span;
};

// One argument of a query expression. The parser produces these untyped;
// validation checks them against the query form's signature.
struct QueryArg {
  enum class Kind {
    Name,    // bare identifier
    Int,     // integer literal
    Set,     // {a, b, c} — variable names, order as written
    List,    // [s1, s2] — names
    Assign,  // {a = 1, b = 0} — configuration literal
    Map,     // {a -> b} — gluing pairs
  };

  Kind kind = Kind::Name;
  std::string name;
  long long number = 0;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> pairs;
  Span span;
};

struct QueryDef {
  std::string name;
  // One of: dep, cause, reducible, emergent, couple, glue, simulate,
  // embed_equiv, closed.
  std::string form;
  std::vector<QueryArg> args;
  Span span;
};

using Item = std::variant<MagmaDef, FnDef, SystemDef, TeamDef, CoverDef, ClassicalDef, QueryDef>;

struct Document {
  std::vector<Item> items;
};

// Equality of everything except source spans; rule terms compare
// structurally. This is the "same document after reformatting" relation.
bool structurally_equal(const Document& a, const Document& b);

// ---------------------------------------------------------------------------
// Parse / print
// ---------------------------------------------------------------------------

// Text -> AST. Comments (`//` to end of line) and layout are discarded.
// Both "•" and "." denote the magma operation. Throws SpanError with kind
// ParseError, the offending position and the acceptable-token set.
Document parse(const std::string& text);

// AST -> canonical text. parse(pretty_print(d)) is structurally equal to d,
// and pretty_print is a fixpoint after one round.
std::string pretty_print(const Document& d);

// Parses "a=1,b=0" (or with braces/spaces) into a configuration over `vars`;
// every variable must be assigned exactly once and every value must name an
// element of `m`.
Config parse_config_literal(const std::string& text, const VarSet& vars, const Magma& m);

// ---------------------------------------------------------------------------
// Workspace
// ---------------------------------------------------------------------------

// All document-level definitions resolved and constructed, queries
// type-checked and ready to run.
struct Workspace {
  std::map<std::string, Magma> magmas;
  std::map<std::string, FnTable> fns;
  std::map<std::string, std::string> fn_magmas;  // fn name -> magma name
  std::map<std::string, GSystem> systems;
  std::map<std::string, ConfigSet> teams;
  std::map<std::string, std::string> team_magmas;  // team name -> magma name
  std::map<std::string, CoverDef> covers;
  std::map<std::string, ClassicalModel> models;
  std::vector<QueryDef> queries;  // declaration order
};

// Resolves every name, checks arities and query signatures, and constructs
// all objects (which runs their own validation, e.g. domain closure).
// References must be declared before use. Errors carry the offending span.
Workspace validate(const Document& d);

// ---------------------------------------------------------------------------
// Query execution
// ---------------------------------------------------------------------------

struct QueryResult {
  std::string query;
  std::string kind;  // the query form
  std::optional<bool> holds;
  nlohmann::ordered_json value;    // constructed object, or null
  nlohmann::ordered_json witness;  // witness / certificate, or null
  std::uint64_t configs_enumerated = 0;
  double millis = 0.0;
};

// Runs one named query. Deterministic given the document (timing aside);
// the enumeration cap applies to this query alone.
QueryResult run_query(const Workspace& w, const std::string& name,
                      std::uint64_t cap = kDefaultEnumCap);

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

// {"a": "1", "b": "0"} — element names keyed by variable, in variable order.
nlohmann::ordered_json config_to_json(const Config& g, const Magma& m);

// Rule-based: {"vars": [...], "rules": {var: term-string}}. Tabulated:
// {"vars": [...], "rows": [{"in": {...}, "out": {...}}]}. Restricted domains
// add "domain": [configs].
nlohmann::ordered_json system_to_json(const GSystem& s);

// {query, kind, holds?, value?, witness?, stats: {configs_enumerated,
// millis}} — optional fields omitted when absent.
nlohmann::ordered_json result_to_json(const QueryResult& r);

}  // namespace gsys
