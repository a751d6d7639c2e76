#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gsys/config.hpp"

namespace gsys {

// Update-rule expression over one magma: a variable reference, an element
// literal, the magma operation applied to two subterms, or a call to a named
// function table.
struct Term {
  enum class Kind { Var, Elem, Op, Call };

  Kind kind = Kind::Var;
  std::string name;        // variable / element / function name
  std::vector<Term> args;  // Op: exactly 2; Call: arity many

  static Term var(std::string name);
  static Term elem(std::string name);
  static Term op(Term lhs, Term rhs);
  static Term call(std::string fn, std::vector<Term> args);

  friend bool operator==(const Term& a, const Term& b);
};

// Renders with "•" for the magma operation and "#" before element literals.
std::string to_string(const Term& t);

// Total k-ary function on the carrier, stored as a flat mixed-radix table
// (first argument most significant).
class FnTable {
 public:
  static FnTable make(std::string name, int arity, std::vector<int> values,
                      const Magma& m);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const std::vector<int>& values() const { return values_; }
  int apply(std::span<const int> args, const Magma& m) const;

  friend bool operator==(const FnTable& a, const FnTable& b);

 private:
  std::string name_;
  int arity_ = 0;
  std::vector<int> values_;
};

// Immutable name -> FnTable environment shared by the systems built from one
// document.
class FnEnv {
 public:
  FnEnv();
  FnEnv with(FnTable table) const;
  const FnTable* find(std::string_view name) const;
  const std::map<std::string, FnTable, std::less<>>& tables() const;
  // Union of two environments; a name bound to two different tables is a
  // BadParameter.
  static FnEnv merged(const FnEnv& a, const FnEnv& b);

 private:
  std::shared_ptr<const std::map<std::string, FnTable, std::less<>>> tables_;
};

// Discrete-time dynamical system on G^X: a total step function given either
// by one update rule per variable or by an explicit table, optionally
// restricted to a domain H that is closed under the step (checked at
// construction). Immutable and cheap to copy.
class GSystem {
 public:
  // One rule per declared variable, in any order. Rules may mention declared
  // variables, element literals, the magma operation and functions bound in
  // `fns`.
  static GSystem from_rules(Magma m, VarSet vars,
                            std::vector<std::pair<std::string, Term>> rules,
                            FnEnv fns = FnEnv(),
                            std::optional<ConfigSet> domain = std::nullopt);

  // Explicit transition table. Rows must cover exactly the declared domain
  // (all of G^X when absent) and map into it.
  static GSystem from_table(Magma m, VarSet vars,
                            std::vector<std::pair<Config, Config>> rows,
                            std::optional<ConfigSet> domain = std::nullopt,
                            std::uint64_t cap = kDefaultEnumCap);

  const Magma& magma() const;
  const VarSet& vars() const;
  const FnEnv& fns() const;
  bool is_tabulated() const;
  bool has_restricted_domain() const;
  // Present only for restricted systems.
  const ConfigSet* domain() const;

  // Update rules in variable order; nullptr for tabulated systems.
  const std::vector<Term>* rules() const;
  // Table rows (input, output) in enumeration order; nullptr for rule-based
  // systems.
  const std::vector<std::pair<Config, Config>>* table() const;

  // One synchronous step. OutOfDomain if the system is restricted and g is
  // outside its domain.
  Config step(const Config& g) const;
  // [g, step(g), ..., step^k(g)]: k+1 entries.
  std::vector<Config> iterate(const Config& g, int k) const;

  // The declared domain, or all of G^X materialized (cap-guarded).
  ConfigSet domain_or_full(std::uint64_t cap = kDefaultEnumCap) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit GSystem(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// Applies `first`, then `second` (right-to-left composition order). Both
// systems must share magma and variables. Rule-based inputs compose
// symbolically; if either side is tabulated the result is tabulated over
// `first`'s domain, and OutOfDomain surfaces if `first` maps outside
// `second`'s domain.
GSystem compose(const GSystem& second, const GSystem& first,
                std::uint64_t cap = kDefaultEnumCap);

// Pointwise combination: result(g)(x) = s1(g)(x) • s2(g)(x). Same magma,
// variables and domain required.
GSystem pointwise_combine(const GSystem& s1, const GSystem& s2,
                          std::uint64_t cap = kDefaultEnumCap);

// Materialize the step function as a table over the system's domain.
GSystem tabulate(const GSystem& s, std::uint64_t cap = kDefaultEnumCap);

struct EqualityResult {
  bool equal = false;
  // A configuration where the two systems disagree.
  std::optional<Config> witness;
};

// Extensional equality over the common domain. The systems must share the
// magma, the variable names (order may differ) and the domain.
EqualityResult systems_equal(const GSystem& a, const GSystem& b,
                             std::uint64_t cap = kDefaultEnumCap);

}  // namespace gsys
