#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gsys/system.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "testutil.hpp"

using namespace gsys;

namespace {

std::optional<ErrorKind> kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

Config cfg(const VarSet& vars, std::vector<int> values) {
  return Config::make(vars, std::move(values));
}

}  // namespace

TEST_CASE("terms print with the operation dot and element sigil") {
  Term t = Term::op(Term::var("a"), Term::elem("1"));
  CHECK(to_string(t) == "a • #1");
  Term nested = Term::op(Term::op(Term::var("a"), Term::var("b")), Term::op(Term::var("c"), Term::var("d")));
  CHECK(to_string(nested) == "a • b • (c • d)");
  Term call = Term::call("max", {Term::var("b0"), Term::op(Term::var("b1"), Term::elem("0"))});
  CHECK(to_string(call) == "max(b0, b1 • #0)");

  CHECK(Term::var("a") == Term::var("a"));
  CHECK_FALSE(Term::var("a") == Term::elem("a"));
  CHECK_FALSE(Term::var("a") == Term::var("b"));
}

TEST_CASE("function tables validate shape and evaluate mixed-radix") {
  Magma z3 = cyclic_group(3);
  CHECK(kind_of([&] { FnTable::make("f", 0, {}, z3); }) == ErrorKind::BadParameter);
  CHECK(kind_of([&] { FnTable::make("f", 2, {0, 1, 2}, z3); }) == ErrorKind::MalformedTable);
  CHECK(kind_of([&] { FnTable::make("f", 1, {0, 3, 1}, z3); }) == ErrorKind::MalformedTable);

  // f(a, b) = a stored row-major: entry index is a*3 + b.
  std::vector<int> proj;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) proj.push_back(a);
  FnTable f = FnTable::make("fst", 2, proj, z3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      std::vector<int> args = {a, b};
      CHECK(f.apply(args, z3) == a);
    }
  }
}

TEST_CASE("function environments are immutable and merge by name") {
  Magma m = testutil::z2();
  FnTable max2 = testutil::max_fn(m);
  FnTable min2 = FnTable::make("min", 2, {0, 0, 0, 1}, m);

  FnEnv base;
  CHECK(base.find("max") == nullptr);
  FnEnv one = base.with(max2);
  CHECK(base.find("max") == nullptr);
  REQUIRE(one.find("max") != nullptr);
  CHECK(*one.find("max") == max2);

  FnEnv two = FnEnv().with(min2);
  FnEnv both = FnEnv::merged(one, two);
  CHECK(both.find("max") != nullptr);
  CHECK(both.find("min") != nullptr);

  // Merging is fine when the shared name carries the identical table...
  FnEnv again = FnEnv::merged(one, FnEnv().with(max2));
  CHECK(again.tables().size() == 1);
  // ...and rejected when the tables differ.
  FnTable clash = FnTable::make("max", 2, {0, 0, 0, 0}, m);
  CHECK(kind_of([&] { FnEnv::merged(one, FnEnv().with(clash)); }) == ErrorKind::BadParameter);
}

TEST_CASE("rule construction reports every misuse with a specific error") {
  Magma m = testutil::z2();
  VarSet vars = VarSet::of({"a", "b"});
  auto sys = [&](std::vector<std::pair<std::string, Term>> rules, FnEnv fns = FnEnv()) {
    return kind_of([&] { GSystem::from_rules(m, vars, std::move(rules), fns); });
  };

  CHECK(sys({{"a", Term::var("a")}}) == ErrorKind::IncompleteRules);
  CHECK(sys({{"a", Term::var("a")}, {"b", Term::var("b")}, {"a", Term::var("b")}}) ==
        ErrorKind::BadParameter);
  CHECK(sys({{"a", Term::var("a")}, {"c", Term::var("a")}}) == ErrorKind::UnboundVariable);
  CHECK(sys({{"a", Term::var("z")}, {"b", Term::var("b")}}) == ErrorKind::UnboundVariable);
  CHECK(sys({{"a", Term::elem("7")}, {"b", Term::var("b")}}) == ErrorKind::UnknownElement);
  CHECK(sys({{"a", Term::call("max", {Term::var("a"), Term::var("b")})}, {"b", Term::var("b")}}) ==
        ErrorKind::UnknownName);
  FnEnv fns = FnEnv().with(testutil::max_fn(m));
  CHECK(sys({{"a", Term::call("max", {Term::var("a")})}, {"b", Term::var("b")}}, fns) ==
        ErrorKind::ArityMismatch);
}

TEST_CASE("the four-bit example steps as computed by hand") {
  GSystem gamma = testutil::gamma_system();
  const VarSet& vars = gamma.vars();

  Config start = cfg(vars, {1, 0, 0, 1});
  Config once = gamma.step(start);
  CHECK(once.values() == std::vector<int>{1, 1, 1, 1});
  CHECK(gamma.step(once).values() == std::vector<int>{1, 1, 1, 1});  // fixed point

  Config decay = cfg(vars, {0, 1, 1, 0});
  CHECK(gamma.step(decay).values() == std::vector<int>{0, 1, 0, 0});
  CHECK(gamma.step(gamma.step(decay)).values() == std::vector<int>{0, 0, 0, 0});

  // Independent oracle over the whole space: the step function is
  // (b0, b0 OR b2, b3, b3), computed here with plain integer logic rather
  // than the function table the system evaluates.
  for (const Config& g : enumerate_configs(gamma.magma(), vars)) {
    int b0 = g.value_at(0), b2 = g.value_at(2), b3 = g.value_at(3);
    std::vector<int> expected = {b0, (b0 || b2) ? 1 : 0, b3, b3};
    CHECK(gamma.step(g).values() == expected);
  }
}

TEST_CASE("iterate returns k+1 configurations starting from the input") {
  GSystem gamma = testutil::gamma_system();
  Config start = cfg(gamma.vars(), {1, 0, 0, 1});
  std::vector<Config> trace = gamma.iterate(start, 2);
  REQUIRE(trace.size() == 3);
  CHECK(trace[0].values() == std::vector<int>{1, 0, 0, 1});
  CHECK(trace[1].values() == std::vector<int>{1, 1, 1, 1});
  CHECK(trace[2].values() == std::vector<int>{1, 1, 1, 1});

  CHECK(gamma.iterate(start, 0).size() == 1);
  CHECK(kind_of([&] { gamma.iterate(start, -1); }) == ErrorKind::BadParameter);
}

TEST_CASE("step accepts configurations with permuted variable order") {
  GSystem gamma = testutil::gamma_system();
  VarSet reversed = VarSet::of({"b3", "b2", "b1", "b0"});
  // b0=1, b1=0, b2=0, b3=1 spelled backwards.
  Config g = cfg(reversed, {1, 0, 0, 1});
  Config out = gamma.step(g);
  CHECK(out.vars() == gamma.vars());
  CHECK(out.values() == std::vector<int>{1, 1, 1, 1});

  std::vector<Config> trace = gamma.iterate(g, 1);
  CHECK(trace[0].vars() == gamma.vars());
  CHECK(trace[0].values() == std::vector<int>{1, 0, 0, 1});
}

TEST_CASE("restricted domains must be closed under the step") {
  Magma m = testutil::z2();
  VarSet vars = VarSet::of({"b0", "b1", "b2", "b3"});
  FnEnv fns = FnEnv().with(testutil::max_fn(m));
  auto rules = [&] {
    std::vector<std::pair<std::string, Term>> r;
    r.emplace_back("b0", Term::var("b0"));
    r.emplace_back("b1", Term::call("max", {Term::var("b0"), Term::var("b2")}));
    r.emplace_back("b2", Term::var("b3"));
    r.emplace_back("b3", Term::var("b3"));
    return r;
  };

  // The two fixed points form a closed domain.
  ConfigSet closed = ConfigSet::of(vars, {cfg(vars, {0, 0, 0, 0}), cfg(vars, {1, 1, 1, 1})});
  GSystem restricted = GSystem::from_rules(m, vars, rules(), fns, closed);
  CHECK(restricted.has_restricted_domain());
  REQUIRE(restricted.domain() != nullptr);
  CHECK(restricted.domain()->size() == 2);
  CHECK(restricted.step(cfg(vars, {1, 1, 1, 1})).values() == std::vector<int>{1, 1, 1, 1});
  CHECK(kind_of([&] { restricted.step(cfg(vars, {1, 0, 0, 1})); }) == ErrorKind::OutOfDomain);

  // {1001} steps to {1111}, which the domain does not contain.
  ConfigSet open = ConfigSet::of(vars, {cfg(vars, {1, 0, 0, 1})});
  CHECK(kind_of([&] { GSystem::from_rules(m, vars, rules(), fns, open); }) ==
        ErrorKind::DomainNotClosed);

  CHECK(restricted.domain_or_full() == closed);
  CHECK(testutil::gamma_system().domain_or_full().size() == 16);
}

TEST_CASE("explicit tables validate coverage, ranges and conflicts") {
  Magma m = testutil::z2();
  VarSet vars = VarSet::of({"a", "b"});
  auto row = [&](int a0, int b0, int a1, int b1) {
    return std::make_pair(cfg(vars, {a0, b0}), cfg(vars, {a1, b1}));
  };

  // The swap map as a full table.
  std::vector<std::pair<Config, Config>> swap_rows = {row(0, 0, 0, 0), row(0, 1, 1, 0),
                                                      row(1, 0, 0, 1), row(1, 1, 1, 1)};
  GSystem swap = GSystem::from_table(m, vars, swap_rows);
  CHECK(swap.is_tabulated());
  CHECK(swap.rules() == nullptr);
  REQUIRE(swap.table() != nullptr);
  CHECK(swap.table()->size() == 4);
  CHECK(swap.step(cfg(vars, {0, 1})).values() == std::vector<int>{1, 0});

  // Missing row.
  CHECK(kind_of([&] {
          GSystem::from_table(m, vars, {row(0, 0, 0, 0), row(0, 1, 1, 0), row(1, 0, 0, 1)});
        }) == ErrorKind::MalformedTable);
  // Conflicting duplicate inputs.
  CHECK(kind_of([&] {
          auto rows = swap_rows;
          rows.push_back(row(0, 0, 1, 1));
          GSystem::from_table(m, vars, rows);
        }) == ErrorKind::MalformedTable);
  // Benign duplicates collapse.
  {
    auto rows = swap_rows;
    rows.push_back(row(0, 0, 0, 0));
    CHECK(GSystem::from_table(m, vars, rows).table()->size() == 4);
  }
  // Out-of-range output value.
  CHECK(kind_of([&] {
          auto rows = swap_rows;
          rows[3] = std::make_pair(cfg(vars, {1, 1}), cfg(vars, {1, 2}));
          GSystem::from_table(m, vars, rows);
        }) == ErrorKind::MalformedTable);

  // Restricted tables must cover the domain exactly and stay inside it.
  ConfigSet dom = ConfigSet::of(vars, {cfg(vars, {0, 0}), cfg(vars, {1, 1})});
  GSystem fixed = GSystem::from_table(m, vars, {row(0, 0, 0, 0), row(1, 1, 1, 1)}, dom);
  CHECK(fixed.has_restricted_domain());
  CHECK(kind_of([&] {
          GSystem::from_table(m, vars, {row(0, 0, 0, 0)}, dom);
        }) == ErrorKind::MalformedTable);
  CHECK(kind_of([&] {
          GSystem::from_table(m, vars, {row(0, 0, 0, 0), row(1, 0, 0, 0)}, dom);
        }) == ErrorKind::MalformedTable);
  CHECK(kind_of([&] {
          GSystem::from_table(m, vars, {row(0, 0, 0, 0), row(1, 1, 1, 0)}, dom);
        }) == ErrorKind::DomainNotClosed);
}

TEST_CASE("tabulating a rule system preserves its behavior") {
  GSystem gamma = testutil::gamma_system();
  GSystem tab = tabulate(gamma);
  CHECK(tab.is_tabulated());
  CHECK(tab.table()->size() == 16);
  EqualityResult eq = systems_equal(gamma, tab);
  CHECK(eq.equal);
  CHECK_FALSE(eq.witness.has_value());
}

TEST_CASE("composition applies its second argument first") {
  // Over Z/4Z: doubling then increment vs increment then doubling.
  Magma z4 = cyclic_group(4);
  VarSet vars = VarSet::of({"a"});
  GSystem doubling =
      GSystem::from_rules(z4, vars, {{"a", Term::op(Term::var("a"), Term::var("a"))}});
  GSystem increment =
      GSystem::from_rules(z4, vars, {{"a", Term::op(Term::var("a"), Term::elem("1"))}});

  // compose(increment, doubling): a -> 2a -> 2a + 1.
  GSystem da = compose(increment, doubling);
  CHECK(da.step(cfg(vars, {0})).values() == std::vector<int>{1});
  CHECK(da.step(cfg(vars, {3})).values() == std::vector<int>{3});  // 6+1 mod 4
  // compose(doubling, increment): a -> a + 1 -> 2a + 2.
  GSystem ad = compose(doubling, increment);
  CHECK(ad.step(cfg(vars, {0})).values() == std::vector<int>{2});
  CHECK(ad.step(cfg(vars, {3})).values() == std::vector<int>{0});
}

TEST_CASE("symbolic composition of the four-bit example matches its closed form") {
  GSystem gamma = testutil::gamma_system();
  GSystem squared = compose(gamma, gamma);
  CHECK_FALSE(squared.is_tabulated());

  EqualityResult eq = systems_equal(squared, testutil::gamma_squared_direct());
  CHECK(eq.equal);

  // The substituted rule for b1 mentions b3 (and no longer b2).
  const Term& b1 = (*squared.rules())[1];
  CHECK(b1 == Term::call("max", {Term::var("b0"), Term::var("b3")}));
  CHECK(to_string(b1) == "max(b0, b3)");
}

TEST_CASE("tabulated composition agrees with the symbolic path") {
  GSystem gamma = testutil::gamma_system();
  GSystem symbolic = compose(gamma, gamma);
  GSystem viaTable = compose(tabulate(gamma), gamma);
  CHECK(viaTable.is_tabulated());
  CHECK(systems_equal(symbolic, viaTable).equal);
  CHECK(systems_equal(viaTable, compose(gamma, tabulate(gamma))).equal);
}

TEST_CASE("composition respects restricted domains") {
  Magma m = testutil::z2();
  VarSet vars = VarSet::of({"a"});
  GSystem ident = GSystem::from_rules(m, vars, {{"a", Term::var("a")}});
  ConfigSet zero_only = ConfigSet::of(vars, {cfg(vars, {0})});
  GSystem restricted = GSystem::from_rules(m, vars, {{"a", Term::var("a")}}, FnEnv(), zero_only);

  GSystem both = compose(restricted, restricted);
  REQUIRE(both.has_restricted_domain());
  CHECK(both.domain()->size() == 1);

  // A full-domain first stage can feed configurations the restricted second
  // stage does not accept.
  CHECK(kind_of([&] { compose(restricted, ident); }) == ErrorKind::DomainMismatch);
  // A restricted first stage composes into a full second stage fine.
  CHECK(compose(ident, restricted).domain()->size() == 1);
}

TEST_CASE("pointwise combination is the variable-wise operation") {
  Magma m = testutil::z2();
  VarSet vars = VarSet::of({"a"});
  GSystem keep = GSystem::from_rules(m, vars, {{"a", Term::var("a")}});
  GSystem one = GSystem::from_rules(m, vars, {{"a", Term::elem("1")}});

  GSystem flip = pointwise_combine(keep, one);
  CHECK_FALSE(flip.is_tabulated());
  CHECK(to_string((*flip.rules())[0]) == "a • #1");
  CHECK(flip.step(cfg(vars, {0})).values() == std::vector<int>{1});
  CHECK(flip.step(cfg(vars, {1})).values() == std::vector<int>{0});

  // The tabulated path computes the same system.
  GSystem viaTable = pointwise_combine(tabulate(keep), tabulate(one));
  CHECK(viaTable.is_tabulated());
  CHECK(systems_equal(flip, viaTable).equal);

  // Mismatched domains are rejected.
  ConfigSet zero_only = ConfigSet::of(vars, {cfg(vars, {0})});
  GSystem restricted = GSystem::from_rules(m, vars, {{"a", Term::var("a")}}, FnEnv(), zero_only);
  CHECK(kind_of([&] { pointwise_combine(keep, restricted); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("extensional equality reports the first disagreement in enumeration order") {
  Magma m = testutil::z2();
  VarSet vars = VarSet::of({"a", "b"});
  auto row = [&](int a0, int b0, int a1, int b1) {
    return std::make_pair(cfg(vars, {a0, b0}), cfg(vars, {a1, b1}));
  };
  GSystem ident = GSystem::from_table(
      m, vars, {row(0, 0, 0, 0), row(0, 1, 0, 1), row(1, 0, 1, 0), row(1, 1, 1, 1)});
  // Disagrees with the identity at (0,1) and (1,0).
  GSystem swapped = GSystem::from_table(
      m, vars, {row(0, 0, 0, 0), row(0, 1, 1, 0), row(1, 0, 0, 1), row(1, 1, 1, 1)});

  EqualityResult eq = systems_equal(ident, swapped);
  REQUIRE_FALSE(eq.equal);
  REQUIRE(eq.witness.has_value());
  CHECK(eq.witness->values() == std::vector<int>{0, 1});

  // Equality is insensitive to variable declaration order.
  VarSet flipped = VarSet::of({"b", "a"});
  auto frow = [&](int b0, int a0, int b1, int a1) {
    return std::make_pair(cfg(flipped, {b0, a0}), cfg(flipped, {b1, a1}));
  };
  GSystem ident2 = GSystem::from_table(
      m, flipped, {frow(0, 0, 0, 0), frow(0, 1, 0, 1), frow(1, 0, 1, 0), frow(1, 1, 1, 1)});
  CHECK(systems_equal(ident, ident2).equal);

  CHECK(kind_of([&] { systems_equal(ident, GSystem::from_rules(cyclic_group(4), vars,
                                                               {{"a", Term::var("a")},
                                                                {"b", Term::var("b")}})); }) ==
        ErrorKind::MagmaMismatch);
  CHECK(kind_of([&] {
          systems_equal(ident, GSystem::from_rules(m, VarSet::of({"a", "c"}),
                                                   {{"a", Term::var("a")}, {"c", Term::var("c")}}));
        }) == ErrorKind::VarSetMismatch);
  ConfigSet dom = ConfigSet::of(vars, {cfg(vars, {0, 0})});
  GSystem restricted = GSystem::from_table(m, vars, {row(0, 0, 0, 0)}, dom);
  CHECK(kind_of([&] { systems_equal(ident, restricted); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("random tabulated systems round-trip through tabulation and composition") {
  testutil::Rng rng(20260815);
  for (const Magma& m : testutil::property_magmas()) {
    if (m.size() > 2) continue;  // keep the sweep small
    VarSet vars = VarSet::of(testutil::var_names(3));
    for (int trial = 0; trial < 10; ++trial) {
      GSystem s = testutil::random_tabulated_system(rng, m, vars);
      CHECK(systems_equal(s, tabulate(s)).equal);
      // compose(s, identity) == s == compose(identity, s).
      std::vector<std::pair<std::string, Term>> id_rules;
      for (const auto& v : vars.names()) id_rules.emplace_back(v, Term::var(v));
      GSystem ident = GSystem::from_rules(m, vars, std::move(id_rules));
      CHECK(systems_equal(compose(s, ident), s).equal);
      CHECK(systems_equal(compose(ident, s), s).equal);
    }
  }
}
