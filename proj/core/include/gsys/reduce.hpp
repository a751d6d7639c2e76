#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gsys/system.hpp"

namespace gsys {

// A two-set cover of an ambient variable set: X and Y with X union Y equal
// to the ambient set. The derived views (X only, Y only, overlap) keep the
// name order of the set they are carved from.
class Cover {
 public:
  static Cover make(VarSet x, VarSet y, VarSet ambient);

  const VarSet& x() const { return x_; }
  const VarSet& y() const { return y_; }
  const VarSet& ambient() const { return ambient_; }
  const VarSet& x_only() const { return x_only_; }
  const VarSet& y_only() const { return y_only_; }
  const VarSet& overlap() const { return overlap_; }

 private:
  Cover() = default;
  VarSet x_, y_, ambient_, x_only_, y_only_, overlap_;
};

// Factor systems over the two cover sets. A decomposition of s is valid
// when couple(sx, sy) extensionally equals s (see verify_decomposition).
struct Decomposition {
  GSystem sx;
  GSystem sy;
};

// How decide_reducible handles overlap coordinates.
//   Auto:       rectangle test on abelian groups, exhaustive search otherwise.
//   Rectangle:  force the rectangle test; BadParameter unless the magma is
//               an abelian group.
//   Exhaustive: force the bounded factor-table search on every magma.
enum class ReducePath { Auto, Rectangle, Exhaustive };

// A coordinate on one side of the cover whose next value reaches across it:
// two ambient configs that agree on the coordinate's whole side yet step to
// different values at the coordinate. `first`/`second` are the canonical
// dependence witness pair.
struct DepCounterexample {
  std::string coordinate;
  Config first;
  Config second;
};

// An overlap coordinate z whose next-value function F(a, m, b) violates
// F(a,m,b) . F(a*,m,b*) = F(a,m,b*) . F(a*,m,b), where a ranges over the
// X-only part, m over the overlap, b over the Y-only part, and a*, b* are
// the lexicographically least configs on their sides. The stored triple is
// the first violation in (a, m, b) enumeration order.
struct RectangleCounterexample {
  std::string coordinate;
  Config side_x;
  Config overlap;
  Config side_y;
};

// An overlap coordinate for which the exhaustive search visited every
// candidate factor table without finding a factorization.
struct SearchExhausted {
  std::string coordinate;
};

using IrreducibilityCertificate =
    std::variant<DepCounterexample, RectangleCounterexample, SearchExhausted>;

struct ReduceResult {
  // Present iff the system is reducible. Always verified against the target
  // before being returned.
  std::optional<Decomposition> decomposition;
  // Present iff the system is not reducible.
  std::optional<IrreducibilityCertificate> certificate;

  bool reducible() const { return decomposition.has_value(); }
};

// Ceiling on candidate_u_tables * candidate_v_tables for the exhaustive
// factor search; beyond it decide_reducible throws SearchInfeasible rather
// than silently giving up.
inline constexpr std::uint64_t kDefaultFactorSearchCap = std::uint64_t{1} << 16;

// Decides whether s can be written as a coupling of a system over c.x() and
// a system over c.y(). Positive answers carry the canonical decomposition
// induced by lexicographically least reference configs; negative answers
// carry a certificate that recheck_certificate can validate independently.
// The system must have a full (unrestricted) domain.
ReduceResult decide_reducible(const GSystem& s, const Cover& c,
                              ReducePath path = ReducePath::Auto,
                              std::uint64_t cap = kDefaultEnumCap,
                              std::uint64_t search_cap = kDefaultFactorSearchCap);

// Re-derives a certificate's claim from scratch against s: true iff the
// certificate genuinely witnesses irreducibility of s over the cover.
bool recheck_certificate(const GSystem& s, const Cover& c,
                         const IrreducibilityCertificate& cert,
                         std::uint64_t cap = kDefaultEnumCap,
                         std::uint64_t search_cap = kDefaultFactorSearchCap);

// Does coupling the factors reproduce s? Witness on failure as in
// systems_equal.
EqualityResult verify_decomposition(const GSystem& s, const Decomposition& d,
                                    std::uint64_t cap = kDefaultEnumCap);

// Four ambient configs satisfying the transfer-condition constraint pattern:
// g0 and g0p agree on Y, g1 and g1p agree on Y, g0 and g1 agree on X, g0p
// and g1p agree on X.
struct Quadruple {
  Config g0;
  Config g1;
  Config g0p;
  Config g1p;
};

struct ConditionResult {
  bool holds = false;
  // The first violating quadruple in enumeration order (g0 outermost, then
  // the Y-only part of g1, then the X-only part of g0p; g1p is determined).
  std::optional<Quadruple> counterexample;
};

// Step-image transfer condition: over every constrained quadruple,
// step(g0) = step(g1) implies step(g0p) = step(g1p), and step(g0) =
// step(g0p) implies step(g1) = step(g1p).
ConditionResult theorem_condition2(const GSystem& s, const Cover& c,
                                   std::uint64_t cap = kDefaultEnumCap);

// Dependence transfer condition: over every constrained quadruple, the
// two-element team {g0, g1} satisfying dep(X; overlap) implies {g0p, g1p}
// does, and {g0, g0p} satisfying dep(Y; overlap) implies {g1, g1p} does.
ConditionResult theorem_condition3(const GSystem& s, const Cover& c,
                                   std::uint64_t cap = kDefaultEnumCap);

struct EmergenceResult {
  bool holds = false;
  // Index of the first factor decide_reducible rejected, with its
  // certificate.
  std::optional<std::size_t> failing_factor;
  std::optional<IrreducibilityCertificate> certificate;
  // Config where the composed factors disagree with s (set only when every
  // factor is reducible).
  std::optional<Config> composition_witness;
};

// Is s a composition of factors each reducible to the cover? The factors
// compose right to left: factors.back() acts first, factors.front() last.
EmergenceResult verify_emergence(const GSystem& s,
                                 const std::vector<GSystem>& factors,
                                 const Cover& c,
                                 ReducePath path = ReducePath::Auto,
                                 std::uint64_t cap = kDefaultEnumCap,
                                 std::uint64_t search_cap = kDefaultFactorSearchCap);

}  // namespace gsys
