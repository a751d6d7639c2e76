#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsys/system.hpp"

namespace gsys {

// Bijective identification of some variables of a first system (the source
// side) with variables of a second (the target side). Used to glue two
// systems along variables that do not share a name.
class GluingMap {
 public:
  GluingMap();  // empty: glue nothing
  // Pairs (source, target). BadGluing on a repeated source or target name.
  static GluingMap make(std::vector<std::pair<std::string, std::string>> pairs);

  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  const VarSet& source() const { return source_; }
  const VarSet& target() const { return target_; }
  std::optional<std::string> target_of(std::string_view source) const;
  std::optional<std::string> source_of(std::string_view target) const;

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  VarSet source_;
  VarSet target_;
};

// Coupling of two systems that share variable names: over the union of the
// two variable sets, each side keeps its own update off the overlap, and the
// overlap evolves by the first system's output combined (on the left) with
// the second's. Rule-based inputs yield a rule-based result; a tabulated
// input yields a tabulated result. Domains must either both be full or both
// be restricted; in the restricted case the result's domain is the star set
// of the two domains, and a star set not closed under the coupled step is a
// ClosureViolation.
GSystem couple(const GSystem& sx, const GSystem& sy, std::uint64_t cap = kDefaultEnumCap);

struct GluedCoupling {
  GSystem system;
  // Final name of every variable of the second system, in declaration
  // order: glued variables take their partner's name from the first system;
  // the rest keep their own name, primed if it collides with a first-system
  // variable.
  std::vector<std::pair<std::string, std::string>> y_renames;
};

// Coupling along an explicit identification of variables instead of shared
// names: renames the second system's glued variables to their partners (and
// primes any incidental collisions), then couples. With an empty gluing this
// is the disjoint union; with the identity gluing on the shared names it is
// plain couple().
GluedCoupling couple_glued(const GSystem& sx, const GSystem& sy, const GluingMap& zeta,
                           std::uint64_t cap = kDefaultEnumCap);

// All configurations over the union of the two variable sets whose
// restrictions land in h0 and h1 respectively. Built from the |h0|·|h1|
// candidate pairs, never by sweeping the ambient space.
ConfigSet star_set(const ConfigSet& h0, const ConfigSet& h1);

struct ClosureResult {
  bool closed = false;
  std::optional<Config> witness;  // member of H whose step leaves H
  std::optional<Config> image;    // where that member lands
};

// Does the system map every member of H back into H? H must use the
// system's variable names.
ClosureResult is_closed(const ConfigSet& h, const GSystem& s);

// Right-handed translation: h with h(z) • t(z) on vars(t), unchanged
// elsewhere. vars(t) must be a subset of vars(h).
Config translate_right(const Config& h, const Config& t, const Magma& m);

// First sufficient condition for the star set of two closed domains to be
// closed under the coupled step: h0 absorbs, on the right, every overlap
// contribution the second system can produce from h1, and h1 absorbs, on
// the left, every overlap contribution the first system can produce from
// h0.
bool check_closure_condition1(const ConfigSet& h0, const ConfigSet& h1, const GSystem& sx,
                              const GSystem& sy);

// Second sufficient condition: both domains are invariant under left and
// right translation by every configuration over the overlap.
bool check_closure_condition2(const ConfigSet& h0, const ConfigSet& h1, const VarSet& overlap,
                              const Magma& m, std::uint64_t cap = kDefaultEnumCap);

}  // namespace gsys
