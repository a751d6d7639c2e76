#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsys/errors.hpp"

namespace gsys {

inline constexpr std::size_t kDefaultCarrierCap = 16;

// Finite carrier with a total binary operation given by table. No laws are
// assumed; associativity, commutativity, identity and inverses are detected
// by exhaustive checks over the table and cached after first use.
//
// Immutable after construction and cheap to copy (shared representation);
// safe for concurrent reads.
class Magma {
 public:
  // Validates the table: element names distinct and nonempty, table square
  // of matching dimension, every entry a valid element index. Carriers
  // larger than `carrier_cap` are rejected so that all property checks stay
  // exhaustive.
  static Magma make(std::vector<std::string> elements,
                    std::vector<std::vector<int>> op_table,
                    std::size_t carrier_cap = kDefaultCarrierCap);

  int size() const;
  int op(int a, int b) const;
  const std::vector<std::string>& elements() const;
  const std::string& element_name(int i) const;
  std::optional<int> element_index(std::string_view name) const;

  bool is_associative() const;
  bool is_commutative() const;
  // Two-sided identity element, if one exists (at most one can).
  std::optional<int> identity() const;
  bool is_abelian_group() const;
  // Inverse w.r.t. the identity, found by table scan. NoIdentity if the
  // magma has no identity element.
  std::optional<int> inverse_of(int a) const;

  // Structural equality: same element names in the same order, same table.
  friend bool operator==(const Magma& a, const Magma& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit Magma(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// Z/nZ under addition; elements named "0".."n-1".
Magma cyclic_group(int n);
// Total order 0 < 1 < ... < n-1 under min (meet).
Magma chain_meet(int n);
// Total order 0 < 1 < ... < n-1 under max (join).
Magma chain_join(int n);
// Componentwise operation on the product carrier; element names "a|b".
Magma direct_product(const Magma& m1, const Magma& m2,
                     std::size_t carrier_cap = kDefaultCarrierCap);

}  // namespace gsys
