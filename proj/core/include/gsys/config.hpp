#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsys/magma.hpp"

namespace gsys {

inline constexpr std::uint64_t kDefaultEnumCap = 1'000'000;

// Running count of configurations materialized by enumeration sweeps.
// Query execution reports the delta as part of its stats.
namespace stats {
void reset_enumerated();
std::uint64_t enumerated();
void add_enumerated(std::uint64_t n);
}  // namespace stats

// Ordered set of distinct variable names. The declaration order is part of
// the value: it fixes enumeration order, printing order and the layout of
// Config values. Immutable and cheap to copy.
class VarSet {
 public:
  VarSet();  // empty
  static VarSet of(std::vector<std::string> names);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::vector<std::string>& names() const;
  const std::string& name(std::size_t i) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const;
  bool subset_of(const VarSet& other) const;
  // Same names regardless of order.
  bool same_names(const VarSet& other) const;

  // Order-sensitive equality.
  friend bool operator==(const VarSet& a, const VarSet& b);

  // a's names in a's order, then b's new names in b's order.
  static VarSet union_of(const VarSet& a, const VarSet& b);
  // a's order, filtered.
  static VarSet intersection(const VarSet& a, const VarSet& b);
  static VarSet difference(const VarSet& a, const VarSet& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit VarSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// Total assignment of carrier elements (by index) to the variables of one
// VarSet, laid out in declaration order.
class Config {
 public:
  Config();  // empty assignment over the empty VarSet
  static Config make(VarSet vars, std::vector<int> values);

  const VarSet& vars() const { return vars_; }
  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int value_at(std::size_t i) const { return values_[i]; }
  // UnknownVariable if `var` is not assigned.
  int value_of(std::string_view var) const;

  friend bool operator==(const Config& a, const Config& b);

 private:
  VarSet vars_;
  std::vector<int> values_;
};

// g restricted to A; A must be a subset of vars(g). Result is laid out in
// A's declaration order.
Config restrict_to(const Config& g, const VarSet& a);

// g[s/S]: s(x) where s assigns x, g(x) elsewhere. vars(s) must be a subset
// of vars(g); the result keeps g's variable order.
Config substitute(const Config& g, const Config& s);

// Translation action of G^A on G^B for A a subset of B: the acting
// configuration combines from the left on A, h is unchanged off A.
Config translate(const Config& t, const Config& h, const Magma& m);

// Variables where g differs from the identity element. NoIdentity if the
// magma has none.
VarSet support_of(const Config& g, const Magma& m);

// Extend g to the larger variable set z by assigning the identity off
// vars(g). NoIdentity if the magma has none.
Config zero_extend(const Config& g, const VarSet& z, const Magma& m);

// Common extension of g and h over the union of their variables;
// OverlapMismatch if they disagree on a shared variable.
Config merge(const Config& g, const Config& h);

// Position of g in the enumeration order of G^vars(g).
std::uint64_t config_index(const Config& g, const Magma& m);

// Restartable, random-access enumeration of G^X in lexicographic order of
// the value tuple read in declaration order (the last variable varies
// fastest). Construction fails with EnumerationCapExceeded when |G|^|X|
// exceeds the cap.
class ConfigRange {
 public:
  ConfigRange(Magma m, VarSet x, std::uint64_t cap = kDefaultEnumCap);

  std::uint64_t total() const { return total_; }
  Config at(std::uint64_t index) const;

  class Iterator {
   public:
    Iterator(const ConfigRange* range, std::uint64_t i) : range_(range), i_(i) {}
    Config operator*() const { return range_->at(i_); }
    Iterator& operator++() { ++i_; return *this; }
    bool operator!=(const Iterator& other) const { return i_ != other.i_; }

   private:
    const ConfigRange* range_;
    std::uint64_t i_;
  };
  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, total_); }

 private:
  Magma magma_;
  VarSet vars_;
  std::uint64_t total_;
};

ConfigRange enumerate_configs(const Magma& m, const VarSet& x,
                              std::uint64_t cap = kDefaultEnumCap);

// Number of configurations over X, or nullopt on overflow.
std::optional<std::uint64_t> config_space_size(const Magma& m, const VarSet& x);

// Finite set of configurations over one common VarSet, with duplicates
// collapsed and rows kept in enumeration order. Doubles as a team (a set of
// assignments) and as a transition-function domain.
class ConfigSet {
 public:
  ConfigSet();  // empty set over the empty VarSet
  // Rows may arrive in any variable order; they are reindexed to `vars`,
  // sorted and deduplicated.
  static ConfigSet of(VarSet vars, std::vector<Config> rows);

  const VarSet& vars() const { return vars_; }
  const std::vector<Config>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  bool contains(const Config& g) const;
  // Index of g among rows(), or nullopt.
  std::optional<std::size_t> find(const Config& g) const;

  friend bool operator==(const ConfigSet& a, const ConfigSet& b);

 private:
  VarSet vars_;
  std::vector<Config> rows_;
};

using Team = ConfigSet;

// Reorder g's values to `vars`, which must contain the same names.
Config reorder(const Config& g, const VarSet& vars);

}  // namespace gsys
