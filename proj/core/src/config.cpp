#include "gsys/config.hpp"

#include <algorithm>
#include <atomic>
#include <map>

namespace gsys {

namespace stats {
namespace {
std::atomic<std::uint64_t> g_enumerated{0};
}
void reset_enumerated() { g_enumerated.store(0, std::memory_order_relaxed); }
std::uint64_t enumerated() { return g_enumerated.load(std::memory_order_relaxed); }
void add_enumerated(std::uint64_t n) { g_enumerated.fetch_add(n, std::memory_order_relaxed); }
}  // namespace stats

struct VarSet::Impl {
  std::vector<std::string> names;
  std::map<std::string, std::size_t, std::less<>> index;
};

VarSet::VarSet() {
  static const std::shared_ptr<const Impl> empty = std::make_shared<Impl>();
  impl_ = empty;
}

VarSet VarSet::of(std::vector<std::string> names) {
  auto impl = std::make_shared<Impl>();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) {
      throw Error(ErrorKind::BadParameter, "empty variable name");
    }
    auto [it, inserted] = impl->index.emplace(names[i], i);
    if (!inserted) {
      throw Error(ErrorKind::BadParameter, "variable '" + names[i] + "' declared twice");
    }
  }
  impl->names = std::move(names);
  return VarSet(std::move(impl));
}

std::size_t VarSet::size() const { return impl_->names.size(); }
const std::vector<std::string>& VarSet::names() const { return impl_->names; }
const std::string& VarSet::name(std::size_t i) const { return impl_->names.at(i); }

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  auto it = impl_->index.find(name);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

bool VarSet::contains(std::string_view name) const {
  return impl_->index.count(name) > 0;
}

bool VarSet::subset_of(const VarSet& other) const {
  if (impl_ == other.impl_) return true;
  for (const auto& n : impl_->names)
    if (!other.contains(n)) return false;
  return true;
}

bool VarSet::same_names(const VarSet& other) const {
  return size() == other.size() && subset_of(other);
}

bool operator==(const VarSet& a, const VarSet& b) {
  return a.impl_ == b.impl_ || a.impl_->names == b.impl_->names;
}

VarSet VarSet::union_of(const VarSet& a, const VarSet& b) {
  std::vector<std::string> names = a.names();
  for (const auto& n : b.names())
    if (!a.contains(n)) names.push_back(n);
  return of(std::move(names));
}

VarSet VarSet::intersection(const VarSet& a, const VarSet& b) {
  std::vector<std::string> names;
  for (const auto& n : a.names())
    if (b.contains(n)) names.push_back(n);
  return of(std::move(names));
}

VarSet VarSet::difference(const VarSet& a, const VarSet& b) {
  std::vector<std::string> names;
  for (const auto& n : a.names())
    if (!b.contains(n)) names.push_back(n);
  return of(std::move(names));
}

Config::Config() = default;

Config Config::make(VarSet vars, std::vector<int> values) {
  if (vars.size() != values.size()) {
    throw Error(ErrorKind::BadParameter,
                "configuration has " + std::to_string(values.size()) +
                    " values for " + std::to_string(vars.size()) + " variables");
  }
  Config c;
  c.vars_ = std::move(vars);
  c.values_ = std::move(values);
  return c;
}

int Config::value_of(std::string_view var) const {
  auto i = vars_.index_of(var);
  if (!i) {
    throw Error(ErrorKind::UnknownVariable, "variable '" + std::string(var) + "' not assigned");
  }
  return values_[*i];
}

bool operator==(const Config& a, const Config& b) {
  return a.values_ == b.values_ && a.vars_ == b.vars_;
}

Config restrict_to(const Config& g, const VarSet& a) {
  std::vector<int> values;
  values.reserve(a.size());
  for (const auto& n : a.names()) {
    auto i = g.vars().index_of(n);
    if (!i) {
      throw Error(ErrorKind::UnknownVariable,
                  "restriction variable '" + n + "' not assigned");
    }
    values.push_back(g.value_at(*i));
  }
  return Config::make(a, std::move(values));
}

Config substitute(const Config& g, const Config& s) {
  if (!s.vars().subset_of(g.vars())) {
    throw Error(ErrorKind::UnknownVariable,
                "substitution assigns variables outside the configuration");
  }
  std::vector<int> values = g.values();
  for (std::size_t i = 0; i < s.vars().size(); ++i) {
    values[*g.vars().index_of(s.vars().name(i))] = s.value_at(i);
  }
  return Config::make(g.vars(), std::move(values));
}

Config translate(const Config& t, const Config& h, const Magma& m) {
  if (!t.vars().subset_of(h.vars())) {
    throw Error(ErrorKind::UnknownVariable,
                "translating configuration assigns variables outside the target");
  }
  std::vector<int> values = h.values();
  for (std::size_t i = 0; i < t.vars().size(); ++i) {
    std::size_t j = *h.vars().index_of(t.vars().name(i));
    values[j] = m.op(t.value_at(i), values[j]);
  }
  return Config::make(h.vars(), std::move(values));
}

VarSet support_of(const Config& g, const Magma& m) {
  auto e = m.identity();
  if (!e) {
    throw Error(ErrorKind::NoIdentity, "support requires an identity element");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.value_at(i) != *e) names.push_back(g.vars().name(i));
  return VarSet::of(std::move(names));
}

Config zero_extend(const Config& g, const VarSet& z, const Magma& m) {
  auto e = m.identity();
  if (!e) {
    throw Error(ErrorKind::NoIdentity, "zero extension requires an identity element");
  }
  if (!g.vars().subset_of(z)) {
    throw Error(ErrorKind::UnknownVariable,
                "extension target does not contain the configuration's variables");
  }
  std::vector<int> values;
  values.reserve(z.size());
  for (const auto& n : z.names()) {
    auto i = g.vars().index_of(n);
    values.push_back(i ? g.value_at(*i) : *e);
  }
  return Config::make(z, std::move(values));
}

Config merge(const Config& g, const Config& h) {
  VarSet joined = VarSet::union_of(g.vars(), h.vars());
  std::vector<int> values;
  values.reserve(joined.size());
  for (const auto& n : joined.names()) {
    auto i = g.vars().index_of(n);
    auto j = h.vars().index_of(n);
    if (i && j && g.value_at(*i) != h.value_at(*j)) {
      throw Error(ErrorKind::OverlapMismatch,
                  "configurations disagree on shared variable '" + n + "'");
    }
    values.push_back(i ? g.value_at(*i) : h.value_at(*j));
  }
  return Config::make(std::move(joined), std::move(values));
}

std::uint64_t config_index(const Config& g, const Magma& m) {
  const std::uint64_t base = static_cast<std::uint64_t>(m.size());
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    index = index * base + static_cast<std::uint64_t>(g.value_at(i));
  }
  return index;
}

std::optional<std::uint64_t> config_space_size(const Magma& m, const VarSet& x) {
  const std::uint64_t base = static_cast<std::uint64_t>(m.size());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (total > UINT64_MAX / base) return std::nullopt;
    total *= base;
  }
  return total;
}

ConfigRange::ConfigRange(Magma m, VarSet x, std::uint64_t cap)
    : magma_(std::move(m)), vars_(std::move(x)) {
  auto total = config_space_size(magma_, vars_);
  if (!total || *total > cap) {
    throw Error(ErrorKind::EnumerationCapExceeded,
                "|G|^|X| = " + std::to_string(magma_.size()) + "^" +
                    std::to_string(vars_.size()) + " exceeds enumeration cap " +
                    std::to_string(cap));
  }
  total_ = *total;
}

Config ConfigRange::at(std::uint64_t index) const {
  const std::uint64_t base = static_cast<std::uint64_t>(magma_.size());
  std::vector<int> values(vars_.size());
  std::uint64_t rest = index;
  for (std::size_t i = vars_.size(); i-- > 0;) {
    values[i] = static_cast<int>(rest % base);
    rest /= base;
  }
  stats::add_enumerated(1);
  return Config::make(vars_, std::move(values));
}

ConfigRange enumerate_configs(const Magma& m, const VarSet& x, std::uint64_t cap) {
  return ConfigRange(m, x, cap);
}

ConfigSet::ConfigSet() = default;

ConfigSet ConfigSet::of(VarSet vars, std::vector<Config> rows) {
  ConfigSet set;
  for (auto& r : rows) {
    if (!r.vars().same_names(vars)) {
      throw Error(ErrorKind::VarSetMismatch,
                  "row variables do not match the set's variables");
    }
    if (!(r.vars() == vars)) r = reorder(r, vars);
  }
  std::sort(rows.begin(), rows.end(), [](const Config& a, const Config& b) {
    return a.values() < b.values();
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Config& a, const Config& b) {
                           return a.values() == b.values();
                         }),
             rows.end());
  set.vars_ = std::move(vars);
  set.rows_ = std::move(rows);
  return set;
}

bool ConfigSet::contains(const Config& g) const { return find(g).has_value(); }

std::optional<std::size_t> ConfigSet::find(const Config& g) const {
  const Config* probe = &g;
  Config reordered;
  if (!(g.vars() == vars_)) {
    if (!g.vars().same_names(vars_)) return std::nullopt;
    reordered = reorder(g, vars_);
    probe = &reordered;
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), *probe,
                             [](const Config& a, const Config& b) {
                               return a.values() < b.values();
                             });
  if (it == rows_.end() || !(it->values() == probe->values())) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

bool operator==(const ConfigSet& a, const ConfigSet& b) {
  return a.vars_ == b.vars_ && a.rows_ == b.rows_;
}

Config reorder(const Config& g, const VarSet& vars) {
  if (g.vars() == vars) return g;
  if (!g.vars().same_names(vars)) {
    throw Error(ErrorKind::VarSetMismatch, "cannot reorder to a different variable set");
  }
  std::vector<int> values;
  values.reserve(vars.size());
  for (const auto& n : vars.names()) values.push_back(g.value_at(*g.vars().index_of(n)));
  return Config::make(vars, std::move(values));
}

}  // namespace gsys
