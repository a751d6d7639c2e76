#include "gsys/magma.hpp"

#include <atomic>
#include <map>

namespace gsys {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::CarrierCapExceeded: return "CarrierCapExceeded";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::OverlapMismatch: return "OverlapMismatch";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::IncompleteRules: return "IncompleteRules";
    case ErrorKind::DomainNotClosed: return "DomainNotClosed";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::VarSetMismatch: return "VarSetMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::MagmaMismatch: return "MagmaMismatch";
    case ErrorKind::ClosureViolation: return "ClosureViolation";
    case ErrorKind::BadGluing: return "BadGluing";
    case ErrorKind::SearchInfeasible: return "SearchInfeasible";
    case ErrorKind::EncodingTooLarge: return "EncodingTooLarge";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

namespace {
// Tri-state cache for a lazily computed boolean property. Races are benign:
// every writer stores the same recomputed value.
constexpr int8_t kUnknown = -1;
}  // namespace

struct Magma::Impl {
  std::vector<std::string> elements;
  std::vector<int> table;  // row-major, size n*n
  std::map<std::string, int, std::less<>> index;

  mutable std::atomic<int8_t> associative{kUnknown};
  mutable std::atomic<int8_t> commutative{kUnknown};
  mutable std::atomic<int8_t> abelian_group{kUnknown};
  mutable std::atomic<int> identity{-2};  // -2 unknown, -1 none

  int n() const { return static_cast<int>(elements.size()); }
  int at(int a, int b) const { return table[static_cast<std::size_t>(a) * elements.size() + b]; }
};

Magma Magma::make(std::vector<std::string> elements,
                  std::vector<std::vector<int>> op_table,
                  std::size_t carrier_cap) {
  if (elements.empty()) {
    throw Error(ErrorKind::BadParameter, "carrier must be nonempty");
  }
  if (elements.size() > carrier_cap) {
    throw Error(ErrorKind::CarrierCapExceeded,
                "carrier size " + std::to_string(elements.size()) +
                    " exceeds cap " + std::to_string(carrier_cap));
  }
  auto impl = std::make_shared<Impl>();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].empty()) {
      throw Error(ErrorKind::BadParameter, "empty element name");
    }
    auto [it, inserted] = impl->index.emplace(elements[i], static_cast<int>(i));
    if (!inserted) {
      throw Error(ErrorKind::DuplicateElement, "element '" + elements[i] + "' declared twice");
    }
  }
  const std::size_t n = elements.size();
  if (op_table.size() != n) {
    throw Error(ErrorKind::MalformedTable,
                "operation table has " + std::to_string(op_table.size()) +
                    " rows, expected " + std::to_string(n));
  }
  impl->table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (op_table[r].size() != n) {
      throw Error(ErrorKind::MalformedTable,
                  "operation table row " + std::to_string(r) + " has " +
                      std::to_string(op_table[r].size()) + " entries, expected " +
                      std::to_string(n));
    }
    for (int v : op_table[r]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error(ErrorKind::MalformedTable,
                    "operation table entry " + std::to_string(v) + " out of range");
      }
      impl->table.push_back(v);
    }
  }
  impl->elements = std::move(elements);
  return Magma(std::move(impl));
}

int Magma::size() const { return impl_->n(); }

int Magma::op(int a, int b) const { return impl_->at(a, b); }

const std::vector<std::string>& Magma::elements() const { return impl_->elements; }

const std::string& Magma::element_name(int i) const { return impl_->elements.at(i); }

std::optional<int> Magma::element_index(std::string_view name) const {
  auto it = impl_->index.find(name);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

bool Magma::is_associative() const {
  int8_t cached = impl_->associative.load(std::memory_order_relaxed);
  if (cached != kUnknown) return cached != 0;
  const int n = impl_->n();
  bool ok = true;
  for (int a = 0; a < n && ok; ++a)
    for (int b = 0; b < n && ok; ++b)
      for (int c = 0; c < n && ok; ++c)
        ok = impl_->at(impl_->at(a, b), c) == impl_->at(a, impl_->at(b, c));
  impl_->associative.store(ok ? 1 : 0, std::memory_order_relaxed);
  return ok;
}

bool Magma::is_commutative() const {
  int8_t cached = impl_->commutative.load(std::memory_order_relaxed);
  if (cached != kUnknown) return cached != 0;
  const int n = impl_->n();
  bool ok = true;
  for (int a = 0; a < n && ok; ++a)
    for (int b = a + 1; b < n && ok; ++b)
      ok = impl_->at(a, b) == impl_->at(b, a);
  impl_->commutative.store(ok ? 1 : 0, std::memory_order_relaxed);
  return ok;
}

std::optional<int> Magma::identity() const {
  int cached = impl_->identity.load(std::memory_order_relaxed);
  if (cached != -2) {
    if (cached == -1) return std::nullopt;
    return cached;
  }
  const int n = impl_->n();
  int found = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      ok = impl_->at(e, a) == a && impl_->at(a, e) == a;
    }
    if (ok) {
      found = e;
      break;
    }
  }
  impl_->identity.store(found, std::memory_order_relaxed);
  if (found == -1) return std::nullopt;
  return found;
}

std::optional<int> Magma::inverse_of(int a) const {
  auto e = identity();
  if (!e) {
    throw Error(ErrorKind::NoIdentity, "inverse requested in a magma without identity");
  }
  const int n = impl_->n();
  for (int b = 0; b < n; ++b) {
    if (impl_->at(a, b) == *e && impl_->at(b, a) == *e) return b;
  }
  return std::nullopt;
}

bool Magma::is_abelian_group() const {
  int8_t cached = impl_->abelian_group.load(std::memory_order_relaxed);
  if (cached != kUnknown) return cached != 0;
  bool ok = is_associative() && is_commutative() && identity().has_value();
  if (ok) {
    const int n = impl_->n();
    for (int a = 0; a < n && ok; ++a) ok = inverse_of(a).has_value();
  }
  impl_->abelian_group.store(ok ? 1 : 0, std::memory_order_relaxed);
  return ok;
}

bool operator==(const Magma& a, const Magma& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->elements == b.impl_->elements && a.impl_->table == b.impl_->table;
}

namespace {
std::vector<std::string> numbered_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}
}  // namespace

Magma cyclic_group(int n) {
  if (n <= 0) throw Error(ErrorKind::BadParameter, "cyclic group order must be positive");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return Magma::make(numbered_names(n), std::move(table));
}

Magma chain_meet(int n) {
  if (n <= 0) throw Error(ErrorKind::BadParameter, "chain must be nonempty");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = a < b ? a : b;
  return Magma::make(numbered_names(n), std::move(table));
}

Magma chain_join(int n) {
  if (n <= 0) throw Error(ErrorKind::BadParameter, "chain must be nonempty");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = a > b ? a : b;
  return Magma::make(numbered_names(n), std::move(table));
}

Magma direct_product(const Magma& m1, const Magma& m2, std::size_t carrier_cap) {
  const int n1 = m1.size();
  const int n2 = m2.size();
  const std::size_t n = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  if (n > carrier_cap) {
    throw Error(ErrorKind::CarrierCapExceeded,
                "product carrier size " + std::to_string(n) + " exceeds cap " +
                    std::to_string(carrier_cap));
  }
  std::vector<std::string> names;
  names.reserve(n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      names.push_back(m1.element_name(a) + "|" + m2.element_name(b));
  auto pack = [n2](int a, int b) { return a * n2 + b; };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a1 = 0; a1 < n1; ++a1)
    for (int b1 = 0; b1 < n2; ++b1)
      for (int a2 = 0; a2 < n1; ++a2)
        for (int b2 = 0; b2 < n2; ++b2)
          table[static_cast<std::size_t>(pack(a1, b1))][static_cast<std::size_t>(pack(a2, b2))] =
              pack(m1.op(a1, a2), m2.op(b1, b2));
  return Magma::make(std::move(names), std::move(table), carrier_cap);
}

}  // namespace gsys
