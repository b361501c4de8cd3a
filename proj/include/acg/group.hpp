#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "acg/element_set.hpp"
#include "acg/error.hpp"

namespace acg {

inline constexpr std::size_t kDefaultOrderCap = 5000;

namespace detail {
struct GroupData {
  std::size_t order = 0;
  std::vector<Elem> table;  // row-major, table[x * order + y] = x * y
  std::vector<Elem> inverse;
  std::vector<std::size_t> element_order;
  std::string name;
};
}  // namespace detail

// A finite group given by its Cayley table on {0..n-1}, element 0 the identity.
//
// FiniteGroup is an immutable handle: copies share the same table, so it is
// cheap to pass by value and safe to read from several threads. Construction
// validates the group axioms and throws InvalidGroupTable on failure.
class FiniteGroup {
 public:
  FiniteGroup(std::size_t order, std::vector<Elem> table, std::string name);

  std::size_t order() const noexcept { return data_->order; }
  const std::string& name() const noexcept { return data_->name; }
  std::span<const Elem> table() const noexcept { return data_->table; }

  Elem mul(Elem x, Elem y) const noexcept { return data_->table[x * data_->order + y]; }
  Elem inv(Elem x) const noexcept { return data_->inverse[x]; }
  std::size_t order_of(Elem x) const noexcept { return data_->element_order[x]; }
  bool commute(Elem x, Elem y) const noexcept { return mul(x, y) == mul(y, x); }
  // x^-1 y^-1 x y
  Elem commutator(Elem x, Elem y) const noexcept { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  Elem conj(Elem x, Elem g) const noexcept { return mul(mul(inv(g), x), g); }
  Elem power(Elem x, std::size_t k) const noexcept;

  // Bounds-checked variants for untrusted indices.
  Elem multiply(Elem x, Elem y) const;
  Elem inverse(Elem x) const;
  std::size_t element_order(Elem x) const;

  // Same table under a different display name.
  FiniteGroup renamed(std::string name) const;

  bool same_table(const FiniteGroup& other) const noexcept;

  // Sorted multiset of element orders.
  std::vector<std::size_t> order_profile() const;

 private:
  FiniteGroup() = default;
  std::shared_ptr<const detail::GroupData> data_;
};

// A subgroup of a FiniteGroup, stored as a sorted element list plus a membership mask.
class Subgroup {
 public:
  // `members` must already be closed; use subgroup_generated() to close a seed set.
  Subgroup(FiniteGroup parent, ElementSet members);

  static Subgroup whole(const FiniteGroup& g);
  static Subgroup trivial(const FiniteGroup& g);

  const FiniteGroup& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::span<const Elem> elements() const noexcept { return elements_; }
  const ElementSet& mask() const noexcept { return mask_; }
  bool contains(Elem x) const noexcept { return x < mask_.universe() && mask_.test(x); }
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool is_whole() const noexcept { return elements_.size() == parent_.order(); }

  bool operator==(const Subgroup& other) const noexcept { return mask_ == other.mask_; }
  bool is_subset_of(const Subgroup& other) const noexcept { return mask_.is_subset_of(other.mask_); }

 private:
  FiniteGroup parent_;
  ElementSet mask_;
  std::vector<Elem> elements_;
};

struct TableCheck {
  bool latin_square = false;
  bool identity = false;
  bool inverses = false;
  bool associative = false;
  bool ok() const noexcept { return latin_square && identity && inverses && associative; }
};

// Checks the group axioms on a raw table without constructing a FiniteGroup.
TableCheck check_table(std::size_t order, std::span<const Elem> table);

}  // namespace acg
