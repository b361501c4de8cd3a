#include "acg/group.hpp"

#include <algorithm>
#include <string>

#include "acg/kernels.hpp"

namespace acg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::AbelianGroup: return "AbelianGroup";
    case ErrorCode::NotACGroup: return "NotACGroup";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotPGroup: return "NotPGroup";
    case ErrorCode::MultipleNonAbelianSylows: return "MultipleNonAbelianSylows";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidTuple: return "InvalidTuple";
    case ErrorCode::NotFeasible: return "NotFeasible";
    case ErrorCode::BoundsTooLarge: return "BoundsTooLarge";
    case ErrorCode::InvalidGroupTable: return "InvalidGroupTable";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

TableCheck check_table(std::size_t order, std::span<const Elem> table) {
  TableCheck check;
  if (order == 0 || table.size() != order * order) return check;
  check.latin_square = kernels::omp::is_latin_square(order, table);
  if (!check.latin_square) return check;
  check.identity = kernels::omp::identity_is_zero(order, table);
  check.inverses = check.identity && kernels::omp::has_inverses(order, table);
  check.associative = kernels::omp::associative_by_generators(order, table);
  return check;
}

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Elem> table, std::string name) {
  const TableCheck check = check_table(order, table);
  if (!check.ok()) {
    std::string why;
    if (!check.latin_square) why = "not a Latin square";
    else if (!check.identity) why = "element 0 is not the identity";
    else if (!check.inverses) why = "missing inverses";
    else why = "not associative";
    throw Error(ErrorCode::InvalidGroupTable, name + ": " + why);
  }
  auto data = std::make_shared<detail::GroupData>();
  data->order = order;
  data->table = std::move(table);
  data->name = std::move(name);
  data->inverse.resize(order);
  for (std::size_t x = 0; x < order; ++x) {
    const Elem* row = data->table.data() + x * order;
    data->inverse[x] = static_cast<Elem>(std::find(row, row + order, Elem{0}) - row);
  }
  data->element_order = kernels::omp::element_orders(order, data->table);
  data_ = std::move(data);
}

Elem FiniteGroup::power(Elem x, std::size_t k) const noexcept {
  Elem result = 0;
  Elem base = x;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem FiniteGroup::multiply(Elem x, Elem y) const {
  if (x >= order() || y >= order())
    throw Error(ErrorCode::IndexOutOfRange, "element index beyond group order " + std::to_string(order()));
  return mul(x, y);
}

Elem FiniteGroup::inverse(Elem x) const {
  if (x >= order()) throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(x));
  return inv(x);
}

std::size_t FiniteGroup::element_order(Elem x) const {
  if (x >= order()) throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(x));
  return order_of(x);
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  FiniteGroup copy;
  auto data = std::make_shared<detail::GroupData>(*data_);
  data->name = std::move(name);
  copy.data_ = std::move(data);
  return copy;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const noexcept {
  return data_ == other.data_ || data_->table == other.data_->table;
}

std::vector<std::size_t> FiniteGroup::order_profile() const {
  std::vector<std::size_t> profile = data_->element_order;
  std::sort(profile.begin(), profile.end());
  return profile;
}

Subgroup::Subgroup(FiniteGroup parent, ElementSet members)
    : parent_(std::move(parent)), mask_(std::move(members)), elements_(mask_.to_vector()) {}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  ElementSet all(g.order());
  for (Elem x = 0; x < g.order(); ++x) all.set(x);
  return Subgroup(g, std::move(all));
}

Subgroup Subgroup::trivial(const FiniteGroup& g) {
  ElementSet one(g.order());
  one.set(0);
  return Subgroup(g, std::move(one));
}

}  // namespace acg
