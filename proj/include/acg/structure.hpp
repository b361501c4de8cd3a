#pragma once

// Structural computations on finite groups: centers, centralizers, series,
// quotients, products, subgroup lattices and a small isomorphism test.

#include <optional>
#include <span>
#include <vector>

#include "acg/group.hpp"

namespace acg {

Subgroup center(const FiniteGroup& g);
Subgroup centralizer(const FiniteGroup& g, Elem x);
// Elements commuting with every member of s.
Subgroup centralizer_of(const Subgroup& s);

// Closure of `seeds` under the group product (always contains the identity).
Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> seeds);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// Greedy generating sequence, preferring elements of large order.
std::vector<Elem> generating_set(const Subgroup& s);
std::vector<Elem> generating_set(const FiniteGroup& g);

bool is_abelian(const FiniteGroup& g);
bool is_subgroup_abelian(const Subgroup& s);
bool is_normal(const FiniteGroup& g, const Subgroup& s);
// s normal in the subgroup `in` (s must lie inside `in`).
bool is_normal_in(const Subgroup& s, const Subgroup& in);

// Subgroup generated by all commutators of elements of s (s = whole group by default).
Subgroup derived_subgroup(const FiniteGroup& g);
Subgroup derived_subgroup(const Subgroup& s);
// G = G^(0) > G' > G'' > ... until it stabilizes.
std::vector<Subgroup> derived_series(const FiniteGroup& g);

// Z_0 = 1 < Z_1 = Z(G) < Z_2 < ... up to the first repeat.
std::vector<Subgroup> upper_central_series(const FiniteGroup& g);
// Least c with Z_c = G, or nullopt when G is not nilpotent.
std::optional<std::size_t> nilpotency_class(const FiniteGroup& g);
inline bool is_nilpotent(const FiniteGroup& g) { return nilpotency_class(g).has_value(); }

struct Quotient {
  FiniteGroup group;
  std::vector<Elem> coset_of;        // element of G -> coset index
  std::vector<Elem> representative;  // coset index -> smallest element in it
  // Full preimage in G of a subgroup of the quotient.
  Subgroup preimage(const FiniteGroup& parent, const Subgroup& in_quotient) const;
  // Image of a subgroup of G.
  Subgroup image(const Subgroup& in_parent) const;
};

// Throws NotNormal when n is not normal.
Quotient quotient(const FiniteGroup& g, const Subgroup& n);

// Table on pairs (a,b) -> a * |G2| + b. Throws OrderCapExceeded past `cap`.
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2,
                           std::size_t cap = kDefaultOrderCap);

// Re-indexes a subgroup as a standalone group; element i is s.elements()[i].
FiniteGroup as_group(const Subgroup& s, std::string name = {});

// Extends generator images to an injective homomorphism g1 -> g2 (as a map on
// element indices), or nullopt when the images do not define one.
std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                                                     std::span<const Elem> gens,
                                                     std::span<const Elem> images);

// Exact isomorphism test by backtracking over generator images. Throws
// OrderCapExceeded when either group is larger than `cap`.
bool is_isomorphic(const FiniteGroup& g1, const FiniteGroup& g2, std::size_t cap = 200);

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g);

// All normal subgroups, ordered by (order, smallest differing element).
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);

// All subgroups, same ordering. Throws OrderCapExceeded when |G| > cap.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t cap = 200);

// Maximal proper subgroups, selected from all_subgroups.
std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g, std::size_t cap = 200);

// Elements whose order is a power of p (the Sylow p-subgroup when G is nilpotent).
ElementSet p_elements(const FiniteGroup& g, std::uint64_t p);

}  // namespace acg
