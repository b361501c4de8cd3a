#pragma once

// Concrete constructions of the group families used throughout the library.
// Every constructor is deterministic and refuses (OrderCapExceeded) rather than
// building a table larger than `cap`.

#include <cstddef>

#include "acg/group.hpp"

namespace acg {

FiniteGroup cyclic(std::size_t n, std::size_t cap = kDefaultOrderCap);
// Dihedral group of order 2n.
FiniteGroup dihedral(std::size_t n, std::size_t cap = kDefaultOrderCap);
// Dicyclic group of order 4n; dicyclic(2) is the quaternion group.
FiniteGroup dicyclic(std::size_t n, std::size_t cap = kDefaultOrderCap);
FiniteGroup symmetric(std::size_t n, std::size_t cap = kDefaultOrderCap);
FiniteGroup alternating(std::size_t n, std::size_t cap = kDefaultOrderCap);
// Upper unitriangular 3x3 matrices over F_p.
FiniteGroup heisenberg(std::size_t p, std::size_t cap = kDefaultOrderCap);

enum class ExtraspecialType { Plus, Minus };
// Extraspecial group of order p^(1+2m). For odd p, Plus has exponent p and Minus
// exponent p^2; for p = 2 they are the central products of m copies of Dih(4),
// respectively Dic(2) with m-1 copies of Dih(4).
FiniteGroup extraspecial(std::size_t p, std::size_t m, ExtraspecialType type,
                         std::size_t cap = kDefaultOrderCap);

FiniteGroup general_linear2(std::size_t q, std::size_t cap = kDefaultOrderCap);
FiniteGroup special_linear2(std::size_t q, std::size_t cap = kDefaultOrderCap);

// kernel x| C_d where the generator of C_d acts by an automorphism of order
// exactly d. Automorphisms are tried in lexicographic order of generator images;
// `seed` skips that many qualifying automorphisms. With `frobenius` set, only
// actions whose nontrivial powers fix no non-identity element qualify.
FiniteGroup semidirect(const FiniteGroup& kernel, std::size_t d, std::size_t seed, bool frobenius,
                       std::size_t cap = kDefaultOrderCap);

}  // namespace acg
