#pragma once

// Data-parallel inner loops over Cayley tables.
//
// Every kernel exists twice with the same signature: kernels::serial is the
// plain reference loop, kernels::omp is the OpenMP version used by the rest of
// the library. The test suite checks that both agree and bench/ compares them.

#include <cstddef>
#include <span>
#include <vector>

#include "acg/element_set.hpp"

namespace acg {
class FiniteGroup;
}

namespace acg::kernels {

using Table = std::span<const Elem>;

#define ACG_KERNEL_DECLS                                                                      \
  /* Every row and column is a permutation of {0..n-1}. */                                   \
  bool is_latin_square(std::size_t n, Table table);                                          \
  /* Element 0 is a two-sided identity. */                                                    \
  bool identity_is_zero(std::size_t n, Table table);                                         \
  /* Every element has a two-sided inverse. */                                                \
  bool has_inverses(std::size_t n, Table table);                                             \
  /* Number of triples (x,y,z) with (xy)z != x(yz); the n^3 scan. */                          \
  std::size_t associativity_violations(std::size_t n, Table table);                          \
  /* Light's test: middle element ranges over a generating set of the magma. Exact. */        \
  bool associative_by_generators(std::size_t n, Table table);                                \
  /* Least k >= 1 with x^k = 0, or 0 if the powers never reach the identity. */              \
  std::vector<std::size_t> element_orders(std::size_t n, Table table);                       \
  /* Row x is the centralizer C(x) as a bitmask. */                                            \
  std::vector<ElementSet> centralizer_masks(const FiniteGroup& g);                          \
  std::vector<std::size_t> centralizer_orders(const FiniteGroup& g);                        \
  ElementSet center_mask(const FiniteGroup& g);                                              \
  /* All commutators [x,y] with x,y in `within`. */                                          \
  ElementSet commutator_set(const FiniteGroup& g, const ElementSet& within);

namespace serial {
ACG_KERNEL_DECLS
}  // namespace serial

namespace omp {
ACG_KERNEL_DECLS
}  // namespace omp

#undef ACG_KERNEL_DECLS

// Generating set of the magma (closure under the binary operation only).
std::vector<Elem> magma_generators(std::size_t n, Table table);

// Number of worker threads the omp kernels will use; set_threads(0) restores the default.
int threads();
void set_threads(int n);

}  // namespace acg::kernels
