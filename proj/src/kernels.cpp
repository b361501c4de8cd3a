#include "acg/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>

#include "acg/group.hpp"

namespace acg::kernels {

namespace {

bool row_col_ok(std::size_t n, Table table, std::size_t i, std::vector<std::uint8_t>& seen_row,
                std::vector<std::uint8_t>& seen_col) {
  std::fill(seen_row.begin(), seen_row.end(), 0);
  std::fill(seen_col.begin(), seen_col.end(), 0);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem r = table[i * n + j];
    const Elem c = table[j * n + i];
    if (r >= n || c >= n || seen_row[r] || seen_col[c]) return false;
    seen_row[r] = seen_col[c] = 1;
  }
  return true;
}

bool inverse_ok(std::size_t n, Table table, std::size_t x) {
  for (std::size_t y = 0; y < n; ++y)
    if (table[x * n + y] == 0) return table[y * n + x] == 0;
  return false;
}

std::size_t order_of(std::size_t n, Table table, Elem x) {
  Elem acc = x;
  for (std::size_t k = 1; k <= n; ++k) {
    if (acc == 0) return k;
    acc = table[acc * n + x];
  }
  return 0;
}

}  // namespace

std::vector<Elem> magma_generators(std::size_t n, Table table) {
  std::vector<Elem> gens;
  std::vector<std::uint8_t> reached(n, 0);
  std::vector<Elem> members;
  members.reserve(n);
  std::vector<Elem> queue;
  auto add = [&](Elem x) {
    if (!reached[x]) {
      reached[x] = 1;
      queue.push_back(x);
    }
  };
  for (Elem seed = 0; seed < n; ++seed) {
    if (reached[seed]) continue;
    gens.push_back(seed);
    add(seed);
    // Each new element is multiplied on both sides by everything reached so far,
    // so every pair is combined exactly once.
    while (!queue.empty()) {
      const Elem x = queue.back();
      queue.pop_back();
      members.push_back(x);
      for (std::size_t i = 0; i < members.size(); ++i) {
        const Elem y = members[i];
        add(table[x * n + y]);
        add(table[y * n + x]);
      }
    }
  }
  return gens;
}

int threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n <= 0) n = omp_get_num_procs();
  omp_set_num_threads(n);
}

// ---------------------------------------------------------------------------
namespace serial {

bool is_latin_square(std::size_t n, Table table) {
  if (table.size() != n * n) return false;
  std::vector<std::uint8_t> seen_row(n), seen_col(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!row_col_ok(n, table, i, seen_row, seen_col)) return false;
  return true;
}

bool identity_is_zero(std::size_t n, Table table) {
  for (std::size_t x = 0; x < n; ++x)
    if (table[x] != x || table[x * n] != x) return false;
  return true;
}

bool has_inverses(std::size_t n, Table table) {
  for (std::size_t x = 0; x < n; ++x)
    if (!inverse_ok(n, table, x)) return false;
  return true;
}

std::size_t associativity_violations(std::size_t n, Table table) {
  std::size_t bad = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Elem xy = table[x * n + y];
      for (std::size_t z = 0; z < n; ++z)
        if (table[xy * n + z] != table[x * n + table[y * n + z]]) ++bad;
    }
  return bad;
}

bool associative_by_generators(std::size_t n, Table table) {
  for (Elem a : magma_generators(n, table))
    for (std::size_t x = 0; x < n; ++x) {
      const Elem xa = table[x * n + a];
      for (std::size_t y = 0; y < n; ++y)
        if (table[xa * n + y] != table[x * n + table[a * n + y]]) return false;
    }
  return true;
}

std::vector<std::size_t> element_orders(std::size_t n, Table table) {
  std::vector<std::size_t> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = order_of(n, table, static_cast<Elem>(x));
  return out;
}

std::vector<ElementSet> centralizer_masks(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<ElementSet> rows(n, ElementSet(n));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (g.commute(x, y)) rows[x].set(y);
  return rows;
}

std::vector<std::size_t> centralizer_orders(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> out(n, 0);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (g.commute(x, y)) ++out[x];
  return out;
}

ElementSet center_mask(const FiniteGroup& g) {
  const std::size_t n = g.order();
  ElementSet z(n);
  for (Elem x = 0; x < n; ++x) {
    bool central = true;
    for (Elem y = 0; y < n && central; ++y) central = g.commute(x, y);
    if (central) z.set(x);
  }
  return z;
}

ElementSet commutator_set(const FiniteGroup& g, const ElementSet& within) {
  ElementSet out(g.order());
  const auto members = within.to_vector();
  for (Elem x : members)
    for (Elem y : members) out.set(g.commutator(x, y));
  return out;
}

}  // namespace serial

// ---------------------------------------------------------------------------
namespace omp {

bool is_latin_square(std::size_t n, Table table) {
  if (table.size() != n * n) return false;
  std::atomic<bool> ok{true};
#pragma omp parallel
  {
    std::vector<std::uint8_t> seen_row(n), seen_col(n);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      if (!ok.load(std::memory_order_relaxed)) continue;
      if (!row_col_ok(n, table, static_cast<std::size_t>(i), seen_row, seen_col)) ok = false;
    }
  }
  return ok;
}

bool identity_is_zero(std::size_t n, Table table) { return serial::identity_is_zero(n, table); }

bool has_inverses(std::size_t n, Table table) {
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x)
    ok = ok && inverse_ok(n, table, static_cast<std::size_t>(x));
  return ok;
}

std::size_t associativity_violations(std::size_t n, Table table) {
  std::size_t bad = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : bad)
  for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(n); ++xi) {
    const auto x = static_cast<std::size_t>(xi);
    for (std::size_t y = 0; y < n; ++y) {
      const Elem xy = table[x * n + y];
      for (std::size_t z = 0; z < n; ++z)
        if (table[xy * n + z] != table[x * n + table[y * n + z]]) ++bad;
    }
  }
  return bad;
}

bool associative_by_generators(std::size_t n, Table table) {
  const auto gens = magma_generators(n, table);
  bool ok = true;
  for (Elem a : gens) {
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(n); ++xi) {
      if (!ok) continue;
      const auto x = static_cast<std::size_t>(xi);
      const Elem xa = table[x * n + a];
      for (std::size_t y = 0; y < n; ++y)
        if (table[xa * n + y] != table[x * n + table[a * n + y]]) {
          ok = false;
          break;
        }
    }
    if (!ok) return false;
  }
  return ok;
}

std::vector<std::size_t> element_orders(std::size_t n, Table table) {
  std::vector<std::size_t> out(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x)
    out[static_cast<std::size_t>(x)] = order_of(n, table, static_cast<Elem>(x));
  return out;
}

std::vector<ElementSet> centralizer_masks(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<ElementSet> rows(n, ElementSet(n));
  // Each thread owns whole rows, so no two threads touch the same bitmask.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(n); ++xi) {
    const auto x = static_cast<Elem>(xi);
    for (Elem y = 0; y < n; ++y)
      if (g.commute(x, y)) rows[x].set(y);
  }
  return rows;
}

std::vector<std::size_t> centralizer_orders(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> out(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(n); ++xi) {
    const auto x = static_cast<Elem>(xi);
    std::size_t count = 0;
    for (Elem y = 0; y < n; ++y) count += g.commute(x, y) ? 1 : 0;
    out[x] = count;
  }
  return out;
}

ElementSet center_mask(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::uint8_t> central(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(n); ++xi) {
    const auto x = static_cast<Elem>(xi);
    bool c = true;
    for (Elem y = 0; y < n && c; ++y) c = g.commute(x, y);
    central[x] = c ? 1 : 0;
  }
  ElementSet z(n);
  for (Elem x = 0; x < n; ++x)
    if (central[x]) z.set(x);
  return z;
}

ElementSet commutator_set(const FiniteGroup& g, const ElementSet& within) {
  const std::size_t n = g.order();
  const auto members = within.to_vector();
  std::vector<std::uint8_t> hit(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(members.size()); ++i) {
    const Elem x = members[static_cast<std::size_t>(i)];
    for (Elem y : members) {
      const Elem c = g.commutator(x, y);
#pragma omp atomic write
      hit[c] = 1;
    }
  }
  ElementSet out(n);
  for (Elem x = 0; x < n; ++x)
    if (hit[x]) out.set(x);
  return out;
}

}  // namespace omp

}  // namespace acg::kernels
