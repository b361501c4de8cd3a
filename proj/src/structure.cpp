#include "acg/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_set>

#include "acg/kernels.hpp"
#include "acg/number.hpp"

namespace acg {

namespace {

ElementSet closure(const FiniteGroup& g, ElementSet members, std::span<const Elem> gens) {
  std::vector<Elem> queue = members.to_vector();
  if (!members.test(0)) {
    members.set(0);
    queue.push_back(0);
  }
  while (!queue.empty()) {
    const Elem m = queue.back();
    queue.pop_back();
    for (Elem s : gens) {
      const Elem ms = g.mul(m, s);
      if (!members.test(ms)) {
        members.set(ms);
        queue.push_back(ms);
      }
    }
  }
  return members;
}

void sort_subgroups(std::vector<Subgroup>& subs) {
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::lexicographical_compare(a.elements().begin(), a.elements().end(),
                                        b.elements().begin(), b.elements().end());
  });
}

}  // namespace

Subgroup center(const FiniteGroup& g) { return Subgroup(g, kernels::omp::center_mask(g)); }

Subgroup centralizer(const FiniteGroup& g, Elem x) {
  if (x >= g.order()) throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(x));
  ElementSet c(g.order());
  for (Elem y = 0; y < g.order(); ++y)
    if (g.commute(x, y)) c.set(y);
  return Subgroup(g, std::move(c));
}

Subgroup centralizer_of(const Subgroup& s) {
  const FiniteGroup& g = s.parent();
  const auto gens = generating_set(s);
  ElementSet c(g.order());
  for (Elem y = 0; y < g.order(); ++y) {
    bool ok = true;
    for (Elem x : gens)
      if (!g.commute(x, y)) {
        ok = false;
        break;
      }
    if (ok) c.set(y);
  }
  return Subgroup(g, std::move(c));
}

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> seeds) {
  for (Elem x : seeds)
    if (x >= g.order()) throw Error(ErrorCode::IndexOutOfRange, "seed " + std::to_string(x));
  std::vector<Elem> gens(seeds.begin(), seeds.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  ElementSet start(g.order());
  start.set(0);
  return Subgroup(g, closure(g, std::move(start), gens));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (b.is_subset_of(a)) return a;
  if (a.is_subset_of(b)) return b;
  const auto gb = generating_set(b);
  return Subgroup(a.parent(), closure(a.parent(), a.mask(), [&] {
                    auto gens = generating_set(a);
                    gens.insert(gens.end(), gb.begin(), gb.end());
                    return gens;
                  }()));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) { return Subgroup(a.parent(), a.mask() & b.mask()); }

std::vector<Elem> generating_set(const Subgroup& s) {
  const FiniteGroup& g = s.parent();
  std::vector<Elem> candidates(s.elements().begin(), s.elements().end());
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Elem a, Elem b) { return g.order_of(a) > g.order_of(b); });
  std::vector<Elem> gens;
  ElementSet reached(g.order());
  reached.set(0);
  std::size_t count = 1;
  for (Elem x : candidates) {
    if (count == s.order()) break;
    if (reached.test(x)) continue;
    gens.push_back(x);
    reached = closure(g, std::move(reached), gens);
    count = reached.count();
  }
  return gens;
}

std::vector<Elem> generating_set(const FiniteGroup& g) { return generating_set(Subgroup::whole(g)); }

bool is_abelian(const FiniteGroup& g) { return is_subgroup_abelian(Subgroup::whole(g)); }

bool is_subgroup_abelian(const Subgroup& s) {
  const auto gens = generating_set(s);
  const FiniteGroup& g = s.parent();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!g.commute(gens[i], gens[j])) return false;
  return true;
}

bool is_normal_in(const Subgroup& s, const Subgroup& in) {
  const FiniteGroup& g = s.parent();
  const auto sg = generating_set(s);
  for (Elem h : generating_set(in))
    for (Elem x : sg)
      if (!s.contains(g.conj(x, h))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& s) { return is_normal_in(s, Subgroup::whole(g)); }

Subgroup derived_subgroup(const Subgroup& s) {
  const FiniteGroup& g = s.parent();
  const auto comms = kernels::omp::commutator_set(g, s.mask()).to_vector();
  return subgroup_generated(g, comms);
}

Subgroup derived_subgroup(const FiniteGroup& g) { return derived_subgroup(Subgroup::whole(g)); }

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{Subgroup::whole(g)};
  while (true) {
    Subgroup next = derived_subgroup(series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<Subgroup> upper_central_series(const FiniteGroup& g) {
  // x lies in Z_{i+1} iff [x, s] lies in Z_i for every generator s of G.
  const auto gens = generating_set(g);
  std::vector<Subgroup> series{Subgroup::trivial(g)};
  while (true) {
    const Subgroup& last = series.back();
    ElementSet next(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
      bool ok = true;
      for (Elem s : gens)
        if (!last.contains(g.commutator(x, s))) {
          ok = false;
          break;
        }
      if (ok) next.set(x);
    }
    if (next == last.mask()) break;
    series.emplace_back(g, std::move(next));
  }
  return series;
}

std::optional<std::size_t> nilpotency_class(const FiniteGroup& g) {
  const auto series = upper_central_series(g);
  if (!series.back().is_whole()) return std::nullopt;
  return series.size() - 1;
}

Subgroup Quotient::preimage(const FiniteGroup& parent, const Subgroup& in_quotient) const {
  ElementSet pre(parent.order());
  for (Elem x = 0; x < parent.order(); ++x)
    if (in_quotient.contains(coset_of[x])) pre.set(x);
  return Subgroup(parent, std::move(pre));
}

Subgroup Quotient::image(const Subgroup& in_parent) const {
  ElementSet img(group.order());
  for (Elem x : in_parent.elements()) img.set(coset_of[x]);
  return Subgroup(group, std::move(img));
}

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw Error(ErrorCode::NotNormal, "subgroup of order " + std::to_string(n.order()));
  const std::size_t size = g.order();
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> coset_of(size, kUnset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < size; ++x) {
    if (coset_of[x] != kUnset) continue;
    const auto k = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : n.elements()) coset_of[g.mul(x, m)] = k;
  }
  const std::size_t q = reps.size();
  std::vector<Elem> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coset_of[g.mul(reps[i], reps[j])];
  FiniteGroup qg(q, std::move(table), g.name() + "/N" + std::to_string(n.order()));
  return Quotient{std::move(qg), std::move(coset_of), std::move(reps)};
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2, std::size_t cap) {
  const std::size_t n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
  if (n > cap)
    throw Error(ErrorCode::OrderCapExceeded,
                g1.name() + " x " + g2.name() + " has order " + std::to_string(n) + " > " + std::to_string(cap));
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      const std::size_t x = a * n2 + b;
      for (std::size_t c = 0; c < n1; ++c) {
        const std::size_t ac = g1.mul(static_cast<Elem>(a), static_cast<Elem>(c));
        for (std::size_t d = 0; d < n2; ++d)
          table[x * n + c * n2 + d] =
              static_cast<Elem>(ac * n2 + g2.mul(static_cast<Elem>(b), static_cast<Elem>(d)));
      }
    }
  return FiniteGroup(n, std::move(table), g1.name() + " x " + g2.name());
}

FiniteGroup as_group(const Subgroup& s, std::string name) {
  const FiniteGroup& g = s.parent();
  const std::size_t n = s.order();
  std::vector<Elem> index(g.order(), 0);
  for (std::size_t i = 0; i < n; ++i) index[s.elements()[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index[g.mul(s.elements()[i], s.elements()[j])];
  if (name.empty()) name = "Sub(" + g.name() + ", " + std::to_string(n) + ")";
  return FiniteGroup(n, std::move(table), std::move(name));
}

namespace {

// Extends generator images to a map on all of G1 by walking the Cayley graph
// along right multiplication by generators. Succeeds iff the result is a
// well-defined injective homomorphism.
bool extend_hom(const FiniteGroup& g1, const FiniteGroup& g2, std::span<const Elem> gens,
                std::span<const Elem> images, std::vector<Elem>& phi, std::vector<std::uint8_t>& used) {
  constexpr Elem kUnset = ~Elem{0};
  std::fill(phi.begin(), phi.end(), kUnset);
  std::fill(used.begin(), used.end(), 0);
  phi[0] = 0;
  used[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elem y = g1.mul(x, gens[i]);
      const Elem img = g2.mul(phi[x], images[i]);
      if (phi[y] == kUnset) {
        if (used[img]) return false;
        phi[y] = img;
        used[img] = 1;
        queue.push_back(y);
      } else if (phi[y] != img) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                                                     std::span<const Elem> gens,
                                                     std::span<const Elem> images) {
  if (gens.size() != images.size()) throw Error(ErrorCode::InvalidParameter, "generator/image count mismatch");
  std::vector<Elem> phi(g1.order());
  std::vector<std::uint8_t> used(g2.order());
  if (!extend_hom(g1, g2, gens, images, phi, used)) return std::nullopt;
  if (subgroup_generated(g1, gens).order() != g1.order()) return std::nullopt;
  return phi;
}

bool is_isomorphic(const FiniteGroup& g1, const FiniteGroup& g2, std::size_t cap) {
  if (g1.order() > cap || g2.order() > cap)
    throw Error(ErrorCode::OrderCapExceeded, "isomorphism test limited to order " + std::to_string(cap));
  if (g1.order() != g2.order()) return false;
  if (g1.order_profile() != g2.order_profile()) return false;
  if (center(g1).order() != center(g2).order()) return false;

  const auto gens = generating_set(g1);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < g2.order(); ++y)
      if (g2.order_of(y) == g1.order_of(gens[i])) candidates[i].push_back(y);

  std::vector<Elem> images(gens.size());
  std::vector<Elem> phi(g1.order());
  std::vector<std::uint8_t> used(g2.order());
  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == gens.size()) return true;
    for (Elem y : candidates[depth]) {
      images[depth] = y;
      const std::span<const Elem> gs(gens.data(), depth + 1);
      const std::span<const Elem> is(images.data(), depth + 1);
      // Walking with the first depth+1 generators checks the map on <g_1..g_{depth+1}>.
      if (!extend_hom(g1, g2, gs, is, phi, used)) continue;
      if (search(depth + 1)) return true;
    }
    return false;
  };
  if (!search(0)) return false;
  // A full assignment that extends consistently is a bijective homomorphism.
  return extend_hom(g1, g2, gens, images, phi, used) &&
         std::count(used.begin(), used.end(), std::uint8_t{1}) == static_cast<long>(g2.order());
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  const auto gens = generating_set(g);
  std::vector<std::uint8_t> seen(g.order(), 0);
  std::vector<std::vector<Elem>> classes;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls{x};
    seen[x] = 1;
    for (std::size_t head = 0; head < cls.size(); ++head)
      for (Elem s : gens) {
        const Elem y = g.conj(cls[head], s);
        if (!seen[y]) {
          seen[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

namespace {

// Closes `atoms` under pairwise joins, starting from the trivial subgroup.
std::vector<Subgroup> join_closure(const FiniteGroup& g, const std::vector<Subgroup>& atoms) {
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> all{Subgroup::trivial(g)};
  seen.insert(all[0].mask());
  for (std::size_t head = 0; head < all.size(); ++head) {
    for (const Subgroup& a : atoms) {
      if (a.is_subset_of(all[head])) continue;
      Subgroup j = join(all[head], a);
      if (seen.insert(j.mask()).second) all.push_back(std::move(j));
    }
  }
  sort_subgroups(all);
  return all;
}

}  // namespace

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> closures;
  for (const auto& cls : conjugacy_classes(g)) {
    Subgroup ncl = subgroup_generated(g, cls);
    if (seen.insert(ncl.mask()).second) closures.push_back(std::move(ncl));
  }
  return join_closure(g, closures);
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw Error(ErrorCode::OrderCapExceeded, "subgroup enumeration limited to order " + std::to_string(cap));
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> cyclic;
  for (Elem x = 0; x < g.order(); ++x) {
    const Elem seed[] = {x};
    Subgroup c = subgroup_generated(g, seed);
    if (seen.insert(c.mask()).second) cyclic.push_back(std::move(c));
  }
  return join_closure(g, cyclic);
}

std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g, std::size_t cap) {
  auto subs = all_subgroups(g, cap);
  std::vector<Subgroup> proper;
  for (auto& s : subs)
    if (!s.is_whole()) proper.push_back(std::move(s));
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < proper.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < proper.size() && maximal; ++j)
      if (i != j && proper[j].order() > proper[i].order() && proper[i].is_subset_of(proper[j])) maximal = false;
    if (maximal) out.push_back(proper[i]);
  }
  return out;
}

ElementSet p_elements(const FiniteGroup& g, std::uint64_t p) {
  ElementSet out(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    std::size_t k = g.order_of(x);
    while (k % p == 0) k /= p;
    if (k == 1) out.set(x);
  }
  return out;
}

}  // namespace acg
