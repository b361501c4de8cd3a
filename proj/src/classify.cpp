#include "acg/classify.hpp"

#include <algorithm>
#include <numeric>

#include "acg/constructors.hpp"
#include "acg/kernels.hpp"
#include "acg/number.hpp"
#include "acg/structure.hpp"

namespace acg {

bool is_solvable(const FiniteGroup& g) { return derived_series(g).back().is_trivial(); }

namespace {

// Greedy Hall complement: any subgroup meeting `kernel` trivially lies in some
// complement (Schur-Zassenhaus), so extending one element at a time never stalls.
std::optional<Subgroup> hall_complement(const FiniteGroup& q, const Subgroup& kernel) {
  const std::size_t target = q.order() / kernel.order();
  std::vector<Elem> candidates;
  for (Elem x = 1; x < q.order(); ++x)
    if (std::gcd(q.order_of(x), kernel.order()) == 1) candidates.push_back(x);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Elem a, Elem b) { return q.order_of(a) > q.order_of(b); });
  std::vector<Elem> gens;
  Subgroup t = Subgroup::trivial(q);
  for (Elem z : candidates) {
    if (t.order() == target) break;
    if (t.contains(z)) continue;
    gens.push_back(z);
    Subgroup next = subgroup_generated(q, gens);
    if (intersect(next, kernel).is_trivial() && next.order() <= target)
      t = std::move(next);
    else
      gens.pop_back();
  }
  if (t.order() != target) return std::nullopt;
  return t;
}

bool semiregular_kernel(const Subgroup& n, const std::vector<ElementSet>& masks) {
  for (Elem x : n.elements())
    if (x != 0 && !masks[x].is_subset_of(n.mask())) return false;
  return true;
}

const FiniteGroup& sym4() {
  static const FiniteGroup s4 = symmetric(4);
  return s4;
}

}  // namespace

std::optional<FrobeniusData> detect_frobenius_quotient(const FiniteGroup& g) {
  if (is_abelian(g)) throw Error(ErrorCode::AbelianGroup, g.name() + " is abelian");
  const Subgroup z = center(g);
  const Quotient quo = quotient(g, z);
  const FiniteGroup& q = quo.group;
  // Frobenius groups have trivial center.
  if (kernels::omp::center_mask(q).count() != 1) return std::nullopt;
  const auto masks = kernels::omp::centralizer_masks(q);
  for (const Subgroup& n : normal_subgroups(q)) {
    if (n.is_trivial() || n.is_whole()) continue;
    if (std::gcd(n.order(), q.order() / n.order()) != 1) continue;
    if (!semiregular_kernel(n, masks)) continue;
    auto comp = hall_complement(q, n);
    if (!comp) continue;
    FrobeniusData fd{quo.preimage(g, n), quo.preimage(g, *comp), 0};
    fd.kernel_index_in_g = g.order() / fd.kernel.order();
    return fd;
  }
  return std::nullopt;
}

ACClassification classify(const FiniteGroup& g) {
  if (is_abelian(g)) throw Error(ErrorCode::AbelianGroup, g.name() + " is abelian");
  if (!is_ac(g)) throw Error(ErrorCode::NotACGroup, g.name() + " is not an AC-group");
  return classify(g, centralizer_partition(g));
}

ACClassification classify(const FiniteGroup& g, const CentralizerPartition& partition) {
  if (!is_solvable(g)) throw Error(ErrorCode::NotSolvable, g.name() + " is not solvable");
  ACClassification out;
  out.group = g.name();
  out.measured_count = static_cast<std::int64_t>(partition.parts.size());
  const auto zord = static_cast<std::int64_t>(partition.center_order);
  const bool nilpotent = is_nilpotent(g);

  // Type 1. In an AC-group an abelian subgroup of prime index is not central,
  // hence lies in (and equals) one of the centralizers.
  if (!nilpotent) {
    for (const auto& part : partition.parts) {
      const std::uint64_t index = g.order() / part.centralizer.order();
      if (!is_prime(index) || !is_normal(g, part.centralizer)) continue;
      out.types.insert(1);
      out.type1 = Type1Witness{part.centralizer, index};
      out.predicted_counts[1] = static_cast<std::int64_t>(part.centralizer.order()) / zord + 1;
      break;
    }
  }

  // Types 2 and 3.
  if (auto fd = detect_frobenius_quotient(g)) {
    const std::int64_t f_index = static_cast<std::int64_t>(fd->kernel.order()) / zord;
    const bool f_abelian = is_subgroup_abelian(fd->kernel);
    const bool k_abelian = is_subgroup_abelian(fd->complement);
    if (f_abelian && k_abelian) {
      out.types.insert(2);
      out.type2 = fd;
      out.predicted_counts[2] = f_index + 1;
    }
    if (k_abelian && !f_abelian) {
      const FiniteGroup f = as_group(fd->kernel, "F");
      const std::size_t zf = center(f).order();
      if (zf == partition.center_order && as_prime_power(f.order() / zf)) {
        out.types.insert(3);
        out.type3 = fd;
        out.predicted_counts[3] = f_index + static_cast<std::int64_t>(centralizer_partition(f).parts.size());
      }
    }
  }

  // Type 4.
  if (g.order() / partition.center_order == 24) {
    const Subgroup z = center(g);
    const Quotient quo = quotient(g, z);
    if (is_isomorphic(quo.group, sym4())) {
      for (const Subgroup& n : normal_subgroups(quo.group)) {
        if (n.order() != 4) continue;
        const Subgroup v = quo.preimage(g, n);
        if (!is_subgroup_abelian(v)) {
          out.types.insert(4);
          out.type4 = Type4Witness{v};
          out.predicted_counts[4] = 13;
        }
        break;
      }
    }
  }

  // Type 5: nilpotent with a single non-abelian Sylow subgroup.
  if (nilpotent) {
    std::optional<Type5Witness> w;
    int nonabelian = 0;
    for (const auto& [p, e] : factorize(g.order())) {
      const Subgroup sylow(g, p_elements(g, p));
      if (is_subgroup_abelian(sylow)) continue;
      ++nonabelian;
      ElementSet rest(g.order());
      for (Elem x = 0; x < g.order(); ++x)
        if (g.order_of(x) % p != 0) rest.set(x);
      w = Type5Witness{p, sylow, Subgroup(g, rest)};
    }
    if (nonabelian == 1) {
      out.types.insert(5);
      const FiniteGroup pg = as_group(w->sylow, "P");
      out.predicted_counts[5] = static_cast<std::int64_t>(centralizer_partition(pg).parts.size());
      out.type5 = std::move(w);
    }
  }

  for (const auto& [type, predicted] : out.predicted_counts)
    if (predicted != out.measured_count)
      throw Error(ErrorCode::TheoremViolation, g.name() + ": type " + std::to_string(type) + " predicts " +
                                                   std::to_string(predicted) + " centralizers, measured " +
                                                   std::to_string(out.measured_count));
  return out;
}

NilpotentACProfile nilpotent_ac_profile(const FiniteGroup& g) {
  if (is_abelian(g)) throw Error(ErrorCode::AbelianGroup, g.name() + " is abelian");
  if (!is_nilpotent(g)) throw Error(ErrorCode::NotNilpotent, g.name() + " is not nilpotent");
  if (!is_ac(g)) throw Error(ErrorCode::NotACGroup, g.name() + " is not an AC-group");
  std::uint64_t p = 0;
  std::optional<Subgroup> sylow;
  for (const auto& [q, e] : factorize(g.order())) {
    Subgroup s(g, p_elements(g, q));
    if (is_subgroup_abelian(s)) continue;
    if (sylow)
      throw Error(ErrorCode::MultipleNonAbelianSylows, g.name() + " has several non-abelian Sylow subgroups");
    p = q;
    sylow = std::move(s);
  }
  ElementSet rest(g.order());
  for (Elem x = 0; x < g.order(); ++x)
    if (g.order_of(x) % p != 0) rest.set(x);
  NilpotentACProfile prof{p, *sylow, Subgroup(g, rest), 0, 0, 0};
  prof.a = prof.abelian_part.order();

  const auto masks = kernels::omp::centralizer_masks(g);
  const ElementSet zmask = kernels::omp::center_mask(g);
  const std::size_t zp = intersect(prof.sylow, Subgroup(g, zmask)).order();
  prof.r = valuation(zp, prof.p);
  const auto idx = as_prime_power(g.order() / zmask.count());
  if (!idx || idx->prime != prof.p)
    throw Error(ErrorCode::TheoremViolation, g.name() + ": [G:Z(G)] is not a power of " + std::to_string(prof.p));
  prof.n = idx->exponent;

  for (Elem x = 0; x < g.order(); ++x) {
    if (zmask.test(x)) continue;
    const std::size_t in_p = (masks[x] & prof.sylow.mask()).count();
    if (!prof.abelian_part.mask().is_subset_of(masks[x]) || masks[x].count() != in_p * prof.a)
      throw Error(ErrorCode::TheoremViolation, g.name() + ": C_G(x) != C_P(x) x A for x = " + std::to_string(x));
  }
  return prof;
}

PGroupLemmaReport verify_pgroup_lemma(const FiniteGroup& pg) {
  const auto pp = as_prime_power(pg.order());
  if (!pp) throw Error(ErrorCode::NotPGroup, pg.name() + " does not have prime-power order");
  const CentralizerPartition part = centralizer_partition(pg);

  PGroupLemmaReport rep;
  rep.group = pg.name();
  rep.p = pp->prime;
  const std::uint64_t p = pp->prime;
  const auto series = upper_central_series(pg);
  rep.c = series.size() - 1;
  const Subgroup& z = series[1];
  const Subgroup& z2 = series[2 < series.size() ? 2 : series.size() - 1];
  rep.n = valuation(pg.order() / z.order(), p);
  const Subgroup derived = derived_subgroup(pg);

  std::vector<ClauseResult> cl(5);
  for (int i = 0; i < 5; ++i) cl[i].clause = i + 1;
  auto fail = [&](int clause, std::string what) { cl[clause - 1].violations.push_back(std::move(what)); };

  // Part index of each non-central element.
  std::vector<std::size_t> part_of(pg.order(), part.parts.size());
  for (std::size_t i = 0; i < part.parts.size(); ++i)
    for (Elem y : part.parts[i].cell) part_of[y] = i;
  std::size_t max_c = 0;
  for (const auto& pt : part.parts) max_c = std::max(max_c, pt.centralizer.order());
  std::vector<bool> normal(part.parts.size());
  for (std::size_t i = 0; i < part.parts.size(); ++i) normal[i] = is_normal(pg, part.parts[i].centralizer);

  // Every check depends on x only through C_P(x), so visit one x per part.
  std::vector<bool> done(part.parts.size(), false);
  for (Elem x : z2.elements()) {
    if (z.contains(x)) continue;
    const std::size_t px = part_of[x];
    if (done[px]) continue;
    done[px] = true;
    const Subgroup& cx = part.parts[px].centralizer;
    const std::string tag = "x=" + std::to_string(x);
    const unsigned s = valuation(cx.order() / z.order(), p);

    ++cl[0].checks;
    if (!derived.is_subset_of(cx)) fail(1, tag + ": P' not inside C_P(x)");
    if (!normal[px]) fail(1, tag + ": C_P(x) not normal");

    if (rep.c > 2) {
      ++cl[1].checks;
      for (std::size_t j = 0; j < part.parts.size(); ++j)
        if (j != px && normal[j]) fail(2, tag + ": another normal centralizer exists");
      if (cx.order() != max_c) fail(2, tag + ": C_P(x) does not have maximal order");
    }

    if (pg.order() / cx.order() >= p * p) {
      ++cl[2].checks;
      for (Elem g = 0; g < pg.order(); ++g)
        if (!z.contains(pg.power(g, p))) {
          fail(3, tag + ": P/Z(P) has an element of order > p");
          break;
        }
      ++cl[3].checks;
      if (rep.c > p) fail(4, tag + ": class exceeds p");
      for (std::size_t i = 1; i < rep.c; ++i)
        if (!series[i].is_subset_of(cx)) fail(4, tag + ": Z_" + std::to_string(i) + " not inside C_P(x)");
    }

    for (std::size_t j = 0; j < part.parts.size(); ++j) {
      if (j == px) continue;
      ++cl[4].checks;
      const unsigned t = valuation(part.parts[j].centralizer.order() / z.order(), p);
      if (rep.n < s + t) fail(5, tag + ": n < s + t");
      if (rep.c > 2 && rep.n < 2 * t) fail(5, tag + ": n < 2t");
    }
  }
  rep.clauses = std::move(cl);
  return rep;
}

}  // namespace acg
