#include "acg/harness.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <tuple>

#include "acg/classify.hpp"
#include "acg/number.hpp"
#include "acg/structure.hpp"

namespace acg {

FiniteGroup CatalogEntry::build() const { return build_from_spec(spec).renamed(name); }

std::vector<std::string> default_family_specs(std::size_t max_order) {
  std::vector<std::string> out;
  auto add = [&](std::size_t order, std::string spec) {
    if (order <= max_order) out.push_back(std::move(spec));
  };
  const auto s = [](std::size_t v) { return std::to_string(v); };
  for (std::size_t n = 1; n <= max_order; ++n) add(n, "Cyc(" + s(n) + ")");
  add(4, "Cyc(2) x Cyc(2)");
  add(8, "Cyc(2) x Cyc(4)");
  add(8, "Cyc(2) x Cyc(2) x Cyc(2)");
  add(9, "Cyc(3) x Cyc(3)");
  for (std::size_t n = 3; 2 * n <= max_order; ++n) add(2 * n, "Dih(" + s(n) + ")");
  for (std::size_t n = 2; 4 * n <= max_order; ++n) add(4 * n, "Dic(" + s(n) + ")");
  add(6, "Sym(3)");
  add(24, "Sym(4)");
  add(120, "Sym(5)");
  add(12, "Alt(4)");
  add(60, "Alt(5)");
  for (std::size_t p : {3, 5, 7}) add(p * p * p, "Heis(" + s(p) + ")");
  for (std::size_t p : {2, 3, 5})
    for (std::size_t m : {1, 2}) {
      std::size_t order = p;
      for (std::size_t i = 0; i < 2 * m; ++i) order *= p;
      add(order, "ExSp(" + s(p) + "," + s(m) + ",+)");
      add(order, "ExSp(" + s(p) + "," + s(m) + ",-)");
    }
  add(24, "SL2(3)");
  add(48, "GL2(3)");
  for (auto p : primes_up_to(max_order / 2)) {
    if (p < 3) continue;
    for (std::size_t d = 2; d < p; ++d)
      if ((p - 1) % d == 0) add(p * d, "SemiDirect(Cyc(" + s(p) + ")," + s(d) + ",0,frobenius)");
  }
  return out;
}

std::vector<std::string> default_abelian_factors(std::size_t max_order) {
  std::vector<std::string> out;
  // The smallest non-abelian group has order 6.
  for (std::size_t k = 2; 6 * k <= max_order; ++k) out.push_back("Cyc(" + std::to_string(k) + ")");
  if (24 <= max_order) out.push_back("Cyc(2) x Cyc(2)");
  if (54 <= max_order) out.push_back("Cyc(3) x Cyc(3)");
  if (48 <= max_order) out.push_back("Cyc(2) x Cyc(2) x Cyc(2)");
  return out;
}

CatalogEntry analyze_entry(const GroupSpec& spec) {
  CatalogEntry e;
  e.spec = spec;
  e.name = spec.to_string();
  const FiniteGroup g = build_from_spec(spec).renamed(e.name);
  e.order = g.order();
  e.valid = check_table(g.order(), g.table()).ok();
  e.order_profile = g.order_profile();
  const Subgroup z = center(g);
  e.center_order = z.order();
  e.is_abelian = z.is_whole();
  e.is_solvable = is_solvable(g);
  e.is_nilpotent = is_nilpotent(g);
  if (e.is_nilpotent)
    for (const auto& [p, k] : factorize(g.order()))
      if (!is_subgroup_abelian(Subgroup(g, p_elements(g, p)))) ++e.nonabelian_sylows;
  if (e.is_abelian) return e;
  e.is_ac = is_ac(g);
  if (!e.is_ac) return e;

  const CentralizerPartition part = centralizer_partition(g);
  e.signature = signature(part, e.name);
  if (e.is_solvable) {
    const ACClassification cl = classify(g, part);
    ClassificationSummary s;
    s.types = cl.types;
    s.predicted_counts = cl.predicted_counts;
    s.measured_count = cl.measured_count;
    if (cl.type1) s.type1_n = cl.type1->normal_abelian.order();
    const auto& fd = cl.type3 ? cl.type3 : cl.type2;
    if (fd) {
      s.frobenius_kernel = fd->kernel.order();
      s.frobenius_complement = fd->complement.order();
    }
    if (cl.type4) s.type4_v = cl.type4->v.order();
    if (cl.type5) {
      s.type5_p = cl.type5->p;
      s.type5_sylow = cl.type5->sylow.order();
      s.type5_abelian = cl.type5->abelian_part.order();
    }
    e.classification = std::move(s);
  }
  if (e.is_nilpotent) {
    const NilpotentACProfile prof = nilpotent_ac_profile(g);
    e.profile = ProfileSummary{prof.p, prof.n, prof.r, prof.a};
  }
  if (as_prime_power(g.order())) e.pgroup_lemma_ok = verify_pgroup_lemma(g).ok();
  return e;
}

Catalog generate_catalog(std::size_t max_order, const std::vector<std::string>& families, std::size_t cap) {
  if (max_order > cap)
    throw Error(ErrorCode::OrderCapExceeded,
                "catalog order " + std::to_string(max_order) + " exceeds cap " + std::to_string(cap));
  Catalog cat;
  cat.max_order = max_order;
  const std::vector<std::string> seeds = families.empty() ? default_family_specs(max_order) : families;

  auto analyze_all = [&](const std::vector<GroupSpec>& specs) {
    std::vector<std::optional<CatalogEntry>> out(specs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < specs.size(); ++i) {
      try {
        out[i] = analyze_entry(specs[i]);
      } catch (...) {
#pragma omp critical(acg_catalog_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
  };

  std::vector<GroupSpec> seed_specs;
  for (const auto& s : seeds) seed_specs.push_back(parse_group_spec(s));
  auto seed_entries = analyze_all(seed_specs);

  // Orders of the abelian factors, read off their specs' built groups.
  std::vector<std::pair<std::string, std::size_t>> factors;
  for (const auto& f : default_abelian_factors(max_order))
    factors.emplace_back(f, build_from_spec(f).order());

  std::vector<GroupSpec> product_specs;
  for (std::size_t i = 0; i < seed_entries.size(); ++i) {
    const CatalogEntry& e = *seed_entries[i];
    if (e.order > max_order || e.is_abelian) continue;
    for (const auto& [f, fo] : factors)
      if (e.order * fo <= max_order) product_specs.push_back(parse_group_spec(e.name + " x " + f));
  }
  auto product_entries = analyze_all(product_specs);

  using Key = std::tuple<std::size_t, std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
  std::map<Key, bool> seen;
  auto take = [&](std::vector<std::optional<CatalogEntry>>& list) {
    for (auto& e : list) {
      if (e->order > max_order) continue;
      Key key{e->order, e->center_order, e->signature ? e->signature->part_sizes : std::vector<std::size_t>{},
              e->order_profile};
      if (!seen.emplace(std::move(key), true).second) {
        ++cat.duplicates_dropped;
        continue;
      }
      cat.entries.push_back(std::move(*e));
    }
  };
  take(seed_entries);
  take(product_entries);
  std::stable_sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::tie(a.order, a.name) < std::tie(b.order, b.name);
  });
  return cat;
}

std::string to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::BothNilpotent: return "BothNilpotent";
    case PairVerdict::NilpotencyTransferred: return "NilpotencyTransferred";
    case PairVerdict::Type3Exception: return "Type3Exception";
    case PairVerdict::NeitherNilpotent: return "NeitherNilpotent";
    case PairVerdict::Violation: return "Violation";
  }
  return "Violation";
}

namespace {

bool has_abelian_maximal_subgroup(const FiniteGroup& g) {
  if (g.order() <= 200) {
    for (const Subgroup& m : maximal_subgroups(g, 200))
      if (is_subgroup_abelian(m)) return true;
    return false;
  }
  // Nilpotent AC-group: maximal subgroups have prime index, and an abelian one
  // is not central, so it would be one of the centralizers.
  for (const auto& part : centralizer_partition(g).parts)
    if (is_prime(g.order() / part.centralizer.order())) return true;
  return false;
}

// Conclusions required of a non-nilpotent partner H of a nilpotent AC-group G.
std::vector<std::string> type3_conclusions(const CatalogEntry& g, const CatalogEntry& h) {
  std::vector<std::string> fails;
  if (!h.classification || !h.classification->types.count(3)) {
    fails.push_back("partner is not of type 3");
    return fails;
  }
  const auto& prof = *g.profile;
  const auto kf = as_prime_power(h.classification->frobenius_kernel / h.center_order);
  if (!kf || kf->prime == prof.p) fails.push_back("p == q");
  if (h.center_order <= g.center_order) fails.push_back("|Z(H)| <= |Z(G)|");
  if (prof.n <= 4) fails.push_back("[P:Z(P)] <= p^4");
  if (has_abelian_maximal_subgroup(g.build())) fails.push_back("G has an abelian maximal subgroup");
  return fails;
}

}  // namespace

PairReport find_graph_pairs(const Catalog& catalog) {
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < catalog.entries.size(); ++i)
    if (catalog.entries[i].signature) buckets[catalog.entries[i].signature->part_sizes].push_back(i);
  PairReport rep;
  for (const auto& [parts, members] : buckets) {
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        std::size_t gi = members[x], hi = members[y];
        if (!catalog.entries[gi].is_nilpotent && catalog.entries[hi].is_nilpotent) std::swap(gi, hi);
        const CatalogEntry& g = catalog.entries[gi];
        const CatalogEntry& h = catalog.entries[hi];
        GraphPair pair;
        pair.g = g.name;
        pair.h = h.name;
        pair.g_index = gi;
        pair.h_index = hi;
        pair.parts = parts;
        pair.same_order = g.order == h.order;
        if (g.is_nilpotent && h.is_nilpotent) {
          pair.verdict = pair.same_order ? PairVerdict::BothNilpotent : PairVerdict::NilpotencyTransferred;
        } else if (g.is_nilpotent) {
          const auto fails = type3_conclusions(g, h);
          pair.verdict = fails.empty() ? PairVerdict::Type3Exception : PairVerdict::Violation;
          for (const auto& f : fails) pair.note += (pair.note.empty() ? "" : "; ") + f;
        } else {
          pair.verdict = PairVerdict::NeitherNilpotent;
        }
        rep.pairs.push_back(std::move(pair));
      }
  }
  std::stable_sort(rep.pairs.begin(), rep.pairs.end(), [&](const GraphPair& a, const GraphPair& b) {
    return std::tie(a.g_index, a.h_index) < std::tie(b.g_index, b.h_index);
  });
  return rep;
}

TheoremReport verify_theorems(const Catalog& catalog, const PairReport& pairs) {
  const auto& E = catalog.entries;
  TheoremCheck vertices{"equal_vertex_counts", 0, {}, "|G|-|Z(G)| = |H|-|Z(H)| for every pair"};
  TheoremCheck partwise{"equal_part_sizes", 0, {}, "|C_G(x)|-|Z(G)| values agree bijectively"};
  TheoremCheck clique{"equal_clique_numbers", 0, {}, "|C(G)| = |C(H)| for every pair"};
  TheoremCheck same_order{"same_order_partner_nilpotent", 0, {}, "G nilpotent AC and |G| = |H| imply H nilpotent"};
  TheoremCheck dichotomy{"main_dichotomy", 0, {}, "H nilpotent, or H of type 3 with |Z(H)| > |Z(G)|, p != q, "
                                                   "[P:Z(P)] > p^4 and no abelian maximal subgroup in G"};
  TheoremCheck corollary{"larger_center_forces_nilpotent", 0, {}, "G nilpotent AC and |Z(G)| >= |Z(H)| imply H nilpotent"};
  TheoremCheck types24{"partner_not_type_2_or_4", 0, {}, "non-nilpotent partners are never of type 2 or 4"};
  TheoremCheck partner_ac{"partner_is_ac", 0, {}, "no non-AC catalog group has a graph isomorphic to an AC group's"};
  TheoremCheck oracle{"iso_oracle_agreement", 0, {}, "signature comparison agrees with brute-force graph isomorphism"};
  TheoremCheck two_sylow{"nilpotent_two_nonabelian_sylows", 0, {}, ""};

  for (const auto& pr : pairs.pairs) {
    const CatalogEntry& g = E[pr.g_index];
    const CatalogEntry& h = E[pr.h_index];
    const std::string tag = g.name + " ~ " + h.name;
    ++vertices.checked;
    if (g.order - g.center_order != h.order - h.center_order) vertices.violations.push_back(tag);
    ++partwise.checked;
    if (g.signature->part_sizes != h.signature->part_sizes) partwise.violations.push_back(tag);
    ++clique.checked;
    if (g.signature->part_sizes.size() != h.signature->part_sizes.size()) clique.violations.push_back(tag);
    if (!g.is_nilpotent) continue;
    if (g.order == h.order) {
      ++same_order.checked;
      if (!h.is_nilpotent) same_order.violations.push_back(tag);
    }
    ++dichotomy.checked;
    if (pr.verdict == PairVerdict::Violation) dichotomy.violations.push_back(tag + ": " + pr.note);
    if (g.center_order >= h.center_order) {
      ++corollary.checked;
      if (!h.is_nilpotent) corollary.violations.push_back(tag);
    }
    if (!h.is_nilpotent) {
      ++types24.checked;
      if (h.classification && (h.classification->types.count(2) || h.classification->types.count(4)))
        types24.violations.push_back(tag);
    }
  }

  // Brute-force graph isomorphism on everything small enough.
  std::vector<std::size_t> small;
  for (std::size_t i = 0; i < E.size(); ++i)
    if (!E[i].is_abelian && E[i].order - E[i].center_order <= kGeneralIsoLimit) small.push_back(i);
  std::map<std::size_t, SimpleGraph> graphs;
  for (auto i : small) graphs.emplace(i, build_graph(E[i].build()).materialize());
  for (std::size_t x = 0; x < small.size(); ++x)
    for (std::size_t y = x + 1; y < small.size(); ++y) {
      const CatalogEntry& a = E[small[x]];
      const CatalogEntry& b = E[small[y]];
      if (a.order - a.center_order != b.order - b.center_order) continue;
      if (!a.is_ac && !b.is_ac) continue;
      const bool iso = graph_iso_general(graphs.at(small[x]), graphs.at(small[y]));
      const std::string tag = a.name + " vs " + b.name;
      if (a.is_ac && b.is_ac) {
        ++oracle.checked;
        if (iso != iso_ac(*a.signature, *b.signature)) oracle.violations.push_back(tag);
      } else {
        ++partner_ac.checked;
        if (iso) partner_ac.violations.push_back(tag);
      }
    }

  for (const auto& e : E) {
    if (!e.is_ac || !e.is_nilpotent) continue;
    ++two_sylow.checked;
    if (e.nonabelian_sylows >= 2) two_sylow.violations.push_back(e.name + " is AC with several non-abelian Sylows");
  }
  two_sylow.note = "hypothesis of two non-abelian Sylow subgroups is never met by a nilpotent AC-group; " +
                   std::to_string(two_sylow.checked) + " entries confirm exactly one";

  TheoremReport rep;
  rep.checks = {vertices, partwise, clique, same_order, dichotomy, corollary, types24, partner_ac, oracle, two_sylow};
  return rep;
}

}  // namespace acg
