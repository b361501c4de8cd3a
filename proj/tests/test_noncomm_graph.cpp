#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "acg/noncomm_graph.hpp"
#include "acg/structure.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace acg;

namespace {

std::vector<FiniteGroup> nonabelian_samples() {
  std::vector<FiniteGroup> out;
  for (const auto& s : oracle::sample_specs()) {
    FiniteGroup g = build_from_spec(s);
    if (!is_abelian(g)) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> sizes_of(const VertexPartition& p) {
  std::vector<std::size_t> s;
  for (const auto& part : p) s.push_back(part.size());
  std::sort(s.rbegin(), s.rend());
  return s;
}

// Exhaustive maximum clique (Bron-Kerbosch with pivoting) on a small graph.
std::size_t max_clique(const SimpleGraph& g) {
  std::size_t best = 0;
  std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>, std::vector<std::size_t>)> bk =
      [&](std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
        if (p.empty() && x.empty()) {
          best = std::max(best, r.size());
          return;
        }
        const std::size_t pivot = !p.empty() ? p.front() : x.front();
        const auto cand = p;
        for (std::size_t v : cand) {
          if (g.adjacent(pivot, v)) continue;
          std::vector<std::size_t> np, nx;
          for (std::size_t w : p)
            if (g.adjacent(v, w)) np.push_back(w);
          for (std::size_t w : x)
            if (g.adjacent(v, w)) nx.push_back(w);
          r.push_back(v);
          bk(r, np, nx);
          r.pop_back();
          p.erase(std::find(p.begin(), p.end(), v));
          x.push_back(v);
        }
      };
  std::vector<std::size_t> r, p(g.n);
  std::iota(p.begin(), p.end(), 0);
  bk(r, p, {});
  return best;
}

// Isomorphism by trying every permutation; only for tiny graphs.
bool iso_by_permutation(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.n != b.n) return false;
  std::vector<std::size_t> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.n && ok; ++i)
      for (std::size_t j = i + 1; j < a.n && ok; ++j) ok = a.adjacent(i, j) == b.adjacent(perm[i], perm[j]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

SimpleGraph random_graph(std::size_t n, double p, std::mt19937& rng) {
  SimpleGraph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

SimpleGraph permuted(const SimpleGraph& g, std::mt19937& rng) {
  std::vector<std::size_t> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  SimpleGraph h(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j)
      if (g.adjacent(i, j)) h.add_edge(perm[i], perm[j]);
  return h;
}

SimpleGraph multipartite(const std::vector<std::size_t>& sizes, std::vector<std::size_t>& part_of) {
  part_of.clear();
  for (std::size_t k = 0; k < sizes.size(); ++k) part_of.insert(part_of.end(), sizes[k], k);
  SimpleGraph g(part_of.size());
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j)
      if (part_of[i] != part_of[j]) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_SUITE("non-commuting graph") {
  TEST_CASE("small graphs by hand") {
    const NonCommutingGraph d4 = build_graph(G("Dih(4)"));
    CHECK(d4.vertex_count() == 6);
    for (Elem x : d4.vertices()) CHECK(d4.degree(x) == 4);

    const FiniteGroup s3 = G("Sym(3)");
    const NonCommutingGraph gs3 = build_graph(s3);
    CHECK(gs3.vertex_count() == 5);
    for (Elem x : gs3.vertices()) CHECK(gs3.degree(x) == (s3.order_of(x) == 2 ? 4u : 3u));

    CHECK(error_code_of([] { build_graph(G("Cyc(6)")); }) == ErrorCode::AbelianGroup);
    CHECK(error_code_of([] { is_ac(G("Cyc(2) x Cyc(2)")); }) == ErrorCode::AbelianGroup);
    CHECK(error_code_of([&] { d4.degree(0); }) == ErrorCode::IndexOutOfRange);
  }

  TEST_CASE("graph invariants: no loops, no central vertices, degree = |G| - |C(x)|") {
    for (const FiniteGroup& g : nonabelian_samples()) {
      CAPTURE(g.name());
      const NonCommutingGraph graph = build_graph(g);
      const auto z = oracle::center(g);
      CHECK(graph.vertex_count() == g.order() - z.size());
      for (Elem x : graph.vertices()) {
        CHECK_FALSE(z.count(x));
        CHECK_FALSE(graph.adjacent(x, x));
        CHECK(graph.degree(x) == g.order() - oracle::centralizer(g, x).size());
      }
      const SimpleGraph m = graph.materialize();
      for (std::size_t i = 0; i < m.n; ++i) {
        CHECK(m.degree(i) == graph.degree(graph.vertices()[i]));
        for (std::size_t j = 0; j < m.n; ++j) CHECK(m.adjacent(i, j) == m.adjacent(j, i));
      }
    }
  }

  TEST_CASE("AC detection agrees with brute force") {
    CHECK(is_ac(G("Dih(4)")));
    CHECK_FALSE(is_ac(G("Sym(4)")));
    CHECK(is_ac(G("Heis(3)")));
    for (const FiniteGroup& g : nonabelian_samples()) {
      CAPTURE(g.name());
      CHECK(is_ac(g) == oracle::is_ac(g));
    }
  }

  TEST_CASE("centralizer partitions") {
    auto sizes = [](const char* s) { return signature(G(s)).part_sizes; };
    CHECK(sizes("Dih(4)") == std::vector<std::size_t>{2, 2, 2});
    CHECK(sizes("Sym(3)") == std::vector<std::size_t>{2, 1, 1, 1});
    CHECK(sizes("SL2(3)") == std::vector<std::size_t>{4, 4, 4, 4, 2, 2, 2});
    CHECK(error_code_of([] { centralizer_partition(G("Sym(4)")); }) == ErrorCode::NotACGroup);

    for (const FiniteGroup& g : nonabelian_samples()) {
      if (!oracle::is_ac(g)) continue;
      CAPTURE(g.name());
      const CentralizerPartition part = centralizer_partition(g);
      const auto z = oracle::center(g);
      CHECK(part.center_order == z.size());
      CHECK(signature(g).part_sizes == oracle::part_sizes(g));
      // Cells partition the vertex set and are C \ Z.
      std::vector<int> seen(g.order(), 0);
      for (const auto& p : part.parts) {
        CHECK(p.cell.size() == p.centralizer.order() - z.size());
        for (Elem x : p.cell) {
          ++seen[x];
          CHECK(p.centralizer.contains(x));
          CHECK(centralizer(g, x) == p.centralizer);
        }
      }
      for (Elem x = 0; x < g.order(); ++x) CHECK(seen[x] == (z.count(x) ? 0 : 1));
      // Distinct parts meet exactly in the center.
      for (std::size_t i = 0; i < part.parts.size(); ++i)
        for (std::size_t j = i + 1; j < part.parts.size(); ++j)
          CHECK(intersect(part.parts[i].centralizer, part.parts[j].centralizer).order() == z.size());
      CHECK(signature(g).vertex_count == g.order() - z.size());
    }
  }

  TEST_CASE("clique number equals the number of parts and the true maximum clique") {
    CHECK(clique_number(G("Dih(4)")) == 3);
    CHECK(clique_number(G("Sym(3)")) == 4);
    CHECK(clique_number(G("GL2(3)")) == 13);
    for (const FiniteGroup& g : nonabelian_samples()) {
      if (!oracle::is_ac(g)) continue;
      CAPTURE(g.name());
      const std::size_t w = clique_number(g);
      CHECK(w == oracle::centralizer_family(g).size());
      const NonCommutingGraph graph = build_graph(g);
      if (graph.vertex_count() <= 48) CHECK(max_clique(graph.materialize()) == w);
    }
  }

  TEST_CASE("centralizer-count formula") {
    const auto d4 = verify_clique_formula(G("Dih(4)"));
    CHECK(d4.measured == 3);
    CHECK(d4.formula == 3);
    CHECK(d4.center_index == 4);
    CHECK(d4.index_sum == 6);
    REQUIRE(d4.quotient_prime.has_value());
    CHECK(*d4.quotient_prime == 2);
    CHECK(d4.congruent_one == std::optional<bool>(true));

    const auto h3 = verify_clique_formula(G("Heis(3)"));
    CHECK(h3.measured == 4);
    CHECK(h3.formula == -9 + 1 + 4 * 3);
    CHECK(h3.quotient_prime == std::optional<std::uint64_t>(3));

    const auto s3 = verify_clique_formula(G("Sym(3)"));
    CHECK(s3.formula == -6 + 1 + (3 + 2 + 2 + 2));
    CHECK(s3.measured == 4);
    CHECK(s3.equal);
    CHECK_FALSE(s3.quotient_prime.has_value());

    for (const FiniteGroup& g : nonabelian_samples()) {
      if (!oracle::is_ac(g)) continue;
      CAPTURE(g.name());
      const auto r = verify_clique_formula(g);
      // Independent evaluation from the oracle's centralizer family.
      const std::int64_t z = static_cast<std::int64_t>(oracle::center(g).size());
      std::int64_t sum = 0;
      for (const auto& c : oracle::centralizer_family(g)) sum += static_cast<std::int64_t>(c.size()) / z;
      CHECK(r.formula == -static_cast<std::int64_t>(g.order()) / z + 1 + sum);
      CHECK(r.holds());
    }
  }

  TEST_CASE("AC iff complete multipartite, with matching partitions") {
    for (const FiniteGroup& g : nonabelian_samples()) {
      CAPTURE(g.name());
      const NonCommutingGraph graph = build_graph(g);
      const auto from_group = is_complete_multipartite(graph);
      const auto from_matrix = is_complete_multipartite(graph.materialize());
      CHECK(from_group.has_value() == oracle::is_ac(g));
      CHECK(from_matrix.has_value() == oracle::is_ac(g));
      if (!from_group) continue;
      const CentralizerPartition part = centralizer_partition(g);
      REQUIRE(from_group->size() == part.parts.size());
      for (std::size_t i = 0; i < part.parts.size(); ++i) CHECK((*from_group)[i] == part.parts[i].cell);
      // The matrix version indexes vertices positionally.
      REQUIRE(from_matrix->size() == part.parts.size());
      for (std::size_t i = 0; i < part.parts.size(); ++i) {
        std::vector<Elem> elems;
        for (std::size_t v : (*from_matrix)[i]) elems.push_back(graph.vertices()[v]);
        CHECK(elems == part.parts[i].cell);
      }
    }
    const auto d4 = is_complete_multipartite(build_graph(G("Dih(4)")).materialize());
    REQUIRE(d4);
    CHECK(sizes_of(*d4) == std::vector<std::size_t>{2, 2, 2});
    CHECK_FALSE(is_complete_multipartite(build_graph(G("Sym(4)")).materialize()).has_value());
    const auto single = is_complete_multipartite(SimpleGraph(1));
    REQUIRE(single);
    CHECK(sizes_of(*single) == std::vector<std::size_t>{1});
  }

  TEST_CASE("multipartite recognition on random graphs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<std::size_t> sizes(1 + rng() % 6);
      for (auto& s : sizes) s = 1 + rng() % 4;
      std::vector<std::size_t> part_of;
      SimpleGraph g = multipartite(sizes, part_of);
      const auto found = is_complete_multipartite(g);
      REQUIRE(found);
      auto sorted = sizes;
      std::sort(sorted.rbegin(), sorted.rend());
      CHECK(sizes_of(*found) == sorted);
      for (const auto& part : *found)
        for (std::size_t v : part) CHECK(part_of[v] == part_of[part.front()]);
      // Removing a cross edge breaks this particular partition.
      if (sizes.size() >= 2) {
        std::size_t a = 0, b = 0;
        do {
          a = rng() % g.n;
          b = rng() % g.n;
        } while (part_of[a] == part_of[b]);
        g.adj[a].reset(static_cast<Elem>(b));
        g.adj[b].reset(static_cast<Elem>(a));
        const auto broken = is_complete_multipartite(g);
        if (broken) CHECK(broken->size() < sizes.size());
      }
    }
    // A path on three vertices is complete bipartite; a path on four is not.
    SimpleGraph p3(3), p4(4);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    p4.add_edge(0, 1);
    p4.add_edge(1, 2);
    p4.add_edge(2, 3);
    CHECK(is_complete_multipartite(p3).has_value());
    CHECK_FALSE(is_complete_multipartite(p4).has_value());
  }

  TEST_CASE("commuting structure of AC groups") {
    for (const FiniteGroup& g : nonabelian_samples()) {
      if (!oracle::is_ac(g) || g.order() > 100) continue;
      CAPTURE(g.name());
      const auto z = oracle::center(g);
      std::vector<Elem> nc;
      for (Elem x = 0; x < g.order(); ++x)
        if (!z.count(x)) nc.push_back(x);
      // [x,y] != 1  <=>  C(x) and C(y) meet in Z  <=>  C(x) != C(y).
      for (Elem x : nc)
        for (Elem y : nc) {
          const Subgroup cx = centralizer(g, x), cy = centralizer(g, y);
          const bool noncomm = !g.commute(x, y);
          CHECK(noncomm == (intersect(cx, cy).order() == z.size()));
          CHECK(noncomm == !(cx == cy));
        }
      // Commuting with a fixed non-central element is transitive.
      for (Elem x : nc)
        for (Elem y = 0; y < g.order(); ++y) {
          if (!g.commute(x, y)) continue;
          for (Elem w = 0; w < g.order(); ++w)
            if (g.commute(x, w)) CHECK(g.commute(y, w));
        }
    }
  }

  TEST_CASE("subgroups of AC groups are abelian or AC") {
    for (const FiniteGroup& g : nonabelian_samples()) {
      if (!oracle::is_ac(g) || g.order() > 100) continue;
      CAPTURE(g.name());
      for (const Subgroup& h : all_subgroups(g)) {
        const FiniteGroup hg = as_group(h);
        CHECK((is_abelian(hg) || is_ac(hg)));
        CHECK((is_abelian(hg) || oracle::is_ac(hg)));
      }
    }
  }

  TEST_CASE("signatures and AC graph isomorphism") {
    const GraphSignature d4 = signature(G("Dih(4)")), q8 = signature(G("Dic(2)")), s3 = signature(G("Sym(3)"));
    CHECK(d4.part_sizes == q8.part_sizes);
    CHECK(iso_ac(d4, q8));
    CHECK_FALSE(iso_ac(d4, s3));
    CHECK(iso_ac(s3, s3));
    CHECK(d4.center == 2);
    CHECK(d4.order == 8);
    CHECK(error_code_of([] { signature(G("Sym(4)")); }) == ErrorCode::NotACGroup);
  }

  TEST_CASE("general graph isomorphism") {
    const SimpleGraph d4 = build_graph(G("Dih(4)")).materialize();
    const SimpleGraph q8 = build_graph(G("Dic(2)")).materialize();
    const SimpleGraph s3 = build_graph(G("Sym(3)")).materialize();
    CHECK(graph_iso_general(d4, q8));
    CHECK_FALSE(graph_iso_general(d4, s3));
    CHECK(graph_iso_general(s3, s3));
    CHECK(error_code_of([] { graph_iso_general(SimpleGraph(65), SimpleGraph(65)); }) == ErrorCode::TooLarge);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng() % 7;
      const SimpleGraph a = random_graph(n, 0.5, rng);
      CHECK(graph_iso_general(a, permuted(a, rng)));
      const SimpleGraph b = random_graph(n, 0.5, rng);
      CHECK(graph_iso_general(a, b) == iso_by_permutation(a, b));
    }
    // Larger regular-ish graphs where refinement alone cannot decide.
    for (int trial = 0; trial < 20; ++trial) {
      const SimpleGraph a = random_graph(40, 0.3, rng);
      CHECK(graph_iso_general(a, permuted(a, rng)));
      SimpleGraph b = permuted(a, rng);
      std::size_t i = 0, j = 0;
      do {
        i = rng() % 40;
        j = rng() % 40;
      } while (i == j || b.adjacent(i, j));
      b.add_edge(i, j);
      CHECK_FALSE(graph_iso_general(a, b));
    }
    // Two 3-regular graphs on 6 vertices: the prism and K_{3,3}.
    SimpleGraph prism(6), k33(6);
    for (auto [x, y] : {std::pair{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}})
      prism.add_edge(x, y);
    for (int x = 0; x < 3; ++x)
      for (int y = 3; y < 6; ++y) k33.add_edge(x, y);
    CHECK_FALSE(graph_iso_general(prism, k33));
  }

  TEST_CASE("AC signature comparison agrees with the general isomorphism oracle") {
    std::vector<std::pair<GraphSignature, SimpleGraph>> ac;
    for (const FiniteGroup& g : nonabelian_samples()) {
      if (!is_ac(g)) continue;
      const NonCommutingGraph graph = build_graph(g);
      if (graph.vertex_count() <= kGeneralIsoLimit) ac.emplace_back(signature(g), graph.materialize());
    }
    for (const char* extra : {"Dic(2)", "Dih(6)", "Dic(3) x Cyc(2)", "Dih(3) x Cyc(4)", "Dih(3) x Cyc(2) x Cyc(2)"}) {
      const FiniteGroup g = G(extra);
      ac.emplace_back(signature(g), build_graph(g).materialize());
    }
    std::size_t compared = 0;
    for (std::size_t i = 0; i < ac.size(); ++i)
      for (std::size_t j = i; j < ac.size(); ++j) {
        if (ac[i].second.n != ac[j].second.n) continue;
        CAPTURE(ac[i].first.group);
        CAPTURE(ac[j].first.group);
        CHECK(iso_ac(ac[i].first, ac[j].first) == graph_iso_general(ac[i].second, ac[j].second));
        ++compared;
      }
    CHECK(compared > ac.size());
  }
}
