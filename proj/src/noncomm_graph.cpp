#include "acg/noncomm_graph.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <unordered_map>

#include "acg/kernels.hpp"
#include "acg/number.hpp"
#include "acg/structure.hpp"

namespace acg {

namespace {

void require_nonabelian(const FiniteGroup& g) {
  if (is_abelian(g)) throw Error(ErrorCode::AbelianGroup, g.name() + " is abelian; its non-commuting graph is empty");
}

// C(x) is abelian iff C(x) <= C(y) for every y in C(x).
bool centralizer_abelian(const std::vector<ElementSet>& masks, Elem x) {
  bool ok = true;
  masks[x].for_each([&](Elem y) {
    if (ok && !masks[x].is_subset_of(masks[y])) ok = false;
  });
  return ok;
}

struct Analysis {
  ElementSet center;
  std::vector<ElementSet> masks;
  // One representative per distinct centralizer of a non-central element, in
  // increasing order of the representative.
  std::vector<Elem> representatives;
};

Analysis analyze(const FiniteGroup& g) {
  Analysis a;
  a.masks = kernels::omp::centralizer_masks(g);
  a.center = ElementSet(g.order());
  for (Elem x = 0; x < g.order(); ++x)
    if (a.masks[x].count() == g.order()) a.center.set(x);
  std::unordered_map<ElementSet, Elem, ElementSetHash> seen;
  for (Elem x = 0; x < g.order(); ++x) {
    if (a.center.test(x)) continue;
    if (seen.emplace(a.masks[x], x).second) a.representatives.push_back(x);
  }
  return a;
}

}  // namespace

NonCommutingGraph::NonCommutingGraph(const FiniteGroup& g) : group_(g), center_(acg::center(g)) {
  require_nonabelian(g);
  for (Elem x = 0; x < g.order(); ++x)
    if (!center_.contains(x)) vertices_.push_back(x);
}

std::size_t NonCommutingGraph::degree(Elem x) const {
  if (!is_vertex(x)) throw Error(ErrorCode::IndexOutOfRange, "not a vertex: " + std::to_string(x));
  std::size_t d = 0;
  for (Elem y : vertices_)
    if (!group_.commute(x, y)) ++d;
  return d;
}

SimpleGraph NonCommutingGraph::materialize() const {
  SimpleGraph out(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      if (!group_.commute(vertices_[i], vertices_[j])) out.add_edge(i, j);
  return out;
}

NonCommutingGraph build_graph(const FiniteGroup& g) { return NonCommutingGraph(g); }

bool is_ac(const FiniteGroup& g) {
  require_nonabelian(g);
  const Analysis a = analyze(g);
  for (Elem x : a.representatives)
    if (!centralizer_abelian(a.masks, x)) return false;
  return true;
}

CentralizerPartition centralizer_partition(const FiniteGroup& g) {
  require_nonabelian(g);
  const Analysis a = analyze(g);
  CentralizerPartition out;
  out.group_order = g.order();
  out.center_order = a.center.count();
  for (Elem x : a.representatives) {
    if (!centralizer_abelian(a.masks, x))
      throw Error(ErrorCode::NotACGroup, g.name() + ": centralizer of element " + std::to_string(x) + " is not abelian");
    CentralizerPart part{Subgroup(g, a.masks[x]), (a.masks[x] - a.center).to_vector()};
    out.parts.push_back(std::move(part));
  }
  return out;
}

std::size_t clique_number(const FiniteGroup& g) { return centralizer_partition(g).parts.size(); }

CliqueFormulaReport verify_clique_formula(const CentralizerPartition& partition) {
  CliqueFormulaReport r;
  const auto z = static_cast<std::int64_t>(partition.center_order);
  r.measured = static_cast<std::int64_t>(partition.parts.size());
  r.center_index = static_cast<std::int64_t>(partition.group_order) / z;
  for (const auto& part : partition.parts) r.index_sum += static_cast<std::int64_t>(part.centralizer.order()) / z;
  r.formula = -r.center_index + 1 + r.index_sum;
  r.equal = r.formula == r.measured;
  if (auto pp = as_prime_power(static_cast<std::uint64_t>(r.center_index))) {
    r.quotient_prime = pp->prime;
    r.congruent_one = r.measured % static_cast<std::int64_t>(pp->prime) == 1;
  }
  return r;
}

CliqueFormulaReport verify_clique_formula(const FiniteGroup& g) { return verify_clique_formula(centralizer_partition(g)); }

std::optional<VertexPartition> is_complete_multipartite(const SimpleGraph& graph) {
  const std::size_t n = graph.n;
  ElementSet all(n);
  for (std::size_t v = 0; v < n; ++v) all.set(static_cast<Elem>(v));
  // Closed non-neighbourhoods; the graph is complete multipartite iff these
  // form a partition (non-adjacency is then an equivalence relation).
  std::vector<ElementSet> non(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (graph.adjacent(v, v)) return std::nullopt;
    non[v] = all - graph.adj[v];
  }
  VertexPartition parts;
  std::vector<bool> placed(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (placed[v]) continue;
    std::vector<std::size_t> part;
    bool ok = true;
    non[v].for_each([&](Elem w) {
      if (!ok) return;
      if (placed[w] || !(non[w] == non[v])) ok = false;
      placed[w] = true;
      part.push_back(w);
    });
    if (!ok) return std::nullopt;
    parts.push_back(std::move(part));
  }
  return parts;
}

std::optional<std::vector<std::vector<Elem>>> is_complete_multipartite(const NonCommutingGraph& graph) {
  const FiniteGroup& g = graph.group();
  const auto masks = kernels::omp::centralizer_masks(g);
  const ElementSet& z = graph.center().mask();
  std::vector<std::vector<Elem>> parts;
  ElementSet placed(g.order());
  for (Elem x : graph.vertices()) {
    if (placed.test(x)) continue;
    // Non-neighbours of x among vertices, together with x: C(x) \ Z.
    const ElementSet cell = masks[x] - z;
    bool ok = true;
    cell.for_each([&](Elem y) {
      if (ok && (placed.test(y) || !(masks[y] - z == cell))) ok = false;
    });
    if (!ok) return std::nullopt;
    placed |= cell;
    parts.push_back(cell.to_vector());
  }
  return parts;
}

GraphSignature signature(const CentralizerPartition& partition, std::string group_name) {
  GraphSignature s;
  s.group = std::move(group_name);
  s.order = partition.group_order;
  s.center = partition.center_order;
  for (const auto& part : partition.parts) s.part_sizes.push_back(part.cell.size());
  std::sort(s.part_sizes.begin(), s.part_sizes.end(), std::greater<>());
  s.vertex_count = std::accumulate(s.part_sizes.begin(), s.part_sizes.end(), std::size_t{0});
  return s;
}

GraphSignature signature(const FiniteGroup& g) { return signature(centralizer_partition(g), g.name()); }

bool iso_ac(const GraphSignature& a, const GraphSignature& b) { return a.part_sizes == b.part_sizes; }

namespace {

using Row = std::uint64_t;

std::vector<Row> to_rows(const SimpleGraph& g) {
  std::vector<Row> rows(g.n, 0);
  for (std::size_t v = 0; v < g.n; ++v)
    for (std::size_t w = 0; w < g.n; ++w)
      if (g.adjacent(v, w)) rows[v] |= Row{1} << w;
  return rows;
}

// Joint colour refinement: colours are comparable across both graphs.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine(const std::vector<Row>& a,
                                                                     const std::vector<Row>& b) {
  const std::size_t n = a.size();
  std::vector<std::size_t> ca(n), cb(n);
  for (std::size_t v = 0; v < n; ++v) {
    ca[v] = static_cast<std::size_t>(std::popcount(a[v]));
    cb[v] = static_cast<std::size_t>(std::popcount(b[v]));
  }
  std::size_t classes = 0;
  for (;;) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    auto key = [&](const std::vector<Row>& rows, const std::vector<std::size_t>& col, std::size_t v) {
      std::vector<std::size_t> nb;
      for (std::size_t w = 0; w < n; ++w)
        if ((rows[v] >> w) & 1) nb.push_back(col[w]);
      std::sort(nb.begin(), nb.end());
      return std::make_pair(col[v], std::move(nb));
    };
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ka, kb;
    for (std::size_t v = 0; v < n; ++v) ka.push_back(key(a, ca, v));
    for (std::size_t v = 0; v < n; ++v) kb.push_back(key(b, cb, v));
    for (auto& k : ka) ids.emplace(k, 0);
    for (auto& k : kb) ids.emplace(k, 0);
    std::size_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) {
      ca[v] = ids[ka[v]];
      cb[v] = ids[kb[v]];
    }
    if (next == classes) break;
    classes = next;
  }
  return {ca, cb};
}

bool extend(const std::vector<Row>& a, const std::vector<Row>& b, const std::vector<std::size_t>& ca,
            const std::vector<std::size_t>& cb, const std::vector<std::size_t>& order, std::size_t depth,
            std::vector<std::size_t>& map, Row used) {
  if (depth == order.size()) return true;
  const std::size_t v = order[depth];
  for (std::size_t w = 0; w < b.size(); ++w) {
    if (((used >> w) & 1) || cb[w] != ca[v]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i) {
      const std::size_t u = order[i];
      ok = (((a[v] >> u) & 1) == ((b[w] >> map[u]) & 1));
    }
    if (!ok) continue;
    map[v] = w;
    if (extend(a, b, ca, cb, order, depth + 1, map, used | (Row{1} << w))) return true;
  }
  return false;
}

}  // namespace

bool graph_iso_general(const SimpleGraph& ga, const SimpleGraph& gb) {
  if (ga.n > kGeneralIsoLimit || gb.n > kGeneralIsoLimit)
    throw Error(ErrorCode::TooLarge, "graph_iso_general supports at most 64 vertices");
  if (ga.n != gb.n) return false;
  const std::size_t n = ga.n;
  if (n == 0) return true;
  const auto a = to_rows(ga);
  const auto b = to_rows(gb);
  auto [ca, cb] = refine(a, b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Map rare colours first, then stay connected to already-mapped vertices.
  std::vector<std::size_t> freq(2 * n + 1, 0);
  for (auto c : ca) ++freq[c];
  std::vector<std::size_t> order;
  Row placed = 0;
  while (order.size() < n) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if ((placed >> v) & 1) continue;
      if (best == n) {
        best = v;
        continue;
      }
      const bool conn_v = (a[v] & placed) != 0, conn_b = (a[best] & placed) != 0;
      if (conn_v != conn_b ? conn_v : freq[ca[v]] < freq[ca[best]]) best = v;
    }
    order.push_back(best);
    placed |= Row{1} << best;
  }
  std::vector<std::size_t> map(n, 0);
  return extend(a, b, ca, cb, order, 0, map, 0);
}

}  // namespace acg
