#pragma once

// Non-commuting graphs: vertices G \ Z(G), x ~ y iff xy != yx.
//
// For AC-groups the graph is complete multipartite with one part per
// centralizer of a non-central element, so the CentralizerPartition is used as
// the primary representation and the adjacency matrix is never built.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acg/group.hpp"

namespace acg {

// Plain undirected graph on {0..n-1}.
struct SimpleGraph {
  std::size_t n = 0;
  std::vector<ElementSet> adj;

  explicit SimpleGraph(std::size_t vertices = 0) : n(vertices), adj(vertices, ElementSet(vertices)) {}
  void add_edge(std::size_t a, std::size_t b) {
    adj[a].set(static_cast<Elem>(b));
    adj[b].set(static_cast<Elem>(a));
  }
  bool adjacent(std::size_t a, std::size_t b) const { return adj[a].test(static_cast<Elem>(b)); }
  std::size_t degree(std::size_t a) const { return adj[a].count(); }
};

class NonCommutingGraph {
 public:
  explicit NonCommutingGraph(const FiniteGroup& g);

  const FiniteGroup& group() const noexcept { return group_; }
  const Subgroup& center() const noexcept { return center_; }
  // Non-central elements in increasing order.
  const std::vector<Elem>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  bool is_vertex(Elem x) const { return x < group_.order() && !center_.contains(x); }
  bool adjacent(Elem x, Elem y) const { return is_vertex(x) && is_vertex(y) && !group_.commute(x, y); }
  std::size_t degree(Elem x) const;

  // Adjacency matrix with vertex i <-> vertices()[i].
  SimpleGraph materialize() const;

 private:
  FiniteGroup group_;
  Subgroup center_;
  std::vector<Elem> vertices_;
};

// Throws AbelianGroup.
NonCommutingGraph build_graph(const FiniteGroup& g);

// Every centralizer of a non-central element is abelian. Throws AbelianGroup.
bool is_ac(const FiniteGroup& g);

struct CentralizerPart {
  Subgroup centralizer;
  std::vector<Elem> cell;  // centralizer minus center
};

struct CentralizerPartition {
  std::vector<CentralizerPart> parts;  // ordered by smallest cell element
  std::size_t center_order = 0;
  std::size_t group_order = 0;
};

// Throws AbelianGroup, NotACGroup.
CentralizerPartition centralizer_partition(const FiniteGroup& g);
std::size_t clique_number(const FiniteGroup& g);

struct CliqueFormulaReport {
  std::int64_t measured = 0;        // |C(G)|
  std::int64_t center_index = 0;    // [G : Z(G)]
  std::int64_t index_sum = 0;       // sum of [C : Z(G)]
  std::int64_t formula = 0;         // -[G:Z] + 1 + sum
  bool equal = false;
  std::optional<std::uint64_t> quotient_prime;  // set when G/Z(G) is a p-group
  std::optional<bool> congruent_one;            // |C(G)| = 1 mod p
  bool holds() const { return equal && congruent_one.value_or(true); }
};

CliqueFormulaReport verify_clique_formula(const FiniteGroup& g);
CliqueFormulaReport verify_clique_formula(const CentralizerPartition& partition);

using VertexPartition = std::vector<std::vector<std::size_t>>;

// Parts of a complete multipartite graph (ordered by smallest vertex), or
// nullopt when non-adjacency is not an equivalence relation.
std::optional<VertexPartition> is_complete_multipartite(const SimpleGraph& graph);
// Same test straight from the group; parts are lists of group elements.
std::optional<std::vector<std::vector<Elem>>> is_complete_multipartite(const NonCommutingGraph& graph);

struct GraphSignature {
  std::string group;
  std::size_t order = 0;
  std::size_t center = 0;
  std::vector<std::size_t> part_sizes;  // non-increasing
  std::size_t vertex_count = 0;
};

// Throws AbelianGroup, NotACGroup.
GraphSignature signature(const FiniteGroup& g);
GraphSignature signature(const CentralizerPartition& partition, std::string group_name);
// Isomorphism of the two complete multipartite graphs.
bool iso_ac(const GraphSignature& a, const GraphSignature& b);

inline constexpr std::size_t kGeneralIsoLimit = 64;

// Exact backtracking isomorphism with colour-refinement pruning. Throws TooLarge
// beyond 64 vertices.
bool graph_iso_general(const SimpleGraph& a, const SimpleGraph& b);

}  // namespace acg
