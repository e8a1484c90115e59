#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gcm/tabular.hpp"

namespace gcm {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph over predictor indices 0..n-1.
class UndirectedGraph {
 public:
  /// Duplicate edges collapse; self-loops and out-of-range endpoints throw.
  UndirectedGraph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t num_nodes() const { return n_; }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a * n_ + b] != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t a) const { return nbrs_[a]; }
  /// Sorted list of (i, j) with i < j.
  std::vector<Edge> edges() const;
  std::size_t num_edges() const;

  UndirectedGraph with_edge(std::size_t a, std::size_t b) const;

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  std::size_t n_;
  std::vector<char> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

/// Directed acyclic graph given by parent sets.
class Dag {
 public:
  /// Throws InputError on out-of-range parents, self-parents, or cycles.
  Dag(std::size_t n, std::vector<std::vector<std::size_t>> parents);

  std::size_t num_nodes() const { return parents_.size(); }
  const std::vector<std::size_t>& parents(std::size_t i) const { return parents_[i]; }

 private:
  std::vector<std::vector<std::size_t>> parents_;
};

UndirectedGraph edgeless_graph(std::size_t n);
UndirectedGraph complete_graph(std::size_t n);
/// 0-1-...-(n-1).
UndirectedGraph path_graph(std::size_t n);
/// 0-1-...-(n-1)-0.
UndirectedGraph cycle_graph(std::size_t n);
/// Node 0 adjacent to every other node.
UndirectedGraph star_graph(std::size_t n);

/// The maximal cliques, sorted lexicographically by member list. Isolated
/// nodes come out as singletons, so the cliques always cover every node.
std::vector<VariableSubset> maximal_cliques(const UndirectedGraph& g);

bool is_complete(const UndirectedGraph& g, const VariableSubset& A);

/// True iff every path from A to B meets D. A, B, D must be pairwise
/// disjoint.
bool separates(const UndirectedGraph& g, const VariableSubset& A, const VariableSubset& B,
               const VariableSubset& D);

/// Marries co-parents and drops directions.
UndirectedGraph moralize(const Dag& dag);

/// (A, B, D) partitioning the nodes, A and B nonempty, D complete and
/// separating A from B.
struct Decomposition {
  VariableSubset a;
  VariableSubset b;
  VariableSubset separator;
};

struct DecomposabilityResult {
  bool decomposable = false;
  /// Present when decomposable and not a single clique.
  std::optional<Decomposition> witness;
};

/// Chordality via maximum cardinality search. The witness splits off the
/// last clique of the perfect clique sequence.
DecomposabilityResult is_decomposable(const UndirectedGraph& g);

/// Maximal cliques of a chordal graph ordered so that each clique meets the
/// union of its predecessors inside a single earlier clique. Throws
/// InputError on non-chordal input.
std::vector<VariableSubset> perfect_clique_sequence(const UndirectedGraph& g);

/// G_A with nodes relabeled 0..|A|-1 in increasing order of A.
UndirectedGraph induced_subgraph(const UndirectedGraph& g, const VariableSubset& A);

}  // namespace gcm
