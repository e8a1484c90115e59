#include "gcm/graph.hpp"

#include <algorithm>
#include <deque>

#include "gcm/error.hpp"

namespace gcm {

UndirectedGraph::UndirectedGraph(std::size_t n, const std::vector<Edge>& edges)
    : n_(n), adj_(n * n, 0), nbrs_(n) {
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") has an endpoint out of range");
    }
    if (a == b) throw InputError("self-loop at node " + std::to_string(a));
    adj_[a * n + b] = adj_[b * n + a] = 1;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (adjacent(a, b)) nbrs_[a].push_back(b);
    }
  }
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      if (adjacent(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::size_t UndirectedGraph::num_edges() const { return edges().size(); }

UndirectedGraph UndirectedGraph::with_edge(std::size_t a, std::size_t b) const {
  auto e = edges();
  e.emplace_back(a, b);
  return UndirectedGraph(n_, e);
}

Dag::Dag(std::size_t n, std::vector<std::vector<std::size_t>> parents)
    : parents_(std::move(parents)) {
  if (parents_.size() != n) throw InputError("DAG needs one parent list per node");
  for (std::size_t i = 0; i < n; ++i) {
    auto& pa = parents_[i];
    std::sort(pa.begin(), pa.end());
    pa.erase(std::unique(pa.begin(), pa.end()), pa.end());
    for (auto p : pa) {
      if (p >= n) throw InputError("parent " + std::to_string(p) + " out of range");
      if (p == i) throw InputError("node " + std::to_string(i) + " is its own parent");
    }
  }
  // Kahn's algorithm.
  std::vector<std::size_t> indegree(n);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    indegree[i] = parents_[i].size();
    for (auto p : parents_[i]) children[p].push_back(i);
  }
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto v = ready.front();
    ready.pop_front();
    ++seen;
    for (auto c : children[v]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (seen != n) throw InputError("parent sets contain a directed cycle");
}

UndirectedGraph edgeless_graph(std::size_t n) { return UndirectedGraph(n, {}); }

UndirectedGraph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) e.emplace_back(a, b);
  }
  return UndirectedGraph(n, e);
}

UndirectedGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return UndirectedGraph(n, e);
}

UndirectedGraph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  if (n >= 3) e.emplace_back(n - 1, 0);
  return UndirectedGraph(n, e);
}

UndirectedGraph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t b = 1; b < n; ++b) e.emplace_back(0, b);
  return UndirectedGraph(n, e);
}

namespace {

using NodeList = std::vector<std::size_t>;

NodeList intersect_neighbors(const UndirectedGraph& g, const NodeList& set, std::size_t v) {
  NodeList out;
  for (auto u : set) {
    if (g.adjacent(u, v)) out.push_back(u);
  }
  return out;
}

// Bron-Kerbosch with Tomita pivoting: the pivot maximizes |P ∩ N(u)|.
void bron_kerbosch(const UndirectedGraph& g, NodeList& r, NodeList p, NodeList x,
                   std::vector<VariableSubset>& out) {
  if (p.empty() && x.empty()) {
    out.emplace_back(r);
    return;
  }
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have_pivot = false;
  for (const NodeList* pool : {&p, &x}) {
    for (auto u : *pool) {
      const std::size_t cnt = intersect_neighbors(g, p, u).size();
      if (!have_pivot || cnt > best) {
        pivot = u;
        best = cnt;
        have_pivot = true;
      }
    }
  }
  NodeList candidates;
  for (auto v : p) {
    if (!g.adjacent(pivot, v)) candidates.push_back(v);
  }
  for (auto v : candidates) {
    r.push_back(v);
    bron_kerbosch(g, r, intersect_neighbors(g, p, v), intersect_neighbors(g, x, v), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<VariableSubset> maximal_cliques(const UndirectedGraph& g) {
  std::vector<VariableSubset> out;
  NodeList r;
  NodeList p(g.num_nodes());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
  bron_kerbosch(g, r, p, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_complete(const UndirectedGraph& g, const VariableSubset& A) {
  A.validate(g.num_nodes());
  for (std::size_t s = 0; s < A.size(); ++s) {
    for (std::size_t t = s + 1; t < A.size(); ++t) {
      if (!g.adjacent(A[s], A[t])) return false;
    }
  }
  return true;
}

bool separates(const UndirectedGraph& g, const VariableSubset& A, const VariableSubset& B,
               const VariableSubset& D) {
  A.validate(g.num_nodes());
  B.validate(g.num_nodes());
  D.validate(g.num_nodes());
  if (!A.is_disjoint(B) || !A.is_disjoint(D) || !B.is_disjoint(D)) {
    throw InputError("separation query needs pairwise disjoint node sets");
  }
  std::vector<char> visited(g.num_nodes(), 0);
  for (auto d : D) visited[d] = 1;
  std::deque<std::size_t> queue;
  for (auto a : A) {
    visited[a] = 1;
    queue.push_back(a);
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (B.contains(v)) return false;
    for (auto u : g.neighbors(v)) {
      if (!visited[u]) {
        visited[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return true;
}

UndirectedGraph moralize(const Dag& dag) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < dag.num_nodes(); ++i) {
    const auto& pa = dag.parents(i);
    for (std::size_t s = 0; s < pa.size(); ++s) {
      e.emplace_back(pa[s], i);
      for (std::size_t t = s + 1; t < pa.size(); ++t) e.emplace_back(pa[s], pa[t]);
    }
  }
  return UndirectedGraph(dag.num_nodes(), e);
}

namespace {

struct McsResult {
  bool chordal = true;
  // Cliques {v} ∪ (earlier-visited neighbors of v), in visit order.
  std::vector<VariableSubset> candidates;
};

McsResult maximum_cardinality_search(const UndirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  McsResult res;
  std::vector<std::size_t> weight(n, 0);
  std::vector<std::size_t> visit_pos(n, n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t v = n;
    for (std::size_t u = 0; u < n; ++u) {
      if (visit_pos[u] == n && (v == n || weight[u] > weight[v])) v = u;
    }
    visit_pos[v] = step;
    NodeList earlier;
    for (auto u : g.neighbors(v)) {
      if (visit_pos[u] < step) earlier.push_back(u);
      else if (visit_pos[u] == n) ++weight[u];
    }
    // Zero fill-in: the earlier neighbours minus the latest one must all be
    // earlier neighbours of that latest one.
    if (!earlier.empty()) {
      const auto latest = *std::max_element(earlier.begin(), earlier.end(),
                                            [&](auto a, auto b) { return visit_pos[a] < visit_pos[b]; });
      for (auto u : earlier) {
        if (u != latest && !g.adjacent(u, latest)) res.chordal = false;
      }
    }
    earlier.push_back(v);
    res.candidates.emplace_back(std::move(earlier));
  }
  return res;
}

}  // namespace

std::vector<VariableSubset> perfect_clique_sequence(const UndirectedGraph& g) {
  const auto mcs = maximum_cardinality_search(g);
  if (!mcs.chordal) throw InputError("graph is not chordal");
  std::vector<VariableSubset> seq;
  const auto& cand = mcs.candidates;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cand.size() && maximal; ++j) {
      if (j != i && cand[i].is_subset_of(cand[j]) && (cand[i] != cand[j] || j < i)) maximal = false;
    }
    if (maximal) seq.push_back(cand[i]);
  }
  return seq;
}

DecomposabilityResult is_decomposable(const UndirectedGraph& g) {
  DecomposabilityResult res;
  if (!maximum_cardinality_search(g).chordal) return res;
  res.decomposable = true;
  const auto seq = perfect_clique_sequence(g);
  if (seq.size() < 2) return res;

  VariableSubset earlier;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) earlier = earlier.unite(seq[i]);
  const VariableSubset& last = seq.back();
  Decomposition d;
  d.separator = last.intersect(earlier);
  d.a = last.minus(d.separator);
  d.b = last.complement(g.num_nodes());
  if (d.a.empty() || d.b.empty() || !is_complete(g, d.separator) ||
      !separates(g, d.a, d.b, d.separator)) {
    throw InconsistencyError("clique sequence produced an invalid decomposition");
  }
  res.witness = std::move(d);
  return res;
}

UndirectedGraph induced_subgraph(const UndirectedGraph& g, const VariableSubset& A) {
  A.validate(g.num_nodes());
  std::vector<Edge> e;
  for (std::size_t s = 0; s < A.size(); ++s) {
    for (std::size_t t = s + 1; t < A.size(); ++t) {
      if (g.adjacent(A[s], A[t])) e.emplace_back(s, t);
    }
  }
  return UndirectedGraph(A.size(), e);
}

}  // namespace gcm
