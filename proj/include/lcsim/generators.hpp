#pragma once

// Built-in graph constructions addressable by name, so tests and the CLI
// need no external files: rings, paths, stars, complete graphs, the cube,
// trees by Pruefer index, and seeded random graphs.

#include <cstdint>
#include <random>
#include <string>

#include "lcsim/graph.hpp"

namespace lcsim {

inline Value default_vlabel() { return v_num(0); }
inline Value default_elabel() { return v_sym("e"); }

inline LabelledGraph ring(int n, const Value& vl = default_vlabel(),
                          const Value& el = default_elabel()) {
  if (n < 3) throw Error("ring needs at least 3 vertices");
  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (int i = 0; i < n; ++i) vs.emplace_back(i, vl);
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n, el);
  return LabelledGraph::build(vs, es);
}

inline LabelledGraph path(int n, const Value& vl = default_vlabel(),
                          const Value& el = default_elabel()) {
  if (n < 1) throw Error("path needs at least 1 vertex");
  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (int i = 0; i < n; ++i) vs.emplace_back(i, vl);
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1, el);
  return LabelledGraph::build(vs, es);
}

inline LabelledGraph complete(int n, const Value& vl = default_vlabel(),
                              const Value& el = default_elabel()) {
  if (n < 1) throw Error("complete graph needs at least 1 vertex");
  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (int i = 0; i < n; ++i) vs.emplace_back(i, vl);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j, el);
  return LabelledGraph::build(vs, es);
}

// Star K_{1,n}: center 0, leaves 1..n.
inline LabelledGraph star_graph(int n, const Value& vl = default_vlabel(),
                                const Value& el = default_elabel()) {
  if (n < 1) throw Error("star needs at least 1 leaf");
  std::vector<std::pair<VertexId, Value>> vs{{0, vl}};
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (int i = 1; i <= n; ++i) {
    vs.emplace_back(i, vl);
    es.emplace_back(0, i, el);
  }
  return LabelledGraph::build(vs, es);
}

inline LabelledGraph cube(const Value& vl = default_vlabel(),
                          const Value& el = default_elabel()) {
  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (int i = 0; i < 8; ++i) vs.emplace_back(i, vl);
  for (int i = 0; i < 8; ++i)
    for (int b = 0; b < 3; ++b)
      if (i < (i ^ (1 << b))) es.emplace_back(i, i ^ (1 << b), el);
  return LabelledGraph::build(vs, es);
}

// Tree on n vertices decoded from a Pruefer sequence index in [0, n^(n-2)).
inline LabelledGraph tree_by_pruefer(int n, std::uint64_t index,
                                     const Value& vl = default_vlabel(),
                                     const Value& el = default_elabel()) {
  if (n < 1) throw Error("tree needs at least 1 vertex");
  std::vector<std::pair<VertexId, Value>> vs;
  for (int i = 0; i < n; ++i) vs.emplace_back(i, vl);
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  if (n == 1) return LabelledGraph::build(vs, es);
  if (n == 2) {
    es.emplace_back(0, 1, el);
    return LabelledGraph::build(vs, es);
  }
  std::vector<int> seq(n - 2);
  for (int i = 0; i < n - 2; ++i) {
    seq[i] = static_cast<int>(index % n);
    index /= n;
  }
  std::vector<int> deg(n, 1);
  for (int s : seq) deg[s]++;
  std::set<int> leaves;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 1) leaves.insert(i);
  for (int s : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    es.emplace_back(leaf, s, el);
    if (--deg[s] == 1) leaves.insert(s);
  }
  int u = *leaves.begin(), v = *std::next(leaves.begin());
  es.emplace_back(u, v, el);
  return LabelledGraph::build(vs, es);
}

inline LabelledGraph random_tree(int n, std::uint64_t seed,
                                 const Value& vl = default_vlabel(),
                                 const Value& el = default_elabel()) {
  std::mt19937_64 rng(seed);
  std::uint64_t span = 1;
  for (int i = 0; i < n - 2; ++i) span *= static_cast<std::uint64_t>(n);
  return tree_by_pruefer(n, n <= 2 ? 0 : rng() % span, vl, el);
}

// Seeded random connected graph: a random tree plus extra edges.
inline LabelledGraph random_connected_graph(int n, std::uint64_t seed, int extra_edges,
                                            const Value& vl = default_vlabel(),
                                            const Value& el = default_elabel()) {
  std::mt19937_64 rng(seed);
  LabelledGraph t = random_tree(n, rng(), vl, el);
  std::vector<std::pair<VertexId, Value>> vs;
  for (VertexId v : t.vertices()) vs.emplace_back(v, vl);
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (const auto& [k, label] : t.edges()) es.emplace_back(k.a, k.b, label);
  std::set<EdgeKey> present;
  for (const auto& [k, _] : t.edges()) present.insert(k);
  int added = 0, attempts = 0;
  while (added < extra_edges && attempts < 200) {
    ++attempts;
    VertexId u = static_cast<VertexId>(rng() % n);
    VertexId v = static_cast<VertexId>(rng() % n);
    if (u == v) continue;
    EdgeKey k(u, v);
    if (present.count(k)) continue;
    present.insert(k);
    es.emplace_back(k.a, k.b, el);
    ++added;
  }
  return LabelledGraph::build(vs, es);
}

// Resolves names like r6, p5, k4, s3, cube, tree8-13.
inline LabelledGraph graph_by_name(const std::string& name) {
  auto num_after = [&](std::size_t at) { return std::stoi(name.substr(at)); };
  if (name == "cube") return cube();
  if (name.size() >= 2 && (name[0] == 'r' || name[0] == 'p' || name[0] == 'k' || name[0] == 's') &&
      std::isdigit(static_cast<unsigned char>(name[1]))) {
    int n = num_after(1);
    switch (name[0]) {
      case 'r': return ring(n);
      case 'p': return path(n);
      case 'k': return complete(n);
      case 's': return star_graph(n);
    }
  }
  if (name.rfind("tree", 0) == 0) {
    auto dash = name.find('-');
    if (dash == std::string::npos) throw Error("tree name wants treeN-INDEX");
    int n = std::stoi(name.substr(4, dash - 4));
    std::uint64_t idx = std::stoull(name.substr(dash + 1));
    return tree_by_pruefer(n, idx);
  }
  throw Error("unknown graph name: " + name);
}

}  // namespace lcsim
