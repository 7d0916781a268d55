#pragma once

// Labelled graphs: finite, connected, simple, undirected; every vertex and
// edge carries one label. Radius-1 neighbourhoods come in two flavours kept
// deliberately distinct: star(g,v) is the rule support (center-incident
// edges only) and ball(g,v,r) is the induced metric ball.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lcsim/value.hpp"

namespace lcsim {

using VertexId = int;

struct EdgeKey {
  VertexId a, b;  // a < b
  EdgeKey(VertexId u, VertexId v) : a(u < v ? u : v), b(u < v ? v : u) {}
  bool operator<(const EdgeKey& o) const { return a != o.a ? a < o.a : b < o.b; }
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

class LabelledGraph {
 public:
  LabelledGraph() = default;

  static LabelledGraph build(const std::vector<std::pair<VertexId, Value>>& vertices,
                             const std::vector<std::tuple<VertexId, VertexId, Value>>& edges,
                             bool require_connected = true) {
    LabelledGraph g;
    for (const auto& [id, label] : vertices) {
      if (g.vlabels_.count(id)) throw Error("duplicate vertex id " + std::to_string(id));
      g.vlabels_.emplace(id, label);
      g.adj_[id];
    }
    for (const auto& [u, v, label] : edges) {
      if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
      if (!g.vlabels_.count(u) || !g.vlabels_.count(v))
        throw Error("edge endpoint is not a vertex");
      EdgeKey k(u, v);
      if (g.elabels_.count(k)) throw Error("multiple edge");
      g.elabels_.emplace(k, label);
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& [id, nb] : g.adj_) std::sort(nb.begin(), nb.end());
    if (g.vlabels_.empty()) throw Error("empty graph");
    if (require_connected && !g.connected()) throw Error("graph is not connected");
    return g;
  }

  std::size_t vertex_count() const { return vlabels_.size(); }
  std::size_t edge_count() const { return elabels_.size(); }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(vlabels_.size());
    for (const auto& [id, _] : vlabels_) out.push_back(id);
    return out;
  }

  const std::map<EdgeKey, Value>& edges() const { return elabels_; }

  bool has_vertex(VertexId v) const { return vlabels_.count(v) != 0; }
  bool has_edge(VertexId u, VertexId v) const { return elabels_.count(EdgeKey(u, v)) != 0; }

  const std::vector<VertexId>& neighbours(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw Error("unknown vertex " + std::to_string(v));
    return it->second;
  }
  std::size_t degree(VertexId v) const { return neighbours(v).size(); }

  const Value& vlabel(VertexId v) const {
    auto it = vlabels_.find(v);
    if (it == vlabels_.end()) throw Error("unknown vertex " + std::to_string(v));
    return it->second;
  }
  const Value& elabel(VertexId u, VertexId v) const {
    auto it = elabels_.find(EdgeKey(u, v));
    if (it == elabels_.end())
      throw Error("unknown edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    return it->second;
  }

  void set_vlabel(VertexId v, const Value& label) {
    auto it = vlabels_.find(v);
    if (it == vlabels_.end()) throw Error("unknown vertex " + std::to_string(v));
    it->second = label;
  }
  void set_elabel(VertexId u, VertexId v, const Value& label) {
    auto it = elabels_.find(EdgeKey(u, v));
    if (it == elabels_.end()) throw Error("unknown edge");
    it->second = label;
  }

  // Applies f to every vertex label.
  LabelledGraph map_vlabels(const std::function<Value(VertexId, const Value&)>& f) const {
    LabelledGraph g = *this;
    for (auto& [id, label] : g.vlabels_) label = f(id, label);
    return g;
  }

  bool connected() const {
    std::set<VertexId> seen;
    std::queue<VertexId> q;
    q.push(vlabels_.begin()->first);
    seen.insert(vlabels_.begin()->first);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId w : neighbours(v))
        if (seen.insert(w).second) q.push(w);
    }
    return seen.size() == vlabels_.size();
  }

  std::map<VertexId, int> distances_from(VertexId v) const {
    if (!has_vertex(v)) throw Error("unknown vertex " + std::to_string(v));
    std::map<VertexId, int> dist;
    dist[v] = 0;
    std::queue<VertexId> q;
    q.push(v);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : neighbours(u))
        if (!dist.count(w)) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
    return dist;
  }

  int distance(VertexId u, VertexId v) const {
    auto d = distances_from(u);
    auto it = d.find(v);
    if (it == d.end()) throw Error("vertices are not connected");
    return it->second;
  }

  bool operator==(const LabelledGraph& o) const {
    return vlabels_ == o.vlabels_ && elabels_ == o.elabels_;
  }
  bool operator!=(const LabelledGraph& o) const { return !(*this == o); }

  // Canonical text rendering; equal graphs render identically.
  std::string canonical_text() const {
    std::string out;
    for (const auto& [id, label] : vlabels_) {
      out += "v " + std::to_string(id) + " " + label.to_text() + "\n";
    }
    for (const auto& [k, label] : elabels_) {
      out += "e " + std::to_string(k.a) + " " + std::to_string(k.b) + " " + label.to_text() + "\n";
    }
    return out;
  }

  std::uint64_t content_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_text()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::map<VertexId, Value> vlabels_;
  std::map<EdgeKey, Value> elabels_;
  std::map<VertexId, std::vector<VertexId>> adj_;
};

// Rule support: center, its neighbours, and the center-incident edges only.
struct Star {
  VertexId center = 0;
  Value center_label;
  std::vector<VertexId> leaves;    // ascending
  std::vector<Value> leaf_labels;  // parallel to leaves
  std::vector<Value> edge_labels;  // parallel to leaves

  std::size_t leaf_index(VertexId v) const {
    auto it = std::lower_bound(leaves.begin(), leaves.end(), v);
    if (it == leaves.end() || *it != v) throw Error("vertex is not a leaf of the star");
    return static_cast<std::size_t>(it - leaves.begin());
  }

  // The star as a labelled graph (leaf-leaf edges dropped by construction).
  LabelledGraph to_graph() const {
    std::vector<std::pair<VertexId, Value>> vs{{center, center_label}};
    std::vector<std::tuple<VertexId, VertexId, Value>> es;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      vs.emplace_back(leaves[i], leaf_labels[i]);
      es.emplace_back(center, leaves[i], edge_labels[i]);
    }
    return LabelledGraph::build(vs, es);
  }
};

inline Star star(const LabelledGraph& g, VertexId v) {
  Star s;
  s.center = v;
  s.center_label = g.vlabel(v);
  s.leaves = g.neighbours(v);
  s.leaf_labels.reserve(s.leaves.size());
  s.edge_labels.reserve(s.leaves.size());
  for (VertexId w : s.leaves) {
    s.leaf_labels.push_back(g.vlabel(w));
    s.edge_labels.push_back(g.elabel(v, w));
  }
  return s;
}

// Induced subgraph on vertices at distance <= r from v.
inline LabelledGraph ball(const LabelledGraph& g, VertexId v, int r) {
  if (r < 0) throw Error("negative radius");
  auto dist = g.distances_from(v);
  std::vector<std::pair<VertexId, Value>> vs;
  for (const auto& [u, d] : dist)
    if (d <= r) vs.emplace_back(u, g.vlabel(u));
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (const auto& [k, label] : g.edges())
    if (dist.at(k.a) <= r && dist.at(k.b) <= r) es.emplace_back(k.a, k.b, label);
  return LabelledGraph::build(vs, es);
}

inline std::vector<VertexId> ball_vertices(const LabelledGraph& g, VertexId v, int r) {
  auto dist = g.distances_from(v);
  std::vector<VertexId> out;
  for (const auto& [u, d] : dist)
    if (d <= r) out.push_back(u);
  return out;
}

inline int diameter(const LabelledGraph& g) {
  int best = 0;
  for (VertexId v : g.vertices()) {
    auto dist = g.distances_from(v);
    if (dist.size() != g.vertex_count()) throw Error("graph is not connected");
    for (const auto& [_, d] : dist) best = std::max(best, d);
  }
  return best;
}

struct QuotientResult {
  LabelledGraph graph;
  std::map<VertexId, VertexId> projection;  // g vertex -> quotient vertex
  std::map<VertexId, Value> class_value;    // quotient vertex -> labelling value
  bool self_loop = false;                   // some edge joins equal-valued vertices
  bool label_conflict = false;              // merged vertices/edges disagreed on labels
};

// Quotient by a vertex labelling: one quotient vertex per distinct value,
// an edge between two values iff some g-edge joins their preimages.
inline QuotientResult quotient(const LabelledGraph& g, const std::map<VertexId, Value>& ell) {
  QuotientResult res;
  std::map<Value, VertexId> class_id;
  std::map<VertexId, Value> q_vlabel;
  for (VertexId v : g.vertices()) {
    auto it = ell.find(v);
    if (it == ell.end()) throw Error("labelling is not total");
    auto [cit, fresh] = class_id.emplace(it->second, static_cast<VertexId>(class_id.size()));
    VertexId c = cit->second;
    res.projection[v] = c;
    if (fresh) {
      q_vlabel[c] = g.vlabel(v);
      res.class_value[c] = it->second;
    } else if (q_vlabel.at(c) != g.vlabel(v)) {
      res.label_conflict = true;
    }
  }
  std::map<EdgeKey, Value> q_elabel;
  for (const auto& [k, label] : g.edges()) {
    VertexId ca = res.projection.at(k.a), cb = res.projection.at(k.b);
    if (ca == cb) {
      res.self_loop = true;
      continue;
    }
    auto [eit, fresh] = q_elabel.emplace(EdgeKey(ca, cb), label);
    if (!fresh && eit->second != label) res.label_conflict = true;
  }
  std::vector<std::pair<VertexId, Value>> vs(q_vlabel.begin(), q_vlabel.end());
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (const auto& [k, label] : q_elabel) es.emplace_back(k.a, k.b, label);
  res.graph = LabelledGraph::build(vs, es, /*require_connected=*/false);
  return res;
}

namespace detail {

// Star isomorphism respecting a per-vertex key on top of the graph's own
// vertex and edge labels: center maps to center, leaf multisets of
// (key, vlabel, elabel) must match.
inline bool stars_isomorphic(const LabelledGraph& g, VertexId a, VertexId b,
                             const std::map<VertexId, Value>& key) {
  if (key.at(a) != key.at(b)) return false;
  if (g.vlabel(a) != g.vlabel(b)) return false;
  if (g.degree(a) != g.degree(b)) return false;
  auto profile = [&](VertexId v) {
    std::vector<Value> prof;
    for (VertexId w : g.neighbours(v))
      prof.push_back(v_tup({key.at(w), g.vlabel(w), g.elabel(v, w)}));
    std::sort(prof.begin(), prof.end());
    return prof;
  };
  return profile(a) == profile(b);
}

}  // namespace detail

// Locally bijective labelling: (1) injective on every radius-1 ball, and
// (2) equal-valued vertices have isomorphic labelled stars.
inline bool is_locally_bijective(const LabelledGraph& g, const std::map<VertexId, Value>& ell) {
  for (VertexId v : g.vertices()) {
    std::set<Value> seen;
    if (!ell.count(v)) throw Error("labelling is not total");
    seen.insert(ell.at(v));
    for (VertexId w : g.neighbours(v))
      if (!seen.insert(ell.at(w)).second) return false;
  }
  auto verts = g.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (ell.at(verts[i]) == ell.at(verts[j]) &&
          !detail::stars_isomorphic(g, verts[i], verts[j], ell))
        return false;
  return true;
}

// Brute-force labelled-graph isomorphism with degree/label pruning.
inline std::optional<std::map<VertexId, VertexId>> find_isomorphism(const LabelledGraph& g,
                                                                    const LabelledGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  auto gs = g.vertices();
  auto hs = h.vertices();

  auto sig = [](const LabelledGraph& x, VertexId v) {
    return v_tup({v_num(static_cast<long long>(x.degree(v))), x.vlabel(v)});
  };
  std::multiset<Value> gsig, hsig;
  for (VertexId v : gs) gsig.insert(sig(g, v));
  for (VertexId v : hs) hsig.insert(sig(h, v));
  if (gsig != hsig) return std::nullopt;

  // BFS order keeps partial maps tightly constrained.
  std::vector<VertexId> order;
  {
    std::set<VertexId> seen;
    std::queue<VertexId> q;
    q.push(gs.front());
    seen.insert(gs.front());
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      order.push_back(v);
      for (VertexId w : g.neighbours(v))
        if (seen.insert(w).second) q.push(w);
    }
  }

  std::map<VertexId, VertexId> fwd;
  std::set<VertexId> used;
  std::function<bool(std::size_t)> go = [&](std::size_t idx) -> bool {
    if (idx == order.size()) return true;
    VertexId v = order[idx];
    for (VertexId c : hs) {
      if (used.count(c)) continue;
      if (g.vlabel(v) != h.vlabel(c) || g.degree(v) != h.degree(c)) continue;
      bool ok = true;
      for (VertexId w : g.neighbours(v)) {
        auto it = fwd.find(w);
        if (it == fwd.end()) continue;
        if (!h.has_edge(c, it->second) || g.elabel(v, w) != h.elabel(c, it->second)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      fwd[v] = c;
      used.insert(c);
      if (go(idx + 1)) return true;
      fwd.erase(v);
      used.erase(c);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return fwd;
}

inline bool isomorphic(const LabelledGraph& g, const LabelledGraph& h) {
  return find_isomorphism(g, h).has_value();
}

}  // namespace lcsim
