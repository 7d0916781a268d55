#pragma once

// Construction and search machinery around coverings and quasi-coverings:
// proper-quotient search (covering minimality), the spanning-tree-plus-
// permutations construction of all coverings of a base graph, universal
// cover truncations, and the radius-r quasi-covering verdicts used both as
// test oracles and inside the family-membership semi-algorithm.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lcsim/morphism.hpp"

namespace lcsim {

constexpr int kQuotientSearchBound = 12;

namespace detail {

// Enumerates set partitions of the vertices in restricted-growth order,
// pruning classes that could never be covering fibers: classes must be
// independent, label-uniform, and no vertex may have two neighbours in one
// class. Full covering validity is confirmed afterwards.
inline void enumerate_fiber_partitions(const LabelledGraph& g,
                                       const std::function<void(const std::map<VertexId, int>&)>& emit) {
  auto verts = g.vertices();
  std::map<VertexId, int> cls;
  std::vector<std::vector<VertexId>> classes;

  std::function<void(std::size_t)> go = [&](std::size_t idx) {
    if (idx == verts.size()) {
      emit(cls);
      return;
    }
    VertexId v = verts[idx];
    for (std::size_t c = 0; c <= classes.size(); ++c) {
      bool fresh = c == classes.size();
      if (!fresh) {
        const auto& members = classes[c];
        if (g.vlabel(members.front()) != g.vlabel(v)) continue;
        if (g.degree(members.front()) != g.degree(v)) continue;
        bool ok = true;
        // Independence inside the class.
        for (VertexId m : members)
          if (g.has_edge(m, v)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        // At most one neighbour per class, with matching edge labels.
        std::map<int, std::pair<int, Value>> nb_class_count;
        for (VertexId w : g.neighbours(v)) {
          auto it = cls.find(w);
          if (it == cls.end()) continue;
          auto [cit, freshnb] =
              nb_class_count.emplace(it->second, std::make_pair(1, g.elabel(v, w)));
          if (!freshnb) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        // Edge labels between this class and each neighbour class must agree
        // with the edges already placed by other members.
        for (VertexId m : members) {
          for (VertexId w : g.neighbours(m)) {
            auto it = cls.find(w);
            if (it == cls.end()) continue;
            auto nit = nb_class_count.find(it->second);
            if (nit != nb_class_count.end() && nit->second.second != g.elabel(m, w)) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) continue;
      } else {
        // New-class check: v must not have two already-assigned neighbours
        // in any single class (same constraint seen from v's side).
        std::set<int> seen;
        bool ok = true;
        for (VertexId w : g.neighbours(v)) {
          auto it = cls.find(w);
          if (it == cls.end()) continue;
          if (!seen.insert(it->second).second) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      if (fresh) classes.emplace_back();
      classes[c].push_back(v);
      cls[v] = static_cast<int>(c);
      go(idx + 1);
      cls.erase(v);
      classes[c].pop_back();
      if (fresh) classes.pop_back();
    }
  };
  go(0);
}

}  // namespace detail

// All proper quotient targets of g up to isomorphism, each with its
// projection. Empty iff g is covering-minimal.
inline std::vector<std::pair<LabelledGraph, Morphism>> find_proper_quotients(
    const LabelledGraph& g) {
  if (g.vertex_count() > kQuotientSearchBound)
    throw Error("quotient search bound exceeded (|V| <= 12)");
  std::vector<std::pair<LabelledGraph, Morphism>> out;
  detail::enumerate_fiber_partitions(g, [&](const std::map<VertexId, int>& cls) {
    int nclasses = 0;
    for (const auto& [_, c] : cls) nclasses = std::max(nclasses, c + 1);
    if (static_cast<std::size_t>(nclasses) == g.vertex_count()) return;  // trivial
    std::map<VertexId, Value> ell;
    for (const auto& [v, c] : cls) ell[v] = v_num(c);
    QuotientResult q = quotient(g, ell);
    if (q.self_loop || q.label_conflict) return;
    Morphism proj{g, q.graph, q.projection};
    if (!is_covering(proj).is_covering) return;
    for (const auto& [h, _] : out)
      if (isomorphic(h, q.graph)) return;
    out.emplace_back(q.graph, proj);
  });
  return out;
}

inline bool covering_minimal(const LabelledGraph& g) {
  return find_proper_quotients(g).empty();
}

// Reidemeister-style construction of a q-sheeted covering from a spanning
// tree and one permutation of [1,q] per cotree edge. Permutations are given
// for the ordered pair (x,y) with x < y; the reverse direction uses the
// inverse. perm[i] is the image of i+1, 1-based.
inline std::pair<LabelledGraph, Morphism> reidemeister_build(
    const LabelledGraph& h, const std::set<EdgeKey>& tree_edges, int q,
    const std::map<EdgeKey, std::vector<int>>& sigma) {
  if (q < 1) throw Error("sheet count must be positive");
  // Validate the spanning tree.
  for (const auto& e : tree_edges)
    if (!h.has_edge(e.a, e.b)) throw Error("tree edge is not a graph edge");
  if (tree_edges.size() != h.vertex_count() - 1)
    throw Error("edge set is not a spanning tree");
  {
    std::map<VertexId, std::vector<VertexId>> tadj;
    for (const auto& e : tree_edges) {
      tadj[e.a].push_back(e.b);
      tadj[e.b].push_back(e.a);
    }
    std::set<VertexId> seen{h.vertices().front()};
    std::vector<VertexId> stack{h.vertices().front()};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : tadj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != h.vertex_count()) throw Error("edge set is not a spanning tree");
  }

  std::vector<VertexId> hv = h.vertices();
  std::map<VertexId, int> hidx;
  for (std::size_t i = 0; i < hv.size(); ++i) hidx[hv[i]] = static_cast<int>(i);
  auto lifted_id = [&](VertexId x, int sheet) {
    return static_cast<VertexId>(hidx.at(x) * q + (sheet - 1));
  };

  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  Morphism proj;
  for (VertexId x : hv)
    for (int i = 1; i <= q; ++i) {
      vs.emplace_back(lifted_id(x, i), h.vlabel(x));
      proj.map[lifted_id(x, i)] = x;
    }
  for (const auto& [k, label] : h.edges()) {
    if (tree_edges.count(k)) {
      for (int i = 1; i <= q; ++i) es.emplace_back(lifted_id(k.a, i), lifted_id(k.b, i), label);
    } else {
      auto it = sigma.find(k);
      if (it == sigma.end()) throw Error("missing permutation for cotree edge");
      const auto& perm = it->second;
      if (perm.size() != static_cast<std::size_t>(q))
        throw Error("permutation arity mismatch");
      std::set<int> check(perm.begin(), perm.end());
      if (check.size() != perm.size() || *check.begin() < 1 || *check.rbegin() > q)
        throw Error("not a permutation of [1,q]");
      for (int i = 1; i <= q; ++i)
        es.emplace_back(lifted_id(k.a, i), lifted_id(k.b, perm[i - 1]), label);
    }
  }
  LabelledGraph g = LabelledGraph::build(vs, es, /*require_connected=*/false);
  if (!g.connected()) throw Error("construction yields a disconnected graph");
  proj.source = g;
  proj.target = h;
  return {std::move(g), std::move(proj)};
}

struct QuasiCoveringSpec {
  LabelledGraph source;
  VertexId center = 0;
  int radius = 0;
  Morphism map;  // partial; source/target graphs live in map.source/map.target
};

// Radius-r truncation of the universal covering: the tree of non-stuttering
// walks from v of length <= r, projected onto walk endpoints.
inline QuasiCoveringSpec universal_cover_ball(const LabelledGraph& g, VertexId v, int r) {
  if (r < 0) throw Error("negative radius");
  if (!g.has_vertex(v)) throw Error("unknown vertex " + std::to_string(v));
  struct WalkNode {
    VertexId endpoint;
    VertexId previous;  // -1 for the root
    int parent;         // index of the parent walk, -1 for the root
    int depth;
  };
  std::vector<WalkNode> walks{{v, -1, -1, 0}};
  std::vector<std::pair<VertexId, Value>> vs{{0, g.vlabel(v)}};
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  Morphism proj;
  proj.map[0] = v;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (walks[i].depth == r) continue;
    for (VertexId w : g.neighbours(walks[i].endpoint)) {
      if (w == walks[i].previous) continue;  // non-stuttering
      int id = static_cast<int>(walks.size());
      walks.push_back({w, walks[i].endpoint, static_cast<int>(i), walks[i].depth + 1});
      vs.emplace_back(id, g.vlabel(w));
      es.emplace_back(static_cast<VertexId>(i), id, g.elabel(walks[i].endpoint, w));
      proj.map[id] = w;
    }
  }
  QuasiCoveringSpec spec;
  spec.source = LabelledGraph::build(vs, es);
  spec.center = 0;
  spec.radius = r;
  proj.source = spec.source;
  proj.target = g;
  spec.map = std::move(proj);
  return spec;
}

// Operational quasi-covering check: the map must be defined on the whole
// radius-r ball, preserve labels and ball-internal edges, and restrict to a
// star bijection at every vertex of distance <= r-1 from the center.
inline bool is_quasi_covering(const QuasiCoveringSpec& spec, const LabelledGraph& target) {
  const auto& g = spec.source;
  const auto& gamma = spec.map;
  auto dist = g.distances_from(spec.center);
  for (const auto& [u, d] : dist) {
    if (d > spec.radius) continue;
    if (!gamma.defined_at(u)) throw Error("map undefined inside the ball");
    VertexId c = gamma(u);
    if (!target.has_vertex(c)) return false;
    if (g.vlabel(u) != target.vlabel(c)) return false;
  }
  for (const auto& [k, label] : g.edges()) {
    if (dist.at(k.a) > spec.radius || dist.at(k.b) > spec.radius) continue;
    VertexId ca = gamma(k.a), cb = gamma(k.b);
    if (ca == cb || !target.has_edge(ca, cb)) return false;
    if (label != target.elabel(ca, cb)) return false;
  }
  for (const auto& [u, d] : dist) {
    if (d > spec.radius - 1) continue;
    std::set<VertexId> nb_images;
    for (VertexId w : g.neighbours(u)) nb_images.insert(gamma(w));
    const auto& tn = target.neighbours(gamma(u));
    if (nb_images.size() != g.degree(u) ||
        nb_images != std::set<VertexId>(tn.begin(), tn.end()))
      return false;
  }
  return true;
}

inline bool is_strict_quasi_covering(const QuasiCoveringSpec& spec) {
  auto dist = spec.source.distances_from(spec.center);
  for (const auto& [_, d] : dist)
    if (d > spec.radius - 1) return true;
  return false;
}

// Number of sheets: the minimum over target vertices of the count of
// preimages whose whole star lies inside the radius-r ball.
inline int quasi_sheets(const QuasiCoveringSpec& spec, const LabelledGraph& target) {
  if (!is_quasi_covering(spec, target)) throw Error("not a quasi-covering");
  auto dist = spec.source.distances_from(spec.center);
  std::map<VertexId, int> interior_preimages;
  for (VertexId v : target.vertices()) interior_preimages[v] = 0;
  for (const auto& [u, d] : dist) {
    if (d > spec.radius) continue;
    bool interior = true;
    if (spec.source.degree(u) != target.degree(spec.map(u))) interior = false;
    for (VertexId w : spec.source.neighbours(u))
      if (dist.at(w) > spec.radius) interior = false;
    if (interior) interior_preimages[spec.map(u)]++;
  }
  int q = -1;
  for (const auto& [_, c] : interior_preimages) q = q < 0 ? c : std::min(q, c);
  return q < 0 ? 0 : q;
}

// Searches for a quasi-covering of `target` of radius r by `k`, centered
// over target vertex u (the center's image must be u). Backtracking over
// the ball in BFS order.
inline std::optional<QuasiCoveringSpec> find_quasi_covering(const LabelledGraph& k,
                                                            const LabelledGraph& target,
                                                            VertexId u, int r) {
  for (VertexId z : k.vertices()) {
    if (k.vlabel(z) != target.vlabel(u)) continue;
    auto dist = k.distances_from(z);
    std::vector<VertexId> order;
    for (const auto& [w, d] : dist)
      if (d <= r) order.push_back(w);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return dist.at(a) != dist.at(b) ? dist.at(a) < dist.at(b) : a < b;
    });
    std::map<VertexId, VertexId> gamma;
    std::function<bool(std::size_t)> go = [&](std::size_t idx) -> bool {
      if (idx == order.size()) return true;
      VertexId w = order[idx];
      std::vector<VertexId> candidates;
      if (w == z) {
        candidates.push_back(u);
      } else {
        // Any target vertex adjacent to an assigned neighbour's image works
        // as a candidate; labels filter the rest.
        std::set<VertexId> cand;
        bool have = false;
        for (VertexId nb : k.neighbours(w)) {
          auto it = gamma.find(nb);
          if (it == gamma.end()) continue;
          std::set<VertexId> next;
          for (VertexId t : target.neighbours(it->second))
            if (!have || cand.count(t)) next.insert(t);
          cand = std::move(next);
          have = true;
        }
        if (!have) return false;  // ball is connected, cannot happen
        candidates.assign(cand.begin(), cand.end());
      }
      for (VertexId c : candidates) {
        if (k.vlabel(w) != target.vlabel(c)) continue;
        bool ok = true;
        for (VertexId nb : k.neighbours(w)) {
          auto it = gamma.find(nb);
          if (it == gamma.end()) continue;
          if (!target.has_edge(c, it->second) && c != it->second) {
            ok = false;
            break;
          }
          if (c == it->second || k.elabel(w, nb) != target.elabel(c, it->second)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        gamma[w] = c;
        // Star-bijectivity cut for interiors whose star just completed.
        bool feasible = true;
        std::vector<VertexId> to_check = k.neighbours(w);
        to_check.push_back(w);
        for (VertexId done : to_check) {
          if (dist.at(done) > r - 1) continue;
          if (!gamma.count(done)) continue;
          bool complete = true;
          std::set<VertexId> imgs;
          for (VertexId x : k.neighbours(done)) {
            auto it = gamma.find(x);
            if (it == gamma.end()) {
              complete = false;
              break;
            }
            imgs.insert(it->second);
          }
          if (!complete) continue;
          const auto& tn = target.neighbours(gamma.at(done));
          if (imgs.size() != k.degree(done) ||
              imgs != std::set<VertexId>(tn.begin(), tn.end())) {
            feasible = false;
            break;
          }
        }
        if (feasible && go(idx + 1)) return true;
        gamma.erase(w);
      }
      return false;
    };
    if (go(0)) {
      QuasiCoveringSpec spec;
      spec.source = k;
      spec.center = z;
      spec.radius = r;
      spec.map = Morphism{k, target, gamma};
      if (is_quasi_covering(spec, target)) return spec;
    }
  }
  return std::nullopt;
}

}  // namespace lcsim
