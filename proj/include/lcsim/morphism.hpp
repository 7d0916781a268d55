#pragma once

// Vertex maps between labelled graphs and the covering check: a covering is
// a surjective label-preserving homomorphism whose restriction to every
// star is a bijection onto the image star.

#include <map>
#include <optional>
#include <set>
#include <string>

#include "lcsim/graph.hpp"

namespace lcsim {

struct Morphism {
  LabelledGraph source;
  LabelledGraph target;
  std::map<VertexId, VertexId> map;  // may be partial

  bool defined_at(VertexId v) const { return map.count(v) != 0; }
  VertexId operator()(VertexId v) const {
    auto it = map.find(v);
    if (it == map.end()) throw Error("morphism undefined at vertex " + std::to_string(v));
    return it->second;
  }

  std::map<VertexId, std::vector<VertexId>> fibers() const {
    std::map<VertexId, std::vector<VertexId>> f;
    for (const auto& [u, v] : map) f[v].push_back(u);
    return f;
  }
};

struct CoveringVerdict {
  bool is_covering = false;
  int sheets = 0;
  std::optional<VertexId> witness;  // a failing source vertex, when false
  std::string reason;
};

inline CoveringVerdict is_covering(const Morphism& gamma) {
  CoveringVerdict verdict;
  const auto& g = gamma.source;
  const auto& h = gamma.target;

  for (VertexId v : g.vertices()) {
    if (!gamma.defined_at(v)) {
      verdict.witness = v;
      verdict.reason = "map undefined at vertex";
      return verdict;
    }
    VertexId c = gamma(v);
    if (!h.has_vertex(c)) {
      verdict.witness = v;
      verdict.reason = "image is not a target vertex";
      return verdict;
    }
    if (g.vlabel(v) != h.vlabel(c)) {
      verdict.witness = v;
      verdict.reason = "vertex label not preserved";
      return verdict;
    }
  }
  for (const auto& [k, label] : g.edges()) {
    VertexId ca = gamma(k.a), cb = gamma(k.b);
    if (ca == cb || !h.has_edge(ca, cb)) {
      verdict.witness = k.a;
      verdict.reason = "edge image is not a target edge";
      return verdict;
    }
    if (label != h.elabel(ca, cb)) {
      verdict.witness = k.a;
      verdict.reason = "edge label not preserved";
      return verdict;
    }
  }

  std::set<VertexId> image;
  for (const auto& [_, v] : gamma.map) image.insert(v);
  if (image.size() != h.vertex_count()) {
    verdict.reason = "map is not surjective";
    return verdict;
  }

  for (VertexId v : g.vertices()) {
    VertexId c = gamma(v);
    std::set<VertexId> nb_images;
    for (VertexId w : g.neighbours(v)) nb_images.insert(gamma(w));
    const auto& target_nb = h.neighbours(c);
    if (nb_images.size() != g.degree(v) ||
        nb_images != std::set<VertexId>(target_nb.begin(), target_nb.end())) {
      verdict.witness = v;
      verdict.reason = "star restriction is not a bijection";
      return verdict;
    }
  }

  // Fiber cardinality is constant on connected targets.
  auto fibers = gamma.fibers();
  std::size_t q = fibers.begin()->second.size();
  for (const auto& [v, f] : fibers) {
    if (f.size() != q) {
      verdict.reason = "fibers have unequal cardinality";
      return verdict;
    }
  }
  if (q * h.vertex_count() != g.vertex_count()) {
    verdict.reason = "sheet arithmetic mismatch";
    return verdict;
  }

  verdict.is_covering = true;
  verdict.sheets = static_cast<int>(q);
  return verdict;
}

// The mod-n projection of Example-style ring coverings: i -> i mod n.
inline Morphism ring_mod_morphism(const LabelledGraph& source, const LabelledGraph& target) {
  Morphism m{source, target, {}};
  int n = static_cast<int>(target.vertex_count());
  for (VertexId v : source.vertices()) m.map[v] = v % n;
  return m;
}

}  // namespace lcsim
