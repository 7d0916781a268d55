#pragma once

// Recursive graph families: a membership predicate, a finite enumeration in
// fixed (diameter, size, canonical form) order, and the radius bound used
// by the termination-detection constructions. For an explicitly finite
// family the bound defaults to twice the largest member size; families with
// at most k distinguished vertices use (k+1)|V|.

#include <functional>
#include <string>
#include <vector>

#include "lcsim/generators.hpp"
#include "lcsim/graph.hpp"

namespace lcsim {

struct FamilySpec {
  std::string name;
  std::function<bool(const LabelledGraph&)> member;
  std::function<std::vector<LabelledGraph>()> enumerate;  // fixed order
  std::function<long long(const LabelledGraph&)> radius_bound;
};

namespace detail {

inline std::vector<LabelledGraph> sort_family(std::vector<LabelledGraph> gs) {
  std::sort(gs.begin(), gs.end(), [](const LabelledGraph& a, const LabelledGraph& b) {
    int da = diameter(a), db = diameter(b);
    if (da != db) return da < db;
    if (a.vertex_count() != b.vertex_count()) return a.vertex_count() < b.vertex_count();
    return a.canonical_text() < b.canonical_text();
  });
  return gs;
}

inline long long finite_family_radius(const std::vector<LabelledGraph>& gs) {
  std::size_t biggest = 0;
  for (const auto& g : gs) biggest = std::max(biggest, g.vertex_count());
  return 2 * static_cast<long long>(biggest);
}

inline bool is_ring_graph(const LabelledGraph& g) {
  if (g.vertex_count() < 3 || g.edge_count() != g.vertex_count()) return false;
  for (VertexId v : g.vertices())
    if (g.degree(v) != 2) return false;
  return g.connected();
}

inline bool is_tree_graph(const LabelledGraph& g) {
  return g.connected() && g.edge_count() == g.vertex_count() - 1;
}

inline bool is_complete_graph(const LabelledGraph& g) {
  std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

inline bool unlabelled_like(const LabelledGraph& g) {
  for (VertexId v : g.vertices())
    if (g.vlabel(v) != default_vlabel()) return false;
  for (const auto& [_, l] : g.edges())
    if (l != default_elabel()) return false;
  return true;
}

}  // namespace detail

inline FamilySpec rings_family(int max_size) {
  FamilySpec f;
  f.name = "rings-" + std::to_string(max_size);
  f.member = [max_size](const LabelledGraph& g) {
    return detail::is_ring_graph(g) && detail::unlabelled_like(g) &&
           g.vertex_count() <= static_cast<std::size_t>(max_size);
  };
  f.enumerate = [max_size]() {
    std::vector<LabelledGraph> out;
    for (int n = 3; n <= max_size; ++n) out.push_back(ring(n));
    return detail::sort_family(std::move(out));
  };
  long long r = 2 * static_cast<long long>(max_size);
  f.radius_bound = [r](const LabelledGraph&) { return r; };
  return f;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FamilySpec prime_rings_family(int max_size) {
  FamilySpec f;
  f.name = "prime-rings-" + std::to_string(max_size);
  f.member = [max_size](const LabelledGraph& g) {
    return detail::is_ring_graph(g) && detail::unlabelled_like(g) &&
           g.vertex_count() <= static_cast<std::size_t>(max_size) &&
           is_prime(static_cast<int>(g.vertex_count()));
  };
  f.enumerate = [max_size]() {
    std::vector<LabelledGraph> out;
    for (int n = 3; n <= max_size; ++n)
      if (is_prime(n)) out.push_back(ring(n));
    return detail::sort_family(std::move(out));
  };
  long long r = 2 * static_cast<long long>(max_size);
  f.radius_bound = [r](const LabelledGraph&) { return r; };
  return f;
}

// All trees on at most max_size vertices, one per isomorphism class.
inline FamilySpec trees_family(int max_size) {
  FamilySpec f;
  f.name = "trees-" + std::to_string(max_size);
  f.member = [max_size](const LabelledGraph& g) {
    return detail::is_tree_graph(g) && detail::unlabelled_like(g) &&
           g.vertex_count() <= static_cast<std::size_t>(max_size);
  };
  f.enumerate = [max_size]() {
    std::vector<LabelledGraph> out;
    for (int n = 1; n <= max_size; ++n) {
      std::uint64_t span = 1;
      for (int i = 0; i < n - 2; ++i) span *= static_cast<std::uint64_t>(n);
      std::vector<LabelledGraph> classes;
      for (std::uint64_t idx = 0; idx < span; ++idx) {
        LabelledGraph t = tree_by_pruefer(n, idx);
        bool fresh = true;
        for (const auto& c : classes)
          if (isomorphic(c, t)) {
            fresh = false;
            break;
          }
        if (fresh) classes.push_back(t);
      }
      for (auto& c : classes) out.push_back(std::move(c));
    }
    return detail::sort_family(std::move(out));
  };
  long long r = 2 * static_cast<long long>(max_size);
  f.radius_bound = [r](const LabelledGraph&) { return r; };
  return f;
}

inline FamilySpec complete_family(int max_size) {
  FamilySpec f;
  f.name = "complete-" + std::to_string(max_size);
  f.member = [max_size](const LabelledGraph& g) {
    return detail::is_complete_graph(g) && detail::unlabelled_like(g) &&
           g.vertex_count() >= 2 && g.vertex_count() <= static_cast<std::size_t>(max_size);
  };
  f.enumerate = [max_size]() {
    std::vector<LabelledGraph> out;
    for (int n = 2; n <= max_size; ++n) out.push_back(complete(n));
    return detail::sort_family(std::move(out));
  };
  long long r = 2 * static_cast<long long>(max_size);
  f.radius_bound = [r](const LabelledGraph&) { return r; };
  return f;
}

// Mixed demo family: rings, trees, and complete graphs up to max_size.
inline FamilySpec mixed_family(int max_size) {
  FamilySpec f;
  f.name = "mixed-" + std::to_string(max_size);
  f.member = [max_size](const LabelledGraph& g) {
    if (!detail::unlabelled_like(g) || g.vertex_count() > static_cast<std::size_t>(max_size))
      return false;
    return detail::is_ring_graph(g) || detail::is_tree_graph(g) ||
           detail::is_complete_graph(g);
  };
  f.enumerate = [max_size]() {
    std::vector<LabelledGraph> out = rings_family(max_size).enumerate();
    for (auto& g : trees_family(max_size).enumerate()) out.push_back(std::move(g));
    for (auto& g : complete_family(max_size).enumerate()) out.push_back(std::move(g));
    return detail::sort_family(std::move(out));
  };
  long long r = 2 * static_cast<long long>(max_size);
  f.radius_bound = [r](const LabelledGraph&) { return r; };
  return f;
}

// An explicit finite family given by a list of graphs; at_most_k_marked > 0
// switches the radius bound to the (k+1)|V| form for families whose members
// carry at most k distinguished vertices.
inline FamilySpec explicit_family(const std::string& name, std::vector<LabelledGraph> members,
                                  int at_most_k_marked = 0) {
  FamilySpec f;
  f.name = name;
  auto shared = std::make_shared<std::vector<LabelledGraph>>(
      detail::sort_family(std::move(members)));
  f.member = [shared](const LabelledGraph& g) {
    for (const auto& m : *shared)
      if (isomorphic(m, g)) return true;
    return false;
  };
  f.enumerate = [shared]() { return *shared; };
  if (at_most_k_marked > 0) {
    long long k = at_most_k_marked;
    f.radius_bound = [k](const LabelledGraph& g) {
      return (k + 1) * static_cast<long long>(g.vertex_count());
    };
  } else {
    long long r = detail::finite_family_radius(*shared);
    f.radius_bound = [r](const LabelledGraph&) { return r; };
  }
  return f;
}

inline FamilySpec family_by_name(const std::string& name) {
  auto dash = name.rfind('-');
  if (dash != std::string::npos) {
    int n = std::stoi(name.substr(dash + 1));
    std::string kind = name.substr(0, dash);
    if (kind == "rings") return rings_family(n);
    if (kind == "prime-rings") return prime_rings_family(n);
    if (kind == "trees") return trees_family(n);
    if (kind == "complete") return complete_family(n);
    if (kind == "mixed") return mixed_family(n);
  }
  throw Error("unknown family: " + name);
}

}  // namespace lcsim
