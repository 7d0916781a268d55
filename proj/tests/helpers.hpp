#pragma once

// Shared test support: a scriptable value-schedule system for counter
// experiments, and small independent oracles kept deliberately apart from
// the library implementations they check.

#include <map>
#include <vector>

#include "lcsim/lcsim.hpp"

namespace lcsim::testing {

// Each vertex carries (current value, queue of future values); the advance
// rule pops the queue. Used to choreograph adversarial valuations.
inline RelabellingSystem value_schedule_system() {
  RelabellingSystem sys;
  sys.name = "value-schedule";
  Rule advance;
  advance.id = "advance";
  advance.apply = [](const Star& s) -> std::optional<StarRewrite> {
    const Value& pair = mz::base(s.center_label);  // (current value, queue)
    const Value& queue = pair.at(1);
    if (queue.size() == 0) return std::nullopt;
    std::vector<Value> rest(queue.items().begin() + 1, queue.items().end());
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label =
        mz::with_field(s.center_label, mz::kBase, v_tup({queue.at(0), v_tup(rest)}));
    return rw;
  };
  sys.rules = {advance};
  return sys;
}

inline LabelledGraph value_schedule_init(const LabelledGraph& g,
                                         const std::map<VertexId, std::vector<Value>>& plan) {
  return g.map_vlabels([&](VertexId v, const Value&) {
    auto it = plan.find(v);
    if (it == plan.end() || it->second.empty()) throw Error("missing schedule");
    std::vector<Value> queue(it->second.begin() + 1, it->second.end());
    Value mem = v_tup({it->second.front(), v_tup(queue)});
    return make_state(mz::initial_mem(mem));  // mazur-family layout for the counter field
  });
}

inline Valuation schedule_valuation() {
  return [](const Value& state) { return mz::base(state).at(0); };
}

// All-pairs shortest paths by Floyd-Warshall: an independent distance
// oracle for ball and diameter checks.
inline std::map<VertexId, std::map<VertexId, int>> fw_distances(const LabelledGraph& g) {
  auto verts = g.vertices();
  const int inf = 1 << 20;
  std::map<VertexId, std::map<VertexId, int>> d;
  for (VertexId a : verts)
    for (VertexId b : verts) d[a][b] = a == b ? 0 : (g.has_edge(a, b) ? 1 : inf);
  for (VertexId k : verts)
    for (VertexId a : verts)
      for (VertexId b : verts) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
  return d;
}

// Random connected graphs filtered for covering-minimality.
inline std::vector<LabelledGraph> random_covering_minimal(int count, int max_n,
                                                          std::uint64_t seed) {
  std::vector<LabelledGraph> out;
  std::mt19937_64 rng(seed);
  while (static_cast<int>(out.size()) < count) {
    int n = 3 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 2));
    LabelledGraph g = random_connected_graph(n, rng(), static_cast<int>(rng() % 3));
    if (covering_minimal(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace lcsim::testing
