#pragma once

// The cartography system: the enumeration algorithm under the generalized
// counter wrapper, with the mailbox as valuation and the guard "membership
// still unresolved". When it halts every vertex holds the same reconstructed
// map, the membership query answers Yes on it, and the underlying graph is
// a covering of the map.

#include <sstream>
#include <string>

#include "lcsim/chi.hpp"
#include "lcsim/gssp.hpp"

namespace lcsim {

inline Valuation mailbox_valuation() {
  return [](const Value& state) { return mz::mailbox(state); };
}

// Guard: counters keep growing while chi has not answered Yes for this
// vertex's snapshot, number, and trust radius.
inline Guard carto_guard(const ChiOracle& oracle) {
  return [oracle](const Value& state) {
    auto h = mazur_snapshot(state);
    if (!h) return true;
    long long rt = trust_radius(gssp_counter(state));
    if (rt < 0) return true;
    return oracle.query(*h, static_cast<VertexId>(mz::number(state)), rt) != ChiResult::Yes;
  };
}

inline RelabellingSystem carto_system(const FamilySpec& family) {
  ChiOracle oracle(family);
  return gssp_wrap(mazur_system(), mailbox_valuation(), carto_guard(oracle),
                   "carto[" + family.name + "]");
}

struct CartoVertexOutput {
  VertexId vertex = 0;
  long long number = 0;
  std::uint64_t map_hash = 0;  // hash of the reconstructed graph, 0 if undefined
  long long trust = -1;
};

inline std::vector<CartoVertexOutput> carto_outputs(const LabelledGraph& g) {
  std::vector<CartoVertexOutput> out;
  for (VertexId v : g.vertices()) {
    CartoVertexOutput row;
    row.vertex = v;
    row.number = mz::number(g.vlabel(v));
    auto h = mazur_snapshot(g.vlabel(v));
    row.map_hash = h ? h->content_hash() : 0;
    row.trust = trust_radius(gssp_counter(g.vlabel(v)));
    out.push_back(row);
  }
  return out;
}

inline std::string carto_footer_table(const LabelledGraph& g) {
  std::ostringstream out;
  for (const auto& row : carto_outputs(g))
    out << "vertex-out " << row.vertex << " " << row.number << " " << std::hex
        << row.map_hash << std::dec << " " << row.trust << "\n";
  return out.str();
}

}  // namespace lcsim
