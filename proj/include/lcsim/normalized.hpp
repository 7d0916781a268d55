#pragma once

// Normalised vertex states (mem, out, term). Rules may read and write mem;
// out and term are write-only from preconditions' point of view, and term
// is either bot or term.

#include "lcsim/graph.hpp"

namespace lcsim {

inline Value bot() { return v_sym("bot"); }
inline Value term_mark() { return v_sym("term"); }

inline Value make_state(const Value& mem) { return v_tup({mem, bot(), bot()}); }
inline Value make_state(const Value& mem, const Value& out, const Value& term) {
  return v_tup({mem, out, term});
}

inline const Value& state_mem(const Value& s) { return s.at(0); }
inline const Value& state_out(const Value& s) { return s.at(1); }
inline const Value& state_term(const Value& s) { return s.at(2); }
inline bool is_term(const Value& s) { return state_term(s) == term_mark(); }

inline Value with_mem(const Value& s, const Value& mem) { return s.with_item(0, mem); }
inline Value with_out(const Value& s, const Value& out) { return s.with_item(1, out); }
inline Value with_term(const Value& s) { return s.with_item(2, term_mark()); }

// Wraps every vertex label in of a plain graph into (mem=label, bot, bot).
inline LabelledGraph normalize_input(const LabelledGraph& g) {
  return g.map_vlabels([](VertexId, const Value& label) { return make_state(label); });
}

inline std::map<VertexId, Value> out_labelling(const LabelledGraph& g) {
  std::map<VertexId, Value> out;
  for (VertexId v : g.vertices()) out[v] = state_out(g.vlabel(v));
  return out;
}

}  // namespace lcsim
