#pragma once

// The concrete relabelling systems shipped with the toolkit: greedy
// colouring, the four tree-size variants (one per termination-detection
// mode), rooted spanning-tree construction with global detection, and the
// two classic election systems.
//
// All systems run on normalised (mem, out, term) states; initial states
// come from each system's init helper.

#include <functional>
#include <map>
#include <string>

#include "lcsim/engine.hpp"
#include "lcsim/normalized.hpp"

namespace lcsim {

// --- greedy (d+1)-colouring --------------------------------------------------

// Vertices start at 0 and take the smallest colour in [1, d+1] absent from
// their neighbourhood.
inline RelabellingSystem colo_system(int d) {
  RelabellingSystem sys;
  sys.name = "colo-" + std::to_string(d);
  Rule colour;
  colour.id = "colour";
  colour.apply = [d](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != v_num(0)) return std::nullopt;
    std::set<long long> taken;
    for (const Value& l : s.leaf_labels) {
      const Value& c = state_mem(l);
      if (c.is_int() && c.ival() != 0) taken.insert(c.ival());
    }
    long long pick = 0;
    for (long long c = 1; c <= d + 1; ++c)
      if (!taken.count(c)) {
        pick = c;
        break;
      }
    if (pick == 0) return std::nullopt;  // palette exhausted: out of domain
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_out(with_mem(s.center_label, v_num(pick)), v_num(pick));
    return rw;
  };
  sys.rules = {colour};
  return sys;
}

inline LabelledGraph colo_init(const LabelledGraph& g) {
  return g.map_vlabels([](VertexId, const Value&) { return make_state(v_num(0)); });
}

// --- tree size, four termination flavours ------------------------------------

enum class TreeSizeVariant { Implicit, Ltd, Otd, Gtd };

inline const char* treesize_variant_name(TreeSizeVariant v) {
  switch (v) {
    case TreeSizeVariant::Implicit: return "treesize-i";
    case TreeSizeVariant::Ltd: return "treesize-ltd";
    case TreeSizeVariant::Otd: return "treesize-otd";
    case TreeSizeVariant::Gtd: return "treesize-gtd";
  }
  return "?";
}

inline LabelledGraph treesize_init(const LabelledGraph& g) {
  return g.map_vlabels([](VertexId, const Value&) { return make_state(v_num(0)); });
}

namespace detail {

inline bool ts_zero(const Value& state) { return state_mem(state) == v_num(0); }
inline bool ts_number(const Value& state) { return state_mem(state).is_int(); }

inline long long ts_sum(const Star& s) {
  long long total = 1;
  for (const Value& l : s.leaf_labels) {
    const Value& m = state_mem(l);
    if (m.is_int()) total += m.ival();
  }
  return total;
}

// Largest numeric out value in the star, bot if none.
inline Value ts_out_max(const Star& s) {
  Value best = state_out(s.center_label);
  auto consider = [&](const Value& out) {
    if (!out.is_int()) return;
    if (!best.is_int() || best.ival() < out.ival()) best = out;
  };
  for (const Value& l : s.leaf_labels) consider(state_out(l));
  return best;
}

}  // namespace detail

// Shared pruning rule: a 0-vertex with exactly one 0-neighbour absorbs its
// pruned subtrees.
inline Rule treesize_pruning() {
  Rule r;
  r.id = "pruning";
  r.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (!detail::ts_zero(s.center_label)) return std::nullopt;
    int zeros = 0;
    for (const Value& l : s.leaf_labels)
      if (detail::ts_zero(l)) ++zeros;
    if (zeros != 1) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_mem(s.center_label, v_num(detail::ts_sum(s)));
    return rw;
  };
  return r;
}

inline RelabellingSystem treesize_system(TreeSizeVariant variant) {
  RelabellingSystem sys;
  sys.name = treesize_variant_name(variant);
  Value size_tag = v_sym("Size");
  Value ack_tag = v_sym("Ack");
  Value done_tag = v_sym("Done");

  if (variant == TreeSizeVariant::Implicit) {
    Rule prune;
    prune.id = "pruning";
    prune.apply = [](const Star& s) -> std::optional<StarRewrite> {
      if (!detail::ts_zero(s.center_label)) return std::nullopt;
      int zeros = 0;
      for (const Value& l : s.leaf_labels)
        if (detail::ts_zero(l)) ++zeros;
      if (zeros > 1) return std::nullopt;
      long long total = detail::ts_sum(s);
      StarRewrite rw = StarRewrite::keep(s);
      rw.center_label = with_out(with_mem(s.center_label, v_num(total)), v_num(total));
      return rw;
    };
    Rule bcast;
    bcast.id = "fast-broadcast";
    bcast.apply = [](const Star& s) -> std::optional<StarRewrite> {
      for (const Value& l : s.leaf_labels)
        if (detail::ts_zero(l)) return std::nullopt;
      if (detail::ts_zero(s.center_label)) return std::nullopt;
      Value best = detail::ts_out_max(s);
      if (!best.is_int() || best == state_out(s.center_label)) return std::nullopt;
      StarRewrite rw = StarRewrite::keep(s);
      rw.center_label = with_out(s.center_label, best);
      return rw;
    };
    sys.rules = {prune, bcast};
    return sys;
  }

  Rule computed;
  computed.id = "size-computed";
  computed.apply = [variant, size_tag](const Star& s) -> std::optional<StarRewrite> {
    if (!detail::ts_zero(s.center_label)) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (detail::ts_zero(l)) return std::nullopt;
    long long total = detail::ts_sum(s);
    StarRewrite rw = StarRewrite::keep(s);
    Value st = with_out(with_mem(s.center_label, size_tag), v_num(total));
    if (variant == TreeSizeVariant::Ltd) st = with_term(st);
    rw.center_label = st;
    return rw;
  };

  Rule bcast_size;
  bcast_size.id = "broadcast-size";
  bcast_size.apply = [variant, size_tag, ack_tag,
                      done_tag](const Star& s) -> std::optional<StarRewrite> {
    const Value& m = state_mem(s.center_label);
    if (!m.is_int() || m.ival() == 0) return std::nullopt;
    bool informed = false;
    for (const Value& l : s.leaf_labels) {
      const Value& lm = state_mem(l);
      if (lm == size_tag || lm == ack_tag || lm == done_tag) informed = true;
    }
    if (!informed) return std::nullopt;
    Value best = detail::ts_out_max(s);
    StarRewrite rw = StarRewrite::keep(s);
    Value st = with_out(with_mem(s.center_label, size_tag), best);
    if (variant == TreeSizeVariant::Ltd) st = with_term(st);
    rw.center_label = st;
    return rw;
  };

  if (variant == TreeSizeVariant::Ltd) {
    sys.rules = {treesize_pruning(), computed, bcast_size};
    return sys;
  }

  // Convergecast acknowledgements: a Size vertex with exactly one
  // not-yet-acknowledged neighbour acknowledges toward it; the last
  // non-acknowledged vertex detects termination.
  Rule ack;
  ack.id = "acknowledge";
  ack.apply = [size_tag, ack_tag](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != size_tag) return std::nullopt;
    int pending = 0;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) != ack_tag) ++pending;
    if (pending != 1) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_mem(s.center_label, ack_tag);
    return rw;
  };

  Rule detect;
  detect.id = "termination-detection";
  detect.apply = [variant, size_tag, ack_tag,
                  done_tag](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != size_tag) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) != ack_tag) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    Value st = with_term(s.center_label);
    if (variant == TreeSizeVariant::Otd) st = with_mem(st, done_tag);
    rw.center_label = st;
    return rw;
  };

  if (variant == TreeSizeVariant::Gtd) {
    sys.rules = {treesize_pruning(), computed, bcast_size, ack, detect};
    return sys;
  }

  Rule bcast_term;
  bcast_term.id = "broadcast-termination";
  bcast_term.apply = [ack_tag, done_tag](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != ack_tag) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) == done_tag) {
        StarRewrite rw = StarRewrite::keep(s);
        rw.center_label = with_term(with_mem(s.center_label, done_tag));
        return rw;
      }
    return std::nullopt;
  };
  sys.rules = {treesize_pruning(), computed, bcast_size, ack, detect, bcast_term};
  return sys;
}

// --- rooted spanning tree with global termination detection -------------------

// mem is bot for unspanned vertices, or (path, acked?) where path is the
// Dewey word from the root; the parent of a vertex is the unique neighbour
// whose path is the immediate prefix.
inline Value span_mem(const std::vector<long long>& word, bool acked) {
  std::vector<Value> w;
  for (long long x : word) w.push_back(v_num(x));
  return v_tup({v_tup(std::move(w)), v_sym(acked ? "yes" : "no")});
}

inline bool span_defined(const Value& state) { return state_mem(state) != bot(); }
inline const Value& span_path(const Value& state) { return state_mem(state).at(0); }
inline bool span_acked(const Value& state) { return state_mem(state).at(1) == v_sym("yes"); }

inline bool span_is_child(const Value& parent_state, const Value& child_state) {
  if (!span_defined(parent_state) || !span_defined(child_state)) return false;
  const auto& p = span_path(parent_state).items();
  const auto& c = span_path(child_state).items();
  if (c.size() != p.size() + 1) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] == c[i])) return false;
  return true;
}

// Exactly one root labelled with the empty word; everyone else bot.
inline LabelledGraph spanning_tree_init(const LabelledGraph& g, VertexId root) {
  return g.map_vlabels([root](VertexId v, const Value&) {
    return v == root ? make_state(span_mem({}, false)) : make_state(bot());
  });
}

inline void spanning_tree_check_init(const LabelledGraph& g) {
  int roots = 0;
  for (VertexId v : g.vertices())
    if (span_defined(g.vlabel(v))) ++roots;
  if (roots != 1)
    throw Error("spanning tree wants exactly one root, found " + std::to_string(roots));
}

inline RelabellingSystem spanning_tree_system() {
  RelabellingSystem sys;
  sys.name = "spanning-tree";

  Rule span;
  span.id = "spanning-vertices";
  span.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (!span_defined(s.center_label) || span_acked(s.center_label)) return std::nullopt;
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < s.leaves.size(); ++i)
      if (!span_defined(s.leaf_labels[i])) fresh.push_back(i);
    if (fresh.empty()) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    const auto& base = span_path(s.center_label).items();
    long long next = 1;
    for (std::size_t i : fresh) {
      std::vector<Value> word(base);
      word.push_back(v_num(next++));
      rw.leaf_labels[i] =
          with_mem(s.leaf_labels[i], v_tup({v_tup(std::move(word)), v_sym("no")}));
    }
    return rw;
  };

  Rule ack;
  ack.id = "acknowledgement";
  ack.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (!span_defined(s.center_label) || span_acked(s.center_label)) return std::nullopt;
    if (span_path(s.center_label).items().empty()) return std::nullopt;  // root never acks
    for (const Value& l : s.leaf_labels) {
      if (!span_defined(l)) return std::nullopt;  // still spanning
      if (span_is_child(s.center_label, l) && !span_acked(l)) return std::nullopt;
    }
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label =
        with_mem(s.center_label, state_mem(s.center_label).with_item(1, v_sym("yes")));
    return rw;
  };

  Rule detect;
  detect.id = "global-termination-detection";
  detect.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (!span_defined(s.center_label)) return std::nullopt;
    if (!span_path(s.center_label).items().empty()) return std::nullopt;  // root only
    if (is_term(s.center_label)) return std::nullopt;
    for (const Value& l : s.leaf_labels) {
      if (!span_defined(l)) return std::nullopt;
      if (span_is_child(s.center_label, l) && !span_acked(l)) return std::nullopt;
    }
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_term(s.center_label);
    return rw;
  };

  sys.rules = {span, ack, detect};
  return sys;
}

// Reads the spanning tree off a final labelling: vertex -> parent.
inline std::map<VertexId, VertexId> decode_spanning_tree(const LabelledGraph& g) {
  std::map<VertexId, VertexId> parent;
  for (VertexId v : g.vertices()) {
    const Value& st = g.vlabel(v);
    if (!span_defined(st)) throw Error("vertex never spanned");
    if (span_path(st).items().empty()) continue;  // root
    int found = 0;
    for (VertexId w : g.neighbours(v))
      if (span_is_child(g.vlabel(w), st)) {
        parent[v] = w;
        ++found;
      }
    if (found != 1)
      throw Error("vertex " + std::to_string(v) + " has " + std::to_string(found) +
                  " prefix neighbours");
  }
  return parent;
}

// --- election -----------------------------------------------------------------

inline Value elect_mark() { return v_sym("Elect"); }
inline Value non_elect_mark() { return v_sym("Non-Elect"); }

inline LabelledGraph election_init(const LabelledGraph& g) {
  return g.map_vlabels([](VertexId, const Value&) { return make_state(v_sym("N")); });
}

inline int count_elected(const LabelledGraph& g) {
  int n = 0;
  for (VertexId v : g.vertices())
    if (state_out(g.vlabel(v)) == elect_mark() || state_mem(g.vlabel(v)) == elect_mark()) ++n;
  return n;
}

// Cut pendant vertices until one survives.
inline RelabellingSystem election_tree_system() {
  RelabellingSystem sys;
  sys.name = "election-tree";
  Rule prune;
  prune.id = "pruning";
  prune.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != v_sym("N")) return std::nullopt;
    int live = 0;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) == v_sym("N")) ++live;
    if (live != 1) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_out(with_mem(s.center_label, non_elect_mark()), non_elect_mark());
    return rw;
  };
  Rule elect;
  elect.id = "election";
  elect.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != v_sym("N")) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) == v_sym("N")) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_out(with_mem(s.center_label, elect_mark()), elect_mark());
    return rw;
  };
  sys.rules = {prune, elect};
  return sys;
}

// On complete graphs any live vertex seeing another live vertex withdraws.
inline RelabellingSystem election_complete_system() {
  RelabellingSystem sys;
  sys.name = "election-complete";
  Rule erase;
  erase.id = "erasing";
  erase.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != v_sym("N")) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) == v_sym("N")) {
        StarRewrite rw = StarRewrite::keep(s);
        rw.center_label =
            with_out(with_mem(s.center_label, non_elect_mark()), non_elect_mark());
        return rw;
      }
    return std::nullopt;
  };
  Rule elect;
  elect.id = "election";
  elect.apply = [](const Star& s) -> std::optional<StarRewrite> {
    if (state_mem(s.center_label) != v_sym("N")) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (state_mem(l) == v_sym("N")) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_out(with_mem(s.center_label, elect_mark()), elect_mark());
    return rw;
  };
  sys.rules = {erase, elect};
  return sys;
}

}  // namespace lcsim
