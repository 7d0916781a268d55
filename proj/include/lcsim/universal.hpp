#pragma once

// Universal systems driven by the cartography machinery. Once the
// membership query answers Yes for a vertex's reconstructed map, the vertex
// picks an output labelling of the map and lifts its own entry; detection
// variants add a termination rule (observed) or a rooted spanning tree over
// a dedicated state field (global). The election system is the global
// construction applied to the "vertex numbered 1 wins" task.

#include <functional>
#include <map>
#include <string>

#include "lcsim/algorithms.hpp"
#include "lcsim/carto.hpp"

namespace lcsim {

struct Task {
  std::string name;
  FamilySpec domain;
  // Does the out-labelling satisfy the specification on this input?
  std::function<bool(const LabelledGraph& input, const std::map<VertexId, Value>& out)>
      correct;
  // Canonical output labelling on a reconstructed map (vertex ids of h are
  // the assigned numbers). This is the deterministic output choice the
  // universal systems lift.
  std::function<std::map<VertexId, Value>(const LabelledGraph& h)> output_for;
  // Optional: all legal out-labellings of an input, for completeness checks.
  std::function<std::vector<std::map<VertexId, Value>>(const LabelledGraph&)> outputs;
};

namespace detail {

// choice encoding: nil, or a tuple of (number, out-value) pairs.
inline Value encode_choice(const std::map<VertexId, Value>& table) {
  std::vector<Value> rows;
  for (const auto& [n, out] : table) rows.push_back(v_tup({v_num(n), out}));
  return v_tup(std::move(rows));
}

inline std::optional<Value> choice_lookup(const Value& choice, long long n) {
  if (!choice.is_tup()) return std::nullopt;
  for (const Value& row : choice.items())
    if (row.at(0).ival() == n) return row.at(1);
  return std::nullopt;
}

inline bool choice_defined(const Value& state) { return mz::choice(state) != v_sym("nil"); }

// nil sorts above every defined choice.
inline bool choice_leq(const Value& a, const Value& b) {
  if (a == v_sym("nil")) return b == v_sym("nil");
  if (b == v_sym("nil")) return true;
  return a <= b;
}

struct ResolvedState {
  bool yes = false;
  LabelledGraph map;
  long long trust = -1;
};

// The per-vertex stop condition: chi answers Yes on (H(v), n(v), r^t(v)).
inline std::optional<ResolvedState> resolve(const ChiOracle& oracle, const Value& state) {
  auto h = mazur_snapshot(state);
  if (!h) return std::nullopt;
  long long rt = trust_radius(gssp_counter(state));
  if (rt < 0) return std::nullopt;
  if (oracle.query(*h, static_cast<VertexId>(mz::number(state)), rt) != ChiResult::Yes)
    return std::nullopt;
  ResolvedState rs;
  rs.yes = true;
  rs.map = *h;
  rs.trust = rt;
  return rs;
}

inline Rule pick_output_rule(const ChiOracle& oracle, const Task& task) {
  Rule r;
  r.id = "pick-output";
  r.apply = [oracle, task](const Star& s) -> std::optional<StarRewrite> {
    if (choice_defined(s.center_label)) return std::nullopt;
    auto rs = resolve(oracle, s.center_label);
    if (!rs) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = mz::with_field(s.center_label, mz::kChoice,
                                     encode_choice(task.output_for(rs->map)));
    return rw;
  };
  return r;
}

inline Rule unify_outputs_rule() {
  Rule r;
  r.id = "unify-outputs";
  r.apply = [](const Star& s) -> std::optional<StarRewrite> {
    const Value& c0 = mz::choice(s.center_label);
    if (c0 == v_sym("nil")) return std::nullopt;
    for (const Value& l : s.leaf_labels)
      if (!choice_leq(c0, mz::choice(l))) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    auto apply_one = [&](const Value& st) {
      Value next = mz::with_field(st, mz::kChoice, c0);
      auto out = choice_lookup(c0, mz::number(st));
      if (out) next = with_out(next, *out);
      return next;
    };
    rw.center_label = apply_one(s.center_label);
    for (std::size_t i = 0; i < s.leaves.size(); ++i)
      rw.leaf_labels[i] = apply_one(s.leaf_labels[i]);
    return rw;
  };
  return r;
}

}  // namespace detail

// Implicit-termination universal system: cartography plus output picking.
inline RelabellingSystem universal_itd(const Task& task) {
  ChiOracle oracle(task.domain);
  RelabellingSystem sys = gssp_wrap(mazur_system(), mailbox_valuation(),
                                    carto_guard(oracle), "universal-itd[" + task.name + "]");
  sys.rules.push_back(detail::pick_output_rule(oracle, task));
  sys.rules.push_back(detail::unify_outputs_rule());
  return sys;
}

// Observed-termination universal system: counters keep growing past the
// family's radius bound once outputs are in place; a vertex whose trust
// radius clears the bound turns its term flag on.
inline RelabellingSystem universal_otd(const Task& task) {
  ChiOracle oracle(task.domain);
  auto rb = task.domain.radius_bound;
  Guard phi = [oracle, rb](const Value& state) {
    auto rs = detail::resolve(oracle, state);
    if (!rs) return true;  // membership unresolved: keep counting
    // Resolved: count further only below the bound and once the output has
    // been written from the chosen labelling.
    if (rs->trust > rb(rs->map)) return false;
    auto want = detail::choice_lookup(mz::choice(state), mz::number(state));
    return want && state_out(state) == *want;
  };
  RelabellingSystem sys = gssp_wrap(mazur_system(), mailbox_valuation(), phi,
                                    "universal-otd[" + task.name + "]");
  sys.rules.push_back(detail::pick_output_rule(oracle, task));
  sys.rules.push_back(detail::unify_outputs_rule());

  Rule detect;
  detect.id = "termination-detection";
  detect.apply = [oracle, rb](const Star& s) -> std::optional<StarRewrite> {
    if (is_term(s.center_label)) return std::nullopt;
    auto rs = detail::resolve(oracle, s.center_label);
    if (!rs || rs->trust <= rb(rs->map)) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_term(s.center_label);
    return rw;
  };
  sys.rules.push_back(std::move(detect));
  return sys;
}

namespace detail {

// A vertex is settled when its counter has cleared the bound, its output
// matches its chosen table, and no further counting is possible there.
inline bool settled(const ChiOracle& oracle,
                    const std::function<long long(const LabelledGraph&)>& rb,
                    const Value& state) {
  auto rs = resolve(oracle, state);
  if (!rs || rs->trust <= rb(rs->map)) return false;
  auto want = choice_lookup(mz::choice(state), mz::number(state));
  return want && state_out(state) == *want;
}

}  // namespace detail

// Global-termination universal system: the observed system without its
// detection rule, plus a spanning tree grown from the vertex numbered 1
// once it settles; the root's final acknowledgement is the last step.
inline RelabellingSystem universal_gtd(const Task& task) {
  ChiOracle oracle(task.domain);
  auto rb = task.domain.radius_bound;
  Guard phi = [oracle, rb](const Value& state) {
    auto rs = detail::resolve(oracle, state);
    if (!rs) return true;
    if (rs->trust > rb(rs->map)) return false;
    auto want = detail::choice_lookup(mz::choice(state), mz::number(state));
    return want && state_out(state) == *want;
  };
  RelabellingSystem sys = gssp_wrap(mazur_system(), mailbox_valuation(), phi,
                                    "universal-gtd[" + task.name + "]");
  sys.rules.push_back(detail::pick_output_rule(oracle, task));
  sys.rules.push_back(detail::unify_outputs_rule());

  auto tree_defined = [](const Value& st) { return mz::tree(st) != v_sym("nil"); };
  auto tree_path = [](const Value& st) { return mz::tree(st).at(0); };
  auto tree_acked = [](const Value& st) { return mz::tree(st).at(1) == v_sym("yes"); };
  auto tree_child = [tree_defined, tree_path](const Value& parent, const Value& child) {
    if (!tree_defined(parent) || !tree_defined(child)) return false;
    const auto& p = tree_path(parent).items();
    const auto& c = tree_path(child).items();
    if (c.size() != p.size() + 1) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!(p[i] == c[i])) return false;
    return true;
  };

  Rule root;
  root.id = "root";
  root.apply = [oracle, rb, tree_defined](const Star& s) -> std::optional<StarRewrite> {
    if (tree_defined(s.center_label)) return std::nullopt;
    if (mz::number(s.center_label) != 1) return std::nullopt;
    if (!detail::settled(oracle, rb, s.center_label)) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label =
        mz::with_field(s.center_label, mz::kTree, v_tup({v_tup({}), v_sym("no")}));
    return rw;
  };

  Rule span;
  span.id = "spanning-vertices";
  span.apply = [tree_defined, tree_path](const Star& s) -> std::optional<StarRewrite> {
    if (!tree_defined(s.center_label)) return std::nullopt;
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < s.leaves.size(); ++i)
      if (!tree_defined(s.leaf_labels[i])) fresh.push_back(i);
    if (fresh.empty()) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    const auto& base = tree_path(s.center_label).items();
    long long next = 1;
    for (std::size_t i : fresh) {
      std::vector<Value> word(base);
      word.push_back(v_num(next++));
      rw.leaf_labels[i] = mz::with_field(s.leaf_labels[i], mz::kTree,
                                         v_tup({v_tup(std::move(word)), v_sym("no")}));
    }
    return rw;
  };

  Rule ack;
  ack.id = "acknowledgement";
  ack.apply = [oracle, rb, tree_defined, tree_path, tree_acked,
               tree_child](const Star& s) -> std::optional<StarRewrite> {
    if (!tree_defined(s.center_label) || tree_acked(s.center_label)) return std::nullopt;
    if (tree_path(s.center_label).items().empty()) return std::nullopt;  // root never acks
    if (!detail::settled(oracle, rb, s.center_label)) return std::nullopt;
    for (const Value& l : s.leaf_labels) {
      if (!tree_defined(l)) return std::nullopt;
      if (tree_child(s.center_label, l) && !tree_acked(l)) return std::nullopt;
    }
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = mz::with_field(s.center_label, mz::kTree,
                                     mz::tree(s.center_label).with_item(1, v_sym("yes")));
    return rw;
  };

  Rule detect;
  detect.id = "global-termination-detection";
  detect.apply = [oracle, rb, tree_defined, tree_path, tree_acked,
                  tree_child](const Star& s) -> std::optional<StarRewrite> {
    if (!tree_defined(s.center_label) || is_term(s.center_label)) return std::nullopt;
    if (!tree_path(s.center_label).items().empty()) return std::nullopt;
    if (!detail::settled(oracle, rb, s.center_label)) return std::nullopt;
    for (const Value& l : s.leaf_labels) {
      if (!tree_defined(l)) return std::nullopt;
      if (tree_child(s.center_label, l) && !tree_acked(l)) return std::nullopt;
    }
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_term(s.center_label);
    return rw;
  };

  sys.rules.push_back(std::move(root));
  sys.rules.push_back(std::move(span));
  sys.rules.push_back(std::move(ack));
  sys.rules.push_back(std::move(detect));
  return sys;
}

// --- tasks ---------------------------------------------------------------------

// Election as a task: the vertex numbered 1 wins.
inline Task election_task(const FamilySpec& family) {
  Task t;
  t.name = "election[" + family.name + "]";
  t.domain = family;
  t.correct = [](const LabelledGraph& input, const std::map<VertexId, Value>& out) {
    int elected = 0;
    for (VertexId v : input.vertices()) {
      auto it = out.find(v);
      if (it == out.end()) return false;
      if (it->second == elect_mark()) ++elected;
      else if (it->second != non_elect_mark()) return false;
    }
    return elected == 1;
  };
  t.output_for = [](const LabelledGraph& h) {
    std::map<VertexId, Value> out;
    for (VertexId n : h.vertices()) out[n] = n == 1 ? elect_mark() : non_elect_mark();
    return out;
  };
  t.outputs = [](const LabelledGraph& input) {
    std::vector<std::map<VertexId, Value>> all;
    for (VertexId w : input.vertices()) {
      std::map<VertexId, Value> out;
      for (VertexId v : input.vertices()) out[v] = v == w ? elect_mark() : non_elect_mark();
      all.push_back(std::move(out));
    }
    return all;
  };
  return t;
}

inline RelabellingSystem election_universal(const FamilySpec& family) {
  RelabellingSystem sys = universal_gtd(election_task(family));
  sys.name = "election-universal[" + family.name + "]";
  return sys;
}

// Uniform graph-size task.
inline Task size_task(const FamilySpec& family) {
  Task t;
  t.name = "size[" + family.name + "]";
  t.domain = family;
  t.correct = [](const LabelledGraph& input, const std::map<VertexId, Value>& out) {
    for (VertexId v : input.vertices()) {
      auto it = out.find(v);
      if (it == out.end() || it->second != v_num(static_cast<long long>(input.vertex_count())))
        return false;
    }
    return true;
  };
  t.output_for = [](const LabelledGraph& h) {
    std::map<VertexId, Value> out;
    for (VertexId n : h.vertices()) out[n] = v_num(static_cast<long long>(h.vertex_count()));
    return out;
  };
  return t;
}

// Divisor-of-the-size task on rings: the canonical choice on a quotient ring
// is its own size, which divides the input's.
inline Task div_task(const FamilySpec& family) {
  Task t;
  t.name = "div[" + family.name + "]";
  t.domain = family;
  t.correct = [](const LabelledGraph& input, const std::map<VertexId, Value>& out) {
    long long n = static_cast<long long>(input.vertex_count());
    for (VertexId v : input.vertices()) {
      auto it = out.find(v);
      if (it == out.end() || !it->second.is_int()) return false;
      long long d = it->second.ival();
      if (d <= 0 || n % d != 0) return false;
    }
    return true;
  };
  t.output_for = [](const LabelledGraph& h) {
    std::map<VertexId, Value> out;
    for (VertexId n : h.vertices()) out[n] = v_num(static_cast<long long>(h.vertex_count()));
    return out;
  };
  return t;
}

// Decide whether the network is a ring (computable with implicit
// termination on the mixed family: coverings preserve ring-ness both ways).
inline Task is_ring_task(const FamilySpec& family) {
  Task t;
  t.name = "is-ring[" + family.name + "]";
  t.domain = family;
  t.correct = [](const LabelledGraph& input, const std::map<VertexId, Value>& out) {
    Value want = detail::is_ring_graph(input) ? v_num(1) : v_num(0);
    for (VertexId v : input.vertices()) {
      auto it = out.find(v);
      if (it == out.end() || it->second != want) return false;
    }
    return true;
  };
  t.output_for = [](const LabelledGraph& h) {
    Value val = detail::is_ring_graph(h) ? v_num(1) : v_num(0);
    std::map<VertexId, Value> out;
    for (VertexId n : h.vertices()) out[n] = val;
    return out;
  };
  return t;
}

}  // namespace lcsim
