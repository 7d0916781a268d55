#pragma once

// The relabelling engine. A rule sees one star and either rewrites its
// labels or declines; a rewrite that changes nothing counts as declined, so
// normal forms are exact. Runs are deterministic given (system, graph,
// scheduler): the enabled set is kept in (vertex, rule) order and the
// seeded scheduler draws from a fixed-algorithm generator.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lcsim/graph.hpp"

namespace lcsim {

struct StarRewrite {
  Value center_label;
  std::vector<Value> leaf_labels;  // parallel to the star's leaves
  std::vector<Value> edge_labels;

  static StarRewrite keep(const Star& s) {
    return StarRewrite{s.center_label, s.leaf_labels, s.edge_labels};
  }
  bool operator==(const StarRewrite& o) const {
    return center_label == o.center_label && leaf_labels == o.leaf_labels &&
           edge_labels == o.edge_labels;
  }

  StarRewrite& set_center(const Value& v) {
    center_label = v;
    return *this;
  }
  StarRewrite& set_leaf(const Star& s, VertexId leaf, const Value& v) {
    leaf_labels[s.leaf_index(leaf)] = v;
    return *this;
  }
};

struct Rule {
  std::string id;
  // Returns the new star labelling, or nullopt when the rule does not
  // apply. Returning an unchanged labelling also means "not enabled".
  std::function<std::optional<StarRewrite>(const Star&)> apply;
};

struct RelabellingSystem {
  std::string name;
  std::vector<Rule> rules;

  const Rule& rule(const std::string& id) const {
    for (const auto& r : rules)
      if (r.id == id) return r;
    throw Error("unknown rule " + id);
  }
};

struct EnabledPair {
  std::string rule_id;
  VertexId center;
  bool operator==(const EnabledPair& o) const {
    return rule_id == o.rule_id && center == o.center;
  }
};

namespace detail {

inline std::optional<StarRewrite> try_rule(const Rule& r, const Star& s) {
  auto out = r.apply(s);
  if (!out) return std::nullopt;
  if (*out == StarRewrite::keep(s)) return std::nullopt;  // no change, not enabled
  return out;
}

inline void apply_rewrite(LabelledGraph& g, const Star& s, const StarRewrite& rw) {
  g.set_vlabel(s.center, rw.center_label);
  for (std::size_t i = 0; i < s.leaves.size(); ++i) {
    g.set_vlabel(s.leaves[i], rw.leaf_labels[i]);
    g.set_elabel(s.center, s.leaves[i], rw.edge_labels[i]);
  }
}

}  // namespace detail

// All (rule, center) pairs whose star matches and whose application
// changes at least one label, in (center, rule order) order.
inline std::vector<EnabledPair> enabled(const RelabellingSystem& sys, const LabelledGraph& g) {
  std::vector<EnabledPair> out;
  for (VertexId v : g.vertices()) {
    Star s = star(g, v);
    for (const auto& r : sys.rules)
      if (detail::try_rule(r, s)) out.push_back({r.id, v});
  }
  return out;
}

inline LabelledGraph step(const RelabellingSystem& sys, const LabelledGraph& g,
                          const std::string& rule_id, VertexId center) {
  Star s = star(g, center);
  auto rw = detail::try_rule(sys.rule(rule_id), s);
  if (!rw) throw Error("rule " + rule_id + " is not enabled at vertex " +
                       std::to_string(center));
  LabelledGraph out = g;
  detail::apply_rewrite(out, s, *rw);
  return out;
}

struct Scheduler {
  enum class Kind { SeededRandom, RoundRobin, Scripted };
  Kind kind = Kind::SeededRandom;
  std::uint64_t seed = 0;
  std::vector<EnabledPair> script;

  static Scheduler seeded(std::uint64_t s) { return {Kind::SeededRandom, s, {}}; }
  static Scheduler round_robin() { return {Kind::RoundRobin, 0, {}}; }
  static Scheduler scripted(std::vector<EnabledPair> sc) {
    return {Kind::Scripted, 0, std::move(sc)};
  }

  std::string kind_name() const {
    switch (kind) {
      case Kind::SeededRandom: return "seeded-random";
      case Kind::RoundRobin: return "round-robin";
      case Kind::Scripted: return "scripted";
    }
    return "?";
  }
};

// Star labels packed as one value: (center-label, ((leaf vlabel elabel)...)).
inline Value star_snapshot(const Star& s) {
  std::vector<Value> leaves;
  for (std::size_t i = 0; i < s.leaves.size(); ++i)
    leaves.push_back(v_tup({v_num(s.leaves[i]), s.leaf_labels[i], s.edge_labels[i]}));
  return v_tup({v_num(s.center), s.center_label, v_tup(std::move(leaves))});
}

struct TraceEvent {
  int step = 0;
  std::string rule_id;
  VertexId center = 0;
  Value before;  // star snapshot
  Value after;
};

struct Trace {
  std::string system;
  Scheduler scheduler;
  LabelledGraph initial;
  LabelledGraph final_graph;
  std::vector<TraceEvent> events;
  bool reached_normal_form = false;
  long max_steps = 0;
};

inline long default_step_budget(const LabelledGraph& g) {
  long n = static_cast<long>(g.vertex_count());
  return 10 * n * n * n;
}

// Runs until a normal form or until the step budget is exhausted; the two
// endings are distinguished by the reached_normal_form flag.
inline Trace run(const RelabellingSystem& sys, const LabelledGraph& g0,
                 const Scheduler& sched, long max_steps = -1) {
  if (max_steps < 0) max_steps = default_step_budget(g0);
  Trace tr;
  tr.system = sys.name;
  tr.scheduler = sched;
  tr.initial = g0;
  tr.max_steps = max_steps;

  LabelledGraph g = g0;
  std::mt19937_64 rng(sched.seed);
  std::size_t rr_cursor = 0;
  std::size_t script_pos = 0;
  bool script_done = false;

  for (long stepno = 0; stepno < max_steps && !script_done; ++stepno) {
    std::vector<EnabledPair> pairs = enabled(sys, g);
    if (pairs.empty()) {
      tr.reached_normal_form = true;
      break;
    }
    EnabledPair pick = pairs.front();
    switch (sched.kind) {
      case Scheduler::Kind::SeededRandom:
        pick = pairs[static_cast<std::size_t>(rng() % pairs.size())];
        break;
      case Scheduler::Kind::RoundRobin: {
        // First enabled pair at or after the cursor vertex.
        auto verts = g.vertices();
        bool found = false;
        for (std::size_t off = 0; off < verts.size() && !found; ++off) {
          VertexId v = verts[(rr_cursor + off) % verts.size()];
          for (const auto& p : pairs)
            if (p.center == v) {
              pick = p;
              rr_cursor = (rr_cursor + off + 1) % verts.size();
              found = true;
              break;
            }
        }
        break;
      }
      case Scheduler::Kind::Scripted: {
        if (script_pos >= sched.script.size()) {
          script_done = true;
          break;
        }
        pick = sched.script[script_pos++];
        bool ok = false;
        for (const auto& p : pairs)
          if (p == pick) ok = true;
        if (!ok)
          throw Error("scripted pair (" + pick.rule_id + ", " +
                      std::to_string(pick.center) + ") is not enabled at step " +
                      std::to_string(stepno));
        break;
      }
    }
    if (script_done) break;
    Star s = star(g, pick.center);
    auto rw = detail::try_rule(sys.rule(pick.rule_id), s);
    if (!rw) throw Error("enabled pair failed to apply");
    TraceEvent ev;
    ev.step = static_cast<int>(stepno);
    ev.rule_id = pick.rule_id;
    ev.center = pick.center;
    ev.before = star_snapshot(s);
    detail::apply_rewrite(g, s, *rw);
    ev.after = star_snapshot(star(g, pick.center));
    tr.events.push_back(std::move(ev));
  }
  if (!tr.reached_normal_form && enabled(sys, g).empty()) tr.reached_normal_form = true;
  tr.final_graph = g;
  return tr;
}

// Replays a trace's events from its initial graph; throws if any event does
// not reproduce its recorded after-snapshot.
inline LabelledGraph replay(const RelabellingSystem& sys, const Trace& tr) {
  LabelledGraph g = tr.initial;
  for (const auto& ev : tr.events) {
    Star s = star(g, ev.center);
    if (star_snapshot(s) != ev.before) throw Error("replay mismatch: before-state differs");
    auto rw = detail::try_rule(sys.rule(ev.rule_id), s);
    if (!rw) throw Error("replay mismatch: rule not enabled");
    detail::apply_rewrite(g, s, *rw);
    if (star_snapshot(star(g, ev.center)) != ev.after)
      throw Error("replay mismatch: after-state differs");
  }
  return g;
}

// Walks a trace step by step, handing the per-step graph to the visitor
// (step index -1 is the initial graph).
inline void scan_trace(const RelabellingSystem& sys, const Trace& tr,
                       const std::function<void(int, const LabelledGraph&)>& visit) {
  LabelledGraph g = tr.initial;
  visit(-1, g);
  for (const auto& ev : tr.events) {
    Star s = star(g, ev.center);
    auto rw = detail::try_rule(sys.rule(ev.rule_id), s);
    if (!rw) throw Error("trace scan: rule not enabled");
    detail::apply_rewrite(g, s, *rw);
    visit(ev.step, g);
  }
}

inline bool stars_disjoint(const LabelledGraph& g, VertexId a, VertexId b) {
  std::set<VertexId> sa{a};
  for (VertexId w : g.neighbours(a)) sa.insert(w);
  if (sa.count(b)) return false;
  for (VertexId w : g.neighbours(b))
    if (sa.count(w)) return false;
  return true;
}

// True iff applying the two enabled pairs in either order yields identical
// graphs. Requires disjoint stars.
inline bool commute_check(const RelabellingSystem& sys, const LabelledGraph& g,
                          const EnabledPair& p1, const EnabledPair& p2) {
  if (!stars_disjoint(g, p1.center, p2.center)) throw Error("stars overlap");
  LabelledGraph a = step(sys, step(sys, g, p1.rule_id, p1.center), p2.rule_id, p2.center);
  LabelledGraph b = step(sys, step(sys, g, p2.rule_id, p2.center), p1.rule_id, p1.center);
  return a == b;
}

}  // namespace lcsim
