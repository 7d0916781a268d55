#pragma once

// Trace classifiers for the four termination-detection modes, task
// correctness/completeness checks, and the lifted-run impossibility
// exhibits. Classifiers are falsifiers over finite trace samples: a pass
// means no sampled run violated the mode's conditions, a fail carries a
// witness.

#include <future>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcsim/covering.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/lift.hpp"
#include "lcsim/normalized.hpp"

namespace lcsim {

struct TraceModeFacts {
  bool terminated = false;
  bool any_term_final = false;    // some vertex ends with term set
  int final_term_count = 0;
  int first_term_step = -1;       // step index of the first term event, -1 if none
  int last_step = -1;
  bool per_vertex_freeze = true;  // out/term of a vertex never change after its term
  bool global_out_freeze = true;  // no out changes anywhere after the first term
  bool term_only_at_end = true;   // no term visible before the final configuration
};

inline TraceModeFacts trace_mode_facts(const RelabellingSystem& sys, const Trace& tr) {
  TraceModeFacts facts;
  facts.terminated = tr.reached_normal_form;
  facts.last_step = tr.events.empty() ? -1 : tr.events.back().step;

  std::map<VertexId, Value> prev_out, prev_term;
  std::map<VertexId, bool> termed;
  for (VertexId v : tr.initial.vertices()) {
    prev_out[v] = state_out(tr.initial.vlabel(v));
    prev_term[v] = state_term(tr.initial.vlabel(v));
    termed[v] = is_term(tr.initial.vlabel(v));
    if (termed[v]) facts.first_term_step = -1;
  }
  bool any_term = false;
  scan_trace(sys, tr, [&](int stepno, const LabelledGraph& g) {
    if (stepno < 0) return;
    for (VertexId v : g.vertices()) {
      const Value& st = g.vlabel(v);
      Value out = state_out(st);
      Value term = state_term(st);
      if (termed[v] && (out != prev_out[v] || term != prev_term[v]))
        facts.per_vertex_freeze = false;
      if (any_term && out != prev_out[v]) facts.global_out_freeze = false;
      prev_out[v] = out;
      prev_term[v] = term;
    }
    bool term_now = false;
    for (VertexId v : g.vertices())
      if (is_term(g.vlabel(v))) {
        term_now = true;
        if (!termed[v]) termed[v] = true;
      }
    if (term_now && !any_term) {
      any_term = true;
      facts.first_term_step = stepno;
    }
    if (term_now && stepno != facts.last_step) facts.term_only_at_end = false;
  });
  for (VertexId v : tr.final_graph.vertices())
    if (is_term(tr.final_graph.vlabel(v))) ++facts.final_term_count;
  facts.any_term_final = facts.final_term_count > 0;
  if (!facts.any_term_final) facts.term_only_at_end = false;
  return facts;
}

struct ModeVerdict {
  bool pass = true;
  std::string witness;
};

struct ModeReport {
  ModeVerdict implicit, ltd, otd, gtd;
  int runs = 0;
  int completed = 0;
  bool no_term_ever = true;  // true when no sampled run ever set a term flag

  // Signature in the shape I / LTD / OTD / GTD: the strongest passing mode
  // (I-only systems never raise term at all).
  std::string signature() const {
    if (gtd.pass) return "GTD";
    if (otd.pass) return "OTD";
    if (ltd.pass) return "LTD";
    return "I";
  }
};

inline ModeReport classify_runs(const std::function<RelabellingSystem()>& make_system,
                                const std::vector<LabelledGraph>& samples,
                                const std::vector<std::uint64_t>& seeds, long max_steps = -1,
                                int jobs = 1) {
  ModeReport rep;
  struct RunFacts {
    TraceModeFacts facts;
    std::string tag;
  };
  std::vector<std::pair<LabelledGraph, std::uint64_t>> work;
  for (const auto& g : samples)
    for (auto s : seeds) work.emplace_back(g, s);

  auto run_one = [&](const std::pair<LabelledGraph, std::uint64_t>& w) {
    RelabellingSystem sys = make_system();
    Trace tr = run(sys, w.first, Scheduler::seeded(w.second), max_steps);
    RunFacts rf;
    rf.facts = trace_mode_facts(sys, tr);
    rf.tag = "graph-hash " + std::to_string(w.first.content_hash()) + " seed " +
             std::to_string(w.second);
    return rf;
  };

  std::vector<RunFacts> results;
  if (jobs <= 1) {
    for (const auto& w : work) results.push_back(run_one(w));
  } else {
    std::vector<std::future<RunFacts>> futs;
    for (const auto& w : work)
      futs.push_back(std::async(std::launch::async, run_one, w));
    for (auto& f : futs) results.push_back(f.get());  // merged in work order
  }

  for (const auto& rf : results) {
    ++rep.runs;
    const auto& f = rf.facts;
    if (f.terminated) ++rep.completed;
    auto fail = [&](ModeVerdict& mv, const std::string& why) {
      if (mv.pass) {
        mv.pass = false;
        mv.witness = why + " (" + rf.tag + ")";
      }
    };
    if (!f.terminated) {
      fail(rep.implicit, "budget exhausted");
      fail(rep.ltd, "budget exhausted");
      fail(rep.otd, "budget exhausted");
      fail(rep.gtd, "budget exhausted");
      continue;
    }
    if (f.first_term_step >= 0 || f.any_term_final) rep.no_term_ever = false;
    if (!f.any_term_final) fail(rep.ltd, "no term flag in the normal form");
    if (!f.per_vertex_freeze) fail(rep.ltd, "out or term changed after a vertex's term");
    if (!f.any_term_final) fail(rep.otd, "no term flag in the normal form");
    if (!f.per_vertex_freeze || !f.global_out_freeze)
      fail(rep.otd, "an out label changed after the first term");
    if (!f.term_only_at_end) fail(rep.gtd, "term raised before the final configuration");
  }
  return rep;
}

// --- task checking -----------------------------------------------------------

struct TaskReport {
  bool correct = true;
  std::string correctness_witness;
  bool completeness_checked = false;
  bool complete = true;
  std::vector<std::string> unreachable_outputs;
  bool completeness_exhaustive = true;  // false when the state bound was hit
};

// Bounded reachability: all normal forms obtainable from g under sys.
inline std::vector<LabelledGraph> reachable_normal_forms(const RelabellingSystem& sys,
                                                         const LabelledGraph& g,
                                                         std::size_t max_states,
                                                         bool* exhaustive = nullptr) {
  std::set<std::string> seen;
  std::vector<LabelledGraph> frontier{g}, normal;
  seen.insert(g.canonical_text());
  bool complete_search = true;
  while (!frontier.empty()) {
    LabelledGraph cur = frontier.back();
    frontier.pop_back();
    auto pairs = enabled(sys, cur);
    if (pairs.empty()) {
      normal.push_back(cur);
      continue;
    }
    for (const auto& p : pairs) {
      LabelledGraph next = step(sys, cur, p.rule_id, p.center);
      auto key = next.canonical_text();
      if (seen.count(key)) continue;
      if (seen.size() >= max_states) {
        complete_search = false;
        continue;
      }
      seen.insert(std::move(key));
      frontier.push_back(std::move(next));
    }
  }
  if (exhaustive) *exhaustive = complete_search;
  return normal;
}

// Correctness on every sampled run; completeness by exhaustive reachability
// against the task's enumerated outputs (bounded).
template <typename Task>
inline TaskReport check_task(const std::function<RelabellingSystem()>& make_system,
                             const std::function<LabelledGraph(const LabelledGraph&)>& init,
                             const Task& task, const std::vector<LabelledGraph>& samples,
                             const std::vector<std::uint64_t>& seeds,
                             const std::vector<LabelledGraph>& completeness_samples = {},
                             std::size_t max_states = 20000) {
  TaskReport rep;
  for (const auto& g : samples) {
    for (auto seed : seeds) {
      RelabellingSystem sys = make_system();
      Trace tr = run(sys, init(g), Scheduler::seeded(seed));
      if (!tr.reached_normal_form) {
        rep.correct = false;
        rep.correctness_witness = "budget exhausted";
        return rep;
      }
      if (!task.correct(g, out_labelling(tr.final_graph))) {
        rep.correct = false;
        rep.correctness_witness = "wrong output on graph-hash " +
                                  std::to_string(g.content_hash()) + " seed " +
                                  std::to_string(seed);
        return rep;
      }
    }
  }
  if (!task.outputs) return rep;
  for (const auto& g : completeness_samples) {
    rep.completeness_checked = true;
    RelabellingSystem sys = make_system();
    bool exhaustive = true;
    auto normals = reachable_normal_forms(sys, init(g), max_states, &exhaustive);
    if (!exhaustive) rep.completeness_exhaustive = false;
    std::set<std::string> reachable;
    for (const auto& nf : normals) {
      std::ostringstream key;
      for (const auto& [v, out] : out_labelling(nf))
        key << v << "=" << out.to_text() << ";";
      reachable.insert(key.str());
    }
    for (const auto& want : task.outputs(g)) {
      std::ostringstream key;
      for (const auto& [v, out] : want) key << v << "=" << out.to_text() << ";";
      if (!reachable.count(key.str())) {
        rep.complete = false;
        rep.unreachable_outputs.push_back(key.str());
      }
    }
  }
  return rep;
}

// --- impossibility exhibits ----------------------------------------------------

struct ElectionImpossibility {
  Trace base;          // the run on the small graph
  Trace lifted;        // its lift to the covering
  LabelledGraph cover;
  int elected = 0;     // number of Elect vertices after the lifted run
};

// Runs an election system on the quotient and lifts the run across a
// q-sheeted covering: every label, including the winner's, appears q times.
inline ElectionImpossibility election_impossibility_demo(const RelabellingSystem& sys,
                                                         const LabelledGraph& target_init,
                                                         const Morphism& gamma,
                                                         std::uint64_t seed) {
  auto verdict = is_covering(gamma);
  if (!verdict.is_covering) throw Error("demo needs a covering: " + verdict.reason);
  ElectionImpossibility demo;
  demo.base = run(sys, target_init, Scheduler::seeded(seed));
  if (!demo.base.reached_normal_form) throw Error("base run did not terminate");
  Morphism lifted_gamma = gamma;
  lifted_gamma.source = gamma.source.map_vlabels(
      [&](VertexId v, const Value&) { return target_init.vlabel(gamma(v)); });
  lifted_gamma.target = target_init;
  demo.lifted = lift_run(sys, demo.base, lifted_gamma);
  demo.cover = demo.lifted.final_graph;
  demo.elected = count_elected(demo.cover);
  return demo;
}

struct QuasiImpossibility {
  int steps_lifted = 0;
  int initial_radius = 0;
  int final_radius = 0;
  bool term_in_truncation = false;
  int untouched_vertices = 0;  // vertices still carrying their initial label
  LabelledGraph truncation;
};

// Runs a system with a term event on the target, truncates the target's
// universal covering at radius 2l+1, and quasi-lifts the l-step prefix up
// to and including the first term event: the truncation shows a term flag
// while its fringe has not taken a single step.
inline QuasiImpossibility quasi_impossibility_demo(const RelabellingSystem& sys,
                                                   const LabelledGraph& target_init,
                                                   std::uint64_t seed, long max_steps = -1) {
  Trace tr = run(sys, target_init, Scheduler::seeded(seed), max_steps);
  // Prefix through the first term event.
  int lsteps = -1;
  {
    LabelledGraph g = tr.initial;
    for (const auto& ev : tr.events) {
      Star s = star(g, ev.center);
      auto rw = detail::try_rule(sys.rule(ev.rule_id), s);
      if (!rw) throw Error("demo: replay failure");
      detail::apply_rewrite(g, s, *rw);
      bool has_term = false;
      for (VertexId v : g.vertices())
        if (is_term(g.vlabel(v))) has_term = true;
      if (has_term) {
        lsteps = ev.step + 1;
        break;
      }
    }
  }
  if (lsteps < 0) throw Error("demo: the run never raised a term flag");

  QuasiImpossibility demo;
  demo.steps_lifted = lsteps;
  demo.initial_radius = 2 * lsteps + 1;
  VertexId anchor = target_init.vertices().front();
  QuasiCoveringSpec spec = universal_cover_ball(target_init, anchor, demo.initial_radius);
  LabelledGraph target = target_init;
  std::set<VertexId> touched;
  for (int i = 0; i < lsteps; ++i) {
    const auto& ev = tr.events[static_cast<std::size_t>(i)];
    LabelledGraph target_after = target;
    QuasiCoveringSpec next =
        quasi_lift_step(sys, spec, target, ev.rule_id, ev.center, &target_after);
    for (VertexId v : next.source.vertices())
      if (next.source.vlabel(v) != spec.source.vlabel(v)) touched.insert(v);
    spec = std::move(next);
    target = std::move(target_after);
  }
  demo.final_radius = spec.radius;
  demo.truncation = spec.source;
  for (VertexId v : demo.truncation.vertices()) {
    if (is_term(demo.truncation.vlabel(v))) demo.term_in_truncation = true;
    if (demo.truncation.vlabel(v) == target_init.vlabel(spec.map(v)) && !touched.count(v))
      ++demo.untouched_vertices;
  }
  return demo;
}

}  // namespace lcsim
