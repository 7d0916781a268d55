#pragma once

// Run lifting. A covering lifts every target step to one step per sheet;
// a quasi-covering lifts one step at the cost of two units of radius. Both
// transport the relabelled star through the (bijective) star restriction,
// then double-check that the engine agrees the rule was applicable.

#include <vector>

#include "lcsim/covering.hpp"
#include "lcsim/engine.hpp"

namespace lcsim {

namespace detail {

// Applies the rewrite recorded for the target star at gamma(u) to the
// source star at u by transporting labels through the star bijection.
inline void transport_step(LabelledGraph& g, const Morphism& gamma, VertexId u,
                           const Star& target_before, const StarRewrite& target_rw,
                           const RelabellingSystem& sys, const std::string& rule_id) {
  Star su = star(g, u);
  if (su.leaves.size() != target_before.leaves.size())
    throw Error("lift: star sizes differ at vertex " + std::to_string(u));
  // The engine must see the same local picture.
  auto rw = detail::try_rule(sys.rule(rule_id), su);
  if (!rw) throw Error("lift: rule " + rule_id + " not applicable at vertex " +
                       std::to_string(u));
  StarRewrite transported;
  transported.center_label = target_rw.center_label;
  transported.leaf_labels.resize(su.leaves.size());
  transported.edge_labels.resize(su.leaves.size());
  for (std::size_t i = 0; i < su.leaves.size(); ++i) {
    std::size_t j = target_before.leaf_index(gamma(su.leaves[i]));
    transported.leaf_labels[i] = target_rw.leaf_labels[j];
    transported.edge_labels[i] = target_rw.edge_labels[j];
  }
  if (!(*rw == transported))
    throw Error("lift: rule output disagrees with transported labels (rule is not "
                "isomorphism-invariant)");
  apply_rewrite(g, su, transported);
}

}  // namespace detail

// Lifts a completed target trace across a covering: each target event at
// center v becomes one source event per preimage of v. Returns the source
// trace; after replay every source vertex carries the label of its image.
inline Trace lift_run(const RelabellingSystem& sys, const Trace& target_trace,
                      const Morphism& gamma) {
  auto verdict = is_covering(gamma);
  if (!verdict.is_covering) throw Error("lift_run needs a covering: " + verdict.reason);

  Trace out;
  out.system = sys.name;
  out.scheduler = Scheduler::scripted({});
  out.initial = gamma.source;
  out.max_steps = static_cast<long>(target_trace.events.size()) * verdict.sheets;

  LabelledGraph g = gamma.source;
  LabelledGraph h = target_trace.initial;
  auto fibers = gamma.fibers();
  int stepno = 0;
  for (const auto& ev : target_trace.events) {
    Star sh = star(h, ev.center);
    auto rw = detail::try_rule(sys.rule(ev.rule_id), sh);
    if (!rw) throw Error("lift: target trace event not applicable");
    for (VertexId u : fibers.at(ev.center)) {
      TraceEvent copy;
      copy.step = stepno++;
      copy.rule_id = ev.rule_id;
      copy.center = u;
      copy.before = star_snapshot(star(g, u));
      detail::transport_step(g, gamma, u, sh, *rw, sys, ev.rule_id);
      copy.after = star_snapshot(star(g, u));
      out.events.push_back(std::move(copy));
      out.scheduler.script.push_back({ev.rule_id, u});
    }
    detail::apply_rewrite(h, sh, *rw);
  }
  out.final_graph = g;
  out.reached_normal_form = enabled(sys, g).empty();
  return out;
}

// One step of quasi-lifting: applies the target step to every preimage
// whose star lies inside the radius-r ball, and returns the relabelled
// source with a radius r-2 spec.
inline QuasiCoveringSpec quasi_lift_step(const RelabellingSystem& sys,
                                         const QuasiCoveringSpec& spec,
                                         const LabelledGraph& target,
                                         const std::string& rule_id, VertexId target_center,
                                         LabelledGraph* target_after = nullptr) {
  if (spec.radius < 2) throw Error("quasi-lifting needs radius >= 2");
  if (!is_quasi_covering(spec, target)) throw Error("not a quasi-covering");

  Star sh = star(target, target_center);
  auto rw = detail::try_rule(sys.rule(rule_id), sh);
  if (!rw) throw Error("quasi-lift: target step not applicable");

  LabelledGraph g = spec.source;
  auto dist = g.distances_from(spec.center);
  Morphism gamma = spec.map;
  std::vector<VertexId> centers;
  for (const auto& [u, d] : dist)
    if (d <= spec.radius - 1 && gamma.defined_at(u) && gamma(u) == target_center)
      centers.push_back(u);
  for (VertexId u : centers) detail::transport_step(g, gamma, u, sh, *rw, sys, rule_id);

  LabelledGraph h = target;
  detail::apply_rewrite(h, sh, *rw);
  if (target_after) *target_after = h;

  QuasiCoveringSpec next;
  next.source = g;
  next.center = spec.center;
  next.radius = spec.radius - 2;
  next.map = Morphism{g, h, gamma.map};
  return next;
}

}  // namespace lcsim
