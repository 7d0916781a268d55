#pragma once

// Stable-property counters. The plain SSP rule counts rounds of a boolean
// condition; the generalized wrapper runs any base system under a valuation
// P, resetting a vertex's counter whenever its P-value changes, and lets
// the counter rule fire only where a guard holds. One third of the counter
// is the radius within which the valuation is known to have agreed at some
// single past instant.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lcsim/engine.hpp"
#include "lcsim/mazurkiewicz.hpp"

namespace lcsim {

// Counter field access for the mazur-family state layout.
inline long long gssp_counter(const Value& state) { return mz::counter(state); }
inline Value with_counter(const Value& state, long long a) {
  return mz::with_field(state, mz::kCounter, v_num(a));
}

inline long long trust_radius(long long a) { return a < 0 ? -1 : a / 3; }

using Valuation = std::function<Value(const Value& state)>;
using Guard = std::function<bool(const Value& center_state)>;

// Wraps a base system: base rules reset the counter of any star vertex
// whose valuation changed; the counter rule fires where the guard holds and
// the whole star agrees on P, setting a(v0) := 1 + min over the star.
inline RelabellingSystem gssp_wrap(const RelabellingSystem& base, const Valuation& P,
                                   const Guard& phi, const std::string& name = "") {
  RelabellingSystem sys;
  sys.name = name.empty() ? base.name + "+gssp" : name;
  for (const auto& r : base.rules) {
    Rule wrapped;
    wrapped.id = r.id;
    auto inner = r.apply;
    wrapped.apply = [inner, P](const Star& s) -> std::optional<StarRewrite> {
      auto rw = inner(s);
      if (!rw) return std::nullopt;
      if (P(rw->center_label) != P(s.center_label))
        rw->center_label = with_counter(rw->center_label, -1);
      for (std::size_t i = 0; i < s.leaves.size(); ++i)
        if (P(rw->leaf_labels[i]) != P(s.leaf_labels[i]))
          rw->leaf_labels[i] = with_counter(rw->leaf_labels[i], -1);
      return rw;
    };
    sys.rules.push_back(std::move(wrapped));
  }
  Rule count;
  count.id = "gssp-count";
  count.apply = [P, phi](const Star& s) -> std::optional<StarRewrite> {
    if (!phi(s.center_label)) return std::nullopt;
    Value p0 = P(s.center_label);
    long long lo = gssp_counter(s.center_label);
    for (std::size_t i = 0; i < s.leaves.size(); ++i) {
      if (P(s.leaf_labels[i]) != p0) return std::nullopt;
      lo = std::min(lo, gssp_counter(s.leaf_labels[i]));
    }
    long long next = 1 + lo;
    if (next == gssp_counter(s.center_label)) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_counter(s.center_label, next);
    return rw;
  };
  sys.rules.push_back(std::move(count));
  return sys;
}

// The original boolean form: the counting rule needs only P(v0) true (false
// vertices idle at -1 and cap their neighbours through the minimum).
inline RelabellingSystem ssp_system(const RelabellingSystem& base,
                                    const std::function<bool(const Value&)>& pred,
                                    const std::string& name = "") {
  RelabellingSystem sys;
  sys.name = name.empty() ? base.name + "+ssp" : name;
  auto reset = [pred](const Value& before, const Value& after) {
    return pred(before) != pred(after) ? with_counter(after, -1) : after;
  };
  for (const auto& r : base.rules) {
    Rule wrapped;
    wrapped.id = r.id;
    auto inner = r.apply;
    wrapped.apply = [inner, reset](const Star& s) -> std::optional<StarRewrite> {
      auto rw = inner(s);
      if (!rw) return std::nullopt;
      rw->center_label = reset(s.center_label, rw->center_label);
      for (std::size_t i = 0; i < s.leaves.size(); ++i)
        rw->leaf_labels[i] = reset(s.leaf_labels[i], rw->leaf_labels[i]);
      return rw;
    };
    sys.rules.push_back(std::move(wrapped));
  }
  Rule count;
  count.id = "ssp-count";
  count.apply = [pred](const Star& s) -> std::optional<StarRewrite> {
    if (!pred(s.center_label)) {
      if (gssp_counter(s.center_label) == -1) return std::nullopt;
      StarRewrite rw = StarRewrite::keep(s);
      rw.center_label = with_counter(s.center_label, -1);
      return rw;
    }
    long long lo = gssp_counter(s.center_label);
    for (const Value& l : s.leaf_labels) lo = std::min(lo, gssp_counter(l));
    long long next = 1 + lo;
    if (next == gssp_counter(s.center_label)) return std::nullopt;
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = with_counter(s.center_label, next);
    return rw;
  };
  sys.rules.push_back(std::move(count));
  return sys;
}

// --- offline verification of the one-third lemma ------------------------------

struct ThirdLemmaViolation {
  int step = 0;          // the step index j
  VertexId vertex = 0;   // the vertex v
  long long counter = 0;
  int radius = 0;
};

struct ThirdLemmaReport {
  bool checked = false;
  std::vector<ThirdLemmaViolation> violations;
  bool value_convex = true;
  std::string convexity_witness;
};

// Replays a trace recording per-vertex valuations, then checks: for every
// step j and vertex v with a_j(v) >= 0, some single past instant i <= j has
// P_i(w) = P_j(v) for every w within the given radius (default: one third
// of the counter). radius_slack lets tests probe the +1 radius.
inline ThirdLemmaReport check_third_lemma(const RelabellingSystem& sys, const Trace& tr,
                                          const Valuation& P, int radius_slack = 0) {
  ThirdLemmaReport rep;
  rep.checked = true;
  auto verts = tr.initial.vertices();

  // Per-vertex histories as (from_step, value) segments; step -1 is initial.
  std::map<VertexId, std::vector<std::pair<int, Value>>> hist;
  std::map<VertexId, std::vector<std::pair<int, long long>>> counters;
  scan_trace(sys, tr, [&](int stepno, const LabelledGraph& g) {
    for (VertexId v : verts) {
      Value p = P(g.vlabel(v));
      auto& h = hist[v];
      if (h.empty() || h.back().second != p) h.emplace_back(stepno, p);
      long long a = gssp_counter(g.vlabel(v));
      auto& c = counters[v];
      if (c.empty() || c.back().second != a) c.emplace_back(stepno, a);
    }
  });

  // Value-convexity: no value may recur after being abandoned.
  for (VertexId v : verts) {
    std::set<Value> seen;
    for (const auto& [_, p] : hist[v])
      if (!seen.insert(p).second) {
        rep.value_convex = false;
        rep.convexity_witness =
            "vertex " + std::to_string(v) + " revisits value " + p.to_text();
      }
  }

  std::map<VertexId, std::map<VertexId, int>> dist;
  for (VertexId v : verts) dist[v] = tr.initial.distances_from(v);

  // True iff P at w equals `want` at some instant in [lo, hi].
  auto holds_in = [&](VertexId w, const Value& want, int lo, int hi) -> std::pair<bool, std::pair<int, int>> {
    const auto& h = hist[w];
    for (std::size_t i = 0; i < h.size(); ++i) {
      int from = h[i].first;
      int to = i + 1 < h.size() ? h[i + 1].first - 1 : hi;
      if (h[i].second == want && to >= lo && from <= hi)
        return {true, {std::max(from, lo), std::min(to, hi)}};
    }
    return {false, {0, -1}};
  };

  int last_step = tr.events.empty() ? -1 : tr.events.back().step;

  // Only (j, v) where v's counter or valuation changed need checking.
  for (VertexId v : verts) {
    std::set<int> check_steps;
    for (const auto& [st, _] : counters[v]) check_steps.insert(st);
    for (const auto& [st, _] : hist[v]) check_steps.insert(st);
    check_steps.insert(last_step);
    for (int j : check_steps) {
      // Counter and valuation at step j.
      auto at = [&](const auto& segs) {
        auto val = segs.front().second;
        for (const auto& [st, x] : segs) {
          if (st > j) break;
          val = x;
        }
        return val;
      };
      long long a = at(counters[v]);
      if (a < 0) continue;
      Value pj = at(hist[v]);
      int radius = static_cast<int>(trust_radius(a)) + radius_slack;
      // Intersect the target-value intervals over the ball.
      int lo = -1, hi = j;
      bool ok = true;
      for (const auto& [w, d] : dist[v]) {
        if (d > radius) continue;
        auto [has, seg] = holds_in(w, pj, -1, j);
        if (!has) {
          ok = false;
          break;
        }
        lo = std::max(lo, seg.first);
        hi = std::min(hi, seg.second);
      }
      // Intervals per vertex may be unions of segments; redo the
      // intersection exactly when the greedy single-segment pass failed.
      if (ok && lo > hi) {
        ok = false;
        for (int i = -1; i <= j && !ok; ++i) {
          bool all = true;
          for (const auto& [w, d] : dist[v]) {
            if (d > radius) continue;
            const auto& h = hist[w];
            Value cur = h.front().second;
            for (const auto& [st, x] : h) {
              if (st > i) break;
              cur = x;
            }
            if (cur != pj) {
              all = false;
              break;
            }
          }
          ok = all;
        }
      }
      if (!ok)
        rep.violations.push_back(
            {j, v, a, radius});
    }
  }
  return rep;
}

}  // namespace lcsim
