#pragma once

// The distributed enumeration algorithm. Every vertex carries
// (base, n, N, M, a, choice, tree) in its mem component: base is the
// original label (never changed), n the claimed number, N the local view,
// M the mailbox. The trailing fields belong to the stable-property and
// universal-system layers built on top and stay inert here.
//
// A local view holds one (number, vertex-label, edge-label) triple per
// numbered neighbour, sorted descending; unnumbered neighbours do not
// appear (the initial view is empty). The mailbox is a set of
// (label, number, view) triples and only ever mentions numbered vertices.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lcsim/covering.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/normalized.hpp"

namespace lcsim {

// --- state layout ---------------------------------------------------------

namespace mz {

constexpr std::size_t kBase = 0;
constexpr std::size_t kNum = 1;
constexpr std::size_t kView = 2;
constexpr std::size_t kMailbox = 3;
constexpr std::size_t kCounter = 4;
constexpr std::size_t kChoice = 5;
constexpr std::size_t kTree = 6;

inline Value initial_mem(const Value& base) {
  return v_tup({base, v_num(0), v_tup({}), v_set({}), v_num(-1), v_sym("nil"),
                v_sym("nil")});
}

inline const Value& base(const Value& state) { return state_mem(state).at(kBase); }
inline long long number(const Value& state) { return state_mem(state).at(kNum).ival(); }
inline const Value& view(const Value& state) { return state_mem(state).at(kView); }
inline const Value& mailbox(const Value& state) { return state_mem(state).at(kMailbox); }
inline long long counter(const Value& state) { return state_mem(state).at(kCounter).ival(); }
inline const Value& choice(const Value& state) { return state_mem(state).at(kChoice); }
inline const Value& tree(const Value& state) { return state_mem(state).at(kTree); }

inline Value with_field(const Value& state, std::size_t field, const Value& v) {
  return with_mem(state, state_mem(state).with_item(field, v));
}

}  // namespace mz

inline LabelledGraph mazur_init(const LabelledGraph& g) {
  return g.map_vlabels(
      [](VertexId, const Value& label) { return make_state(mz::initial_mem(label)); });
}

// --- local views and their order -------------------------------------------

// View entries are (number, vertex label, edge label).
inline Value view_entry(long long n, const Value& vl, const Value& el) {
  return v_tup({v_num(n), vl, el});
}

// Sorted descending by (number, vertex label, edge label).
inline Value make_view(std::vector<Value> entries) {
  std::sort(entries.begin(), entries.end(), [](const Value& a, const Value& b) { return b < a; });
  return v_tup(std::move(entries));
}

enum class Cmp { Less, Equal, Greater };

// The order on local views: compare the number sequences first (prefix
// shorter is weaker), then vertex labels, then edge labels; the empty view
// is minimal.
inline Cmp compare_views(const Value& a, const Value& b) {
  const auto& xs = a.items();
  const auto& ys = b.items();
  std::size_t m = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < m; ++i) {
    const Value& na = xs[i].at(0);
    const Value& nb = ys[i].at(0);
    if (na != nb) return na < nb ? Cmp::Less : Cmp::Greater;
  }
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? Cmp::Less : Cmp::Greater;
  for (std::size_t i = 0; i < m; ++i) {
    const Value& la = xs[i].at(1);
    const Value& lb = ys[i].at(1);
    if (la != lb) return la < lb ? Cmp::Less : Cmp::Greater;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Value& ea = xs[i].at(2);
    const Value& eb = ys[i].at(2);
    if (ea != eb) return ea < eb ? Cmp::Less : Cmp::Greater;
  }
  return Cmp::Equal;
}

inline bool view_less(const Value& a, const Value& b) { return compare_views(a, b) == Cmp::Less; }

// --- mailboxes -------------------------------------------------------------

// Mailbox entries are (vertex label, number, view).
inline Value mailbox_entry(const Value& vl, long long n, const Value& view) {
  return v_tup({vl, v_num(n), view});
}

// Per-number maxima under (label, view): keeps (l,n,N) iff no (l',n,N')
// with l < l', or l = l' and N strictly weaker.
inline std::vector<Value> strongest(const Value& mailbox) {
  std::map<long long, Value> best;  // number -> (l, n, N)
  for (const Value& e : mailbox.items()) {
    long long n = e.at(1).ival();
    auto it = best.find(n);
    if (it == best.end()) {
      best.emplace(n, e);
      continue;
    }
    const Value& cl = it->second.at(0);
    if (e.at(0) > cl || (e.at(0) == cl && view_less(it->second.at(2), e.at(2))))
      it->second = e;
  }
  std::vector<Value> out;
  for (auto& [_, e] : best) out.push_back(e);
  return out;
}

inline bool is_strong(const Value& mailbox, const Value& entry) {
  for (const Value& s : strongest(mailbox))
    if (s == entry) return true;
  return false;
}

// Rebuilds the graph of strongest vertices from a mailbox: vertices are the
// known numbers, labels the base labels, edges read off the strong views.
// Returns nothing when the mailbox is malformed (dangling neighbour
// numbers, label conflicts, self-loops, disconnected).
inline std::optional<LabelledGraph> reconstruct(const Value& mailbox) {
  auto strong = strongest(mailbox);
  if (strong.empty()) return std::nullopt;
  std::set<long long> numbers;
  for (const Value& e : strong) numbers.insert(e.at(1).ival());
  std::vector<std::pair<VertexId, Value>> vs;
  for (const Value& e : strong)
    vs.emplace_back(static_cast<VertexId>(e.at(1).ival()), e.at(0));
  std::map<EdgeKey, Value> edges;
  for (const Value& e : strong) {
    long long n = e.at(1).ival();
    for (const Value& ve : e.at(2).items()) {
      long long n2 = ve.at(0).ival();
      if (n2 == n) return std::nullopt;           // self-loop
      if (!numbers.count(n2)) return std::nullopt;  // dangling neighbour
      EdgeKey k(static_cast<VertexId>(n), static_cast<VertexId>(n2));
      auto [it, fresh] = edges.emplace(k, ve.at(2));
      if (!fresh && it->second != ve.at(2)) return std::nullopt;  // label conflict
    }
  }
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  for (const auto& [k, label] : edges) es.emplace_back(k.a, k.b, label);
  LabelledGraph h = LabelledGraph::build(vs, es, /*require_connected=*/false);
  if (!h.connected()) return std::nullopt;
  return h;
}

// The per-vertex snapshot H_i(v): defined only when the vertex's own
// (label, number, view) entry sits in the strong set of its mailbox.
inline std::optional<LabelledGraph> mazur_snapshot(const Value& state) {
  long long n = mz::number(state);
  if (n == 0) return std::nullopt;
  const Value& m = mz::mailbox(state);
  Value own = mailbox_entry(mz::base(state), n, mz::view(state));
  if (!m.set_contains(own)) return std::nullopt;
  if (!is_strong(m, own)) return std::nullopt;
  return reconstruct(m);
}

// --- the two rules ----------------------------------------------------------

inline RelabellingSystem mazur_system() {
  RelabellingSystem sys;
  sys.name = "mazurkiewicz";

  Rule diffusion;
  diffusion.id = "diffusion";
  diffusion.apply = [](const Star& s) -> std::optional<StarRewrite> {
    const Value& m0 = mz::mailbox(s.center_label);
    bool differs = false;
    for (const Value& l : s.leaf_labels)
      if (mz::mailbox(l) != m0) {
        differs = true;
        break;
      }
    if (!differs) return std::nullopt;
    Value u = m0;
    for (const Value& l : s.leaf_labels) u = u.set_union(mz::mailbox(l));
    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = mz::with_field(s.center_label, mz::kMailbox, u);
    for (std::size_t i = 0; i < s.leaves.size(); ++i)
      rw.leaf_labels[i] = mz::with_field(s.leaf_labels[i], mz::kMailbox, u);
    return rw;
  };

  Rule renaming;
  renaming.id = "renaming";
  renaming.apply = [](const Star& s) -> std::optional<StarRewrite> {
    const Value& m0 = mz::mailbox(s.center_label);
    for (const Value& l : s.leaf_labels)
      if (mz::mailbox(l) != m0) return std::nullopt;
    long long n0 = mz::number(s.center_label);
    if (n0 != 0) {
      bool rival = false;
      const Value& own_l = mz::base(s.center_label);
      const Value& own_view = mz::view(s.center_label);
      for (const Value& e : m0.items()) {
        if (e.at(1).ival() != n0) continue;
        if (own_l < e.at(0) || (own_l == e.at(0) && view_less(own_view, e.at(2)))) {
          rival = true;
          break;
        }
      }
      if (!rival) return std::nullopt;
    }
    long long fresh = 1;
    for (const Value& e : m0.items()) fresh = std::max(fresh, e.at(1).ival() + 1);

    StarRewrite rw = StarRewrite::keep(s);
    rw.center_label = mz::with_field(s.center_label, mz::kNum, v_num(fresh));
    // Each neighbour's view swaps the center's old entry for the new one.
    for (std::size_t i = 0; i < s.leaves.size(); ++i) {
      std::vector<Value> entries = mz::view(s.leaf_labels[i]).items();
      if (n0 != 0) {
        Value old_entry = view_entry(n0, mz::base(s.center_label), s.edge_labels[i]);
        auto it = std::find(entries.begin(), entries.end(), old_entry);
        if (it == entries.end()) throw Error("renaming: stale view entry missing");
        entries.erase(it);
      }
      entries.push_back(view_entry(fresh, mz::base(s.center_label), s.edge_labels[i]));
      rw.leaf_labels[i] = mz::with_field(s.leaf_labels[i], mz::kView, make_view(entries));
    }
    // Everyone in the star receives the updated numbered entries.
    Value m = m0;
    m = m.set_insert(mailbox_entry(mz::base(rw.center_label), fresh,
                                   mz::view(rw.center_label)));
    for (std::size_t i = 0; i < s.leaves.size(); ++i) {
      long long n = mz::number(rw.leaf_labels[i]);
      if (n > 0)
        m = m.set_insert(mailbox_entry(mz::base(rw.leaf_labels[i]), n,
                                       mz::view(rw.leaf_labels[i])));
    }
    rw.center_label = mz::with_field(rw.center_label, mz::kMailbox, m);
    for (std::size_t i = 0; i < s.leaves.size(); ++i)
      rw.leaf_labels[i] = mz::with_field(rw.leaf_labels[i], mz::kMailbox, m);
    return rw;
  };

  sys.rules = {diffusion, renaming};
  return sys;
}

// --- final-state verification ------------------------------------------------

struct MazurReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
};

// Checks the six final-labelling properties: (1) numbers fill [1,m];
// (2) mailboxes all equal; (3) every vertex's triple is everywhere known;
// (4) strong entries are exactly the realized ones; (5) equal numbers mean
// equal label and view; (6) the numbering is locally bijective.
inline MazurReport verify_final(const LabelledGraph& g) {
  MazurReport rep;
  auto verts = g.vertices();

  long long m = 0;
  std::set<long long> used;
  for (VertexId v : verts) {
    long long n = mz::number(g.vlabel(v));
    used.insert(n);
    m = std::max(m, n);
  }
  for (long long p = 1; p <= m; ++p)
    if (!used.count(p)) {
      rep.fail("property 1: number " + std::to_string(p) + " unused");
      break;
    }
  if (used.count(0)) rep.fail("property 1: an unnumbered vertex remains");

  const Value& m0 = mz::mailbox(g.vlabel(verts.front()));
  for (VertexId v : verts)
    if (mz::mailbox(g.vlabel(v)) != m0) {
      rep.fail("property 2: mailboxes differ");
      break;
    }

  for (VertexId v : verts) {
    Value own = mailbox_entry(mz::base(g.vlabel(v)), mz::number(g.vlabel(v)),
                              mz::view(g.vlabel(v)));
    if (!m0.set_contains(own)) {
      rep.fail("property 3: a vertex's triple is not in the mailbox");
      break;
    }
  }

  {
    std::set<Value> realized;
    for (VertexId v : verts)
      realized.insert(mailbox_entry(mz::base(g.vlabel(v)), mz::number(g.vlabel(v)),
                                    mz::view(g.vlabel(v))));
    for (const Value& e : m0.items()) {
      bool strong = is_strong(m0, e);
      bool real = realized.count(e) != 0;
      if (strong != real) {
        rep.fail("property 4: strong/realized mismatch for entry " + e.to_text());
        break;
      }
    }
  }

  for (std::size_t i = 0; i < verts.size() && rep.ok; ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const Value& a = g.vlabel(verts[i]);
      const Value& b = g.vlabel(verts[j]);
      if (mz::number(a) == mz::number(b) &&
          (mz::base(a) != mz::base(b) || mz::view(a) != mz::view(b))) {
        rep.fail("property 5: equal numbers with different label or view");
        break;
      }
    }

  {
    std::map<VertexId, Value> numbering;
    for (VertexId v : verts) numbering[v] = v_num(mz::number(g.vlabel(v)));
    LabelledGraph base_graph =
        g.map_vlabels([](VertexId, const Value& s) { return mz::base(s); });
    if (!is_locally_bijective(base_graph, numbering))
      rep.fail("property 6: numbering is not locally bijective");
  }
  return rep;
}

// Projection v -> n(v) as a morphism onto the reconstructed graph, with the
// source stripped back to base labels.
inline Morphism reconstruction_projection(const LabelledGraph& g, const LabelledGraph& h) {
  Morphism m;
  m.source = g.map_vlabels([](VertexId, const Value& s) { return mz::base(s); });
  m.target = h;
  for (VertexId v : g.vertices())
    m.map[v] = static_cast<VertexId>(mz::number(g.vlabel(v)));
  return m;
}

// Agreement radius: how far around v the per-vertex snapshots coincide with
// v's, capped by the diameter.
inline int r_agree(const LabelledGraph& g, VertexId v) {
  auto hv = mazur_snapshot(g.vlabel(v));
  if (!hv) return -1;
  auto dist = g.distances_from(v);
  int cap = diameter(g);
  int r = cap;
  for (const auto& [w, d] : dist) {
    if (w == v || d > r) continue;
    auto hw = mazur_snapshot(g.vlabel(w));
    if (!hw || *hw != *hv) r = std::min(r, d - 1);
  }
  return r;
}

// The quasi-covering claimed by the agreement theorem, ready for checking.
inline QuasiCoveringSpec agreement_spec(const LabelledGraph& g, VertexId v, int radius) {
  QuasiCoveringSpec spec;
  spec.source = g.map_vlabels([](VertexId, const Value& s) { return mz::base(s); });
  spec.center = v;
  spec.radius = radius;
  Morphism gamma;
  gamma.source = spec.source;
  auto hv = mazur_snapshot(g.vlabel(v));
  if (!hv) throw Error("agreement spec needs a defined snapshot");
  gamma.target = *hv;
  for (VertexId u : ball_vertices(g, v, radius))
    gamma.map[u] = static_cast<VertexId>(mz::number(g.vlabel(u)));
  spec.map = std::move(gamma);
  return spec;
}

// Drives the enumeration to a prescribed outcome across a covering: first
// rename every preimage of the target vertex enumerated 1, diffuse to
// quiescence, then preimages of 2, and so on. Returns the recorded script's
// trace. The final numbering equals the lifted enumeration.
inline Trace mazur_completeness_run(const LabelledGraph& g, const Morphism& gamma) {
  auto verdict = is_covering(gamma);
  if (!verdict.is_covering)
    throw Error("completeness run needs a covering: " + verdict.reason);
  RelabellingSystem sys = mazur_system();
  LabelledGraph cur = mazur_init(g);
  std::vector<EnabledPair> script;
  auto apply = [&](const std::string& rule, VertexId v) {
    cur = step(sys, cur, rule, v);
    script.push_back({rule, v});
  };
  auto diffuse = [&]() {
    while (true) {
      auto pairs = enabled(sys, cur);
      bool any = false;
      for (const auto& p : pairs)
        if (p.rule_id == "diffusion") {
          apply(p.rule_id, p.center);
          any = true;
          break;
        }
      if (!any) break;
    }
  };
  std::vector<VertexId> order = gamma.target.vertices();
  auto fibers = gamma.fibers();
  for (VertexId t : order) {
    for (VertexId u : fibers.at(t)) apply("renaming", u);
    diffuse();
  }
  // Finish whatever remains (no renaming should be left).
  while (true) {
    auto pairs = enabled(sys, cur);
    if (pairs.empty()) break;
    apply(pairs.front().rule_id, pairs.front().center);
  }
  Trace tr = run(sys, mazur_init(g), Scheduler::scripted(script),
                 static_cast<long>(script.size()) + 1);
  return tr;
}

}  // namespace lcsim
