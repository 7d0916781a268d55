#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lcsim/algorithms.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/generators.hpp"
#include "lcsim/trace_io.hpp"

using namespace lcsim;

TEST_CASE("enabled pairs") {
  RelabellingSystem colo = colo_system(3);
  LabelledGraph g = colo_init(cube());
  auto pairs = enabled(colo, g);
  CHECK(pairs.size() == 8);  // every vertex of the all-zero cube

  // Fully coloured graph: normal form.
  Trace tr = run(colo, g, Scheduler::seeded(1));
  CHECK(tr.reached_normal_form);
  CHECK(enabled(colo, tr.final_graph).empty());

  // Tree-size pruning on the 3-path is enabled exactly at the two leaves.
  RelabellingSystem ts = treesize_system(TreeSizeVariant::Gtd);
  auto ts_pairs = enabled(ts, treesize_init(path(3)));
  REQUIRE(ts_pairs.size() == 2);
  CHECK(ts_pairs[0].center == 0);
  CHECK(ts_pairs[1].center == 2);
}

TEST_CASE("steps are local and validated") {
  RelabellingSystem colo = colo_system(3);
  LabelledGraph g = colo_init(cube());
  LabelledGraph g2 = step(colo, g, "colour", 0);
  CHECK(state_mem(g2.vlabel(0)) == v_num(1));
  for (VertexId v : g2.vertices())
    if (v != 0) CHECK(g2.vlabel(v) == g.vlabel(v));
  // Repeating at the same vertex is no longer enabled.
  CHECK_THROWS_AS(step(colo, g2, "colour", 0), Error);

  // A centre whose neighbourhood shows colour 1 takes colour 2.
  LabelledGraph g3 = step(colo, g2, "colour", 1);
  CHECK(state_mem(g3.vlabel(1)) == v_num(2));
}

TEST_CASE("runs are deterministic and locality-preserving") {
  RelabellingSystem colo = colo_system(3);
  LabelledGraph g = colo_init(cube());
  Trace a = run(colo, g, Scheduler::seeded(42));
  Trace b = run(colo, g, Scheduler::seeded(42));
  CHECK(save_trace_text(a) == save_trace_text(b));
  Trace c = run(colo, g, Scheduler::seeded(43));
  CHECK(a.reached_normal_form);
  CHECK(c.reached_normal_form);

  // Locality: outside the event's star nothing changes.
  LabelledGraph cur = a.initial;
  for (const auto& ev : a.events) {
    LabelledGraph next = step(colo, cur, ev.rule_id, ev.center);
    std::set<VertexId> starset{ev.center};
    for (VertexId w : cur.neighbours(ev.center)) starset.insert(w);
    for (VertexId v : cur.vertices())
      if (!starset.count(v)) CHECK(next.vlabel(v) == cur.vlabel(v));
    cur = next;
  }
  CHECK(cur == a.final_graph);
}

TEST_CASE("systems with no rules produce empty traces") {
  RelabellingSystem empty{"empty", {}};
  Trace tr = run(empty, colo_init(ring(4)), Scheduler::seeded(0));
  CHECK(tr.events.empty());
  CHECK(tr.reached_normal_form);
}

TEST_CASE("scripted schedules replay exactly and reject bad pairs") {
  RelabellingSystem colo = colo_system(3);
  LabelledGraph g = colo_init(cube());
  Trace a = run(colo, g, Scheduler::seeded(7));
  std::vector<EnabledPair> script;
  for (const auto& ev : a.events) script.push_back({ev.rule_id, ev.center});
  Trace b = run(colo, g, Scheduler::scripted(script));
  CHECK(b.final_graph == a.final_graph);

  CHECK_THROWS_AS(run(colo, colo_init(path(2)),
                      Scheduler::scripted({{"colour", 99}})),
                  Error);
}

TEST_CASE("trace replay validates snapshots") {
  RelabellingSystem colo = colo_system(2);
  Trace tr = run(colo, colo_init(ring(5)), Scheduler::seeded(3));
  CHECK(replay(colo, tr) == tr.final_graph);

  Trace corrupted = tr;
  corrupted.events.front().after = v_num(0);
  CHECK_THROWS_AS(replay(colo, corrupted), Error);
}

TEST_CASE("trace files round-trip") {
  RelabellingSystem colo = colo_system(2);
  Trace tr = run(colo, colo_init(ring(5)), Scheduler::seeded(9));
  std::string text = save_trace_text(tr);
  Trace back = load_trace_text(text);
  CHECK(back.initial == tr.initial);
  REQUIRE(back.events.size() == tr.events.size());
  CHECK(replay(colo, back) == tr.final_graph);
  CHECK(save_trace_text(back, "").substr(0, text.size()) == text);
}

TEST_CASE("disjoint applications commute") {
  RelabellingSystem colo = colo_system(3);
  LabelledGraph g = colo_init(cube());
  // Opposite cube vertices have disjoint stars.
  CHECK(stars_disjoint(g, 0, 7));
  CHECK(commute_check(colo, g, {"colour", 0}, {"colour", 7}));
  CHECK_THROWS_AS(commute_check(colo, g, {"colour", 0}, {"colour", 0}), Error);
  CHECK_THROWS_AS(commute_check(colo, g, {"colour", 0}, {"colour", 1}), Error);

  // Exhaustively over the shipped systems on a small ring: any two enabled
  // pairs with disjoint stars commute.
  for (auto* make : {+[]() { return colo_system(2); },
                     +[]() { return election_tree_system(); }}) {
    RelabellingSystem sys = make();
    LabelledGraph init = sys.name.rfind("colo", 0) == 0 ? colo_init(ring(6))
                                                        : election_init(path(6));
    auto pairs = enabled(sys, init);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j)
        if (stars_disjoint(init, pairs[i].center, pairs[j].center))
          CHECK(commute_check(sys, init, pairs[i], pairs[j]));
  }
}

TEST_CASE("isomorphism invariance of runs") {
  // Relabel the ring by a rotation and rotate the script: the traces match
  // through the isomorphism.
  RelabellingSystem colo = colo_system(2);
  LabelledGraph g = colo_init(ring(6));
  auto rot = [](VertexId v) { return (v + 2) % 6; };
  LabelledGraph g2 = g;  // same generator: rotation is an automorphism of the ring

  Trace a = run(colo, g, Scheduler::seeded(5));
  std::vector<EnabledPair> script;
  for (const auto& ev : a.events) script.push_back({ev.rule_id, rot(ev.center)});
  Trace b = run(colo, g2, Scheduler::scripted(script));
  for (VertexId v : g.vertices())
    CHECK(a.final_graph.vlabel(v) == b.final_graph.vlabel(rot(v)));
}

TEST_CASE("budget exhaustion is flagged, not fatal") {
  RelabellingSystem colo = colo_system(3);
  Trace tr = run(colo, colo_init(cube()), Scheduler::seeded(0), 2);
  CHECK_FALSE(tr.reached_normal_form);
  CHECK(tr.events.size() == 2);
}
