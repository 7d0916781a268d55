#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lcsim/generators.hpp"
#include "lcsim/mazurkiewicz.hpp"
#include "lcsim/termination.hpp"

using namespace lcsim;

namespace {

std::set<long long> final_numbers(const LabelledGraph& g) {
  std::set<long long> out;
  for (VertexId v : g.vertices()) out.insert(mz::number(g.vlabel(v)));
  return out;
}

Value ve(long long n, const char* l, const char* e) {
  return view_entry(n, v_sym(l), v_sym(e));
}

}  // namespace

TEST_CASE("the order on local views") {
  Value empty = make_view({});
  Value one = make_view({ve(1, "a", "e")});
  Value two = make_view({ve(2, "a", "e")});
  Value two_one = make_view({ve(2, "a", "e"), ve(1, "a", "e")});

  CHECK(compare_views(empty, one) == Cmp::Less);       // empty is minimal
  CHECK(compare_views(one, two) == Cmp::Less);         // first numbers decide
  CHECK(compare_views(two, two_one) == Cmp::Less);     // shorter prefix is weaker
  CHECK(compare_views(two_one, two_one) == Cmp::Equal);
  CHECK(compare_views(two, one) == Cmp::Greater);

  // Ties on numbers fall through to vertex labels, then edge labels.
  Value la = make_view({ve(1, "a", "e")});
  Value lb = make_view({ve(1, "b", "e")});
  CHECK(compare_views(la, lb) == Cmp::Less);
  Value ea = make_view({ve(1, "a", "e")});
  Value eb = make_view({ve(1, "a", "f")});
  CHECK(compare_views(ea, eb) == Cmp::Less);

  // Number sequences are compared before any label.
  Value strong_labels = make_view({ve(1, "z", "z")});
  Value big_number = make_view({ve(2, "a", "a")});
  CHECK(compare_views(strong_labels, big_number) == Cmp::Less);

  // Views sort descending on construction.
  Value v = make_view({ve(1, "a", "e"), ve(3, "a", "e"), ve(2, "a", "e")});
  CHECK(v.at(0).at(0) == v_num(3));
  CHECK(v.at(2).at(0) == v_num(1));
}

TEST_CASE("every complete schedule on the two-clique enumerates it") {
  RelabellingSystem sys = mazur_system();
  bool exhaustive = true;
  auto normals = reachable_normal_forms(sys, mazur_init(complete(2)), 10000, &exhaustive);
  REQUIRE(exhaustive);
  REQUIRE_FALSE(normals.empty());
  for (const auto& nf : normals) {
    CHECK(final_numbers(nf) == std::set<long long>{1, 2});
    CHECK(verify_final(nf).ok);
  }
}

TEST_CASE("enumeration on a prime ring yields a permutation") {
  RelabellingSystem sys = mazur_system();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Trace tr = run(sys, mazur_init(ring(5)), Scheduler::seeded(seed));
    REQUIRE(tr.reached_normal_form);
    CHECK(final_numbers(tr.final_graph) == std::set<long long>{1, 2, 3, 4, 5});
    MazurReport rep = verify_final(tr.final_graph);
    CHECK(rep.ok);
    if (!rep.ok)
      for (auto& f : rep.failures) UNSCOPED_INFO(f);
  }
}

TEST_CASE("the six-ring ends on three or six numbers") {
  RelabellingSystem sys = mazur_system();
  std::set<std::size_t> sizes;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Trace tr = run(sys, mazur_init(ring(6)), Scheduler::seeded(seed));
    REQUIRE(tr.reached_normal_form);
    CHECK(verify_final(tr.final_graph).ok);
    std::size_t distinct = final_numbers(tr.final_graph).size();
    CHECK((distinct == 3 || distinct == 6));
    sizes.insert(distinct);
  }
}

TEST_CASE("strongest entries are per-number maxima") {
  Value n1 = make_view({ve(2, "a", "e")});
  Value m = v_set({mailbox_entry(v_sym("a"), 1, n1), mailbox_entry(v_sym("b"), 1, n1)});
  auto strong = strongest(m);
  REQUIRE(strong.size() == 1);
  CHECK(strong[0].at(0) == v_sym("b"));  // larger label wins

  Value single = v_set({mailbox_entry(v_sym("a"), 1, n1)});
  CHECK(strongest(single).size() == 1);
  CHECK(is_strong(single, mailbox_entry(v_sym("a"), 1, n1)));

  // Equal labels: stronger view wins.
  Value weak = make_view({ve(1, "a", "e")});
  Value strong_view = make_view({ve(3, "a", "e")});
  Value m2 = v_set({mailbox_entry(v_sym("a"), 2, weak), mailbox_entry(v_sym("a"), 2, strong_view)});
  auto s2 = strongest(m2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].at(2) == strong_view);
}

TEST_CASE("mailbox reconstruction") {
  CHECK_FALSE(reconstruct(v_set({})).has_value());

  RelabellingSystem sys = mazur_system();
  Trace tr5 = run(sys, mazur_init(ring(5)), Scheduler::seeded(11));
  auto h5 = reconstruct(mz::mailbox(tr5.final_graph.vlabel(0)));
  REQUIRE(h5.has_value());
  CHECK(isomorphic(*h5, ring(5)));
  CHECK(is_covering(reconstruction_projection(tr5.final_graph, *h5)).is_covering);

  Trace tr6 = run(sys, mazur_init(ring(6)), Scheduler::seeded(4));
  auto h6 = reconstruct(mz::mailbox(tr6.final_graph.vlabel(0)));
  REQUIRE(h6.has_value());
  CHECK((isomorphic(*h6, ring(3)) || isomorphic(*h6, ring(6))));
  CHECK(is_covering(reconstruction_projection(tr6.final_graph, *h6)).is_covering);
}

TEST_CASE("final-state verification catches corruption") {
  RelabellingSystem sys = mazur_system();
  Trace tr = run(sys, mazur_init(complete(4)), Scheduler::seeded(2));
  REQUIRE(tr.reached_normal_form);
  MazurReport ok = verify_final(tr.final_graph);
  CHECK(ok.ok);
  CHECK(final_numbers(tr.final_graph) == std::set<long long>{1, 2, 3, 4});

  // Remove an entry from one mailbox: property 2 must fail.
  LabelledGraph bad = tr.final_graph;
  VertexId v0 = bad.vertices().front();
  Value m = mz::mailbox(bad.vlabel(v0));
  std::vector<Value> entries = m.items();
  entries.pop_back();
  bad.set_vlabel(v0, mz::with_field(bad.vlabel(v0), mz::kMailbox, v_set(entries)));
  MazurReport rep = verify_final(bad);
  CHECK_FALSE(rep.ok);
  bool mentions_2 = false;
  for (const auto& f : rep.failures)
    if (f.find("property 2") != std::string::npos) mentions_2 = true;
  CHECK(mentions_2);
}

TEST_CASE("numbers, views, and mailboxes grow monotonically") {
  RelabellingSystem sys = mazur_system();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Trace tr = run(sys, mazur_init(ring(6)), Scheduler::seeded(seed));
    std::map<VertexId, Value> prev;
    scan_trace(sys, tr, [&](int, const LabelledGraph& g) {
      for (VertexId v : g.vertices()) {
        const Value& st = g.vlabel(v);
        auto it = prev.find(v);
        if (it != prev.end()) {
          CHECK(mz::number(it->second) <= mz::number(st));
          CHECK(compare_views(mz::view(st), mz::view(it->second)) != Cmp::Less);
          for (const Value& e : mz::mailbox(it->second).items())
            CHECK(mz::mailbox(st).set_contains(e));
        }
        prev[v] = st;
      }
    });
  }
}

TEST_CASE("agreement radius certifies a quasi-covering at every step") {
  RelabellingSystem sys = mazur_system();
  for (const LabelledGraph& base : {ring(6), complete(3), path(4)}) {
    Trace tr = run(sys, mazur_init(base), Scheduler::seeded(17));
    REQUIRE(tr.reached_normal_form);
    scan_trace(sys, tr, [&](int stepno, const LabelledGraph& g) {
      if (stepno % 3 != 0) return;  // sample steps
      for (VertexId v : g.vertices()) {
        auto h = mazur_snapshot(g.vlabel(v));
        if (!h) continue;
        int r = r_agree(g, v);
        REQUIRE(r >= 0);
        QuasiCoveringSpec spec = agreement_spec(g, v, r);
        CHECK(is_quasi_covering(spec, *h));
      }
    });
  }
}

TEST_CASE("a scripted schedule reproduces the intended quotient") {
  // Drive the enumeration across the standard 2-sheeted projection: the
  // reconstruction comes out as the triangle.
  Morphism g63 = ring_mod_morphism(ring(6), ring(3));
  Trace tr = mazur_completeness_run(ring(6), g63);
  REQUIRE(tr.reached_normal_form);
  REQUIRE(verify_final(tr.final_graph).ok);
  auto h = reconstruct(mz::mailbox(tr.final_graph.vlabel(0)));
  REQUIRE(h.has_value());
  CHECK(isomorphic(*h, ring(3)));
  CHECK(final_numbers(tr.final_graph) == std::set<long long>{1, 2, 3});
}
