#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lcsim/generators.hpp"
#include "lcsim/graph.hpp"
#include "lcsim/graph_io.hpp"

using namespace lcsim;

namespace {

LabelledGraph labelled_ring(const std::vector<const char*>& labels) {
  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  int n = static_cast<int>(labels.size());
  for (int i = 0; i < n; ++i) vs.emplace_back(i, v_sym(labels[static_cast<std::size_t>(i)]));
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n, default_elabel());
  return LabelledGraph::build(vs, es);
}

std::map<VertexId, Value> vertex_labelling(const LabelledGraph& g) {
  std::map<VertexId, Value> ell;
  for (VertexId v : g.vertices()) ell[v] = g.vlabel(v);
  return ell;
}

}  // namespace

TEST_CASE("construction rejects malformed graphs") {
  CHECK_THROWS_AS(LabelledGraph::build({{0, v_num(0)}}, {{0, 0, v_num(0)}}), Error);
  CHECK_THROWS_AS(
      LabelledGraph::build({{0, v_num(0)}, {1, v_num(0)}, {2, v_num(0)}},
                           {{0, 1, v_num(0)}}),
      Error);  // disconnected
}

TEST_CASE("balls are induced subgraphs") {
  LabelledGraph r6 = ring(6);
  CHECK(ball(r6, 0, 0).vertex_count() == 1);
  // Breadth-first distances on the 6-ring: radius 2 around 0 keeps {4,5,0,1,2}.
  LabelledGraph b = ball(r6, 0, 2);
  auto vs = b.vertices();
  CHECK(vs == std::vector<VertexId>{0, 1, 2, 4, 5});
  CHECK(b.edge_count() == 4);  // the induced 5-path

  LabelledGraph k4 = complete(4);
  CHECK(ball(k4, 1, 1) == k4);  // diameter 1
}

TEST_CASE("stars keep only center-incident edges") {
  Star s = star(ring(6), 0);
  CHECK(s.leaves == std::vector<VertexId>{1, 5});
  CHECK(star(complete(3), 0).leaves.size() == 2);
  CHECK(star(path(3), 1).leaves.size() == 2);
  CHECK_THROWS_AS(star(ring(6), 42), Error);

  // Star and radius-1 ball share vertices; star edges are a subset.
  LabelledGraph k4 = complete(4);
  Star s4 = star(k4, 2);
  LabelledGraph b4 = ball(k4, 2, 1);
  CHECK(b4.vertex_count() == s4.leaves.size() + 1);
  CHECK(s4.to_graph().edge_count() == 3);
  CHECK(b4.edge_count() == 6);
}

TEST_CASE("quotient by a labelling") {
  // The classic six-ring with states a,b,c,a,b,c folds onto a triangle.
  LabelledGraph r6 = labelled_ring({"a", "b", "c", "a", "b", "c"});
  QuotientResult q = quotient(r6, vertex_labelling(r6));
  CHECK_FALSE(q.self_loop);
  CHECK(q.graph.vertex_count() == 3);
  CHECK(q.graph.edge_count() == 3);

  // Injective labelling: quotient isomorphic to the input.
  LabelledGraph p4 = path(4);
  std::map<VertexId, Value> inj;
  for (VertexId v : p4.vertices()) inj[v] = v_num(v * 10);
  CHECK(isomorphic(quotient(p4, inj).graph, p4));

  // Direct evaluation on the 4-ring with labels a,b,a,b: a single edge.
  LabelledGraph r4 = labelled_ring({"a", "b", "a", "b"});
  QuotientResult q4 = quotient(r4, vertex_labelling(r4));
  CHECK(q4.graph.vertex_count() == 2);
  CHECK(q4.graph.edge_count() == 1);
  CHECK_FALSE(q4.self_loop);

  // Adjacent equal values flag a would-be self-loop.
  LabelledGraph r4b = labelled_ring({"a", "a", "b", "b"});
  CHECK(quotient(r4b, vertex_labelling(r4b)).self_loop);
}

TEST_CASE("locally bijective labellings") {
  LabelledGraph r6 = labelled_ring({"a", "b", "c", "a", "b", "c"});
  CHECK(is_locally_bijective(r6, vertex_labelling(r6)));

  LabelledGraph bad = labelled_ring({"a", "a", "b", "a", "b", "b"});
  CHECK_FALSE(is_locally_bijective(bad, vertex_labelling(bad)));

  // Both endpoints of the 3-path carry a and sit in the middle vertex's
  // ball, so injectivity on balls fails.
  std::vector<std::pair<VertexId, Value>> vs{{0, v_sym("a")}, {1, v_sym("b")}, {2, v_sym("a")}};
  std::vector<std::tuple<VertexId, VertexId, Value>> es{{0, 1, default_elabel()},
                                                        {1, 2, default_elabel()}};
  LabelledGraph p3 = LabelledGraph::build(vs, es);
  CHECK_FALSE(is_locally_bijective(p3, vertex_labelling(p3)));
}

TEST_CASE("diameter matches the all-pairs oracle") {
  CHECK(diameter(complete(4)) == 1);
  CHECK(diameter(ring(6)) == 3);
  CHECK(diameter(path(5)) == 4);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    LabelledGraph g = random_connected_graph(7, seed, 3);
    auto fw = lcsim::testing::fw_distances(g);
    int want = 0;
    for (auto& [a, row] : fw)
      for (auto& [b, d] : row) want = std::max(want, d);
    CHECK(diameter(g) == want);
  }
}

TEST_CASE("isomorphism search respects labels") {
  CHECK(isomorphic(ring(5), ring(5)));
  CHECK_FALSE(isomorphic(ring(6), path(6)));
  LabelledGraph a = labelled_ring({"a", "b", "a", "b"});
  LabelledGraph b = labelled_ring({"b", "a", "b", "a"});
  CHECK(isomorphic(a, b));
  LabelledGraph c = labelled_ring({"a", "a", "b", "b"});
  CHECK_FALSE(isomorphic(a, c));
}

TEST_CASE("graph files round-trip bit-exactly") {
  LabelledGraph g = labelled_ring({"a", "b", "c", "a", "b", "c"});
  std::string text = save_graph_text(g);
  LabelledGraph back = load_graph_text(text);
  CHECK(back == g);
  CHECK(save_graph_text(back) == text);

  LabelledGraph cube_g = cube();
  CHECK(load_graph_text(save_graph_text(cube_g)) == cube_g);
}

TEST_CASE("generators") {
  CHECK(cube().vertex_count() == 8);
  CHECK(cube().edge_count() == 12);
  for (VertexId v : cube().vertices()) CHECK(cube().degree(v) == 3);
  CHECK(graph_by_name("r6") == ring(6));
  CHECK(graph_by_name("tree5-0").vertex_count() == 5);
  // Pruefer decoding yields a tree for every index.
  for (std::uint64_t idx = 0; idx < 25; ++idx) {
    LabelledGraph t = tree_by_pruefer(5, idx);
    CHECK(t.edge_count() == 4);
    CHECK(t.connected());
  }
}
