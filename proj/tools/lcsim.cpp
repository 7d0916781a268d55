// Command-line front end: run relabelling systems, check and build
// coverings, run the cartography and election algorithms, classify
// termination behaviour, and reproduce the impossibility exhibits.
//
// Graphs are given as file paths or generator names (r6, p5, k4, s3, cube,
// tree8-13). All commands are deterministic under a fixed --seed; exit
// status 0 means every requested check passed.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "lcsim/catalog.hpp"
#include "lcsim/lcsim.hpp"
#include "lcsim/trace_io.hpp"

using namespace lcsim;

namespace {

LabelledGraph resolve_graph(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_graph_file(arg);
  return graph_by_name(arg);
}

int cmd_run(const std::string& system, const std::string& graph, std::uint64_t seed,
            long max_steps, const std::string& out) {
  CatalogEntry entry = catalog_lookup(system);
  LabelledGraph g = resolve_graph(graph);
  RelabellingSystem sys = entry.build();
  Trace tr = run(sys, entry.init(g), Scheduler::seeded(seed), max_steps);
  std::string footer;
  if (system.rfind("carto:", 0) == 0) footer = carto_footer_table(tr.final_graph);
  if (!out.empty()) save_trace_file(tr, out, footer);
  std::cout << "system " << sys.name << "\n"
            << "steps " << tr.events.size() << "\n"
            << "outcome " << (tr.reached_normal_form ? "normal-form" : "budget-exhausted")
            << "\n";
  return tr.reached_normal_form ? 0 : 1;
}

int cmd_check_cover(const std::string& source, const std::string& target,
                    const std::string& map_spec) {
  Morphism gamma;
  if (std::filesystem::exists(map_spec) && target.empty()) {
    MorphismFile mf = load_morphism_file(map_spec);
    gamma.source = mf.source;
    gamma.target = mf.target;
    gamma.map = mf.map;
  } else {
    gamma.source = resolve_graph(source);
    gamma.target = resolve_graph(target);
    if (map_spec == "mod") {
      gamma = ring_mod_morphism(gamma.source, gamma.target);
    } else if (map_spec == "identity") {
      for (VertexId v : gamma.source.vertices()) gamma.map[v] = v;
    } else {
      MorphismFile mf = load_morphism_file(map_spec);
      gamma.map = mf.map;
    }
  }
  CoveringVerdict verdict = is_covering(gamma);
  if (verdict.is_covering) {
    std::cout << "covering, " << verdict.sheets << " sheets\n";
    return 0;
  }
  std::cout << "not a covering: " << verdict.reason;
  if (verdict.witness) std::cout << " (vertex " << *verdict.witness << ")";
  std::cout << "\n";
  return 1;
}

int cmd_build_cover(const std::string& base, int sheets, const std::string& out,
                    bool universal, int radius, VertexId center) {
  LabelledGraph h = resolve_graph(base);
  if (universal) {
    QuasiCoveringSpec spec = universal_cover_ball(h, center, radius);
    std::cout << "truncation vertices " << spec.source.vertex_count() << " radius "
              << spec.radius << "\n";
    if (!out.empty())
      std::ofstream(out) << save_morphism_text(spec.source, h, spec.map.map);
    return 0;
  }
  // Spanning tree by BFS; cyclic shift on every cotree edge.
  std::set<EdgeKey> tree;
  {
    std::set<VertexId> seen{h.vertices().front()};
    std::vector<VertexId> queue{h.vertices().front()};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (VertexId w : h.neighbours(queue[i]))
        if (seen.insert(w).second) {
          tree.insert(EdgeKey(queue[i], w));
          queue.push_back(w);
        }
  }
  std::map<EdgeKey, std::vector<int>> sigma;
  for (const auto& [k, _] : h.edges()) {
    if (tree.count(k)) continue;
    std::vector<int> cyc(sheets);
    for (int i = 0; i < sheets; ++i) cyc[i] = (i % sheets) + 1 == sheets ? 1 : i + 2;
    sigma[k] = cyc;
  }
  auto [g, proj] = reidemeister_build(h, tree, sheets, sigma);
  auto verdict = is_covering(proj);
  std::cout << "built covering with " << g.vertex_count() << " vertices, "
            << verdict.sheets << " sheets\n";
  if (!out.empty()) std::ofstream(out) << save_morphism_text(g, h, proj.map);
  return verdict.is_covering ? 0 : 1;
}

int cmd_carto(const std::string& family, const std::string& graph, std::uint64_t seed,
              const std::string& out) {
  FamilySpec fam = family_by_name(family);
  LabelledGraph g = resolve_graph(graph);
  RelabellingSystem sys = carto_system(fam);
  Trace tr = run(sys, mazur_init(g), Scheduler::seeded(seed));
  std::string footer = carto_footer_table(tr.final_graph);
  if (!out.empty()) save_trace_file(tr, out, footer);
  std::cout << "outcome " << (tr.reached_normal_form ? "normal-form" : "budget-exhausted")
            << "\nsteps " << tr.events.size() << "\n"
            << footer;
  if (!tr.reached_normal_form) return 1;
  MazurReport rep = verify_final(tr.final_graph);
  std::cout << "final-check " << (rep.ok ? "ok" : "failed") << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_elect(const std::string& family, const std::string& system,
              const std::string& graph, std::uint64_t seed, const std::string& out) {
  LabelledGraph g = resolve_graph(graph);
  RelabellingSystem sys;
  LabelledGraph init;
  if (!family.empty()) {
    sys = election_universal(family_by_name(family));
    init = mazur_init(g);
  } else if (system == "tree") {
    sys = election_tree_system();
    init = election_init(g);
  } else if (system == "complete") {
    sys = election_complete_system();
    init = election_init(g);
  } else {
    throw Error("elect wants --family NAME or --system tree|complete");
  }
  Trace tr = run(sys, init, Scheduler::seeded(seed));
  if (!out.empty()) save_trace_file(tr, out);
  int elected = count_elected(tr.final_graph);
  std::cout << "outcome " << (tr.reached_normal_form ? "normal-form" : "budget-exhausted")
            << "\nelected " << elected << "\n";
  return tr.reached_normal_form && elected == 1 ? 0 : 1;
}

int cmd_treesize(const std::string& variant, const std::string& graph, std::uint64_t seed,
                 int seeds) {
  LabelledGraph g = resolve_graph(graph);
  if (g.edge_count() != g.vertex_count() - 1) throw Error("treesize wants a tree");
  CatalogEntry entry = catalog_lookup("treesize-" + variant);
  long long n = static_cast<long long>(g.vertex_count());
  bool all_ok = true;
  for (int s = 0; s < seeds; ++s) {
    RelabellingSystem sys = entry.build();
    Trace tr = run(sys, entry.init(g), Scheduler::seeded(seed + s));
    if (!tr.reached_normal_form) {
      all_ok = false;
      continue;
    }
    for (VertexId v : tr.final_graph.vertices())
      if (state_out(tr.final_graph.vlabel(v)) != v_num(n)) all_ok = false;
  }
  std::cout << (all_ok ? "out=" + std::to_string(n) + " at all vertices\n"
                       : "size computation failed\n");
  return all_ok ? 0 : 1;
}

int cmd_classify(const std::string& system, const std::string& family, int nseeds,
                 std::uint64_t seed0, int jobs, int max_graphs) {
  CatalogEntry entry = catalog_lookup(system);
  std::vector<LabelledGraph> samples;
  for (auto& g : family_by_name(family).enumerate()) {
    if (max_graphs > 0 && static_cast<int>(samples.size()) >= max_graphs) break;
    samples.push_back(entry.init(g));
  }
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < nseeds; ++i) seeds.push_back(seed0 + static_cast<std::uint64_t>(i));
  ModeReport rep = classify_runs(entry.build, samples, seeds, -1, jobs);
  auto row = [](const char* mode, const ModeVerdict& v) {
    std::cout << mode << " " << (v.pass ? "pass" : "fail");
    if (!v.pass) std::cout << "  [" << v.witness << "]";
    std::cout << "\n";
  };
  std::cout << "runs " << rep.runs << " completed " << rep.completed << "\n";
  row("implicit", rep.implicit);
  row("ltd     ", rep.ltd);
  row("otd     ", rep.otd);
  row("gtd     ", rep.gtd);
  std::cout << "signature " << rep.signature() << "\n";
  return rep.implicit.pass ? 0 : 1;
}

int cmd_demo_impossibility(const std::string& election, int sheets, bool quasi,
                           std::uint64_t seed, const std::string& out) {
  if (quasi) {
    RelabellingSystem sys = universal_otd(size_task(rings_family(6)));
    QuasiImpossibility demo = quasi_impossibility_demo(sys, mazur_init(ring(3)), seed);
    std::cout << "lifted " << demo.steps_lifted << " steps into a radius-"
              << demo.initial_radius << " truncation\n"
              << "term-in-truncation " << (demo.term_in_truncation ? "yes" : "no") << "\n"
              << "untouched-fringe-vertices " << demo.untouched_vertices << "\n";
    return demo.term_in_truncation && demo.untouched_vertices > 0 ? 0 : 1;
  }
  if (election != "complete") throw Error("the covering demo ships for --election complete");
  LabelledGraph h = complete(3);
  std::set<EdgeKey> tree{EdgeKey(0, 1), EdgeKey(0, 2)};
  std::map<EdgeKey, std::vector<int>> sigma;
  {
    std::vector<int> swap(sheets);
    for (int i = 0; i < sheets; ++i) swap[i] = (i + 1) % sheets + 1;
    sigma[EdgeKey(1, 2)] = swap;
  }
  auto [cover, proj] = reidemeister_build(h, tree, sheets, sigma);
  ElectionImpossibility demo = election_impossibility_demo(
      election_complete_system(), election_init(h), proj, seed);
  if (!out.empty()) save_trace_file(demo.lifted, out);
  std::cout << "covering sheets " << sheets << ", lifted run has " << demo.elected
            << " Elect vertices\n";
  return demo.elected == sheets ? 0 : 1;
}

int cmd_demo_hierarchy(std::uint64_t seed, int nseeds) {
  std::vector<LabelledGraph> trees;
  for (int i = 0; i < 5; ++i) trees.push_back(random_tree(5 + i, seed + 100 + i));
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < nseeds; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
  const char* variants[] = {"treesize-i", "treesize-ltd", "treesize-otd", "treesize-gtd"};
  std::vector<std::string> expect = {"I", "LTD", "OTD", "GTD"};
  bool ok = true;
  for (int k = 0; k < 4; ++k) {
    CatalogEntry entry = catalog_lookup(variants[k]);
    std::vector<LabelledGraph> samples;
    for (const auto& t : trees) samples.push_back(entry.init(t));
    ModeReport rep = classify_runs(entry.build, samples, seeds);
    std::cout << variants[k] << " -> " << rep.signature() << "\n";
    if (rep.signature() != expect[static_cast<std::size_t>(k)]) ok = false;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local computation simulator and verification toolkit"};
  app.require_subcommand(1);

  std::string system, graph, family, out, source, target, map_spec, variant, election;
  std::uint64_t seed = 0;
  long max_steps = -1;
  int sheets = 2, nseeds = 10, radius = 2, jobs = 1, max_graphs = 0;
  VertexId center = 0;
  bool quasi = false, universal = false;

  auto* run_cmd = app.add_subcommand("run", "run a relabelling system to a normal form");
  run_cmd->add_option("--system", system)->required();
  run_cmd->add_option("--graph", graph)->required();
  run_cmd->add_option("--seed", seed);
  run_cmd->add_option("--max-steps", max_steps);
  run_cmd->add_option("--out", out);

  auto* cover_cmd = app.add_subcommand("check-cover", "verify a covering morphism");
  cover_cmd->add_option("--source", source);
  cover_cmd->add_option("--target", target);
  cover_cmd->add_option("--map", map_spec)->required();

  auto* build_cmd = app.add_subcommand("build-cover",
                                       "build a sheeted covering or a universal-cover "
                                       "truncation");
  build_cmd->add_option("--base", source)->required();
  build_cmd->add_option("--sheets", sheets);
  build_cmd->add_flag("--universal", universal);
  build_cmd->add_option("--radius", radius);
  build_cmd->add_option("--center", center);
  build_cmd->add_option("--out", out);

  auto* carto_cmd = app.add_subcommand("carto", "run the cartography system");
  carto_cmd->add_option("--family", family)->required();
  carto_cmd->add_option("--graph", graph)->required();
  carto_cmd->add_option("--seed", seed);
  carto_cmd->add_option("--out", out);

  auto* elect_cmd = app.add_subcommand("elect", "run an election system");
  elect_cmd->add_option("--family", family);
  elect_cmd->add_option("--system", system);
  elect_cmd->add_option("--graph", graph)->required();
  elect_cmd->add_option("--seed", seed);
  elect_cmd->add_option("--out", out);

  auto* ts_cmd = app.add_subcommand("treesize", "compute the size of a tree");
  ts_cmd->add_option("--variant", variant)->required();
  ts_cmd->add_option("--graph", graph)->required();
  ts_cmd->add_option("--seed", seed);
  ts_cmd->add_option("--seeds", nseeds);

  auto* cls_cmd = app.add_subcommand("classify", "classify termination behaviour");
  cls_cmd->add_option("--system", system)->required();
  cls_cmd->add_option("--family", family)->required();
  cls_cmd->add_option("--seeds", nseeds);
  cls_cmd->add_option("--seed", seed);
  cls_cmd->add_option("--jobs", jobs);
  cls_cmd->add_option("--max-graphs", max_graphs);

  auto* demo_cmd = app.add_subcommand("demo", "impossibility and hierarchy exhibits");
  auto* imp_cmd = demo_cmd->add_subcommand("impossibility", "lifted-run exhibits");
  imp_cmd->add_option("--election", election);
  imp_cmd->add_option("--sheets", sheets);
  imp_cmd->add_flag("--quasi", quasi);
  imp_cmd->add_option("--seed", seed);
  imp_cmd->add_option("--out", out);
  auto* hier_cmd = demo_cmd->add_subcommand("hierarchy", "tree-size mode signatures");
  hier_cmd->add_option("--seed", seed);
  hier_cmd->add_option("--seeds", nseeds);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(system, graph, seed, max_steps, out);
    if (cover_cmd->parsed()) return cmd_check_cover(source, target, map_spec);
    if (build_cmd->parsed())
      return cmd_build_cover(source, sheets, out, universal, radius, center);
    if (carto_cmd->parsed()) return cmd_carto(family, graph, seed, out);
    if (elect_cmd->parsed()) return cmd_elect(family, system, graph, seed, out);
    if (ts_cmd->parsed()) return cmd_treesize(variant, graph, seed, nseeds);
    if (cls_cmd->parsed())
      return cmd_classify(system, family, nseeds, seed, jobs, max_graphs);
    if (demo_cmd->parsed()) {
      if (imp_cmd->parsed()) return cmd_demo_impossibility(election, sheets, quasi, seed, out);
      if (hier_cmd->parsed()) return cmd_demo_hierarchy(seed, nseeds);
      std::cerr << "demo wants a subcommand: impossibility | hierarchy\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
