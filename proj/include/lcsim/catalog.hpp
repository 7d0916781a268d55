#pragma once

// Name-addressable catalog of the shipped systems, together with each
// system's initial-labelling convention.

#include <functional>
#include <string>

#include "lcsim/algorithms.hpp"
#include "lcsim/carto.hpp"
#include "lcsim/universal.hpp"

namespace lcsim {

struct CatalogEntry {
  std::string name;
  std::function<RelabellingSystem()> build;
  std::function<LabelledGraph(const LabelledGraph&)> init;
};

// Names: colo-D, mazurkiewicz, treesize-{i,ltd,otd,gtd}, spanning-tree,
// election-tree, election-complete, carto:FAMILY,
// election-universal:FAMILY, size-otd:FAMILY, size-itd:FAMILY.
inline CatalogEntry catalog_lookup(const std::string& name) {
  CatalogEntry e;
  e.name = name;
  if (name.rfind("colo-", 0) == 0) {
    int d = std::stoi(name.substr(5));
    e.build = [d]() { return colo_system(d); };
    e.init = colo_init;
    return e;
  }
  if (name == "mazurkiewicz") {
    e.build = []() { return mazur_system(); };
    e.init = mazur_init;
    return e;
  }
  if (name.rfind("treesize-", 0) == 0) {
    std::string v = name.substr(9);
    TreeSizeVariant variant;
    if (v == "i") variant = TreeSizeVariant::Implicit;
    else if (v == "ltd") variant = TreeSizeVariant::Ltd;
    else if (v == "otd") variant = TreeSizeVariant::Otd;
    else if (v == "gtd") variant = TreeSizeVariant::Gtd;
    else throw Error("unknown treesize variant: " + v);
    e.build = [variant]() { return treesize_system(variant); };
    e.init = treesize_init;
    return e;
  }
  if (name == "spanning-tree") {
    e.build = []() { return spanning_tree_system(); };
    e.init = [](const LabelledGraph& g) {
      return spanning_tree_init(g, g.vertices().front());
    };
    return e;
  }
  if (name == "election-tree") {
    e.build = []() { return election_tree_system(); };
    e.init = election_init;
    return e;
  }
  if (name == "election-complete") {
    e.build = []() { return election_complete_system(); };
    e.init = election_init;
    return e;
  }
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string kind = name.substr(0, colon);
    std::string fam = name.substr(colon + 1);
    if (kind == "carto") {
      e.build = [fam]() { return carto_system(family_by_name(fam)); };
      e.init = mazur_init;
      return e;
    }
    if (kind == "election-universal") {
      e.build = [fam]() { return election_universal(family_by_name(fam)); };
      e.init = mazur_init;
      return e;
    }
    if (kind == "size-otd") {
      e.build = [fam]() { return universal_otd(size_task(family_by_name(fam))); };
      e.init = mazur_init;
      return e;
    }
    if (kind == "size-itd") {
      e.build = [fam]() { return universal_itd(size_task(family_by_name(fam))); };
      e.init = mazur_init;
      return e;
    }
    if (kind == "size-gtd") {
      e.build = [fam]() { return universal_gtd(size_task(family_by_name(fam))); };
      e.init = mazur_init;
      return e;
    }
  }
  throw Error("unknown system: " + name);
}

}  // namespace lcsim
