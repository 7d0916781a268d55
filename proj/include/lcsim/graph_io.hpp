#pragma once

// Text file formats for graphs and morphisms.
//
// Graph file: one `vertex <id> <label>` line per vertex (ascending id),
// then one `edge <u> <v> <label>` line per edge (ascending pair); labels in
// the nested tagged-tuple text form. save(load(f)) is byte-identical for
// canonical files.

#include <fstream>
#include <sstream>
#include <string>

#include "lcsim/graph.hpp"

namespace lcsim {

inline std::string save_graph_text(const LabelledGraph& g) {
  std::string out = "# lcsim graph v1\n";
  for (VertexId v : g.vertices())
    out += "vertex " + std::to_string(v) + " " + g.vlabel(v).to_text() + "\n";
  for (const auto& [k, label] : g.edges())
    out += "edge " + std::to_string(k.a) + " " + std::to_string(k.b) + " " +
           label.to_text() + "\n";
  return out;
}

inline LabelledGraph load_graph_text(const std::string& text) {
  std::vector<std::pair<VertexId, Value>> vs;
  std::vector<std::tuple<VertexId, VertexId, Value>> es;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "vertex") {
      VertexId id;
      ls >> id;
      std::string rest;
      std::getline(ls, rest);
      vs.emplace_back(id, Value::parse(rest));
    } else if (kw == "edge") {
      VertexId u, v;
      ls >> u >> v;
      std::string rest;
      std::getline(ls, rest);
      es.emplace_back(u, v, Value::parse(rest));
    } else {
      throw Error("bad line in graph file: " + line);
    }
  }
  return LabelledGraph::build(vs, es);
}

inline void save_graph_file(const LabelledGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << save_graph_text(g);
}

inline LabelledGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_graph_text(ss.str());
}

// Morphism file: [source] and [target] graph sections plus `map <u> <v>`
// pair lines.
inline std::string save_morphism_text(const LabelledGraph& source, const LabelledGraph& target,
                                      const std::map<VertexId, VertexId>& map) {
  std::string out = "# lcsim morphism v1\n[source]\n";
  out += save_graph_text(source);
  out += "[target]\n";
  out += save_graph_text(target);
  out += "[map]\n";
  for (const auto& [u, v] : map)
    out += "map " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

struct MorphismFile {
  LabelledGraph source, target;
  std::map<VertexId, VertexId> map;
};

inline MorphismFile load_morphism_text(const std::string& text) {
  MorphismFile mf;
  std::istringstream in(text);
  std::string line, section, buf;
  auto flush = [&](const std::string& into) {
    if (into == "source") mf.source = load_graph_text(buf);
    if (into == "target") mf.target = load_graph_text(buf);
    buf.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "[source]" || line == "[target]" || line == "[map]") {
      flush(section);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (section == "map") {
      std::istringstream ls(line);
      std::string kw;
      VertexId u, v;
      ls >> kw >> u >> v;
      if (kw != "map") throw Error("bad map line: " + line);
      mf.map[u] = v;
    } else {
      buf += line + "\n";
    }
  }
  flush(section);
  return mf;
}

inline MorphismFile load_morphism_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_morphism_text(ss.str());
}

}  // namespace lcsim
