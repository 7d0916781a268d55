#pragma once

// Trace files: header, embedded initial graph, one event per line, footer.
// Replayable bit-exactly; reruns with the same seed write identical bytes.

#include <fstream>
#include <sstream>
#include <string>

#include "lcsim/engine.hpp"
#include "lcsim/graph_io.hpp"

namespace lcsim {

inline std::string save_trace_text(const Trace& tr, const std::string& footer_table = "") {
  std::ostringstream out;
  out << "# lcsim trace v1\n";
  out << "system " << tr.system << "\n";
  out << "scheduler " << tr.scheduler.kind_name() << "\n";
  out << "seed " << tr.scheduler.seed << "\n";
  out << "max-steps " << tr.max_steps << "\n";
  out << "graph-hash " << std::hex << tr.initial.content_hash() << std::dec << "\n";
  out << "[graph]\n" << save_graph_text(tr.initial);
  out << "[events]\n";
  for (const auto& ev : tr.events)
    out << "event " << ev.step << " " << ev.rule_id << " " << ev.center << " "
        << ev.before.to_text() << " " << ev.after.to_text() << "\n";
  out << "[footer]\n";
  out << "outcome " << (tr.reached_normal_form ? "normal-form" : "budget-exhausted") << "\n";
  out << "steps " << tr.events.size() << "\n";
  out << footer_table;
  return out.str();
}

inline void save_trace_file(const Trace& tr, const std::string& path,
                            const std::string& footer_table = "") {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << save_trace_text(tr, footer_table);
}

inline Trace load_trace_text(const std::string& text) {
  Trace tr;
  std::istringstream in(text);
  std::string line, section, graph_buf;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "[graph]" || line == "[events]" || line == "[footer]") {
      if (section == "graph") tr.initial = load_graph_text(graph_buf);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (section.empty()) {
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (kw == "system") ls >> tr.system;
      else if (kw == "seed") ls >> tr.scheduler.seed;
      else if (kw == "max-steps") ls >> tr.max_steps;
      else if (kw == "scheduler") {
        std::string k;
        ls >> k;
        if (k == "seeded-random") tr.scheduler.kind = Scheduler::Kind::SeededRandom;
        else if (k == "round-robin") tr.scheduler.kind = Scheduler::Kind::RoundRobin;
        else tr.scheduler.kind = Scheduler::Kind::Scripted;
      }
      // graph-hash is informational
    } else if (section == "graph") {
      graph_buf += line + "\n";
    } else if (section == "events") {
      std::istringstream ls(line);
      std::string kw, rule;
      int stepno, center;
      ls >> kw >> stepno >> rule >> center;
      if (kw != "event") throw Error("bad event line: " + line);
      std::string rest;
      std::getline(ls, rest);
      // Two label texts separated by a space; snapshots are balanced tuples.
      std::size_t pos = 0, depth = 0;
      while (pos < rest.size()) {
        char c = rest[pos];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') {
          --depth;
          if (depth == 0) {
            ++pos;
            break;
          }
        }
        ++pos;
      }
      TraceEvent ev;
      ev.step = stepno;
      ev.rule_id = rule;
      ev.center = center;
      ev.before = Value::parse(rest.substr(0, pos));
      ev.after = Value::parse(rest.substr(pos));
      tr.events.push_back(std::move(ev));
    } else if (section == "footer") {
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (kw == "outcome") {
        std::string o;
        ls >> o;
        tr.reached_normal_form = o == "normal-form";
      }
    }
  }
  return tr;
}

inline Trace load_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_trace_text(ss.str());
}

}  // namespace lcsim
