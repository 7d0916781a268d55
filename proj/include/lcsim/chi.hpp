#pragma once

// The family-membership semi-algorithm: enumerate the family in fixed
// order until some member is a quasi-covering of h of radius r centered
// over u; answer Yes when that member quasi-covers h at every vertex and
// the radius exceeds both diameters (which forces the witness to be a
// genuine covering, making Yes sound). A desk-scale budget on candidate
// members keeps the search total.

#include <map>
#include <memory>
#include <optional>

#include "lcsim/covering.hpp"
#include "lcsim/family.hpp"

namespace lcsim {

enum class ChiResult { Yes, Bot, BudgetExhausted };

inline const char* chi_result_name(ChiResult r) {
  switch (r) {
    case ChiResult::Yes: return "yes";
    case ChiResult::Bot: return "bot";
    case ChiResult::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

inline ChiResult chi(const FamilySpec& family, const LabelledGraph& h, VertexId u,
                     long long r) {
  if (r < 0) return ChiResult::Bot;
  if (!h.has_vertex(u)) throw Error("chi: unknown vertex of h");
  long long dh = diameter(h);
  long long max_diam = 2 * r + static_cast<long long>(h.vertex_count());
  double size_cap = 1.0;
  long long maxdeg = 0;
  for (VertexId v : h.vertices()) maxdeg = std::max<long long>(maxdeg, h.degree(v));
  for (long long i = 0; i < std::min<long long>(r, 40); ++i) {
    size_cap *= static_cast<double>(maxdeg + 1);
    if (size_cap > 1e12) break;
  }

  bool all_within_budget = true;
  for (const LabelledGraph& k : family.enumerate()) {
    if (diameter(k) > max_diam || static_cast<double>(k.vertex_count()) > size_cap) {
      all_within_budget = false;
      continue;
    }
    auto spec = find_quasi_covering(k, h, u, static_cast<int>(r));
    if (!spec) continue;
    // Loop ended; decide between Yes and Bot.
    if (r <= dh || r <= diameter(k)) return ChiResult::Bot;
    for (VertexId u2 : h.vertices())
      if (!find_quasi_covering(k, h, u2, static_cast<int>(r))) return ChiResult::Bot;
    return ChiResult::Yes;
  }
  return all_within_budget ? ChiResult::Bot : ChiResult::BudgetExhausted;
}

// Memoizing front-end keyed on (h, u, r); one cache per system instance.
class ChiOracle {
 public:
  explicit ChiOracle(FamilySpec family) : family_(std::move(family)) {}

  ChiResult query(const LabelledGraph& h, VertexId u, long long r) const {
    std::string key = std::to_string(h.content_hash()) + ":" + std::to_string(u) + ":" +
                      std::to_string(r);
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
    ChiResult res = chi(family_, h, u, r);
    cache_->emplace(std::move(key), res);
    return res;
  }

  const FamilySpec& family() const { return family_; }

 private:
  FamilySpec family_;
  std::shared_ptr<std::map<std::string, ChiResult>> cache_ =
      std::make_shared<std::map<std::string, ChiResult>>();
};

}  // namespace lcsim
