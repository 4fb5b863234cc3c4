// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "coverage.hpp"
#include "dualarc/arcs.hpp"

namespace dualarc::arcs {

namespace {

using linalg::meet;
using linalg::span;

// One round: find an n1-space X such that F + {X} is still a dual arc of
// order 1 and X lies in a big pair span. A new element can only contain
// points covered at most once, and it meets every element E in a point of E
// that is covered exactly once. Branch on the first element X does not meet
// yet, over those points.
class RoundSearch {
 public:
  explicit RoundSearch(const Family& f) : f_(f), cov_(detail::coverage(f)) {
    once_.resize(f.size());
    for (const auto& [p, c] : cov_) {
      if (c.count >= 3) throw AxiomViolation("a point lies in " + std::to_string(c.count) + " elements");
      if (c.count == 1) once_[c.first].push_back(p);
    }
    for (auto& pts : once_) std::sort(pts.begin(), pts.end());
  }

  std::optional<Subspace> run() {
    Subspace start(f_.field(), f_.ambient_dim());
    return dfs(start);
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  std::optional<Subspace> dfs(const Subspace& c) {
    ++nodes_;
    const int target = f_.element_dim();
    std::size_t branch = f_.size();
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (meet(c, f_[i]).empty()) {
        branch = i;
        break;
      }
    }
    if (branch == f_.size()) {
      if (c.dim() == target && accept(c)) return c;
      return std::nullopt;
    }
    if (c.dim() >= target) return std::nullopt;
    for (const auto& p : once_[branch]) {
      Subspace next = linalg::span_with(c, p);
      if (!visited_.insert(next).second) continue;
      if (!admissible(next)) continue;
      if (auto found = dfs(next)) return found;
    }
    return std::nullopt;
  }

  bool admissible(const Subspace& c) const {
    for (const auto& e : f_.elements()) {
      if (meet(c, e).dim() > 0) return false;
    }
    bool ok = true;
    linalg::for_each_point(c, [&](std::span<const gf::Value> p) {
      if (!ok) return;
      auto it = cov_.find(Vector(p.begin(), p.end()));
      if (it != cov_.end() && it->second.count > 1) ok = false;
    });
    return ok;
  }

  // Every element met in exactly one point, and some span <X, E> holds a
  // third element. The second condition rules out a nucleus when q is even.
  bool accept(const Subspace& x) const {
    for (const auto& e : f_.elements()) {
      if (meet(x, e).dim() != 0) return false;
    }
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const Subspace s = span(x, f_[i]);
      for (std::size_t j = 0; j < f_.size(); ++j) {
        if (j != i && s.contains(f_[j])) return true;
      }
    }
    return false;
  }

  const Family& f_;
  detail::CoverageMap cov_;
  std::vector<std::vector<Vector>> once_;
  std::unordered_set<Subspace, linalg::SubspaceHash> visited_;
  std::size_t nodes_ = 0;
};

}  // namespace

Family extend_deficient(const Family& family, int delta, ExtensionStats* stats) {
  if (family.order() != 1 || family.kind() != FamilyKind::kDualArc) {
    throw std::invalid_argument("extension needs a dual arc of order 1");
  }
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  const auto full = full_family_size(family.q(), family.element_dim());
  if (family.size() + static_cast<std::uint64_t>(delta) != full) {
    throw std::invalid_argument("family has " + std::to_string(family.size()) + " elements, expected " +
                                std::to_string(full) + " - " + std::to_string(delta));
  }

  std::set<std::size_t> used(family.labels().begin(), family.labels().end());
  std::size_t next_label = 0;
  Family cur = family;
  std::size_t total_nodes = 0;
  for (int round = 0; round < delta; ++round) {
    RoundSearch search(cur);
    auto found = search.run();
    total_nodes += search.nodes();
    if (!found) {
      throw ExtensionError("no extending element found in round " + std::to_string(round + 1) + " after " +
                               std::to_string(search.nodes()) + " candidates",
                           static_cast<std::size_t>(round), total_nodes);
    }
    while (used.count(next_label)) ++next_label;
    used.insert(next_label);
    if (stats) stats->added_labels.push_back(next_label);
    cur = cur.with_element(std::move(*found), next_label);
  }
  if (stats) stats->nodes = total_nodes;
  return cur.sorted_by_label();
}

}  // namespace dualarc::arcs
