// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "coverage.hpp"
#include "dualarc/arcs.hpp"

namespace dualarc::arcs {

namespace {

using linalg::meet;
using linalg::span;

void require_order_one(const Family& family) {
  if (family.order() != 1 || family.kind() != FamilyKind::kDualArc) {
    throw std::invalid_argument("operation needs a dual arc of order 1");
  }
}

}  // namespace

HypothesesReport verify_t_d1_hypotheses(const Family& family, int delta) {
  require_order_one(family);
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  HypothesesReport r;
  const int n = family.element_dim();
  const auto q = family.q();
  const auto m = family.size();
  const int big_n = family.ambient_dim();

  r.expected_size = full_family_size(q, n);
  r.size_matches = r.expected_size >= static_cast<std::uint64_t>(delta) && m == r.expected_size - static_cast<std::uint64_t>(delta);
  r.ambient_matches = big_n == n * (n + 3) / 2;
  r.q_even = q % 2 == 0;
  const long slack = static_cast<long>(q) - (r.q_even ? 8 : 7);
  r.delta_bound = 2L * delta <= slack;

  r.pairs_meet_in_points = true;
  r.triples_skew = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Subspace ab = meet(family[a], family[b]);
      if (ab.dim() != 0) r.pairs_meet_in_points = false;
      if (ab.empty()) continue;
      for (std::size_t c = b + 1; c < m; ++c) {
        if (!meet(ab, family[c]).empty()) r.triples_skew = false;
      }
    }
  }
  r.spanning = m > 0 && span(std::span<const Subspace>(family.elements())).dim() == big_n;

  // Every span of a subcollection arises from a chain of single additions,
  // so closing the element set under "add one more element" reaches them all.
  std::set<int> allowed{big_n};
  for (int i = 0; i <= n; ++i) allowed.insert(i * (2 * n - i + 3) / 2 - 1);
  std::set<int> seen_dims, bad;
  std::unordered_set<Subspace, linalg::SubspaceHash> seen;
  std::deque<Subspace> queue;
  for (const auto& e : family.elements()) {
    if (seen.insert(e).second) queue.push_back(e);
  }
  while (!queue.empty()) {
    Subspace s = std::move(queue.front());
    queue.pop_front();
    seen_dims.insert(s.dim());
    if (!allowed.count(s.dim())) bad.insert(s.dim());
    if (s.dim() == big_n) continue;
    for (const auto& e : family.elements()) {
      if (s.contains(e)) continue;
      Subspace t = span(s, e);
      if (seen.insert(t).second) queue.push_back(std::move(t));
    }
  }
  r.span_dims_seen.assign(seen_dims.begin(), seen_dims.end());
  r.bad_span_dims.assign(bad.begin(), bad.end());
  r.span_dimensions = bad.empty();

  r.big_pair_span = !r.q_even;
  for (std::size_t a = 0; a < m && !r.big_pair_span; ++a) {
    for (std::size_t b = a + 1; b < m && !r.big_pair_span; ++b) {
      const Subspace ab = span(family[a], family[b]);
      for (std::size_t c = 0; c < m; ++c) {
        if (c != a && c != b && ab.contains(family[c])) {
          r.big_pair_span = true;
          break;
        }
      }
    }
  }
  return r;
}

std::string to_text(const HypothesesReport& r) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream os;
  os << "size matches (" << r.expected_size << " - delta): " << yn(r.size_matches) << '\n';
  os << "ambient dimension n(n+3)/2: " << yn(r.ambient_matches) << '\n';
  os << "(1) pairs meet in points: " << yn(r.pairs_meet_in_points) << '\n';
  os << "(2) triples skew: " << yn(r.triples_skew) << '\n';
  os << "(3) elements span the space: " << yn(r.spanning) << '\n';
  os << "(4) subcollection spans have admissible dimensions: " << yn(r.span_dimensions) << " (seen";
  for (int d : r.span_dims_seen) os << ' ' << d;
  os << ")\n";
  os << "(5) some pair span holds a third element" << (r.q_even ? "" : " (not required, q odd)") << ": "
     << yn(r.big_pair_span) << '\n';
  os << "delta within bound: " << yn(r.delta_bound) << '\n';
  return os.str();
}

std::vector<ContactPoint> contact_points(const Family& family) {
  require_order_one(family);
  const auto cov = detail::coverage(family);
  std::vector<ContactPoint> out;
  for (const auto& [p, c] : cov) {
    if (c.count >= 3) throw AxiomViolation("a point lies in " + std::to_string(c.count) + " elements");
    if (c.count == 1) out.push_back({p, 1, c.first});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  return out;
}

std::string to_string(SpanClass kind) {
  switch (kind) {
    case SpanClass::kSmall:
      return "small";
    case SpanClass::kPair:
      return "pair";
    case SpanClass::kBig:
      return "big";
  }
  return "?";
}

std::vector<TwoNSpaceClass> classify_pair_spans(const Family& family, int delta) {
  require_order_one(family);
  const auto m = family.size();
  const long q = family.q();
  const std::size_t big_threshold = static_cast<std::size_t>(std::max<long>(3, q - delta));
  std::vector<TwoNSpaceClass> out;
  std::vector<std::vector<bool>> done(m, std::vector<bool>(m, false));

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (done[a][b]) continue;
      TwoNSpaceClass c{span(family[a], family[b]), {}, SpanClass::kPair, std::nullopt, false, false, 0};
      for (std::size_t k = 0; k < m; ++k) {
        if (k == a || k == b || c.span.contains(family[k])) c.members.push_back(k);
      }
      for (auto i : c.members) {
        for (auto j : c.members) done[i][j] = true;
      }
      const auto count = c.members.size();
      if (count >= big_threshold) {
        c.kind = SpanClass::kBig;
      } else if (count != 2) {
        throw ClassificationError("a span of two elements contains " + std::to_string(count) +
                                  " elements, between 2 and " + std::to_string(big_threshold));
      }
      if (c.kind == SpanClass::kBig) {
        c.deficiency = static_cast<int>(q + 1) - static_cast<int>(count);
        const auto& e = family.elements();
        const Subspace corners[3] = {meet(e[c.members[0]], e[c.members[1]]), meet(e[c.members[0]], e[c.members[2]]),
                                     meet(e[c.members[1]], e[c.members[2]])};
        Subspace plane = span(std::span<const Subspace>(corners));
        if (plane.dim() == 2) {
          c.members_meet_plane_in_lines = std::all_of(c.members.begin(), c.members.end(),
                                                      [&](std::size_t i) { return meet(plane, e[i]).dim() == 1; });
          c.outsiders_avoid_plane = true;
          std::size_t next = 0;
          for (std::size_t k = 0; k < m; ++k) {
            if (next < c.members.size() && c.members[next] == k) {
              ++next;
              continue;
            }
            if (!meet(plane, e[k]).empty()) c.outsiders_avoid_plane = false;
          }
        }
        c.special_plane = std::move(plane);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

ElementStar element_star(const Family& family, const std::vector<TwoNSpaceClass>& classes, std::size_t element) {
  ElementStar star{element, {}, {}, Subspace::whole(family.field(), family.ambient_dim()), 0};
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    if (c.kind != SpanClass::kBig) continue;
    if (!std::binary_search(c.members.begin(), c.members.end(), element)) continue;
    star.classes.push_back(i);
    Subspace line = meet(*c.special_plane, family[element]);
    star.common = meet(star.common, line);
    star.lines.push_back(std::move(line));
    star.deficiency_sum += c.deficiency;
  }
  if (star.lines.empty()) star.common = Subspace(family.field(), family.ambient_dim());
  return star;
}

}  // namespace dualarc::arcs
