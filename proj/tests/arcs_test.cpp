// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "dualarc/arcs.hpp"
#include "dualarc/veronese.hpp"
#include "helpers.hpp"

using namespace dualarc;
using namespace dualarc::arcs;
using linalg::meet;
using linalg::span;
using linalg::Subspace;
using veronese::VeroneseContext;

namespace {

Family full_family(std::uint64_t q, int n = 2, int d = 1) {
  return veronese::build_dual_arc(VeroneseContext(gf::make_field_of_order(q), n, d));
}

std::set<Subspace> as_set(const Family& f) { return {f.elements().begin(), f.elements().end()}; }

}  // namespace

TEST_SUITE("arcs") {

TEST_CASE("the q=3 quadratic family verifies exhaustively and is regular") {
  auto fam = full_family(3);
  auto r = verify(fam);
  CHECK(r.axioms_hold);
  CHECK(r.regular);
  CHECK(r.span_dim == 5);
  CHECK(r.meet_dim == -1);
  CHECK(r.failures.empty());
  CHECK(r.subsets_checked == 13 + 78 + 286);
  CHECK(to_key_values(r).find("regular=true") != std::string::npos);
}

TEST_CASE("replacing an element by a random plane breaks the axioms") {
  auto fam = full_family(3);
  Rng rng(2024);
  Subspace plane = testing::random_subspace_of_dim(rng, fam.field(), 5, 2);
  std::vector<Subspace> els = fam.elements();
  els[4] = plane;
  Family bad(FamilyKind::kDualArc, fam.field(), 5, 1, fam.params(), els, 2);
  auto r = verify(bad);
  CHECK_FALSE(r.axioms_hold);
  REQUIRE_FALSE(r.failures.empty());
  const auto& w = r.failures.front();
  CHECK(std::find(w.subset.begin(), w.subset.end(), std::size_t{4}) != w.subset.end());
  CHECK(w.expected != w.actual);
  CHECK(r.failure_count >= r.failures.size());
}

TEST_CASE("a single element satisfies every multi-element axiom vacuously") {
  auto fam = full_family(3);
  const std::size_t drop[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  auto one = fam.without(drop);
  REQUIRE(one.size() == 1);
  auto r = verify(one);
  CHECK(r.axioms_hold);
  CHECK(r.subsets_checked == 1);
}

TEST_CASE("exhaustive verification for q in {2,3}, n=2, d in {1,2}") {
  for (std::uint64_t q : {2, 3}) {
    for (int d : {1, 2}) {
      CAPTURE(q);
      CAPTURE(d);
      auto fam = full_family(q, 2, d);
      auto r = verify(fam);
      CHECK(r.axioms_hold);
      CHECK(r.regular);
      CHECK(r.span_dim == fam.ambient_dim());
    }
  }
}

TEST_CASE("sampled verification for q in {4,5}") {
  for (std::uint64_t q : {4, 5}) {
    for (int d : {1, 2}) {
      auto fam = full_family(q, 2, d);
      VerifyOptions opt;
      opt.mode = VerifyMode::kSampled;
      opt.samples = 500;
      auto r = verify(fam, opt);
      CHECK(r.axioms_hold);
      CHECK(r.regular);
      CHECK(r.seed == kDefaultVerifySeed);
      auto again = verify(fam, opt);
      CHECK(again.subsets_checked == r.subsets_checked);
    }
  }
}

TEST_CASE("dualize complements parameters and is an involution") {
  auto fam = full_family(2, 2, 2);
  auto arc = dualize(fam);
  CHECK(arc.kind() == FamilyKind::kArc);
  CHECK(arc.params() == std::vector<int>{9, 3, 6, 8});
  CHECK(dualize(arc).elements() == fam.elements());
  CHECK(dualize(arc).params() == fam.params());
  auto r = verify(arc);
  CHECK(r.axioms_hold);
  CHECK(r.regular);
  for (const auto& s : testing::subsets(7, 2)) CHECK(span(arc[s[0]], arc[s[1]]).dim() == 6);

  auto f3 = full_family(3);
  CHECK(dualize(dualize(f3)).elements() == f3.elements());
  CHECK(verify(dualize(f3)).regular);
}

TEST_CASE("regularity fails for a dual arc whose meets are not spanned") {
  // Two lines of PG(2,2) through a point: the meet point is not the span of
  // meets with other members, because there are none.
  auto f = gf::make_field(2, 1);
  Subspace a = Subspace::from_vectors(f, 2, {{1, 0, 0}, {0, 1, 0}});
  Subspace b = Subspace::from_vectors(f, 2, {{1, 0, 0}, {0, 0, 1}});
  Family fam(FamilyKind::kDualArc, f, 2, 1, {2, 1, 0}, {a, b}, 1);
  auto r = verify(fam);
  CHECK(r.axioms_hold);
  CHECK_FALSE(r.regular);
}

TEST_CASE("hypotheses hold for q=9 minus one element") {
  auto fam = full_family(9);
  const std::size_t drop[] = {40};
  auto r = verify_t_d1_hypotheses(fam.without(drop), 1);
  CHECK(r.all_hold());
  CHECK(r.delta_bound);
  CHECK_FALSE(r.q_even);
  CHECK(r.span_dims_seen == std::vector<int>{2, 4, 5});
}

TEST_CASE("hypothesis (5) for the full q=8 family") {
  auto r = verify_t_d1_hypotheses(full_family(8), 0);
  CHECK(r.q_even);
  CHECK(r.big_pair_span);
  CHECK(r.all_hold());
}

TEST_CASE("hypothesis (3) fails for planes inside a hyperplane") {
  auto f = gf::make_field(3, 1);
  Subspace a = Subspace::from_vectors(f, 5, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
  Subspace b = Subspace::from_vectors(f, 5, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}});
  Family fam(FamilyKind::kDualArc, f, 5, 1, {5, 2, 0}, {a, b}, 2);
  auto r = verify_t_d1_hypotheses(fam, 11);
  CHECK(r.pairs_meet_in_points);
  CHECK_FALSE(r.spanning);
  CHECK_FALSE(r.all_hold());
  CHECK_THROWS_AS(verify_t_d1_hypotheses(full_family(2, 2, 2), 0), std::invalid_argument);
}

TEST_CASE("contact points of the full family are the points theta(x,x)") {
  VeroneseContext ctx(gf::make_field(3, 1), 2, 1);
  auto fam = veronese::build_dual_arc(ctx);
  auto cps = contact_points(fam);
  REQUIRE(cps.size() == 13);
  std::map<std::size_t, int> per_element;
  for (const auto& c : cps) {
    CHECK(c.count == 1);
    ++per_element[c.element];
    CHECK(c.point == veronese::contact_point(ctx, ctx.source_points()[c.element]));
  }
  CHECK(per_element.size() == 13);

  const std::size_t drop[] = {0};
  auto grown = contact_points(fam.without(drop));
  CHECK(grown.size() == 13 - 1 + 12);
  Family empty(FamilyKind::kDualArc, fam.field(), 5, 1, {5, 2, 0}, {}, 2);
  CHECK(contact_points(empty).empty());
}

TEST_CASE("a point on three elements is an axiom violation") {
  auto f = gf::make_field(2, 1);
  Subspace a = Subspace::from_vectors(f, 5, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
  Subspace b = Subspace::from_vectors(f, 5, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}});
  Subspace c = Subspace::from_vectors(f, 5, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 1, 0, 1, 0, 0}});
  Family fam(FamilyKind::kDualArc, f, 5, 1, {5, 2, 0}, {a, b, c}, 2);
  CHECK_THROWS_AS(contact_points(fam), AxiomViolation);
}

TEST_CASE("pair spans of the full q=3 family are all big with q+1 members") {
  auto fam = full_family(3);
  auto classes = classify_pair_spans(fam, 0);
  CHECK(classes.size() == 13);
  for (const auto& c : classes) {
    CHECK(c.kind == SpanClass::kBig);
    CHECK(c.members.size() == 4);
    CHECK(c.span.dim() == 4);
    REQUIRE(c.special_plane.has_value());
    CHECK(c.special_plane->dim() == 2);
    CHECK(c.members_meet_plane_in_lines);
    CHECK(c.outsiders_avoid_plane);
    CHECK(c.deficiency == 0);
  }
  VeroneseContext ctx(gf::make_field(3, 1), 2, 1);
  for (std::size_t e = 0; e < fam.size(); ++e) {
    auto star = element_star(fam, classes, e);
    CHECK(star.classes.size() == 4);
    CHECK(star.common.dim() == 0);
    CHECK(star.common.contains(veronese::contact_point(ctx, ctx.source_points()[e])));
    CHECK(star.deficiency_sum == 0);
  }
}

TEST_CASE("deficiencies through each survivor sum to delta for q=9 minus one") {
  auto fam = full_family(9);
  const std::size_t drop[] = {17};
  auto less = fam.without(drop);
  auto classes = classify_pair_spans(less, 1);
  for (std::size_t e = 0; e < less.size(); ++e) {
    auto star = element_star(less, classes, e);
    CHECK(star.deficiency_sum == 1);
    CHECK(star.classes.size() == 10);
  }
}

TEST_CASE("two elements form one pair class; a thinned class is a classification error") {
  auto fam = full_family(3);
  std::vector<std::size_t> drop;
  for (std::size_t i = 2; i < 13; ++i) drop.push_back(i);
  auto two = fam.without(drop);
  auto classes = classify_pair_spans(two, 0);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].kind == SpanClass::kPair);
  CHECK(classes[0].members.size() == 2);

  // Keep 5 of the 10 points on the line x2 = 0 of PG(2,9).
  VeroneseContext ctx(gf::make_field(3, 2), 2, 1);
  auto big = veronese::build_dual_arc(ctx);
  std::vector<std::size_t> thin;
  for (std::size_t i = 0; i < ctx.source_points().size() && thin.size() < 5; ++i) {
    if (ctx.source_points()[i][2] == 0) thin.push_back(i);
  }
  CHECK_THROWS_AS(classify_pair_spans(big.without(thin), 0), ClassificationError);
}

TEST_CASE("extend recovers the removed element for q=9") {
  auto fam = full_family(9);
  Rng rng(9);
  for (int t = 0; t < 3; ++t) {
    const std::size_t drop[] = {rng.uniform(fam.size())};
    ExtensionStats stats;
    auto out = extend_deficient(fam.without(drop), 1, &stats);
    CHECK(out.elements() == fam.elements());
    CHECK(family_to_text(out) == family_to_text(fam));
    CHECK(stats.added_labels == std::vector<std::size_t>{drop[0]});
  }
}

TEST_CASE("extend with delta 0 is the identity") {
  auto fam = full_family(5);
  CHECK(extend_deficient(fam, 0).elements() == fam.elements());
  CHECK_THROWS_AS(extend_deficient(fam, 1), std::invalid_argument);
}

TEST_CASE("extend recovers two removed elements for q=11") {
  auto fam = full_family(11);
  const std::size_t drop[] = {3, 100};
  auto less = fam.without(drop);
  auto out = extend_deficient(less, 2);
  CHECK(as_set(out) == as_set(fam));

  // New elements are made of former contact points (on at most one old
  // element) and meet old ones in points.
  for (std::size_t i : drop) {
    for (const auto& p : linalg::points(fam[i])) {
      int covering = 0;
      for (const auto& old : less.elements()) covering += old.contains(p);
      CHECK(covering <= 1);
    }
    for (const auto& old : less.elements()) CHECK(meet(fam[i], old).dim() == 0);
  }
}

TEST_CASE("property: random removals from the full q=9 family are recovered as a set") {
  auto fam = full_family(9);
  Rng rng(31337);
  for (int t = 0; t < 5; ++t) {
    const std::size_t drop[] = {rng.uniform(fam.size())};
    CHECK(as_set(extend_deficient(fam.without(drop), 1)) == as_set(fam));
  }
}

TEST_CASE("property: the dimension formula holds on every pair of the tested families") {
  for (auto [q, d] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    auto fam = full_family(q, 2, d);
    auto arc = dualize(fam);
    for (const auto& s : testing::subsets(fam.size(), 2)) {
      const auto& a = fam[s[0]];
      const auto& b = fam[s[1]];
      CHECK(a.dim() + b.dim() == span(a, b).dim() + meet(a, b).dim());
      CHECK(arc[s[0]].dim() + arc[s[1]].dim() == span(arc[s[0]], arc[s[1]]).dim() + meet(arc[s[0]], arc[s[1]]).dim());
    }
  }
}

TEST_CASE("property: dualize is parameter complementing on random regular inputs") {
  Rng rng(77);
  for (int t = 0; t < 6; ++t) {
    const std::uint64_t q = t % 2 ? 3 : 4;
    auto fam = full_family(q, 2, 1 + static_cast<int>(rng.uniform(2)));
    auto arc = dualize(fam);
    for (std::size_t i = 1; i < fam.params().size(); ++i) {
      CHECK(arc.params()[i] == fam.ambient_dim() - 1 - fam.params()[i]);
    }
    CHECK(dualize(arc).elements() == fam.elements());
  }
}

}  // TEST_SUITE
