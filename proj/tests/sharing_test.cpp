// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "dualarc/arcs.hpp"
#include "dualarc/sharing.hpp"
#include "dualarc/veronese.hpp"
#include "helpers.hpp"

using namespace dualarc;
using namespace dualarc::sharing;
using linalg::meet;
using linalg::span;
using linalg::Subspace;
using linalg::Vector;
using veronese::VeroneseContext;

namespace {

arcs::Family cubic_arc(std::uint64_t q) {
  return veronese::build_arc(VeroneseContext(gf::make_field_of_order(q), 2, 2));
}

Subspace span_of(const ShareBundle& b, const std::vector<std::size_t>& idx) {
  std::vector<Subspace> parts;
  for (auto i : idx) parts.push_back(b.shares[i].space);
  if (parts.empty()) return Subspace(b.field, b.ambient_dim);
  return span(parts);
}

std::vector<Share> pick(const ShareBundle& b, const std::vector<std::size_t>& idx) {
  std::vector<Share> out;
  for (auto i : idx) out.push_back(b.shares[i]);
  return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_SUITE("sharing") {

TEST_CASE("hyperplane scheme probabilities at q=2") {
  auto p = params_for_arc(Variant::kHyperplaneSecret, cubic_arc(2));
  CHECK(p.k == 4);
  CHECK(p.n == 9);
  CHECK(p.participant_count == 7);
  const Rational expected[] = {{1, 2047}, {1, 127}, {1, 15}, {1, 3}};
  for (int i = 0; i < 4; ++i) CHECK(attack_probability(p, i) == expected[i]);
  CHECK_THROWS_AS(attack_probability(p, 4), std::out_of_range);
  CHECK_THROWS_AS(attack_probability(p, -1), std::out_of_range);
}

TEST_CASE("subspace scheme probabilities are (q-1)/(q^(5-i)-1)") {
  for (std::uint64_t q : {2, 3}) {
    auto p = params_for_arc(Variant::kSubspaceSecret, cubic_arc(q));
    CHECK(p.participant_count == q * q + q);
    CHECK(p.secret_dim == 3);
    for (int i = 0; i <= 4; ++i) CHECK(attack_probability(p, i) == Rational(q - 1, ipow(q, 5 - i) - 1));
    CHECK(attack_probability(p, 4) == Rational(1, 1));
  }
}

TEST_CASE("deal for the hyperplane scheme embeds the arc in the secret") {
  auto arc = cubic_arc(2);
  auto b = deal(Variant::kHyperplaneSecret, arc, 11);
  CHECK(b.ambient_dim == 10);
  CHECK(b.secret.dim() == 9);
  CHECK_FALSE(b.public_space.has_value());
  REQUIRE(b.shares.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(b.shares[i].id == i + 1);
    CHECK(b.shares[i].space.dim() == 3);
    CHECK(b.secret.contains(b.shares[i].space));
  }
  // The embedded shares still form an arc with the same span dimensions.
  for (std::size_t j = 1; j <= 4; ++j) {
    const int expected[] = {-1, 3, 6, 8, 9};
    for (const auto& s : testing::subsets(7, j)) CHECK(span_of(b, s).dim() == expected[j]);
  }
}

TEST_CASE("deal is deterministic in the seed") {
  auto arc = cubic_arc(2);
  for (auto v : {Variant::kHyperplaneSecret, Variant::kSubspaceSecret}) {
    auto a = deal(v, arc, 5);
    auto b = deal(v, arc, 5);
    auto c = deal(v, arc, 6);
    CHECK(a.secret == b.secret);
    CHECK(a.public_space == b.public_space);
    bool same = true;
    for (std::size_t i = 0; i < a.shares.size(); ++i) same = same && a.shares[i].space == b.shares[i].space;
    CHECK(same);
    CHECK_FALSE(a.secret == c.secret);
  }
}

TEST_CASE("every 4 shares reconstruct and every 3 fall short by one dimension") {
  auto b = deal(Variant::kHyperplaneSecret, cubic_arc(2), 1);
  auto view = public_view(b);
  for (const auto& s : testing::subsets(7, 4)) CHECK(reconstruct(view, pick(b, s)) == b.secret);
  for (const auto& s : testing::subsets(7, 3)) {
    auto shares = pick(b, s);
    try {
      reconstruct(view, shares);
      CHECK(false);
    } catch (const ReconstructionError& e) {
      CHECK(e.span_dim() == 8);
    }
  }
  auto dup = pick(b, {0, 0, 1, 2});
  CHECK_THROWS_AS(reconstruct(view, dup), ReconstructionError);
}

TEST_CASE("subspace scheme: public 4-space through the secret, outside the hidden hyperplane") {
  auto b = deal(Variant::kSubspaceSecret, cubic_arc(2), 3);
  REQUIRE(b.public_space.has_value());
  CHECK(b.public_space->dim() == 4);
  CHECK(b.secret.dim() == 3);
  CHECK(b.public_space->contains(b.secret));
  CHECK(b.shares.size() == 6);
  const Subspace hidden = span_of(b, {0, 1, 2, 3});
  CHECK(hidden.dim() == 9);
  CHECK(hidden.contains(b.secret));
  CHECK_FALSE(hidden.contains(*b.public_space));
  CHECK(meet(hidden, *b.public_space) == b.secret);

  auto view = public_view(b);
  for (const auto& s : testing::subsets(6, 4)) CHECK(reconstruct(view, pick(b, s)) == b.secret);
}

TEST_CASE("property: span of i shares meets the public space in dimension d_i + d_1 - d_(i+1)") {
  for (std::uint64_t q : {2, 3}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      auto b = deal(Variant::kSubspaceSecret, cubic_arc(q), seed);
      const auto& p = b.params;
      for (int i = 0; i < p.k; ++i) {
        for (const auto& s : testing::subsets(std::min<std::size_t>(b.shares.size(), 7), static_cast<std::size_t>(i))) {
          CHECK(meet(span_of(b, s), *b.public_space).dim() == p.d(i) + p.d(1) - p.d(i + 1));
        }
      }
    }
  }
}

TEST_CASE("property: candidate secrets through i shares number 1/p_i") {
  for (std::uint64_t q : {2, 3}) {
    auto b = deal(Variant::kHyperplaneSecret, cubic_arc(q), 21);
    const auto& p = b.params;
    for (int i = 0; i < p.k; ++i) {
      for (const auto& s : testing::subsets(b.shares.size(), static_cast<std::size_t>(i))) {
        const Subspace sp = span_of(b, s);
        const std::uint64_t count = linalg::count_superspaces(sp, p.n);
        CHECK(Rational(1, count) == attack_probability(p, i));
        if (q == 2 && s.size() <= 2) CHECK(testing::hyperplanes_through_gf2(sp) == count);
      }
    }
  }
}

TEST_CASE("simulation does not depend on the worker count and is reproducible") {
  auto b = deal(Variant::kHyperplaneSecret, cubic_arc(2), 4);
  auto one = simulate_attack(b, 2, 5000, 99, 1);
  auto four = simulate_attack(b, 2, 5000, 99, 4);
  CHECK(one.matches == four.matches);
  auto t1 = simulate_attack(b, 1, 1, 7);
  auto t2 = simulate_attack(b, 1, 1, 7);
  CHECK(t1.matches == t2.matches);
  CHECK(t1.trials == 1);
  CHECK_THROWS(simulate_attack(b, 4, 10, 1));
  CHECK_THROWS(simulate_attack(b, 1, 0, 1));
}

TEST_CASE("property: Monte Carlo estimates are within 4 sigma for every tested row") {
  for (auto v : {Variant::kHyperplaneSecret, Variant::kSubspaceSecret}) {
    for (std::uint64_t q : {2, 3}) {
      auto b = deal(v, cubic_arc(q), 100 + q);
      for (int i = 0; i < b.params.k; ++i) {
        auto est = simulate_attack(b, i, 10000, 500 + static_cast<std::uint64_t>(i), 4);
        CAPTURE(q);
        CAPTURE(i);
        CHECK(est.p_exact == attack_probability(b.params, i));
        CHECK(est.within_tolerance);
      }
    }
  }
}

TEST_CASE("twisted cubic points and leak profile") {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    auto f = gf::make_field_of_order(q);
    VeroneseContext ctx(f, 2, 2);
    auto c = twisted_cubic_secret(ctx);
    CAPTURE(q);
    CHECK(c.twisted_cubic);
    REQUIRE(c.points.size() == q + 1);
    // (1, -a, a^2, -a^3) on e111, e112, e122, e222, then (0,0,0,1).
    const std::size_t i111 = 6, i112 = 7, i122 = 8, i222 = 9;
    for (gf::Value a = 0; a < q; ++a) {
      Vector expected(10, 0);
      const gf::Value a2 = f->mul(a, a);
      expected[i111] = 1;
      expected[i112] = f->neg(a);
      expected[i122] = a2;
      expected[i222] = f->neg(f->mul(a2, a));
      CHECK(c.points[a] == expected);
    }
    Vector inf(10, 0);
    inf[i222] = 1;
    CHECK(c.points[q] == inf);

    CHECK(c.plane.dim() == 2);
    CHECK(c.element.contains(c.plane));
    for (const auto& p : c.points) CHECK_FALSE(c.plane.contains(p));
    const std::uint64_t q2 = q * q, q3 = q2 * q;
    const Rational expected_profile[] = {{1, q3 + q2 + q + 1}, {1, q3 + q2 + q + 1}, {1, q2 + q + 1}, {1, q + 1}, {1, 1}};
    REQUIRE(c.leak_profile.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(c.leak_profile[i] == expected_profile[i]);
  }
}

TEST_CASE("a plane of PG(3,2) avoiding the three cubic points exists") {
  // Planes c.y = 0 of the coordinates (111, 112, 122, 222).
  const int pts[3][4] = {{1, 0, 0, 0}, {1, 1, 1, 1}, {0, 0, 0, 1}};
  int avoiding = 0;
  for (int c = 1; c < 16; ++c) {
    bool ok = true;
    for (const auto& p : pts) {
      int dot = 0;
      for (int i = 0; i < 4; ++i) dot ^= ((c >> i) & 1) & p[i];
      ok = ok && dot != 0;
    }
    avoiding += ok;
  }
  CHECK(avoiding > 0);
  auto c = twisted_cubic_secret(VeroneseContext(gf::make_field(2, 1), 2, 2));
  CHECK(c.plane.dim() == 2);
}

TEST_CASE("twisted cubic scheme deals, reconstructs and matches its profile") {
  VeroneseContext ctx(gf::make_field(2, 1), 2, 2);
  auto b = deal_twisted_cubic(ctx, 8);
  REQUIRE(b.public_space.has_value());
  CHECK(b.public_space->dim() == 3);
  CHECK(b.secret.dim() == 2);
  CHECK(b.leak_profile[0] == Rational(1, 15));
  CHECK(b.leak_profile[1] == Rational(1, 15));
  CHECK(b.leak_profile[2] == Rational(1, 7));
  CHECK(b.leak_profile[3] == Rational(1, 3));
  auto view = public_view(b);
  for (const auto& s : testing::subsets(b.shares.size(), 4)) CHECK(reconstruct(view, pick(b, s)) == b.secret);
}

TEST_CASE("share and public files round trip") {
  for (auto v : {Variant::kHyperplaneSecret, Variant::kSubspaceSecret}) {
    auto b = deal(v, cubic_arc(3), 2);
    std::ostringstream os;
    write_share(os, b.params, b.shares[2]);
    std::istringstream is(os.str());
    auto sf = read_share(is);
    CHECK(sf.variant == v);
    CHECK(sf.share.id == 3);
    CHECK(sf.share.space == b.shares[2].space);
    CHECK(sf.k == 4);

    std::ostringstream po;
    write_public(po, b);
    std::istringstream pi(po.str());
    auto pf = read_public(pi);
    CHECK(pf.view.public_space == b.public_space);
    CHECK(pf.leak_profile == b.leak_profile);
    CHECK(pf.view.params.arc_params == b.params.arc_params);
    CHECK(po.str().find(linalg::to_text(b.secret)) == std::string::npos);
  }
}

TEST_CASE("a family that is not an arc is refused") {
  auto arc = cubic_arc(2);
  Rng rng(1);
  std::vector<Subspace> els = arc.elements();
  els[0] = testing::random_subspace_of_dim(rng, arc.field(), 9, 3);
  arcs::Family bad(arcs::FamilyKind::kArc, arc.field(), 9, 2, arc.params(), els, 2);
  CHECK_THROWS_AS(deal(Variant::kHyperplaneSecret, bad, 1), DealError);
}

}  // TEST_SUITE
