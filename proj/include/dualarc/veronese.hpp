// SPDX-License-Identifier: Apache-2.0
//
// Veronesean constructions over PG(n, q).
//
// W has one coordinate per multiset {i_0 <= ... <= i_d} of [0, n]; there are
// C(n+d+1, d+1) of them, ordered lexicographically as sorted tuples. For
// n = 2, d = 1 the order is 00 01 02 11 12 22.

#ifndef DUALARC_VERONESE_HPP_
#define DUALARC_VERONESE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dualarc/family.hpp"
#include "dualarc/linalg.hpp"

namespace dualarc::veronese {

using linalg::Subspace;
using linalg::Vector;

// Sorted index tuple of length d+1.
using MonomialIndex = std::vector<int>;

// Exact binomial coefficient; throws std::overflow_error beyond 64 bits.
std::uint64_t binomial(int n, int k);

class VeroneseContext {
 public:
  // Throws std::invalid_argument for n < 0, d < 0 or an oversized W.
  VeroneseContext(gf::FieldPtr field, int n, int d);

  const gf::FieldPtr& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }

  // Coordinates of W and the projective dimension of PG(W).
  std::size_t width() const noexcept { return monomials_.size(); }
  int ambient_dim() const noexcept { return static_cast<int>(monomials_.size()) - 1; }

  const std::vector<MonomialIndex>& monomials() const noexcept { return monomials_; }
  // Accepts any ordering of the multiset. Throws std::out_of_range for bad
  // lengths or entries.
  std::size_t index_of(std::span<const int> indices) const;

  // Points of PG(n, q): canonical representatives, lexicographic order.
  const std::vector<Vector>& source_points() const noexcept { return points_; }

  // d_i = C(n+d+1-i, d+1-i) - 1 for i = 0..d+1.
  std::vector<int> dual_params() const;
  // n_0 = N, n_i = N - 1 - d_i.
  std::vector<int> arc_params() const;

 private:
  gf::FieldPtr field_;
  int n_;
  int d_;
  std::vector<MonomialIndex> monomials_;
  std::vector<Vector> points_;
};

// Multilinear symmetric map V^{d+1} -> W. The coefficient of e_I is the sum,
// over every ordering (i_0..i_d) of I, of x^(0)_{i_0} ... x^(d)_{i_d}.
Vector theta(const VeroneseContext& ctx, std::span<const Vector> vectors);

// Coefficient of e_I is the plain product x_{i_0} ... x_{i_d}.
Vector zeta(const VeroneseContext& ctx, const Vector& x);

// D(P) = <theta(x, e_J) : J a d-multiset>. Projective dimension C(n+d, d) - 1.
Subspace dual_element(const VeroneseContext& ctx, const Vector& x);
arcs::Family build_dual_arc(const VeroneseContext& ctx);

// A(P) = D(P)^perp under the standard form.
Subspace arc_element(const VeroneseContext& ctx, const Vector& x);
// <zeta(y) : y in x^perp>. Agrees with arc_element when
// construction2_condition holds.
Subspace arc_element_from_veronesean(const VeroneseContext& ctx, const Vector& x);
// q odd and (q^n - 1)/(q - 1) >= C(n+d, d+1).
bool construction2_condition(const VeroneseContext& ctx);
arcs::Family build_arc(const VeroneseContext& ctx);

// d = 1 only: theta(x, x), the point of D(P) lying on no other element.
// Coordinates x_i^2 on e_ii and 2 x_i x_j on e_ij.
Vector contact_point(const VeroneseContext& ctx, const Vector& x);

struct NucleusResult {
  bool extendable;
  // Span of all contact points: an n-space for q even, PG(W) for q odd.
  Subspace span;
};

// Throws std::invalid_argument unless d = 1.
NucleusResult nucleus(const VeroneseContext& ctx);

}  // namespace dualarc::veronese

#endif  // DUALARC_VERONESE_HPP_
