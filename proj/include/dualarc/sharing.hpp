// SPDX-License-Identifier: Apache-2.0
//
// Threshold secret sharing on generalised arcs in PG(n+1, q).
//
// Hyperplane scheme: the secret is a hyperplane Pi; the shares are the
// elements of an arc of order k-2 embedded in Pi. Any k shares span Pi.
//
// Subspace scheme: Pi is hidden, one arc element pi is the secret and the
// remaining elements are shares. A (d1+1)-space pi' through pi, not inside
// Pi, is public; k shares recover Pi and the secret is Pi meet pi'.

#ifndef DUALARC_SHARING_HPP_
#define DUALARC_SHARING_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualarc/family.hpp"
#include "dualarc/rational.hpp"
#include "dualarc/veronese.hpp"

namespace dualarc::sharing {

using linalg::Subspace;
using linalg::Vector;

enum class Variant { kHyperplaneSecret = 1, kSubspaceSecret = 2 };

struct SchemeParams {
  Variant variant = Variant::kHyperplaneSecret;
  std::uint32_t q = 0;
  int n = 0;  // the arc lives in PG(n, q), the scheme in PG(n+1, q)
  int k = 0;
  // (n, d_1, ..., d_{k-1}): span dimensions of j arc elements.
  std::vector<int> arc_params;
  std::size_t participant_count = 0;
  // n for the hyperplane scheme, d_1 for the subspace scheme.
  int secret_dim = 0;

  // d_0 = -1, d_k = n.
  int d(int i) const;
};

// Scheme parameters for an arc family (kind must be kArc).
SchemeParams params_for_arc(Variant variant, const arcs::Family& arc);

// Hyperplane scheme: (q-1)/(q^{n+1-d_i}-1), 0 <= i < k.
// Subspace scheme: (q-1)/(q^{d_{i+1}-d_i+1}-1), 0 <= i < k, and 1 at i = k.
// Throws std::out_of_range otherwise.
Rational attack_probability(const SchemeParams& params, int i);

struct Share {
  std::size_t id;  // 1-based participant id
  Subspace space;
};

struct ShareBundle {
  SchemeParams params;
  gf::FieldPtr field;
  int ambient_dim = 0;                   // n + 1
  std::optional<Subspace> public_space;  // subspace scheme only
  std::vector<Share> shares;
  Subspace secret;
  std::uint64_t seed = 0;
  // Exact guessing probability with i shares, indexed by i.
  std::vector<Rational> leak_profile;
};

class DealError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Embeds the arc into a uniformly random hyperplane of PG(n+1, q) through a
// random basis. Throws DealError if the arc does not verify with its
// declared parameters.
ShareBundle deal(Variant variant, const arcs::Family& arc, std::uint64_t seed);

// What a set of participants can see.
struct PublicView {
  SchemeParams params;
  gf::FieldPtr field;
  std::optional<Subspace> public_space;
};
PublicView public_view(const ShareBundle& bundle);

class ReconstructionError : public std::runtime_error {
 public:
  ReconstructionError(const std::string& what, int span_dim) : std::runtime_error(what), span_dim_(span_dim) {}
  // Dimension of the span of the given shares.
  int span_dim() const noexcept { return span_dim_; }

 private:
  int span_dim_;
};

// Span of the shares (hyperplane scheme) or its meet with the public space.
// Throws ReconstructionError for fewer than k shares, repeated ids, or a
// span that is not a hyperplane.
Subspace reconstruct(const PublicView& view, std::span<const Share> shares);

struct AttackEstimate {
  int i = 0;
  Rational p_exact;
  std::uint64_t matches = 0;
  std::uint64_t trials = 0;
  double p_empirical = 0.0;
  double tolerance = 0.0;  // 4 sigma
  bool within_tolerance = false;
};

// Repeats: draw i distinct shares, guess uniformly among the candidate
// secrets consistent with them, count exact hits. Trials run in fixed blocks
// with per-block substreams, so the result does not depend on `workers`.
AttackEstimate simulate_attack(const ShareBundle& bundle, int i, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers = 1);

// Within the arc element pi = A([1,0,0]) of the n = 2, d = 2 construction.
struct CubicSecret {
  Subspace element;
  // pi meet A(Q) for the lines <P0, a P1 + P2> (a in enumeration order)
  // followed by <P0, P1>.
  std::vector<Vector> points;
  bool twisted_cubic = false;  // q+1 distinct points, no 4 coplanar
  Subspace plane;              // first plane of pi containing none of them
  std::vector<Rational> leak_profile;
};

// Throws std::invalid_argument unless n = 2 and d = 2.
CubicSecret twisted_cubic_secret(const veronese::VeroneseContext& ctx);

// Subspace scheme with the cubic-avoiding plane as secret and a 3-space
// through it as the public space.
ShareBundle deal_twisted_cubic(const veronese::VeroneseContext& ctx, std::uint64_t seed);

// Share file: "scheme=<1|2> q=<q> n=<n> k=<k> participant=<id>" then the
// subspace block.
void write_share(std::ostream& os, const SchemeParams& params, const Share& share);
struct ShareFile {
  Variant variant;
  std::uint32_t q;
  int n;
  int k;
  Share share;
};
ShareFile read_share(std::istream& is);

// Public file: scheme line, params line, profile line, then the public
// space block for the subspace scheme.
void write_public(std::ostream& os, const ShareBundle& bundle);
struct PublicFile {
  PublicView view;
  std::vector<Rational> leak_profile;
};
PublicFile read_public(std::istream& is);

}  // namespace dualarc::sharing

#endif  // DUALARC_SHARING_HPP_
