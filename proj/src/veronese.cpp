// SPDX-License-Identifier: Apache-2.0

#include "dualarc/veronese.hpp"

#include <algorithm>
#include <stdexcept>

namespace dualarc::veronese {

namespace {

constexpr std::uint64_t kMaxWidth = 1u << 14;

// All sorted tuples of length len over [0, n], lexicographic.
std::vector<MonomialIndex> multisets(int n, int len) {
  std::vector<MonomialIndex> out;
  MonomialIndex cur(static_cast<std::size_t>(len), 0);
  if (len == 0) return {cur};
  while (true) {
    out.push_back(cur);
    int k = len - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == n) --k;
    if (k < 0) break;
    const int v = cur[static_cast<std::size_t>(k)] + 1;
    for (int t = k; t < len; ++t) cur[static_cast<std::size_t>(t)] = v;
  }
  return out;
}

void check_source_vector(const VeroneseContext& ctx, const Vector& x) {
  if (x.size() != static_cast<std::size_t>(ctx.n()) + 1) {
    throw linalg::DimensionError("expected a vector with " + std::to_string(ctx.n() + 1) + " coordinates");
  }
  if (std::all_of(x.begin(), x.end(), [](gf::Value v) { return v == 0; })) {
    throw std::invalid_argument("zero vector does not define a point");
  }
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __extension__ typedef unsigned __int128 U;
  U r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

VeroneseContext::VeroneseContext(gf::FieldPtr field, int n, int d) : field_(std::move(field)), n_(n), d_(d) {
  if (!field_) throw std::invalid_argument("missing field");
  if (n < 0 || d < 0) throw std::invalid_argument("n and d must be non-negative");
  if (binomial(n + d + 1, d + 1) > kMaxWidth) throw std::invalid_argument("Veronesean space too large");
  monomials_ = multisets(n, d + 1);

  const std::uint64_t count = linalg::projective_point_count(field_->q(), n + 1);
  points_.reserve(count);
  for_each_point(Subspace::whole(field_, n), [&](std::span<const gf::Value> p) { points_.emplace_back(p.begin(), p.end()); });
  std::sort(points_.begin(), points_.end());
}

std::size_t VeroneseContext::index_of(std::span<const int> indices) const {
  if (indices.size() != static_cast<std::size_t>(d_) + 1) throw std::out_of_range("monomial of wrong degree");
  MonomialIndex key(indices.begin(), indices.end());
  std::sort(key.begin(), key.end());
  if (key.front() < 0 || key.back() > n_) throw std::out_of_range("monomial index outside [0, n]");
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), key);
  return static_cast<std::size_t>(it - monomials_.begin());
}

std::vector<int> VeroneseContext::dual_params() const {
  std::vector<int> out;
  for (int i = 0; i <= d_ + 1; ++i) out.push_back(static_cast<int>(binomial(n_ + d_ + 1 - i, d_ + 1 - i)) - 1);
  return out;
}

std::vector<int> VeroneseContext::arc_params() const {
  auto out = dual_params();
  const int big_n = ambient_dim();
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = big_n - 1 - out[i];
  return out;
}

Vector theta(const VeroneseContext& ctx, std::span<const Vector> vectors) {
  const auto arity = static_cast<std::size_t>(ctx.d()) + 1;
  if (vectors.size() != arity) throw std::invalid_argument("theta takes d+1 vectors");
  const auto len = static_cast<std::size_t>(ctx.n()) + 1;
  for (const auto& v : vectors) {
    if (v.size() != len) throw linalg::DimensionError("theta argument of wrong length");
  }
  const gf::Field& f = *ctx.field();
  Vector out(ctx.width(), 0);
  // Every index tuple is one ordering of its multiset.
  std::vector<int> tuple(arity, 0);
  while (true) {
    gf::Value prod = 1;
    for (std::size_t k = 0; k < arity && prod != 0; ++k) prod = f.mul(prod, vectors[k][static_cast<std::size_t>(tuple[k])]);
    if (prod != 0) {
      auto& slot = out[ctx.index_of(tuple)];
      slot = f.add(slot, prod);
    }
    std::size_t k = 0;
    while (k < arity && tuple[k] == ctx.n()) tuple[k++] = 0;
    if (k == arity) break;
    ++tuple[k];
  }
  return out;
}

Vector zeta(const VeroneseContext& ctx, const Vector& x) {
  check_source_vector(ctx, x);
  const gf::Field& f = *ctx.field();
  Vector out(ctx.width(), 0);
  for (std::size_t c = 0; c < ctx.width(); ++c) {
    gf::Value prod = 1;
    for (int i : ctx.monomials()[c]) prod = f.mul(prod, x[static_cast<std::size_t>(i)]);
    out[c] = prod;
  }
  return out;
}

Subspace dual_element(const VeroneseContext& ctx, const Vector& x) {
  check_source_vector(ctx, x);
  // theta(x, e_{j_1}, ..., e_{j_d}) = sum_i x_i e_{sort(i, J)}.
  std::vector<Vector> rows;
  std::vector<int> idx(static_cast<std::size_t>(ctx.d()) + 1);
  for (const auto& J : multisets(ctx.n(), ctx.d())) {
    Vector v(ctx.width(), 0);
    std::copy(J.begin(), J.end(), idx.begin() + 1);
    for (int i = 0; i <= ctx.n(); ++i) {
      const gf::Value xi = x[static_cast<std::size_t>(i)];
      if (xi == 0) continue;
      idx[0] = i;
      auto& slot = v[ctx.index_of(idx)];
      slot = ctx.field()->add(slot, xi);
    }
    rows.push_back(std::move(v));
  }
  return Subspace::from_vectors(ctx.field(), ctx.ambient_dim(), rows);
}

arcs::Family build_dual_arc(const VeroneseContext& ctx) {
  std::vector<Subspace> els;
  els.reserve(ctx.source_points().size());
  for (const auto& p : ctx.source_points()) els.push_back(dual_element(ctx, p));
  return arcs::Family(arcs::FamilyKind::kDualArc, ctx.field(), ctx.ambient_dim(), ctx.d(), ctx.dual_params(),
                      std::move(els), ctx.n());
}

Subspace arc_element(const VeroneseContext& ctx, const Vector& x) { return linalg::perp(dual_element(ctx, x)); }

Subspace arc_element_from_veronesean(const VeroneseContext& ctx, const Vector& x) {
  check_source_vector(ctx, x);
  const Subspace hyper = linalg::perp(Subspace::point(ctx.field(), x));
  std::vector<Vector> rows;
  linalg::for_each_point(hyper, [&](std::span<const gf::Value> y) { rows.push_back(zeta(ctx, Vector(y.begin(), y.end()))); });
  return Subspace::from_vectors(ctx.field(), ctx.ambient_dim(), rows);
}

bool construction2_condition(const VeroneseContext& ctx) {
  if (ctx.q() % 2 == 0) return false;
  return linalg::projective_point_count(ctx.q(), ctx.n()) >= binomial(ctx.n() + ctx.d(), ctx.d() + 1);
}

arcs::Family build_arc(const VeroneseContext& ctx) {
  std::vector<Subspace> els;
  els.reserve(ctx.source_points().size());
  for (const auto& p : ctx.source_points()) els.push_back(arc_element(ctx, p));
  return arcs::Family(arcs::FamilyKind::kArc, ctx.field(), ctx.ambient_dim(), ctx.d(), ctx.arc_params(),
                      std::move(els), ctx.n());
}

Vector contact_point(const VeroneseContext& ctx, const Vector& x) {
  if (ctx.d() != 1) throw std::invalid_argument("contact points are defined for d = 1");
  check_source_vector(ctx, x);
  const Vector args[2] = {x, x};
  return theta(ctx, args);
}

NucleusResult nucleus(const VeroneseContext& ctx) {
  if (ctx.d() != 1) throw std::invalid_argument("nucleus is defined for d = 1");
  std::vector<Vector> rows;
  for (const auto& p : ctx.source_points()) rows.push_back(contact_point(ctx, p));
  Subspace s = Subspace::from_vectors(ctx.field(), ctx.ambient_dim(), rows);
  const bool ok = s.dim() == ctx.n() && s.dim() < ctx.ambient_dim();
  return {ok, std::move(s)};
}

}  // namespace dualarc::veronese
