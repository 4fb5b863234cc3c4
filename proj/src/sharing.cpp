// SPDX-License-Identifier: Apache-2.0

#include "dualarc/sharing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "dualarc/arcs.hpp"

namespace dualarc::sharing {

namespace {

using linalg::Matrix;
using linalg::meet;
using linalg::span;

constexpr std::uint64_t kBlock = 1024;

// (q-1)/(q^e-1).
Rational guess_probability(std::uint64_t q, int e) {
  if (e < 1) throw std::out_of_range("non-positive exponent");
  const auto count = linalg::projective_point_count(q, e);
  return Rational(1, count);
}

Matrix random_invertible(std::size_t r, const gf::Field& f, Rng& rng) {
  while (true) {
    Matrix m(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) m.at(i, j) = static_cast<gf::Value>(rng.uniform(f.q()));
    }
    Matrix probe = m;
    if (linalg::rref(probe, f).size() == r) return m;
  }
}

// Maps coordinates of PG(n, q) into a hyperplane of PG(n+1, q).
class Embedding {
 public:
  Embedding(const gf::FieldPtr& field, int n, Rng& rng) : field_(field), n_(n) {
    hyperplane_ = std::make_unique<Subspace>(
        linalg::random_superspace(Subspace(field, n + 1), n, rng));
    const auto r = static_cast<std::size_t>(n) + 1;
    const Matrix mix = random_invertible(r, *field, rng);
    frame_ = Matrix(r, r + 1);
    const gf::Field& f = *field;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        if (mix.at(i, j) == 0) continue;
        auto src = hyperplane_->row(j);
        for (std::size_t c = 0; c <= r; ++c) frame_.at(i, c) = f.add(frame_.at(i, c), f.mul(mix.at(i, j), src[c]));
      }
    }
  }

  const Subspace& hyperplane() const { return *hyperplane_; }

  Vector map(std::span<const gf::Value> x) const {
    const gf::Field& f = *field_;
    Vector out(frame_.cols(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t c = 0; c < out.size(); ++c) out[c] = f.add(out[c], f.mul(x[i], frame_.at(i, c)));
    }
    return out;
  }

  Subspace map(const Subspace& s) const {
    if (s.ambient_dim() != n_) throw linalg::DimensionError("embedding expects a subspace of PG(n, q)");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < static_cast<std::size_t>(s.rank()); ++i) rows.push_back(map(s.row(i)));
    return Subspace::from_vectors(field_, n_ + 1, rows);
  }

 private:
  gf::FieldPtr field_;
  int n_;
  std::unique_ptr<Subspace> hyperplane_;
  Matrix frame_;
};

void check_arc(const arcs::Family& arc) {
  if (arc.kind() != arcs::FamilyKind::kArc) throw DealError("shares must come from an arc, not a dual arc");
  arcs::VerifyOptions opt;
  if (arc.size() > 40) opt.mode = arcs::VerifyMode::kSampled;
  const auto report = arcs::verify(arc, opt);
  if (!report.axioms_hold) {
    throw DealError("arc does not satisfy its declared parameters (" + std::to_string(report.failure_count) +
                    " failing subsets)");
  }
}

Subspace random_public_space(const Subspace& secret, const Subspace& hyperplane, int dim, Rng& rng) {
  while (true) {
    Subspace s = linalg::random_superspace(secret, dim, rng);
    if (!hyperplane.contains(s)) return s;
  }
}

std::vector<Rational> profile_for(const SchemeParams& params) {
  std::vector<Rational> out;
  const int last = params.variant == Variant::kHyperplaneSecret ? params.k - 1 : params.k;
  for (int i = 0; i <= last; ++i) out.push_back(attack_probability(params, i));
  return out;
}

}  // namespace

int SchemeParams::d(int i) const {
  if (i == 0) return -1;
  if (i == k) return n;
  if (i < 0 || i > k) throw std::out_of_range("d_i index out of range");
  return arc_params.at(static_cast<std::size_t>(i));
}

SchemeParams params_for_arc(Variant variant, const arcs::Family& arc) {
  if (arc.kind() != arcs::FamilyKind::kArc) throw std::invalid_argument("scheme parameters need an arc");
  SchemeParams p;
  p.variant = variant;
  p.q = arc.q();
  p.n = arc.ambient_dim();
  p.k = arc.order() + 2;
  p.arc_params = arc.params();
  if (variant == Variant::kHyperplaneSecret) {
    p.participant_count = arc.size();
    p.secret_dim = p.n;
  } else {
    if (arc.size() < 1) throw std::invalid_argument("subspace scheme needs a non-empty arc");
    p.participant_count = arc.size() - 1;
    p.secret_dim = arc.params()[1];
  }
  return p;
}

Rational attack_probability(const SchemeParams& params, int i) {
  if (params.variant == Variant::kHyperplaneSecret) {
    if (i < 0 || i >= params.k) throw std::out_of_range("share count outside [0, k)");
    return guess_probability(params.q, params.n + 1 - params.d(i));
  }
  if (i < 0 || i > params.k) throw std::out_of_range("share count outside [0, k]");
  if (i == params.k) return Rational(1, 1);
  return guess_probability(params.q, params.d(i + 1) - params.d(i) + 1);
}

ShareBundle deal(Variant variant, const arcs::Family& arc, std::uint64_t seed) {
  check_arc(arc);
  const SchemeParams params = params_for_arc(variant, arc);
  if (variant == Variant::kSubspaceSecret && params.secret_dim + 1 > params.n + 1) {
    throw DealError("public space would not fit in PG(n+1, q)");
  }
  Rng rng(seed);
  const Embedding emb(arc.field(), params.n, rng);

  std::vector<Subspace> images;
  for (const auto& e : arc.elements()) images.push_back(emb.map(e));

  if (variant == Variant::kHyperplaneSecret) {
    std::vector<Share> shares;
    for (std::size_t i = 0; i < images.size(); ++i) shares.push_back({i + 1, images[i]});
    return ShareBundle{params, arc.field(), params.n + 1, std::nullopt, std::move(shares), emb.hyperplane(), seed,
                       profile_for(params)};
  }

  const auto secret_index = static_cast<std::size_t>(rng.uniform(images.size()));
  std::vector<Share> shares;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i != secret_index) shares.push_back({shares.size() + 1, images[i]});
  }
  const Subspace& secret = images[secret_index];
  Subspace pub = random_public_space(secret, emb.hyperplane(), params.secret_dim + 1, rng);
  return ShareBundle{params, arc.field(), params.n + 1, std::move(pub), std::move(shares), secret, seed,
                     profile_for(params)};
}

PublicView public_view(const ShareBundle& bundle) { return {bundle.params, bundle.field, bundle.public_space}; }

Subspace reconstruct(const PublicView& view, std::span<const Share> shares) {
  const auto& p = view.params;
  std::set<std::size_t> ids;
  Subspace s(view.field, p.n + 1);
  for (const auto& sh : shares) {
    if (!ids.insert(sh.id).second) throw ReconstructionError("participant " + std::to_string(sh.id) + " given twice", -1);
    s = span(s, sh.space);
  }
  if (static_cast<int>(shares.size()) < p.k) {
    throw ReconstructionError(std::to_string(shares.size()) + " shares span only dimension " + std::to_string(s.dim()) +
                                  " < " + std::to_string(p.n) + "; " + std::to_string(p.k) + " are needed",
                              s.dim());
  }
  if (s.dim() != p.n) {
    throw ReconstructionError("shares span dimension " + std::to_string(s.dim()) + ", expected a hyperplane of dimension " +
                                  std::to_string(p.n),
                              s.dim());
  }
  if (p.variant == Variant::kHyperplaneSecret) return s;
  if (!view.public_space) throw std::invalid_argument("subspace scheme needs the public space");
  Subspace secret = meet(s, *view.public_space);
  if (secret.dim() != p.secret_dim) {
    throw ReconstructionError("public space meets the shares' span in dimension " + std::to_string(secret.dim()), s.dim());
  }
  return secret;
}

AttackEstimate simulate_attack(const ShareBundle& bundle, int i, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers) {
  if (i < 0 || static_cast<std::size_t>(i) >= bundle.leak_profile.size() ||
      static_cast<std::size_t>(i) > bundle.shares.size()) {
    throw std::out_of_range("share count outside the leak profile");
  }
  if (trials == 0) throw std::invalid_argument("at least one trial required");
  workers = std::max(1u, workers);

  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  const auto& p = bundle.params;

  auto run_block = [&](std::uint64_t b) {
    Rng rng(seed, b);
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(trials, begin + kBlock);
    std::vector<std::size_t> pool(bundle.shares.size());
    std::uint64_t h = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      Subspace known(bundle.field, bundle.ambient_dim);
      for (int j = 0; j < i; ++j) {
        const auto u = static_cast<std::size_t>(j);
        std::swap(pool[u], pool[u + rng.uniform(pool.size() - u)]);
        known = span(known, bundle.shares[pool[u]].space);
      }
      Subspace guess = p.variant == Variant::kHyperplaneSecret
                           ? linalg::random_superspace(known, p.secret_dim, rng)
                           : linalg::random_superspace_within(meet(known, *bundle.public_space),
                                                              *bundle.public_space, p.secret_dim, rng);
      if (guess == bundle.secret) ++h;
    }
    hits[b] = h;
  };

  if (workers == 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  AttackEstimate est;
  est.i = i;
  est.p_exact = bundle.leak_profile[static_cast<std::size_t>(i)];
  est.trials = trials;
  est.matches = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  est.p_empirical = static_cast<double>(est.matches) / static_cast<double>(trials);
  const double pe = est.p_exact.to_double();
  est.tolerance = 4.0 * std::sqrt(pe * (1.0 - pe) / static_cast<double>(trials));
  est.within_tolerance = std::abs(est.p_empirical - pe) <= est.tolerance;
  return est;
}

CubicSecret twisted_cubic_secret(const veronese::VeroneseContext& ctx) {
  if (ctx.n() != 2 || ctx.d() != 2) throw std::invalid_argument("twisted cubic secret needs n = 2, d = 2");
  const gf::Field& f = *ctx.field();
  const Subspace element = veronese::arc_element(ctx, {1, 0, 0});

  std::vector<Vector> points;
  auto common_point = [&](const Vector& q) {
    const Subspace m = meet(element, veronese::arc_element(ctx, q));
    if (m.dim() != 0) throw std::runtime_error("arc elements do not meet in a point");
    auto r = m.row(0);
    points.emplace_back(r.begin(), r.end());
  };
  for (gf::Value a = 0; a < f.q(); ++a) common_point({0, a, 1});
  common_point({0, 1, 0});

  // Distinct, and every min(4, q+1) of them independent.
  bool cubic = std::set<Vector>(points.begin(), points.end()).size() == points.size();
  const std::size_t pick = std::min<std::size_t>(4, points.size());
  std::vector<bool> mask(points.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(pick), true);
  do {
    std::vector<Vector> sub;
    for (std::size_t t = 0; t < points.size(); ++t) {
      if (mask[t]) sub.push_back(points[t]);
    }
    if (Subspace::from_vectors(ctx.field(), ctx.ambient_dim(), sub).rank() != static_cast<int>(pick)) cubic = false;
  } while (cubic && std::prev_permutation(mask.begin(), mask.end()));

  // Planes of the element, as coefficient vectors c over its basis,
  // canonical and in lexicographic order; the first missing every point.
  const auto& piv = element.pivots();
  auto avoids = [&](const Vector& c) {
    for (const auto& pt : points) {
      gf::Value s = 0;
      for (std::size_t t = 0; t < 4; ++t) s = f.add(s, f.mul(c[t], pt[piv[t]]));
      if (s == 0) return false;
    }
    return true;
  };
  std::optional<Vector> chosen;
  for (int lead = 3; lead >= 0 && !chosen; --lead) {
    Vector c(4, 0);
    c[static_cast<std::size_t>(lead)] = 1;
    while (true) {
      if (avoids(c)) {
        chosen = c;
        break;
      }
      int t = 3;
      while (t > lead && c[static_cast<std::size_t>(t)] == f.q() - 1) c[static_cast<std::size_t>(t--)] = 0;
      if (t == lead) break;
      ++c[static_cast<std::size_t>(t)];
    }
  }
  if (!chosen) throw std::runtime_error("no plane of the element avoids the cubic");

  const Subspace kernel = linalg::perp(Subspace::point(ctx.field(), *chosen));
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < static_cast<std::size_t>(kernel.rank()); ++r) {
    Vector v(ctx.width(), 0);
    auto y = kernel.row(r);
    for (std::size_t t = 0; t < 4; ++t) {
      if (y[t] == 0) continue;
      auto b = element.row(t);
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.add(v[c], f.mul(y[t], b[c]));
    }
    rows.push_back(std::move(v));
  }
  Subspace plane = Subspace::from_vectors(ctx.field(), ctx.ambient_dim(), rows);

  const std::uint64_t q = f.q();
  std::vector<Rational> profile{Rational(1, q * q * q + q * q + q + 1), Rational(1, q * q * q + q * q + q + 1),
                                Rational(1, q * q + q + 1), Rational(1, q + 1), Rational(1, 1)};
  return CubicSecret{element, std::move(points), cubic, std::move(plane), std::move(profile)};
}

ShareBundle deal_twisted_cubic(const veronese::VeroneseContext& ctx, std::uint64_t seed) {
  const CubicSecret cs = twisted_cubic_secret(ctx);
  const arcs::Family arc = veronese::build_arc(ctx);
  SchemeParams params = params_for_arc(Variant::kSubspaceSecret, arc);
  params.secret_dim = 2;

  Rng rng(seed);
  const Embedding emb(arc.field(), params.n, rng);
  std::vector<Share> shares;
  for (const auto& e : arc.elements()) {
    if (e == cs.element) continue;
    shares.push_back({shares.size() + 1, emb.map(e)});
  }
  Subspace secret = emb.map(cs.plane);
  Subspace pub = random_public_space(secret, emb.hyperplane(), 3, rng);
  return ShareBundle{params, arc.field(), params.n + 1, std::move(pub), std::move(shares), std::move(secret), seed,
                     cs.leak_profile};
}

void write_share(std::ostream& os, const SchemeParams& params, const Share& share) {
  os << "scheme=" << static_cast<int>(params.variant) << " q=" << params.q << " n=" << params.n << " k=" << params.k
     << " participant=" << share.id << '\n';
  linalg::write_subspace(os, share.space);
}

ShareFile read_share(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("share file: empty input");
  int scheme = 0, n = 0, k = 0;
  unsigned q = 0;
  unsigned long long id = 0;
  if (std::sscanf(line.c_str(), "scheme=%d q=%u n=%d k=%d participant=%llu", &scheme, &q, &n, &k, &id) != 5 ||
      (scheme != 1 && scheme != 2)) {
    throw std::runtime_error("share file: bad header '" + line + "'");
  }
  auto field = gf::make_field_of_order(q);
  Subspace s = linalg::read_subspace(is, field);
  if (s.ambient_dim() != n + 1) throw std::runtime_error("share file: subspace not in PG(n+1, q)");
  return ShareFile{static_cast<Variant>(scheme), q, n, k, Share{static_cast<std::size_t>(id), std::move(s)}};
}

void write_public(std::ostream& os, const ShareBundle& bundle) {
  const auto& p = bundle.params;
  os << "scheme=" << static_cast<int>(p.variant) << " q=" << p.q << " n=" << p.n << " k=" << p.k
     << " participants=" << p.participant_count << " secret_dim=" << p.secret_dim << '\n';
  os << "params=";
  for (std::size_t i = 0; i < p.arc_params.size(); ++i) os << (i ? " " : "") << p.arc_params[i];
  os << "\nprofile=";
  for (std::size_t i = 0; i < bundle.leak_profile.size(); ++i) os << (i ? " " : "") << bundle.leak_profile[i];
  os << '\n';
  if (bundle.public_space) {
    os << "public\n";
    linalg::write_subspace(os, *bundle.public_space);
  } else {
    os << "public=none\n";
  }
}

PublicFile read_public(std::istream& is) {
  auto fail = [](const std::string& what) { return std::runtime_error("public file: " + what); };
  std::string line;
  if (!std::getline(is, line)) throw fail("empty input");
  int scheme = 0, n = 0, k = 0, sdim = 0;
  unsigned q = 0;
  unsigned long long participants = 0;
  if (std::sscanf(line.c_str(), "scheme=%d q=%u n=%d k=%d participants=%llu secret_dim=%d", &scheme, &q, &n, &k,
                  &participants, &sdim) != 6 ||
      (scheme != 1 && scheme != 2)) {
    throw fail("bad header '" + line + "'");
  }
  PublicFile out;
  auto& p = out.view.params;
  p.variant = static_cast<Variant>(scheme);
  p.q = q;
  p.n = n;
  p.k = k;
  p.participant_count = static_cast<std::size_t>(participants);
  p.secret_dim = sdim;
  out.view.field = gf::make_field_of_order(q);

  if (!std::getline(is, line) || line.rfind("params=", 0) != 0) throw fail("missing params line");
  {
    std::istringstream ps(line.substr(7));
    int v;
    while (ps >> v) p.arc_params.push_back(v);
  }
  if (p.arc_params.size() != static_cast<std::size_t>(k)) throw fail("expected k parameters");
  if (!std::getline(is, line) || line.rfind("profile=", 0) != 0) throw fail("missing profile line");
  {
    std::istringstream ps(line.substr(8));
    std::string tok;
    while (ps >> tok) {
      const auto slash = tok.find('/');
      if (slash == std::string::npos) throw fail("bad probability '" + tok + "'");
      out.leak_profile.emplace_back(std::stoull(tok.substr(0, slash)), std::stoull(tok.substr(slash + 1)));
    }
  }
  if (!std::getline(is, line)) throw fail("missing public line");
  if (line == "public") {
    out.view.public_space = linalg::read_subspace(is, out.view.field);
  } else if (line != "public=none") {
    throw fail("unexpected line '" + line + "'");
  }
  return out;
}

}  // namespace dualarc::sharing
