// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dualarc/arcs.hpp"
#include "dualarc/rng.hpp"

namespace dualarc::arcs {

namespace {

using linalg::meet;
using linalg::span;

class Checker {
 public:
  Checker(const Family& f, const VerifyOptions& opt, VerificationReport& r) : f_(f), opt_(opt), r_(r) {
    dual_ = f.kind() == FamilyKind::kDualArc;
    max_j_ = std::min<std::size_t>(static_cast<std::size_t>(f.order()) + 2, f.size());
  }

  // Expected dimension of the meet (dual arc) or span (arc) of j elements.
  int expected(std::size_t j) const {
    if (j <= static_cast<std::size_t>(f_.order()) + 1) return f_.params()[j];
    return dual_ ? -1 : f_.ambient_dim();
  }

  Subspace combine(const Subspace& a, const Subspace& b) const { return dual_ ? meet(a, b) : span(a, b); }

  void check(const std::vector<std::size_t>& subset, const Subspace& s) {
    ++r_.subsets_checked;
    const int want = expected(subset.size());
    if (s.dim() == want) return;
    r_.axioms_hold = false;
    if (r_.failure_count++ < opt_.max_listed) r_.failures.push_back({subset, want, s.dim()});
  }

  // Dual arc: the meet of the subset is spanned by its meets with the other
  // elements. Arc: the span of the subset is the meet of its spans with the
  // other elements.
  void check_regular(const std::vector<std::size_t>& subset, const Subspace& s) {
    std::vector<bool> in(f_.size(), false);
    for (auto i : subset) in[i] = true;
    Subspace acc = dual_ ? Subspace(f_.field(), f_.ambient_dim()) : Subspace::whole(f_.field(), f_.ambient_dim());
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (in[i]) continue;
      acc = dual_ ? span(acc, meet(s, f_[i])) : meet(acc, span(s, f_[i]));
      if (acc == s) return;
    }
    if (acc == s) return;
    r_.regular = false;
    if (r_.regularity_failure_count++ < opt_.max_listed) r_.regularity_failures.push_back({subset, s.dim(), acc.dim()});
  }

  void exhaustive() {
    std::vector<std::size_t> subset;
    dfs(0, subset, nullptr);
  }

  void sampled() {
    Rng rng(opt_.seed);
    std::vector<std::size_t> pool(f_.size());
    for (std::size_t j = 1; j <= max_j_; ++j) {
      for (std::size_t s = 0; s < opt_.samples; ++s) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t t = 0; t < j; ++t) std::swap(pool[t], pool[t + rng.uniform(pool.size() - t)]);
        std::vector<std::size_t> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(j));
        std::sort(subset.begin(), subset.end());
        Subspace acc = f_[subset[0]];
        for (std::size_t t = 1; t < j; ++t) acc = combine(acc, f_[subset[t]]);
        check(subset, acc);
        if (j <= static_cast<std::size_t>(f_.order()) && acc.dim() == expected(j)) check_regular(subset, acc);
      }
    }
  }

 private:
  void dfs(std::size_t start, std::vector<std::size_t>& subset, const Subspace* prefix) {
    for (std::size_t i = start; i < f_.size(); ++i) {
      subset.push_back(i);
      const Subspace cur = prefix ? combine(*prefix, f_[i]) : f_[i];
      check(subset, cur);
      if (subset.size() <= static_cast<std::size_t>(f_.order()) && cur.dim() == expected(subset.size())) {
        check_regular(subset, cur);
      }
      if (subset.size() < max_j_) dfs(i + 1, subset, &cur);
      subset.pop_back();
    }
  }

  const Family& f_;
  const VerifyOptions& opt_;
  VerificationReport& r_;
  bool dual_ = true;
  std::size_t max_j_ = 0;
};

std::string subset_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

VerificationReport verify(const Family& family, const VerifyOptions& options) {
  VerificationReport r;
  r.kind = family.kind();
  r.mode = options.mode;
  r.seed = options.seed;
  r.samples = options.mode == VerifyMode::kSampled ? options.samples : 0;

  const bool dual = family.kind() == FamilyKind::kDualArc;
  if (family.size() == 0) {
    r.span_dim = -1;
    r.meet_dim = family.ambient_dim();
  } else {
    r.span_dim = linalg::span(std::span<const Subspace>(family.elements())).dim();
    r.meet_dim = linalg::meet(std::span<const Subspace>(family.elements())).dim();
  }

  Checker c(family, options, r);
  if (options.mode == VerifyMode::kExhaustive) {
    c.exhaustive();
  } else {
    c.sampled();
  }
  // Regularity also asks the elements to span (dual arc) or to have empty
  // common meet (arc).
  if (dual ? r.span_dim != family.ambient_dim() : r.meet_dim != -1) r.regular = false;
  if (!r.axioms_hold) r.regular = false;
  return r;
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.kind == FamilyKind::kDualArc ? "dual arc" : "arc") << " verification ("
     << (r.mode == VerifyMode::kExhaustive ? "exhaustive" : "sampled, " + std::to_string(r.samples) +
                                                                 " per size, seed " + std::to_string(r.seed))
     << ")\n";
  os << "  subsets checked: " << r.subsets_checked << '\n';
  os << "  axioms: " << (r.axioms_hold ? "hold" : "FAIL") << '\n';
  os << "  regular: " << (r.regular ? "yes" : "no") << '\n';
  os << "  span of elements: dimension " << r.span_dim << '\n';
  os << "  meet of elements: dimension " << r.meet_dim << '\n';
  for (const auto& f : r.failures) {
    os << "  failure " << subset_text(f.subset) << ": expected " << f.expected << ", got " << f.actual << '\n';
  }
  if (r.failure_count > r.failures.size()) os << "  ... " << r.failure_count - r.failures.size() << " more\n";
  for (const auto& f : r.regularity_failures) {
    os << "  not regular at " << subset_text(f.subset) << ": dimension " << f.expected << ", generated "
       << f.actual << '\n';
  }
  return os.str();
}

std::string to_key_values(const VerificationReport& r) {
  std::ostringstream os;
  os << "kind=" << to_string(r.kind) << '\n';
  os << "mode=" << (r.mode == VerifyMode::kExhaustive ? "exhaustive" : "sampled") << '\n';
  if (r.mode == VerifyMode::kSampled) os << "samples=" << r.samples << "\nseed=" << r.seed << '\n';
  os << "subsets_checked=" << r.subsets_checked << '\n';
  os << "axioms_hold=" << (r.axioms_hold ? "true" : "false") << '\n';
  os << "regular=" << (r.regular ? "true" : "false") << '\n';
  os << "span_dim=" << r.span_dim << '\n';
  os << "meet_dim=" << r.meet_dim << '\n';
  os << "failures=" << r.failure_count << '\n';
  os << "regularity_failures=" << r.regularity_failure_count << '\n';
  return os.str();
}

Family dualize(const Family& family) {
  std::vector<Subspace> els;
  els.reserve(family.size());
  for (const auto& e : family.elements()) els.push_back(linalg::perp(e));
  auto params = family.params();
  const int big_n = family.ambient_dim();
  for (std::size_t i = 1; i < params.size(); ++i) params[i] = big_n - 1 - params[i];
  const auto kind = family.kind() == FamilyKind::kDualArc ? FamilyKind::kArc : FamilyKind::kDualArc;
  return family.with_params(kind, std::move(params), std::move(els));
}

HyperovalReport check_dual_hyperoval(const Family& family) {
  HyperovalReport r;
  const auto m = family.size();
  r.size_ok = m == linalg::projective_point_count(family.q(), family.element_dim() + 1) + 1;
  r.pairs_meet_in_points = true;
  r.triples_skew = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Subspace ab = meet(family[a], family[b]);
      if (ab.dim() != 0) r.pairs_meet_in_points = false;
      for (std::size_t c = b + 1; c < m && !ab.empty(); ++c) {
        if (!meet(ab, family[c]).empty()) r.triples_skew = false;
      }
    }
  }
  r.spanning = m > 0 && linalg::span(std::span<const Subspace>(family.elements())).dim() == family.ambient_dim();
  return r;
}

}  // namespace dualarc::arcs
