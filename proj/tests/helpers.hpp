// SPDX-License-Identifier: Apache-2.0
//
// Generators and small independent oracles shared by the test suites.
// The oracles avoid the library's elimination code on purpose: GF(2) rank
// is computed on bitmasks, and prime-field arithmetic is done with plain
// integers mod p.
#ifndef DUALARC_TESTS_HELPERS_HPP_
#define DUALARC_TESTS_HELPERS_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dualarc/gf.hpp"
#include "dualarc/linalg.hpp"
#include "dualarc/rng.hpp"
#include "dualarc/veronese.hpp"

namespace testing {

using dualarc::Rng;
using dualarc::gf::FieldPtr;
using dualarc::gf::Value;
using dualarc::linalg::Subspace;
using dualarc::linalg::Vector;

inline Vector random_vector(Rng& rng, std::uint32_t q, std::size_t len) {
  Vector v(len);
  for (auto& x : v) x = static_cast<Value>(rng.uniform(q));
  return v;
}

inline Vector random_nonzero_vector(Rng& rng, std::uint32_t q, std::size_t len) {
  while (true) {
    Vector v = random_vector(rng, q, len);
    for (Value x : v) {
      if (x != 0) return v;
    }
  }
}

// Span of `count` random vectors; the dimension is whatever they reach.
inline Subspace random_subspace(Rng& rng, const FieldPtr& f, int ambient, int count) {
  std::vector<Vector> rows;
  for (int i = 0; i < count; ++i) rows.push_back(random_vector(rng, f->q(), static_cast<std::size_t>(ambient) + 1));
  return Subspace::from_vectors(f, ambient, rows);
}

// Random subspace of exact projective dimension dim.
inline Subspace random_subspace_of_dim(Rng& rng, const FieldPtr& f, int ambient, int dim) {
  while (true) {
    Subspace s = random_subspace(rng, f, ambient, dim + 1);
    if (s.dim() == dim) return s;
  }
}

// Rank over GF(2) of rows packed as bitmasks (coordinate i is bit i).
inline int gf2_rank(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (int bit = 0; bit < 64; ++bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    std::size_t pivot = rows.size();
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r) {
      if (rows[r] & mask) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && (rows[r] & mask)) rows[r] ^= rows[static_cast<std::size_t>(rank)];
    }
    ++rank;
  }
  return rank;
}

inline std::uint64_t pack_gf2(std::span<const Value> v) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

inline std::vector<std::uint64_t> pack_rows(const Subspace& s) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(s.rank()); ++i) out.push_back(pack_gf2(s.row(i)));
  return out;
}

// Hyperplanes a.x = 0 of PG(N,2) containing every row of s, by brute force.
inline std::uint64_t hyperplanes_through_gf2(const Subspace& s) {
  const auto rows = pack_rows(s);
  const std::uint64_t top = std::uint64_t{1} << s.coords();
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a < top; ++a) {
    bool ok = true;
    for (auto r : rows) ok = ok && std::popcount(a & r) % 2 == 0;
    count += ok;
  }
  return count;
}

// Subspace spanned by unit vectors at the given monomials, e.g. {"000","012"}.
inline Subspace coordinate_subspace(const dualarc::veronese::VeroneseContext& ctx,
                                    const std::vector<std::string>& monomials) {
  std::vector<Vector> rows;
  for (const auto& m : monomials) {
    std::vector<int> idx;
    for (char c : m) idx.push_back(c - '0');
    Vector v(ctx.width(), 0);
    v[ctx.index_of(idx)] = 1;
    rows.push_back(std::move(v));
  }
  return Subspace::from_vectors(ctx.field(), ctx.ambient_dim(), rows);
}

// Reorders a vector given in the listed monomial order into the library's
// coordinate order.
inline Vector from_listed_order(const dualarc::veronese::VeroneseContext& ctx,
                                const std::vector<std::string>& order, const Vector& listed) {
  Vector v(ctx.width(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<int> idx;
    for (char c : order[i]) idx.push_back(c - '0');
    v[ctx.index_of(idx)] = listed[i];
  }
  return v;
}

// All k-subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace testing

#endif  // DUALARC_TESTS_HELPERS_HPP_
