// SPDX-License-Identifier: Apache-2.0

#include "dualarc/linalg.hpp"

#include <algorithm>
#include <limits>

namespace dualarc::linalg {

void Matrix::append_row(std::span<const Value> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw DimensionError("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::truncate_rows(std::size_t rows) {
  if (rows < rows_) {
    rows_ = rows;
    data_.resize(rows_ * cols_);
  }
}

std::vector<std::size_t> rref(Matrix& m, const gf::Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m.at(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(r).begin());
    auto pr = m.row(r);
    const Value inv = f.inv(pr[c]);
    if (inv != 1) {
      for (std::size_t k = c; k < cols; ++k) pr[k] = f.mul(pr[k], inv);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto ri = m.row(i);
      const Value factor = ri[c];
      if (factor == 0) continue;
      const Value nf = f.neg(factor);
      for (std::size_t k = c; k < cols; ++k) {
        if (pr[k] != 0) ri[k] = f.add(ri[k], f.mul(nf, pr[k]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return pivots;
}

void normalize(std::span<Value> v, const gf::Field& f) {
  auto it = std::find_if(v.begin(), v.end(), [](Value x) { return x != 0; });
  if (it == v.end() || *it == 1) return;
  const Value inv = f.inv(*it);
  for (; it != v.end(); ++it) *it = f.mul(*it, inv);
}

Subspace::Subspace(FieldPtr field, int ambient_dim)
    : field_(std::move(field)), ambient_dim_(ambient_dim), basis_(0, static_cast<std::size_t>(ambient_dim) + 1) {
  if (!field_) throw std::invalid_argument("subspace without a field");
  if (ambient_dim < 0) throw DimensionError("ambient dimension must be non-negative");
}

Subspace::Subspace(FieldPtr field, int ambient_dim, Matrix basis, std::vector<std::size_t> pivots)
    : field_(std::move(field)), ambient_dim_(ambient_dim), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::from_matrix(FieldPtr field, int ambient_dim, Matrix m) {
  if (ambient_dim < 0) throw DimensionError("ambient dimension must be non-negative");
  if (m.rows() == 0) return Subspace(std::move(field), ambient_dim);
  if (m.cols() != static_cast<std::size_t>(ambient_dim) + 1) throw DimensionError("vector length does not match ambient space");
  auto piv = rref(m, *field);
  if (m.rows() == 0) m = Matrix(0, static_cast<std::size_t>(ambient_dim) + 1);
  return Subspace(std::move(field), ambient_dim, std::move(m), std::move(piv));
}

Subspace Subspace::whole(FieldPtr field, int ambient_dim) {
  const std::size_t n = static_cast<std::size_t>(ambient_dim) + 1;
  Matrix m(n, n);
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = 1;
    piv[i] = i;
  }
  return Subspace(std::move(field), ambient_dim, std::move(m), std::move(piv));
}

Subspace Subspace::from_vectors(FieldPtr field, int ambient_dim, const std::vector<Vector>& vectors) {
  Matrix m(0, static_cast<std::size_t>(ambient_dim) + 1);
  for (const auto& v : vectors) m.append_row(v);
  return from_matrix(std::move(field), ambient_dim, std::move(m));
}

Subspace Subspace::point(FieldPtr field, const Vector& coords) {
  if (coords.empty()) throw DimensionError("point needs at least one coordinate");
  if (std::all_of(coords.begin(), coords.end(), [](Value x) { return x == 0; })) {
    throw std::invalid_argument("the zero vector is not a projective point");
  }
  const int n = static_cast<int>(coords.size()) - 1;
  return from_vectors(std::move(field), n, {coords});
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(basis_.rows());
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.emplace_back(basis_.row(i).begin(), basis_.row(i).end());
  return out;
}

Vector Subspace::residual(std::span<const Value> v) const {
  if (v.size() != coords()) throw DimensionError("vector length does not match ambient space");
  Vector r(v.begin(), v.end());
  const gf::Field& f = *field_;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Value c = r[pivots_[i]];
    if (c == 0) continue;
    const Value nc = f.neg(c);
    auto row = basis_.row(i);
    for (std::size_t k = pivots_[i]; k < r.size(); ++k) {
      if (row[k] != 0) r[k] = f.add(r[k], f.mul(nc, row[k]));
    }
  }
  return r;
}

bool Subspace::contains(std::span<const Value> v) const {
  const auto r = residual(v);
  return std::all_of(r.begin(), r.end(), [](Value x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  check_compatible(*this, other);
  if (other.rank() > rank()) return false;
  for (std::size_t i = 0; i < other.basis_.rows(); ++i) {
    if (!contains(other.basis_.row(i))) return false;
  }
  return true;
}

bool operator==(const Subspace& a, const Subspace& b) noexcept {
  return a.ambient_dim_ == b.ambient_dim_ && a.basis_.rows() == b.basis_.rows() &&
         a.basis_.data() == b.basis_.data() && gf::same_field(a.field_, b.field_);
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept {
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.basis_.rows() <=> b.basis_.rows(); c != 0) return c;
  return a.basis_.data() <=> b.basis_.data();
}

std::size_t Subspace::hash() const noexcept {
  std::uint64_t h = mix_seed(static_cast<std::uint64_t>(ambient_dim_) * 1315423911u + basis_.rows());
  for (Value v : basis_.data()) h = mix_seed(h ^ v);
  return static_cast<std::size_t>(h);
}

void check_compatible(const Subspace& a, const Subspace& b) {
  if (!gf::same_field(a.field(), b.field())) throw gf::FieldMismatch("subspaces over different fields");
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("subspaces of different ambient spaces");
}

Subspace span(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  Matrix m = a.basis();
  for (std::size_t i = 0; i < b.basis().rows(); ++i) m.append_row(b.row(i));
  return Subspace::from_matrix(a.field(), a.ambient_dim(), std::move(m));
}

Subspace span(std::span<const Subspace> parts) {
  if (parts.empty()) throw std::invalid_argument("span of nothing has no ambient space");
  Matrix m(0, parts.front().coords());
  for (const auto& s : parts) {
    check_compatible(parts.front(), s);
    for (std::size_t i = 0; i < s.basis().rows(); ++i) m.append_row(s.row(i));
  }
  return Subspace::from_matrix(parts.front().field(), parts.front().ambient_dim(), std::move(m));
}

Subspace span_with(const Subspace& a, std::span<const Value> v) {
  if (v.size() != a.coords()) throw DimensionError("vector length does not match ambient space");
  if (a.contains(v)) return a;
  Matrix m = a.basis();
  m.append_row(v);
  return Subspace::from_matrix(a.field(), a.ambient_dim(), std::move(m));
}

Subspace meet(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  if (a.empty() || b.empty()) return Subspace(a.field(), a.ambient_dim());
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  if (a.rank() == 1 || b.rank() == 1) return Subspace(a.field(), a.ambient_dim());

  // Zassenhaus: rows (u | u) for u in a and (w | 0) for w in b. After
  // elimination, rows with a zero left half carry a basis of a ∩ b.
  const std::size_t n = a.coords();
  Matrix m(0, 2 * n);
  Vector row(2 * n, 0);
  for (std::size_t i = 0; i < a.basis().rows(); ++i) {
    auto r = a.row(i);
    std::copy(r.begin(), r.end(), row.begin());
    std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(n));
    m.append_row(row);
  }
  std::fill(row.begin() + static_cast<std::ptrdiff_t>(n), row.end(), 0);
  for (std::size_t i = 0; i < b.basis().rows(); ++i) {
    auto r = b.row(i);
    std::copy(r.begin(), r.end(), row.begin());
    m.append_row(row);
  }
  const auto piv = rref(m, *a.field());
  Matrix inter(0, n);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= n) {
      auto r = m.row(i);
      inter.append_row(r.subspan(n, n));
    }
  }
  return Subspace::from_matrix(a.field(), a.ambient_dim(), std::move(inter));
}

Subspace meet(std::span<const Subspace> parts) {
  if (parts.empty()) throw std::invalid_argument("meet of nothing has no ambient space");
  Subspace acc = parts.front();
  for (std::size_t i = 1; i < parts.size() && !acc.empty(); ++i) acc = meet(acc, parts[i]);
  return acc;
}

Value StandardForm::operator()(const gf::Field& f, std::span<const Value> x, std::span<const Value> y) const {
  if (x.size() != y.size()) throw DimensionError("form arguments differ in length");
  Value s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s = f.add(s, f.mul(x[i], y[i]));
  return s;
}

Subspace perp(const Subspace& a, StandardForm) {
  // Null space of the RREF basis: one vector per free column.
  const std::size_t n = a.coords();
  const gf::Field& f = *a.field();
  std::vector<bool> is_pivot(n, false);
  for (auto c : a.pivots()) is_pivot[c] = true;
  Matrix k(0, n);
  Vector v(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < a.pivots().size(); ++i) v[a.pivots()[i]] = f.neg(a.basis().at(i, free));
    k.append_row(v);
  }
  return Subspace::from_matrix(a.field(), a.ambient_dim(), std::move(k));
}

void for_each_point(const Subspace& a, const std::function<void(std::span<const Value>)>& fn) {
  const gf::Field& f = *a.field();
  const std::size_t r = static_cast<std::size_t>(a.rank());
  const std::size_t n = a.coords();
  const Value q = f.q();
  Vector v(n);
  std::vector<Value> coeff;
  for (std::size_t lead = 0; lead < r; ++lead) {
    coeff.assign(r - lead - 1, 0);
    while (true) {
      auto first = a.row(lead);
      std::copy(first.begin(), first.end(), v.begin());
      for (std::size_t j = 0; j < coeff.size(); ++j) {
        const Value c = coeff[j];
        if (c == 0) continue;
        auto row = a.row(lead + 1 + j);
        for (std::size_t k = 0; k < n; ++k) {
          if (row[k] != 0) v[k] = f.add(v[k], f.mul(c, row[k]));
        }
      }
      fn(v);
      std::size_t j = coeff.size();
      bool carry = true;
      while (carry && j > 0) {
        --j;
        if (++coeff[j] < q) {
          carry = false;
        } else {
          coeff[j] = 0;
        }
      }
      if (carry) break;
    }
  }
}

std::vector<Vector> points(const Subspace& a) {
  std::vector<Vector> out;
  out.reserve(projective_point_count(a.field()->q(), a.rank()));
  for_each_point(a, [&](std::span<const Value> v) { out.emplace_back(v.begin(), v.end()); });
  return out;
}

std::uint64_t projective_point_count(std::uint64_t q, int r) {
  if (r <= 0) return 0;
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (int i = 0; i < r; ++i) {
    total += power;
    power *= q;
  }
  return total;
}

std::uint64_t gaussian_binomial(std::uint64_t q, int m, int k) {
  if (k < 0 || m < 0 || k > m) return 0;
  // [m,k] = [m-1,k-1] + q^k [m-1,k], evaluated in 128 bits with a 64-bit cap.
  __extension__ typedef unsigned __int128 U;
  const U limit = std::numeric_limits<std::uint64_t>::max();
  std::vector<U> qpow(static_cast<std::size_t>(k) + 1, 1);
  for (std::size_t j = 1; j < qpow.size(); ++j) qpow[j] = std::min<U>(qpow[j - 1] * q, limit + 1);
  std::vector<U> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= m; ++i) {
    for (std::size_t j = static_cast<std::size_t>(std::min(i, k)); j >= 1; --j) {
      const U value = row[j - 1] + qpow[j] * row[j];
      if (value > limit) throw std::overflow_error("gaussian binomial exceeds 64 bits");
      row[j] = value;
    }
  }
  return static_cast<std::uint64_t>(row[static_cast<std::size_t>(k)]);
}

std::uint64_t count_superspaces(const Subspace& a, int target_dim) {
  if (target_dim < a.dim() || target_dim > a.ambient_dim()) {
    throw DimensionError("target dimension " + std::to_string(target_dim) + " outside [" +
                         std::to_string(a.dim()) + ", " + std::to_string(a.ambient_dim()) + "]");
  }
  return gaussian_binomial(a.field()->q(), a.ambient_dim() - a.dim(), target_dim - a.dim());
}

std::uint64_t count_superspaces_within(const Subspace& a, const Subspace& container, int target_dim) {
  if (!container.contains(a)) throw std::invalid_argument("container does not contain the subspace");
  if (target_dim < a.dim() || target_dim > container.dim()) {
    throw DimensionError("target dimension outside the container range");
  }
  return gaussian_binomial(a.field()->q(), container.dim() - a.dim(), target_dim - a.dim());
}

namespace {

Subspace grow_randomly(const Subspace& a, int target_dim, const std::function<void(Vector&)>& draw) {
  Subspace current = a;
  Vector v(a.coords());
  while (current.dim() < target_dim) {
    draw(v);
    if (!current.contains(v)) current = span_with(current, v);
  }
  return current;
}

}  // namespace

Subspace random_superspace(const Subspace& a, int target_dim, Rng& rng) {
  if (target_dim < a.dim() || target_dim > a.ambient_dim()) throw DimensionError("target dimension out of range");
  const Value q = a.field()->q();
  return grow_randomly(a, target_dim, [&](Vector& v) {
    for (auto& x : v) x = static_cast<Value>(rng.uniform(q));
  });
}

Subspace random_superspace_within(const Subspace& a, const Subspace& container, int target_dim, Rng& rng) {
  check_compatible(a, container);
  if (!container.contains(a)) throw std::invalid_argument("container does not contain the subspace");
  if (target_dim < a.dim() || target_dim > container.dim()) throw DimensionError("target dimension out of range");
  const gf::Field& f = *a.field();
  std::vector<Value> coeff(static_cast<std::size_t>(container.rank()));
  return grow_randomly(a, target_dim, [&](Vector& v) {
    for (auto& c : coeff) c = static_cast<Value>(rng.uniform(f.q()));
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i] == 0) continue;
      auto row = container.row(i);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (row[k] != 0) v[k] = f.add(v[k], f.mul(coeff[i], row[k]));
      }
    }
  });
}

}  // namespace dualarc::linalg
