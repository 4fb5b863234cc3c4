// SPDX-License-Identifier: Apache-2.0
//
// Exact linear algebra over GF(q) and projective subspaces of PG(N,q).
//
// A Subspace stores a basis in reduced row-echelon form. RREF is unique for
// a given row space, so two Subspaces are equal exactly when their basis
// matrices are identical. Dimensions are projective: a point has dimension 0
// and the empty subspace has dimension -1.

#ifndef DUALARC_LINALG_HPP_
#define DUALARC_LINALG_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualarc/gf.hpp"
#include "dualarc/rng.hpp"

namespace dualarc::linalg {

using gf::FieldPtr;
using gf::Value;
using Vector = std::vector<Value>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Row-major dense matrix; the field is supplied by the caller of each
// algorithm.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Value& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Value at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<Value> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Value> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Value> values);
  void truncate_rows(std::size_t rows);
  const std::vector<Value>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Value> data_;
};

// Gauss-Jordan elimination in place. Zero rows end up at the bottom and are
// removed; returns the pivot columns, one per remaining row.
std::vector<std::size_t> rref(Matrix& m, const gf::Field& field);

// Scale so that the first nonzero coordinate is 1. Zero stays zero.
void normalize(std::span<Value> v, const gf::Field& field);

class Subspace {
 public:
  // The empty subspace of PG(ambient_dim, q).
  Subspace(FieldPtr field, int ambient_dim);

  static Subspace whole(FieldPtr field, int ambient_dim);
  static Subspace from_vectors(FieldPtr field, int ambient_dim, const std::vector<Vector>& vectors);
  // Throws std::invalid_argument for the zero vector.
  static Subspace point(FieldPtr field, const Vector& coords);
  // Takes ownership of a matrix that may not yet be reduced.
  static Subspace from_matrix(FieldPtr field, int ambient_dim, Matrix m);

  const FieldPtr& field() const noexcept { return field_; }
  int ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t coords() const noexcept { return static_cast<std::size_t>(ambient_dim_) + 1; }
  int rank() const noexcept { return static_cast<int>(basis_.rows()); }
  int dim() const noexcept { return rank() - 1; }
  bool empty() const noexcept { return basis_.rows() == 0; }

  const Matrix& basis() const noexcept { return basis_; }
  std::span<const Value> row(std::size_t i) const noexcept { return basis_.row(i); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<Vector> basis_vectors() const;

  // Residual of v after eliminating the pivot columns; zero iff v is inside.
  Vector residual(std::span<const Value> v) const;
  bool contains(std::span<const Value> v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept;
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  Subspace(FieldPtr field, int ambient_dim, Matrix basis, std::vector<std::size_t> pivots);

  FieldPtr field_;
  int ambient_dim_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

// Throws gf::FieldMismatch or DimensionError when the arguments do not share
// a field and ambient space.
void check_compatible(const Subspace& a, const Subspace& b);

Subspace span(const Subspace& a, const Subspace& b);
Subspace span(std::span<const Subspace> parts);
Subspace span_with(const Subspace& a, std::span<const Value> v);
Subspace meet(const Subspace& a, const Subspace& b);
Subspace meet(std::span<const Subspace> parts);

// The standard symmetric form sum x_i y_i; the only form the library uses.
struct StandardForm {
  Value operator()(const gf::Field& f, std::span<const Value> x, std::span<const Value> y) const;
};

// { y : form(x, y) = 0 for all x in a }.
Subspace perp(const Subspace& a, StandardForm form = {});

// Projective points of a as canonical representatives. The order is fixed:
// grouped by which basis row carries the leading coefficient 1, remaining
// coefficients counted in base q with the last row varying fastest.
std::vector<Vector> points(const Subspace& a);
void for_each_point(const Subspace& a, const std::function<void(std::span<const Value>)>& fn);

// (q^r - 1)/(q - 1), the number of points of a projective (r-1)-space.
std::uint64_t projective_point_count(std::uint64_t q, int r);

// Gaussian binomial [m choose k]_q. Throws std::overflow_error beyond 64 bits.
std::uint64_t gaussian_binomial(std::uint64_t q, int m, int k);

// Number of target_dim-subspaces of PG(N,q) through a.
std::uint64_t count_superspaces(const Subspace& a, int target_dim);
// Same, restricted to subspaces of `container` (which must contain a).
std::uint64_t count_superspaces_within(const Subspace& a, const Subspace& container, int target_dim);

// Uniform target_dim-subspace through a, by adding uniformly random vectors
// that are not yet in the span.
Subspace random_superspace(const Subspace& a, int target_dim, Rng& rng);
Subspace random_superspace_within(const Subspace& a, const Subspace& container, int target_dim,
                                  Rng& rng);

// Text block: "q=<p>^<e> N=<N> r=<r>" followed by r rows of N+1 elements.
void write_subspace(std::ostream& os, const Subspace& s);
std::string to_text(const Subspace& s);
// `field` may be null, in which case the field is built from the header.
Subspace read_subspace(std::istream& is, const FieldPtr& field = nullptr);

}  // namespace dualarc::linalg

#endif  // DUALARC_LINALG_HPP_
