// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic in GF(p^e).
//
// An element is stored as the integer sum(c_i * p^i) of its coefficient
// vector over GF(p), c_0 first. The same integer is the element's position
// in enumerate(), so Value doubles as a dense index for lookup tables.
// Multiplication goes through discrete log / antilog tables built once per
// field; addition uses a digit-wise routine or a precomputed table for small q.

#ifndef DUALARC_GF_HPP_
#define DUALARC_GF_HPP_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dualarc::gf {

using Value = std::uint32_t;

// Largest supported field order.
inline constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

// Decompose q = p^e. Throws std::invalid_argument if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

// Immutable description of GF(p^e) together with its arithmetic tables.
// Instances are created through make_field() and shared by pointer.
class Field {
 public:
  Field(std::uint32_t p, std::uint32_t e, std::vector<Value> modulus);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  // Monic irreducible modulus, ascending degree, e + 1 coefficients.
  const std::vector<Value>& modulus() const noexcept { return modulus_; }

  Value zero() const noexcept { return 0; }
  Value one() const noexcept { return 1; }

  Value add(Value a, Value b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) {
      Value s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    return add_digits(a, b);
  }
  Value neg(Value a) const noexcept { return neg_table_[a]; }
  Value sub(Value a, Value b) const noexcept { return add(a, neg(b)); }
  Value mul(Value a, Value b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // Precondition: a != 0 (checked by the Element wrapper, not here).
  Value inv(Value a) const noexcept { return exp_[(q_ - 1) - log_[a]]; }
  Value div(Value a, Value b) const noexcept {
    if (a == 0) return 0;
    return exp_[log_[a] + (q_ - 1) - log_[b]];
  }
  Value pow(Value a, std::uint64_t k) const noexcept;

  // Image of an integer under Z -> GF(p) -> GF(q).
  Value from_int(std::int64_t v) const noexcept;

  // A generator of the multiplicative group.
  Value primitive() const noexcept { return exp_[1]; }

  // Multiplicative order of a != 0, computed from the log table.
  std::uint64_t order(Value a) const;

  std::vector<Value> coefficients(Value a) const;
  Value from_coefficients(const std::vector<Value>& coeffs) const;

  // Base-p digits, little-endian. For p > 10 and e > 1 the digits are
  // separated by '.'; prime fields always print the plain decimal value.
  std::string format(Value a) const;
  Value parse(std::string_view text) const;

  bool operator==(const Field& other) const noexcept {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }

 private:
  Value add_digits(Value a, Value b) const noexcept;
  Value mul_poly(Value a, Value b) const;

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<Value> modulus_;
  std::vector<Value> neg_table_;
  std::vector<Value> add_table_;
  std::vector<std::uint32_t> log_;
  std::vector<Value> exp_;  // length 2(q-1), so log sums need no reduction
};

using FieldPtr = std::shared_ptr<const Field>;

// Lexicographically least monic irreducible polynomial of degree e over
// GF(p), comparing coefficient lists in ascending-degree order.
std::vector<Value> least_irreducible(std::uint32_t p, std::uint32_t e);

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(std::uint32_t p, const std::vector<Value>& poly);

// Throws std::invalid_argument for non-prime p, e < 1 or p^e > kMaxOrder.
FieldPtr make_field(std::uint32_t p, std::uint32_t e);
FieldPtr make_field_of_order(std::uint64_t q);

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept;

// Element with its field attached. Mixing fields throws FieldMismatch.
class Element {
 public:
  Element(FieldPtr field, Value v);

  const FieldPtr& field() const noexcept { return field_; }
  Value value() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element operator-() const;

  // Throws std::domain_error for zero.
  Element inverse() const;
  Element pow(std::uint64_t k) const;

  bool operator==(const Element& o) const;
  std::string str() const { return field_->format(v_); }

 private:
  const Field& checked(const Element& o) const;

  FieldPtr field_;
  Value v_;
};

Element add(const Element& a, const Element& b);
Element mul(const Element& a, const Element& b);
Element neg(const Element& a);
Element inv(const Element& a);

// All q elements, ordered by the integer value of their base-p digits.
std::vector<Element> enumerate(const FieldPtr& field);

}  // namespace dualarc::gf

#endif  // DUALARC_GF_HPP_
