// SPDX-License-Identifier: Apache-2.0

#include "dualarc/gf.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace dualarc::gf {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) {
    throw std::invalid_argument("field order " + std::to_string(q) +
                                " is not a prime power");
  }
  return {static_cast<std::uint32_t>(p), e};
}

namespace {

using Poly = std::vector<Value>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const Value lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<Value>((a[shift + i] + (p - lead) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

// Advance a little-endian base-p counter; returns false on wrap-around.
bool next_digits(std::vector<Value>& digits, std::uint32_t p) {
  for (auto& d : digits) {
    if (++d < p) return true;
    d = 0;
  }
  return false;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<Value>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
    std::vector<Value> low(dd, 0);
    do {
      Poly g = low;
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    } while (next_digits(low, p));
  }
  return true;
}

std::vector<Value> least_irreducible(std::uint32_t p, std::uint32_t e) {
  // Lexicographic order on (c_0, ..., c_{e-1}) is the order in which a
  // big-endian counter over c_0 first would visit them, so iterate with the
  // most significant digit at index 0.
  std::vector<Value> coeffs(e, 0);
  while (true) {
    Poly f = coeffs;
    f.push_back(1);
    if (is_irreducible(p, f)) return f;
    std::size_t i = e;
    while (i > 0) {
      --i;
      if (++coeffs[i] < p) break;
      coeffs[i] = 0;
      if (i == 0) throw std::logic_error("no irreducible polynomial found");
    }
  }
}

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<Value> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < e_; ++i) q_ *= p_;

  neg_table_.resize(q_);
  for (Value a = 0; a < q_; ++a) {
    auto c = coefficients(a);
    for (auto& x : c) x = (p_ - x) % p_;
    neg_table_[a] = from_coefficients(c);
  }
  if (p_ != 2 && e_ > 1 && q_ <= 1024) {
    add_table_.resize(std::size_t{q_} * q_);
    for (Value a = 0; a < q_; ++a) {
      for (Value b = 0; b < q_; ++b) add_table_[std::size_t{a} * q_ + b] = add_digits(a, b);
    }
  }

  // Prime divisors of q - 1 for the primitivity test.
  std::vector<std::uint64_t> factors;
  {
    std::uint64_t m = q_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) factors.push_back(m);
  }
  auto slow_pow = [&](Value a, std::uint64_t k) {
    Value r = 1;
    while (k > 0) {
      if (k & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      k >>= 1;
    }
    return r;
  };
  Value gen = 0;
  for (Value g = 1; g < q_; ++g) {
    bool primitive = true;
    for (auto f : factors) {
      if (slow_pow(g, (q_ - 1) / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  if (gen == 0) throw std::logic_error("field has no primitive element");

  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t{q_ - 1}, 0);
  Value x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    exp_[i + q_ - 1] = x;
    log_[x] = i;
    x = mul_poly(x, gen);
  }
}

Value Field::add_digits(Value a, Value b) const noexcept {
  Value result = 0;
  Value place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const Value s = (a % p_ + b % p_) % p_;
    result += s * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return result;
}

Value Field::mul_poly(Value a, Value b) const {
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  Poly prod(2 * e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    for (std::uint32_t j = 0; j < e_; ++j) {
      prod[i + j] = static_cast<Value>((prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_);
    }
  }
  auto r = poly_mod(prod, modulus_, p_);
  r.resize(e_, 0);
  return from_coefficients(r);
}

Value Field::pow(Value a, std::uint64_t k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = (std::uint64_t{log_[a]} * (k % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

Value Field::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Value>(r);
}

std::uint64_t Field::order(Value a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative order");
  const std::uint64_t n = q_ - 1;
  const std::uint64_t l = log_[a];
  return n / std::gcd(n, l == 0 ? n : l);
}

std::vector<Value> Field::coefficients(Value a) const {
  std::vector<Value> c(e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Value Field::from_coefficients(const std::vector<Value>& coeffs) const {
  Value v = 0;
  Value place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const Value c = i < coeffs.size() ? coeffs[i] % p_ : 0;
    v += c * place;
    place *= p_;
  }
  return v;
}

std::string Field::format(Value a) const {
  if (e_ == 1) return std::to_string(a);
  const auto c = coefficients(a);
  std::string out;
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (p_ > 10 && i > 0) out += '.';
    out += std::to_string(c[i]);
  }
  return out;
}

Value Field::parse(std::string_view text) const {
  auto bad = [&] {
    return std::invalid_argument("malformed GF(" + std::to_string(q_) + ") element '" +
                                 std::string(text) + "'");
  };
  auto to_uint = [&](std::string_view s) {
    Value v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw bad();
    return v;
  };
  if (e_ == 1) {
    const Value v = to_uint(text);
    if (v >= p_) throw bad();
    return v;
  }
  std::vector<Value> digits;
  if (p_ > 10) {
    std::size_t start = 0;
    while (true) {
      const auto dot = text.find('.', start);
      digits.push_back(to_uint(text.substr(start, dot - start)));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw bad();
      digits.push_back(static_cast<Value>(ch - '0'));
    }
  }
  if (digits.size() != e_) throw bad();
  for (auto d : digits) {
    if (d >= p_) throw bad();
  }
  return from_coefficients(digits);
}

FieldPtr make_field(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw std::invalid_argument("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("field order exceeds 2^20");
  }
  return std::make_shared<const Field>(p, e, least_irreducible(p, e));
}

FieldPtr make_field_of_order(std::uint64_t q) {
  const auto [p, e] = prime_power(q);
  return make_field(p, e);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

Element::Element(FieldPtr field, Value v) : field_(std::move(field)), v_(v) {
  if (!field_) throw std::invalid_argument("element without a field");
  if (v_ >= field_->q()) throw std::invalid_argument("element value out of range");
}

const Field& Element::checked(const Element& o) const {
  if (!same_field(field_, o.field_)) {
    throw FieldMismatch("operands belong to different fields");
  }
  return *field_;
}

Element Element::operator+(const Element& o) const { return {field_, checked(o).add(v_, o.v_)}; }
Element Element::operator-(const Element& o) const { return {field_, checked(o).sub(v_, o.v_)}; }
Element Element::operator*(const Element& o) const { return {field_, checked(o).mul(v_, o.v_)}; }
Element Element::operator/(const Element& o) const {
  const Field& f = checked(o);
  if (o.v_ == 0) throw std::domain_error("division by zero");
  return {field_, f.div(v_, o.v_)};
}
Element Element::operator-() const { return {field_, field_->neg(v_)}; }

Element Element::inverse() const {
  if (v_ == 0) throw std::domain_error("zero has no inverse");
  return {field_, field_->inv(v_)};
}

Element Element::pow(std::uint64_t k) const { return {field_, field_->pow(v_, k)}; }

bool Element::operator==(const Element& o) const {
  checked(o);
  return v_ == o.v_;
}

Element add(const Element& a, const Element& b) { return a + b; }
Element mul(const Element& a, const Element& b) { return a * b; }
Element neg(const Element& a) { return -a; }
Element inv(const Element& a) { return a.inverse(); }

std::vector<Element> enumerate(const FieldPtr& field) {
  std::vector<Element> out;
  out.reserve(field->q());
  for (Value v = 0; v < field->q(); ++v) out.emplace_back(field, v);
  return out;
}

}  // namespace dualarc::gf
