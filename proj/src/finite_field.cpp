#include "ltc/finite_field.hpp"

#include <string>

namespace ltc {
namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Coefficient vectors, low-to-high, over GF(p).
using Poly = std::vector<std::uint32_t>;

Poly decode(std::uint32_t code, std::uint32_t p, std::uint32_t m) {
  Poly digits(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    digits[i] = code % p;
    code /= p;
  }
  return digits;
}

std::uint32_t encode(const Poly& a, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

bool is_zero(const Poly& a) {
  for (std::uint32_t c : a)
    if (c != 0) return false;
  return true;
}

// Remainder of a modulo the monic polynomial b.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i < db; ++i)
        a[shift + i] = (a[shift + i] + p - lead * b[i] % p) % p;
    }
    a.pop_back();
  }
  return a;
}

// Product of two elements given as codes, reduced by the defining polynomial.
// Slow path, used only while building the exp table.
std::uint32_t slow_mul(std::uint32_t x, std::uint32_t y, const Poly& poly, std::uint32_t p,
                       std::uint32_t m) {
  const Poly dx = decode(x, p, m);
  const Poly dy = decode(y, p, m);
  Poly prod(2 * m - 1, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (dx[i] == 0) continue;
    for (std::uint32_t j = 0; j < m; ++j)
      prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
  }
  Poly rem = poly_mod(std::move(prod), poly, p);
  rem.resize(m, 0);
  return encode(rem, p);
}

bool divides(const Poly& divisor, const Poly& poly, std::uint32_t p) {
  return is_zero(poly_mod(poly, divisor, p));
}

// Trial division by every monic polynomial of degree 1..m/2.
bool is_irreducible(const Poly& poly, std::uint32_t p, std::uint32_t m) {
  for (std::uint32_t d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly divisor = decode(static_cast<std::uint32_t>(low), p, d);
      divisor.push_back(1);
      if (divides(divisor, poly, p)) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField FiniteField::build(std::uint32_t p, std::uint32_t m,
                               const std::vector<std::uint32_t>& poly) {
  if (!is_prime(p)) fail(Errc::not_prime, std::to_string(p) + " is not prime");
  if (m < 1) fail(Errc::bad_polynomial, "degree must be at least 1");
  if (poly.size() != m + 1) fail(Errc::bad_polynomial, "expected " + std::to_string(m + 1) +
                                                           " coefficients, got " +
                                                           std::to_string(poly.size()));
  for (std::uint32_t c : poly)
    if (c >= p) fail(Errc::bad_polynomial, "coefficient " + std::to_string(c) + " not below p");
  if (poly.back() != 1) fail(Errc::bad_polynomial, "polynomial must be monic");

  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    order *= p;
    if (order > (1u << 20)) fail(Errc::bad_parameter, "field order too large");
  }

  if (m >= 2 && !is_irreducible(poly, p, m))
    fail(Errc::not_irreducible, "polynomial is reducible over GF(" + std::to_string(p) + ")");

  FiniteField f;
  f.p_ = p;
  f.m_ = m;
  f.n_ = static_cast<std::uint32_t>(order);
  f.poly_ = poly;
  f.generator_ = (m >= 2) ? p : (p - poly[0]) % p;

  // Walk the powers of the generator. A full cycle of length n-1 through the
  // nonzero elements is exactly primitivity; returning to 1 early is not.
  f.exp_.assign(f.n_ - 1, 0);
  f.log_.assign(f.n_, 0);
  std::uint32_t e = 1;
  for (std::uint32_t k = 0; k < f.n_ - 1; ++k) {
    if (k > 0 && e == 1)
      fail(Errc::not_primitive, "generator has order " + std::to_string(k) + ", expected " +
                                    std::to_string(f.n_ - 1));
    f.exp_[k] = e;
    f.log_[e] = k;
    e = slow_mul(e, f.generator_, poly, p, m);
  }
  if (e != 1)
    fail(Errc::not_primitive, "generator does not cycle back to 1");
  return f;
}

FiniteField FiniteField::with_default_poly(std::uint32_t n) {
  switch (n) {
    case 2: return build(2, 1, {1, 1});
    case 3: return build(3, 1, {1, 1});
    case 4: return build(2, 2, {1, 1, 1});
    case 5: return build(5, 1, {3, 1});
    case 8: return build(2, 3, {1, 1, 0, 1});
    case 9: return build(3, 2, {2, 1, 1});
    case 16: return build(2, 4, {1, 1, 0, 0, 1});
    case 25: return build(5, 2, {2, 1, 1});
    case 256: return build(2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1});
    default: fail(Errc::bad_parameter, "no default polynomial for order " + std::to_string(n));
  }
}

std::uint32_t FiniteField::add(std::uint32_t x, std::uint32_t y) const {
  check_code(x);
  check_code(y);
  if (p_ == 2) return x ^ y;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  while (x != 0 || y != 0) {
    out += (x % p_ + y % p_) % p_ * place;
    place *= p_;
    x /= p_;
    y /= p_;
  }
  return out;
}

std::uint32_t FiniteField::neg(std::uint32_t x) const {
  check_code(x);
  if (p_ == 2) return x;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  while (x != 0) {
    out += (p_ - x % p_) % p_ * place;
    place *= p_;
    x /= p_;
  }
  return out;
}

std::uint32_t FiniteField::mul(std::uint32_t x, std::uint32_t y) const {
  check_code(x);
  check_code(y);
  if (x == 0 || y == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % (n_ - 1)];
}

std::uint32_t FiniteField::pow(std::uint32_t x, std::uint64_t e) const {
  check_code(x);
  std::uint32_t acc = 1;
  std::uint32_t base = x;
  while (e != 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint32_t FiniteField::order(std::uint32_t x) const {
  check_code(x);
  if (x == 0) fail(Errc::code_out_of_range, "0 has no multiplicative order");
  std::uint32_t e = x;
  std::uint32_t k = 1;
  while (e != 1) {
    e = mul(e, x);
    ++k;
  }
  return k;
}

}  // namespace ltc
