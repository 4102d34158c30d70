#pragma once

#include <cstdint>
#include <vector>

#include "ltc/errors.hpp"

namespace ltc {

// Exact arithmetic in GF(p^m), n = p^m elements.
//
// An element is identified by its code: the base-p reading of its coefficient
// vector, code = sum_i c_i * p^i where the element is c_0 + c_1*w + ... +
// c_{m-1}*w^{m-1} for w a root of the defining polynomial. Code 0 is the
// additive identity and code 1 the multiplicative identity. For p = 2 the
// code is just the coefficient bits, so addition is XOR.
//
// Multiplication runs through exp/log tables indexed by the generator, built
// once at construction. Instances are immutable after build and safe to share
// across threads.
class FiniteField {
 public:
  // Builds GF(p^m) from a monic primitive polynomial of degree m over GF(p),
  // given as coefficients low-to-high (constant term first, leading 1 last).
  // Throws: not_prime, bad_polynomial, not_irreducible, not_primitive.
  static FiniteField build(std::uint32_t p, std::uint32_t m,
                           const std::vector<std::uint32_t>& poly);

  // Field of order n using the library's default primitive polynomial.
  // Supported n: 2, 3, 4, 5, 8, 9, 16, 25, 256. Throws bad_parameter
  // otherwise.
  static FiniteField with_default_poly(std::uint32_t n);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t n() const { return n_; }

  // Code of the fixed generator: the root w itself for m >= 2 (code p), the
  // root of the linear polynomial for m = 1. Its multiplicative order is
  // n - 1 by the primitivity check at build time.
  std::uint32_t generator() const { return generator_; }

  const std::vector<std::uint32_t>& poly() const { return poly_; }

  // Digit-wise sum mod p (XOR when p = 2). Throws code_out_of_range.
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;

  // Additive inverse, digit-wise. Throws code_out_of_range.
  std::uint32_t neg(std::uint32_t x) const;

  // Table-based product. Throws code_out_of_range.
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;

  // x^e by repeated squaring; x^0 = 1.
  std::uint32_t pow(std::uint32_t x, std::uint64_t e) const;

  // Embeds the prime subfield: k mod p as a constant element.
  std::uint32_t scalar_embed(std::uint32_t k) const { return k % p_; }

  // Multiplicative order of a nonzero element. Throws code_out_of_range.
  std::uint32_t order(std::uint32_t x) const;

 private:
  FiniteField() = default;

  void check_code(std::uint32_t x) const {
    if (x >= n_) fail(Errc::code_out_of_range, "element code " + std::to_string(x) +
                                                   " not below field order " + std::to_string(n_));
  }

  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t generator_ = 0;
  std::vector<std::uint32_t> poly_;
  std::vector<std::uint32_t> exp_;  // exp_[k] = generator^k, k in [0, n-1)
  std::vector<std::uint32_t> log_;  // log_[x] for x != 0; log_[0] unused
};

}  // namespace ltc
