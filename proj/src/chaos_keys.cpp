#include "ltc/chaos_keys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ltc {

std::vector<double> logistic_sequence(double lambda, double x0, std::size_t length,
                                      std::size_t burn_in) {
  if (!(lambda > 0.0) || !(lambda <= 4.0))
    fail(Errc::bad_parameter, "lambda must lie in (0, 4]");
  if (!(x0 > 0.0) || !(x0 < 1.0)) fail(Errc::bad_parameter, "seed must lie in (0, 1)");
  const double fixed_point = 1.0 - 1.0 / lambda;
  if (x0 == fixed_point) fail(Errc::degenerate_orbit, "seed is the fixed point 1 - 1/lambda");

  std::vector<double> out;
  out.reserve(length);
  double x = x0;
  const std::size_t total = burn_in + length;
  for (std::size_t i = 0; i < total; ++i) {
    // Deliberately this exact expression shape; the build disables fp
    // contraction so the orbit is bit-identical everywhere.
    x = lambda * x * (1.0 - x);
    if (x <= 0.0 || x >= 1.0) fail(Errc::degenerate_orbit, "iterate left (0, 1)");
    if (x == fixed_point) fail(Errc::degenerate_orbit, "iterate hit the fixed point");
    if (i >= burn_in) out.push_back(x);
  }
  return out;
}

PerturbedKeys perturb_keys(double key0, double key1, std::uint64_t sum_q, std::uint32_t n) {
  if (n == 0) fail(Errc::bad_parameter, "order must be positive");
  const std::uint64_t max_sum = 255ull * n * n;
  if (sum_q > max_sum)
    fail(Errc::sum_out_of_range,
         "sumQ " + std::to_string(sum_q) + " exceeds 255*n^2 = " + std::to_string(max_sum));
  for (double key : {key0, key1})
    if (!(key > 0.0) || !(key < 1.0)) fail(Errc::key_out_of_range, "key must lie in (0, 1)");

  const double scaled =
      static_cast<double>(sum_q) / (255.0 * static_cast<double>(n) * static_cast<double>(n)) * 1e15;
  const double s = std::floor(scaled) / 1e15;
  PerturbedKeys out{(key0 + s) / 2.0, (key1 + s) / 2.0};
  for (double key : {out.key0, out.key1})
    if (key <= 0.0 || key >= 1.0) fail(Errc::key_out_of_range, "perturbed key left (0, 1)");
  return out;
}

SortIndex sort_index(std::span<const double> x) {
  if (x.empty()) fail(Errc::bad_parameter, "cannot sort an empty sequence");
  SortIndex out;
  out.lx.resize(x.size());
  std::iota(out.lx.begin(), out.lx.end(), 0u);
  std::stable_sort(out.lx.begin(), out.lx.end(),
                   [&x](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
  out.fx.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.fx[k] = x[out.lx[k]];
  return out;
}

void validate_key_material(const KeyMaterial& key) {
  if (!(key.mu0 > kChaosThreshold) || !(key.mu0 <= 4.0))
    fail(Errc::key_out_of_range, "mu0 must lie in (3.573815, 4]");
  if (!(key.key0 > 0.0) || !(key.key0 < 1.0))
    fail(Errc::key_out_of_range, "key0 must lie in (0, 1)");
  if (!(key.key1 > 0.0) || !(key.key1 < 1.0))
    fail(Errc::key_out_of_range, "key1 must lie in (0, 1)");
  for (double c : {key.c1, key.c2})
    if (!std::isfinite(c) || c < 0.0)
      fail(Errc::bad_parameter, "diffusion weights must be finite and non-negative");
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal literal with exactly 15 fractional digits, e.g. 3.999990000000000.
double parse_secret_real(const std::string& token, const char* name) {
  const auto dot = token.find('.');
  if (dot == std::string::npos || dot == 0 || token.size() - dot - 1 != 15 ||
      !all_digits(token.substr(0, dot)) || !all_digits(token.substr(dot + 1)))
    fail(Errc::bad_key_file,
         std::string(name) + " must be a decimal with exactly 15 fractional digits, got '" +
             token + "'");
  return std::strtod(token.c_str(), nullptr);
}

double parse_real(const std::string& token, const char* name) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty())
    fail(Errc::bad_key_file, std::string(name) + ": malformed number '" + token + "'");
  return value;
}

std::string shortest(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace

KeyMaterial parse_key_material(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  if (tokens.size() != 6)
    fail(Errc::bad_key_file, "expected 6 fields (mu0 key0 key1 a_code c1 c2), got " +
                                 std::to_string(tokens.size()));

  KeyMaterial key;
  key.mu0 = parse_secret_real(tokens[0], "mu0");
  key.key0 = parse_secret_real(tokens[1], "key0");
  key.key1 = parse_secret_real(tokens[2], "key1");
  if (!all_digits(tokens[3]))
    fail(Errc::bad_key_file, "a_code must be a non-negative integer, got '" + tokens[3] + "'");
  const unsigned long long a = std::strtoull(tokens[3].c_str(), nullptr, 10);
  if (a > 0xffffffffull) fail(Errc::bad_key_file, "a_code too large");
  key.a_code = static_cast<std::uint32_t>(a);
  key.c1 = parse_real(tokens[4], "c1");
  key.c2 = parse_real(tokens[5], "c2");

  validate_key_material(key);
  return key;
}

std::string format_key_material(const KeyMaterial& key) {
  char secret[3][32];
  std::snprintf(secret[0], sizeof(secret[0]), "%.15f", key.mu0);
  std::snprintf(secret[1], sizeof(secret[1]), "%.15f", key.key0);
  std::snprintf(secret[2], sizeof(secret[2]), "%.15f", key.key1);
  std::ostringstream out;
  out << secret[0] << '\n'
      << secret[1] << '\n'
      << secret[2] << '\n'
      << key.a_code << '\n'
      << shortest(key.c1) << ' ' << shortest(key.c2) << '\n';
  return out.str();
}

}  // namespace ltc
