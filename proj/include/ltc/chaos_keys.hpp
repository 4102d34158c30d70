#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltc/errors.hpp"

namespace ltc {

// Lower edge of the logistic map's fully chaotic regime; mu0 must sit
// strictly above it.
inline constexpr double kChaosThreshold = 3.573815;

// The secret key plus public cipher parameters.
//
// a_code selects the field element a used to build the square family; the
// value 0 (never a valid a itself) means "use the field generator".
struct KeyMaterial {
  double mu0 = 0.0;
  double key0 = 0.0;
  double key1 = 0.0;
  std::uint32_t a_code = 0;
  double c1 = 1.3;
  double c2 = 1.5;
};

// Iterates x <- lambda*x*(1-x) burn_in + length times from x0 and returns the
// last `length` iterates (the seed itself is never part of the output).
// Throws bad_parameter when lambda is outside (0, 4] or x0 outside (0, 1),
// degenerate_orbit when the seed or any iterate hits 0, 1 or the fixed point
// 1 - 1/lambda exactly.
std::vector<double> logistic_sequence(double lambda, double x0, std::size_t length,
                                      std::size_t burn_in);

struct PerturbedKeys {
  double key0 = 0.0;
  double key1 = 0.0;
};

// Plaintext-dependent perturbation: s = floor((sumQ/(255 n^2)) * 1e15) / 1e15,
// key_new = (key + s) / 2. Throws sum_out_of_range when sumQ exceeds 255 n^2,
// key_out_of_range when an input or result leaves (0, 1).
PerturbedKeys perturb_keys(double key0, double key1, std::uint64_t sum_q, std::uint32_t n);

struct SortIndex {
  std::vector<double> fx;         // the input, ascending
  std::vector<std::uint32_t> lx;  // fx[k] == x[lx[k]]; stable on ties
};

SortIndex sort_index(std::span<const double> x);

// Range checks on an assembled KeyMaterial (a_code is checked against the
// field order later, at derivation time). Throws key_out_of_range or
// bad_parameter.
void validate_key_material(const KeyMaterial& key);

// Key file: mu0, key0, key1 (decimal, exactly 15 fractional digits each),
// then integer a_code and decimal c1, c2, all whitespace-separated.
// Throws bad_key_file on malformed text and the validate_key_material
// errors on bad ranges.
KeyMaterial parse_key_material(const std::string& text);
std::string format_key_material(const KeyMaterial& key);

}  // namespace ltc
