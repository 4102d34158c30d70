#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "ltc/chaos_keys.hpp"
#include "support/corpus.hpp"

using namespace ltc;

namespace {

void check_error(Errc expected, const std::function<void()>& fn) {
  try {
    fn();
    FAIL_CHECK("expected error " << errc_name(expected));
  } catch (const Error& e) {
    CHECK(e.code() == expected);
  }
}

}  // namespace

TEST_CASE("logistic orbit matches the frozen reference values") {
  const std::vector<double> xs = logistic_sequence(3.99999, 0.123456, 5, 0);
  REQUIRE(xs.size() == 5);
  // Frozen from an independent straight-line evaluation of the recurrence.
  CHECK(xs[0] == 0x1.bb3ef72ff9ca3p-2);
  CHECK(xs[1] == 0x1.f6c41e820214bp-1);
  CHECK(xs[2] == 0x1.2227c26c8def2p-4);
  CHECK(xs[3] == 0x1.0d99b495fe2cap-2);
  CHECK(xs[4] == 0x1.8d3cf73048248p-1);
}

TEST_CASE("logistic seed is excluded and burn-in drops a prefix") {
  const std::vector<double> full = logistic_sequence(3.99999, 0.123456, 10, 0);
  CHECK(full[0] != 0.123456);
  CHECK(full[0] == 3.99999 * 0.123456 * (1.0 - 0.123456));
  const std::vector<double> tail = logistic_sequence(3.99999, 0.123456, 4, 6);
  for (int k = 0; k < 4; ++k) CHECK(tail[k] == full[6 + k]);
}

TEST_CASE("logistic rejects bad parameters and degenerate orbits") {
  check_error(Errc::bad_parameter, [] { logistic_sequence(4.5, 0.5, 1, 0); });
  check_error(Errc::bad_parameter, [] { logistic_sequence(0.0, 0.5, 1, 0); });
  check_error(Errc::bad_parameter, [] { logistic_sequence(3.9, 0.0, 1, 0); });
  check_error(Errc::bad_parameter, [] { logistic_sequence(3.9, 1.0, 1, 0); });
  // x0 = 0.75 is the fixed point of lambda = 4
  check_error(Errc::degenerate_orbit, [] { logistic_sequence(4.0, 0.75, 3, 0); });
  // first iterate of 0.5 under lambda = 4 is exactly 1.0
  check_error(Errc::degenerate_orbit, [] { logistic_sequence(4.0, 0.5, 3, 0); });
}

TEST_CASE("perturb_keys quantized arithmetic") {
  // n=4, half-gray sum: s = 0.5 exactly
  const PerturbedKeys half = perturb_keys(0.123456, 0.5, 2040, 4);
  CHECK(half.key0 == 0.311728);

  // sum 0: s = 0
  const PerturbedKeys zero = perturb_keys(0.123456, 0.5, 0, 4);
  CHECK(zero.key0 == 0.123456 / 2.0);
  CHECK(zero.key1 == 0.25);

  // max sum: s = 1
  const PerturbedKeys max = perturb_keys(0.123456, 0.5, 255 * 16, 4);
  CHECK(max.key0 == (0.123456 + 1.0) / 2.0);

  // transcript values (sumQ = 136, n = 4)
  const PerturbedKeys transcript = perturb_keys(0.000000000000001, 0.234567, 136, 4);
  CHECK(transcript.key0 == 0x1.1111111111171p-6);
  CHECK(transcript.key1 == 0x1.1254770904439p-3);
}

TEST_CASE("perturb_keys is monotone and resolves single-pixel changes") {
  double prev = -1.0;
  for (std::uint64_t sum : {0ull, 1ull, 100ull, 2040ull, 4000ull, 4080ull}) {
    const PerturbedKeys k = perturb_keys(0.4, 0.4, sum, 4);
    CHECK(k.key0 > prev);
    prev = k.key0;
  }
  for (std::uint64_t sum = 0; sum < 4080; sum += 97) {
    const PerturbedKeys a = perturb_keys(0.4, 0.4, sum, 4);
    const PerturbedKeys b = perturb_keys(0.4, 0.4, sum + 1, 4);
    CHECK(a.key0 != b.key0);
  }
}

TEST_CASE("perturb_keys range errors") {
  check_error(Errc::sum_out_of_range, [] { perturb_keys(0.5, 0.5, 255 * 16 + 1, 4); });
  check_error(Errc::key_out_of_range, [] { perturb_keys(0.0, 0.5, 10, 4); });
  check_error(Errc::key_out_of_range, [] { perturb_keys(0.5, 1.0, 10, 4); });
  check_error(Errc::bad_parameter, [] { perturb_keys(0.5, 0.5, 0, 0); });
}

TEST_CASE("sort_index") {
  const std::vector<double> x{0.3, 0.1, 0.2};
  const SortIndex si = sort_index(x);
  CHECK(si.fx == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(si.lx == std::vector<std::uint32_t>{1, 2, 0});

  const std::vector<double> sorted{0.1, 0.2, 0.3, 0.4};
  CHECK(sort_index(sorted).lx == std::vector<std::uint32_t>{0, 1, 2, 3});

  // stable on ties
  const std::vector<double> ties{0.5, 0.2, 0.5};
  CHECK(sort_index(ties).lx == std::vector<std::uint32_t>{1, 0, 2});

  check_error(Errc::bad_parameter, [] { sort_index(std::vector<double>{}); });
}

TEST_CASE("sort_index agrees with a direct argsort of a logistic orbit") {
  const std::vector<double> x = logistic_sequence(3.99999, 0.123456, 8, 0);
  const SortIndex si = sort_index(x);
  // independent check: fx ascending, lx a permutation, fx[k] = x[lx[k]]
  std::vector<bool> seen(8, false);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(si.fx[k] == x[si.lx[k]]);
    CHECK_FALSE(seen[si.lx[k]]);
    seen[si.lx[k]] = true;
    if (k > 0) CHECK(si.fx[k - 1] <= si.fx[k]);
  }
}

TEST_CASE("seed sensitivity after burn-in") {
  const std::size_t len = 10000;
  const std::vector<double> a = logistic_sequence(3.99999, 0.123456, len, 100);
  const std::vector<double> b = logistic_sequence(3.99999, 0.123456 + 1e-15, len, 100);
  std::size_t differing = 0;
  for (std::size_t k = 0; k < len; ++k) differing += a[k] != b[k];
  CHECK(static_cast<double>(differing) / static_cast<double>(len) >= 0.99);
}

TEST_CASE("key file parse and format") {
  const std::string text =
      "3.999990000000000\n0.000000000000001\n0.234567000000000\n2\n1.3 1.5\n";
  const KeyMaterial key = parse_key_material(text);
  CHECK(key.mu0 == 3.99999);
  CHECK(key.key0 == 0.000000000000001);
  CHECK(key.key1 == 0.234567);
  CHECK(key.a_code == 2);
  CHECK(key.c1 == 1.3);
  CHECK(key.c2 == 1.5);

  const KeyMaterial again = parse_key_material(format_key_material(key));
  CHECK(again.mu0 == key.mu0);
  CHECK(again.key0 == key.key0);
  CHECK(again.key1 == key.key1);
  CHECK(again.a_code == key.a_code);
  CHECK(again.c1 == key.c1);
  CHECK(again.c2 == key.c2);

  const KeyMaterial ref = ltc::testing::reference_key();
  const KeyMaterial ref_again = parse_key_material(format_key_material(ref));
  CHECK(ref_again.mu0 == ref.mu0);
  CHECK(ref_again.key0 == ref.key0);
  CHECK(ref_again.key1 == ref.key1);
}

TEST_CASE("key file rejects malformed input") {
  check_error(Errc::bad_key_file, [] { parse_key_material(""); });
  check_error(Errc::bad_key_file,
              [] { parse_key_material("3.9999 0.123456000000000 0.234567000000000 0 1.3 1.5"); });
  check_error(Errc::bad_key_file, [] {
    parse_key_material("3.999990000000000 0.123456000000000 0.234567000000000 0 1.3");
  });
  check_error(Errc::bad_key_file, [] {
    parse_key_material("3.999990000000000 0.123456000000000 0.234567000000000 -1 1.3 1.5");
  });
  check_error(Errc::bad_key_file, [] {
    parse_key_material("3.999990000000000 0.123456000000000 0.234567000000000 0 x 1.5");
  });
  check_error(Errc::bad_key_file, [] {
    parse_key_material("3.999990000000000 0.123456000000000 0.234567000000000 0 1.3 1.5 9");
  });
  // well-formed digits but out of the chaotic range
  check_error(Errc::key_out_of_range, [] {
    parse_key_material("3.500000000000000 0.123456000000000 0.234567000000000 0 1.3 1.5");
  });
  check_error(Errc::key_out_of_range, [] {
    parse_key_material("3.999990000000000 0.000000000000000 0.234567000000000 0 1.3 1.5");
  });
}

TEST_CASE("validate_key_material") {
  KeyMaterial key = ltc::testing::reference_key();
  validate_key_material(key);
  key.c1 = -1.0;
  check_error(Errc::bad_parameter, [&] { validate_key_material(key); });
  key = ltc::testing::reference_key();
  key.mu0 = 4.0000001;
  check_error(Errc::key_out_of_range, [&] { validate_key_material(key); });
}
