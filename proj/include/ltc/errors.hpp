#pragma once

#include <stdexcept>
#include <string>

namespace ltc {

// Every failure the library reports, grouped by the subsystem that raises it.
enum class Errc {
  // field construction and arithmetic
  not_prime,
  not_irreducible,
  not_primitive,
  bad_polynomial,
  code_out_of_range,
  // square construction and verification
  invalid_a,
  order_mismatch,
  not_bijection,
  not_orthogonal,
  // key schedule
  degenerate_orbit,
  key_out_of_range,
  bad_key_file,
  // pipeline
  length_mismatch,
  malformed_envelope,
  sum_mismatch,
  // metrics and attack simulators
  dimension_mismatch,
  unsupported_fraction,
  bad_parameter,
  // serialization
  bad_magic,
  bad_version,
  truncated,
  sum_out_of_range,
  non_square,
  unsupported_size,
  bad_maxval,
  io_failure,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ltc
