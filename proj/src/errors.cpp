#include "ltc/errors.hpp"

namespace ltc {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::not_primitive: return "NotPrimitive";
    case Errc::bad_polynomial: return "BadPolynomial";
    case Errc::code_out_of_range: return "CodeOutOfRange";
    case Errc::invalid_a: return "InvalidA";
    case Errc::order_mismatch: return "OrderMismatch";
    case Errc::not_bijection: return "NotBijection";
    case Errc::not_orthogonal: return "NotOrthogonal";
    case Errc::degenerate_orbit: return "DegenerateOrbit";
    case Errc::key_out_of_range: return "KeyOutOfRange";
    case Errc::bad_key_file: return "BadKeyFile";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::malformed_envelope: return "MalformedEnvelope";
    case Errc::sum_mismatch: return "SumMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::unsupported_fraction: return "UnsupportedFraction";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::bad_magic: return "BadMagic";
    case Errc::bad_version: return "BadVersion";
    case Errc::truncated: return "Truncated";
    case Errc::sum_out_of_range: return "SumOutOfRange";
    case Errc::non_square: return "NonSquare";
    case Errc::unsupported_size: return "UnsupportedSize";
    case Errc::bad_maxval: return "BadMaxval";
    case Errc::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

}  // namespace ltc
