#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ltc/cipher_core.hpp"

namespace ltc {

std::array<std::uint64_t, 256> histogram(const ImageBuffer& img);

// S = (1/256) * sum_i (hist_i - aver)^2 with aver = n^2 / 256.
double histogram_variance(const ImageBuffer& img);

// Adjacent-pixel correlation over `pairs` seeded samples per direction:
// horizontal (0,1), vertical (1,0), diagonal (1,1). A direction whose sampled
// values are constant has no defined coefficient and comes back empty rather
// than as a division by zero.
struct CorrelationResult {
  std::optional<double> horizontal;
  std::optional<double> vertical;
  std::optional<double> diagonal;
};

CorrelationResult correlation_coefficients(const ImageBuffer& img, std::uint32_t pairs,
                                           std::uint64_t seed);

// Shannon entropy over the 256 gray levels, in bits; 8 iff perfectly uniform.
double entropy(const ImageBuffer& img);

struct NpcrUaci {
  double npcr = 0.0;  // percent of differing pixels
  double uaci = 0.0;  // mean |difference| / 255, in percent
};

NpcrUaci npcr_uaci(const ImageBuffer& c1, const ImageBuffer& c2);

// 10*log10(n^2 * 255^2 / sum of squared error); +infinity for identical
// images.
double psnr(const ImageBuffer& reference, const ImageBuffer& test);

// Zeroes a top-left block of the payload covering 1/denominator of the area;
// denominator must be 2, 4, 8 or 16 (unsupported_fraction otherwise). The
// header, including sumQ, is preserved.
CipherEnvelope cut_attack(const CipherEnvelope& env, std::uint32_t denominator);

struct NoiseSpec {
  enum class Kind { salt_pepper, gaussian };
  Kind kind = Kind::salt_pepper;
  double amount = 0.0;  // density in [0, 1] or variance >= 0
};

// Corrupts payload bytes in place of a channel attack: salt-pepper replaces a
// byte by 0 or 255 (equal odds) with probability = density; gaussian adds
// 255 * z with z ~ N(0, variance) on the normalized intensity scale, clamped.
CipherEnvelope noise_attack(const CipherEnvelope& env, NoiseSpec spec, std::uint64_t seed);

// Per secret component (mu0, key0, key1) perturbed by +delta: percent of
// differing ciphertext bytes (encryption side) and percent of pixels by which
// a wrong-key decrypt misses the plaintext (decryption side).
struct KeySensitivity {
  struct Entry {
    double encrypt_pct = 0.0;
    double decrypt_pct = 0.0;
  };
  Entry mu0, key0, key1;
};

KeySensitivity key_sensitivity_report(const ImageBuffer& q, const KeyMaterial& key,
                                      double delta = 1e-15);

struct MetricsReport {
  double variance = 0.0;
  CorrelationResult correlation;
  double entropy = 0.0;
  std::optional<double> npcr;
  std::optional<double> uaci;
  std::optional<double> psnr;
};

// Per-image battery; npcr/uaci/psnr are filled only when a reference image is
// supplied (reference first: psnr(reference, img)).
MetricsReport analyze_image(const ImageBuffer& img, std::uint32_t pairs, std::uint64_t seed,
                            const ImageBuffer* reference = nullptr);

}  // namespace ltc
