#include "ltc/analysis_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ltc/rng.hpp"

namespace ltc {

std::array<std::uint64_t, 256> histogram(const ImageBuffer& img) {
  std::array<std::uint64_t, 256> bins{};
  for (std::uint8_t px : img.pixels) ++bins[px];
  return bins;
}

double histogram_variance(const ImageBuffer& img) {
  const std::array<std::uint64_t, 256> bins = histogram(img);
  const double aver = static_cast<double>(img.pixels.size()) / 256.0;
  double acc = 0.0;
  for (std::uint64_t count : bins) {
    const double d = static_cast<double>(count) - aver;
    acc += d * d;
  }
  return acc / 256.0;
}

namespace {

std::optional<double> directional_correlation(const ImageBuffer& img, std::uint32_t di,
                                              std::uint32_t dj, std::uint32_t pairs,
                                              SplitMix64& rng) {
  const std::uint32_t rows = img.n - di;
  const std::uint32_t cols = img.n - dj;
  std::vector<double> u(pairs), v(pairs);
  double mean_u = 0.0, mean_v = 0.0;
  for (std::uint32_t k = 0; k < pairs; ++k) {
    const std::uint32_t i = static_cast<std::uint32_t>(rng.below(rows));
    const std::uint32_t j = static_cast<std::uint32_t>(rng.below(cols));
    u[k] = img.at(i, j);
    v[k] = img.at(i + di, j + dj);
    mean_u += u[k];
    mean_v += v[k];
  }
  mean_u /= pairs;
  mean_v /= pairs;
  double cov = 0.0, var_u = 0.0, var_v = 0.0;
  for (std::uint32_t k = 0; k < pairs; ++k) {
    const double du = u[k] - mean_u;
    const double dv = v[k] - mean_v;
    cov += du * dv;
    var_u += du * du;
    var_v += dv * dv;
  }
  if (var_u == 0.0 || var_v == 0.0) return std::nullopt;  // degenerate variance
  return cov / (std::sqrt(var_u) * std::sqrt(var_v));
}

}  // namespace

CorrelationResult correlation_coefficients(const ImageBuffer& img, std::uint32_t pairs,
                                           std::uint64_t seed) {
  if (img.n < 2) fail(Errc::bad_parameter, "image too small to sample neighbor pairs");
  if (pairs < 2) fail(Errc::bad_parameter, "need at least 2 pairs");
  SplitMix64 rng(seed);
  CorrelationResult out;
  out.horizontal = directional_correlation(img, 0, 1, pairs, rng);
  out.vertical = directional_correlation(img, 1, 0, pairs, rng);
  out.diagonal = directional_correlation(img, 1, 1, pairs, rng);
  return out;
}

double entropy(const ImageBuffer& img) {
  const std::array<std::uint64_t, 256> bins = histogram(img);
  const double total = static_cast<double>(img.pixels.size());
  double h = 0.0;
  for (std::uint64_t count : bins) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return h;
}

NpcrUaci npcr_uaci(const ImageBuffer& c1, const ImageBuffer& c2) {
  if (c1.n != c2.n || c1.pixels.size() != c2.pixels.size())
    fail(Errc::dimension_mismatch, "images have different dimensions");
  std::uint64_t differing = 0;
  std::uint64_t abs_diff = 0;
  for (std::size_t k = 0; k < c1.pixels.size(); ++k) {
    const int d = static_cast<int>(c1.pixels[k]) - static_cast<int>(c2.pixels[k]);
    if (d != 0) ++differing;
    abs_diff += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  const double count = static_cast<double>(c1.pixels.size());
  NpcrUaci out;
  out.npcr = static_cast<double>(differing) / count * 100.0;
  out.uaci = static_cast<double>(abs_diff) / (255.0 * count) * 100.0;
  return out;
}

double psnr(const ImageBuffer& reference, const ImageBuffer& test) {
  if (reference.n != test.n || reference.pixels.size() != test.pixels.size())
    fail(Errc::dimension_mismatch, "images have different dimensions");
  std::uint64_t sse = 0;
  for (std::size_t k = 0; k < reference.pixels.size(); ++k) {
    const int d = static_cast<int>(reference.pixels[k]) - static_cast<int>(test.pixels[k]);
    sse += static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double count = static_cast<double>(reference.pixels.size());
  return 10.0 * std::log10(count * 255.0 * 255.0 / static_cast<double>(sse));
}

CipherEnvelope cut_attack(const CipherEnvelope& env, std::uint32_t denominator) {
  std::uint32_t k = 0;
  switch (denominator) {
    case 2: k = 1; break;
    case 4: k = 2; break;
    case 8: k = 3; break;
    case 16: k = 4; break;
    default:
      fail(Errc::unsupported_fraction,
           "fraction 1/" + std::to_string(denominator) + " (supported: 1/2 1/4 1/8 1/16)");
  }
  const std::uint32_t n = env.n;
  if (env.payload.size() != static_cast<std::size_t>(n) * n)
    fail(Errc::malformed_envelope, "payload length is not n^2");
  const std::uint32_t rows = n >> ((k + 1) / 2);
  const std::uint32_t cols = n >> (k / 2);
  CipherEnvelope out = env;
  for (std::uint32_t i = 0; i < rows; ++i)
    std::fill_n(out.payload.begin() + static_cast<std::size_t>(i) * n, cols, std::uint8_t{0});
  return out;
}

CipherEnvelope noise_attack(const CipherEnvelope& env, NoiseSpec spec, std::uint64_t seed) {
  if (!std::isfinite(spec.amount) || spec.amount < 0.0)
    fail(Errc::bad_parameter, "noise amount must be finite and non-negative");
  CipherEnvelope out = env;
  SplitMix64 rng(seed);
  if (spec.kind == NoiseSpec::Kind::salt_pepper) {
    if (spec.amount > 1.0) fail(Errc::bad_parameter, "density must lie in [0, 1]");
    for (std::uint8_t& byte : out.payload)
      if (rng.uniform01() < spec.amount) byte = (rng.next() & 1) ? 255 : 0;
  } else {
    const double sigma = std::sqrt(spec.amount);
    for (std::uint8_t& byte : out.payload) {
      const double noisy = byte + 255.0 * sigma * rng.gaussian();
      const long long rounded = std::llround(noisy);
      byte = static_cast<std::uint8_t>(std::clamp<long long>(rounded, 0, 255));
    }
  }
  return out;
}

namespace {

double percent_differing(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "byte sequences differ in length");
  std::size_t differing = 0;
  for (std::size_t k = 0; k < a.size(); ++k) differing += a[k] != b[k];
  return static_cast<double>(differing) / static_cast<double>(a.size()) * 100.0;
}

}  // namespace

KeySensitivity key_sensitivity_report(const ImageBuffer& q, const KeyMaterial& key, double delta) {
  const CipherEnvelope base = encrypt(q, key);
  KeySensitivity report;
  struct Component {
    double KeyMaterial::* field;
    KeySensitivity::Entry KeySensitivity::* entry;
  };
  const Component components[] = {
      {&KeyMaterial::mu0, &KeySensitivity::mu0},
      {&KeyMaterial::key0, &KeySensitivity::key0},
      {&KeyMaterial::key1, &KeySensitivity::key1},
  };
  for (const Component& c : components) {
    KeyMaterial perturbed = key;
    perturbed.*(c.field) += delta;
    const CipherEnvelope other = encrypt(q, perturbed);
    const DecryptResult wrong = decrypt(base, perturbed);
    (report.*(c.entry)).encrypt_pct = percent_differing(base.payload, other.payload);
    (report.*(c.entry)).decrypt_pct = percent_differing(q.pixels, wrong.image.pixels);
  }
  return report;
}

MetricsReport analyze_image(const ImageBuffer& img, std::uint32_t pairs, std::uint64_t seed,
                            const ImageBuffer* reference) {
  MetricsReport report;
  report.variance = histogram_variance(img);
  report.correlation = correlation_coefficients(img, pairs, seed);
  report.entropy = entropy(img);
  if (reference != nullptr) {
    const NpcrUaci d = npcr_uaci(*reference, img);
    report.npcr = d.npcr;
    report.uaci = d.uaci;
    report.psnr = psnr(*reference, img);
  }
  return report;
}

}  // namespace ltc
