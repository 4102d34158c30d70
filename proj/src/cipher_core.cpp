#include "ltc/cipher_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ltc {

bool is_supported_order(std::uint32_t n) {
  switch (n) {
    case 4:
    case 8:
    case 9:
    case 16:
    case 25:
    case 256: return true;
    default: return false;
  }
}

void validate_image(const ImageBuffer& img) {
  if (!is_supported_order(img.n))
    fail(Errc::unsupported_size, "side length " + std::to_string(img.n) +
                                     " has no default field (supported: 4 8 9 16 25 256)");
  if (img.pixels.size() != static_cast<std::size_t>(img.n) * img.n)
    fail(Errc::dimension_mismatch, "pixel count does not match n^2");
}

std::uint64_t pixel_sum(const ImageBuffer& img) {
  return std::accumulate(img.pixels.begin(), img.pixels.end(), std::uint64_t{0});
}

CipherMaterial derive_material(std::uint64_t sum_q, std::uint32_t n, const KeyMaterial& key) {
  if (!is_supported_order(n))
    fail(Errc::unsupported_size, "side length " + std::to_string(n) + " unsupported");
  validate_key_material(key);

  FiniteField field = FiniteField::with_default_poly(n);
  const PerturbedKeys perturbed = perturb_keys(key.key0, key.key1, sum_q, n);
  const std::vector<double> x1 = logistic_sequence(key.mu0, perturbed.key0, n, 0);
  Labeling labeling = Labeling::from_permutation(sort_index(x1).lx);
  const std::uint32_t a = key.a_code == 0 ? field.generator() : key.a_code;
  SquareTriple squares = build_squares(field, labeling, a);

  TransversalDecomposition d;
  d.n = n;
  d.positions.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) d.at(i, j) = Position{i, squares.mgamma.at(i, j)};

  std::vector<double> x2 =
      logistic_sequence(key.mu0, perturbed.key1, static_cast<std::size_t>(n) * n, 100);
  return CipherMaterial{std::move(field),      std::move(labeling), std::move(squares.m),
                        std::move(squares.m1), std::move(squares.mgamma),
                        std::move(d),          std::move(x2)};
}

void verify_material(const CipherMaterial& mat) {
  const std::uint32_t n = mat.field.n();
  for (const LatinSquare* sq : {&mat.m, &mat.m1, &mat.mgamma})
    if (!is_latin_square(*sq)) fail(Errc::bad_parameter, "square is not Latin");
  if (!are_orthogonal(mat.m, mat.m1) || !are_orthogonal(mat.m, mat.mgamma) ||
      !are_orthogonal(mat.m1, mat.mgamma))
    fail(Errc::not_orthogonal, "square family is not pairwise orthogonal");

  // The decomposition's columns must be disjoint transversals of M covering
  // every cell.
  std::vector<bool> covered(static_cast<std::size_t>(n) * n, false);
  std::vector<Position> column(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    for (std::uint32_t i = 0; i < n; ++i) column[i] = mat.d.at(i, j);
    if (!is_transversal(mat.m, column)) fail(Errc::bad_parameter, "column is not a transversal");
    for (const Position& pos : column) {
      const std::size_t k = static_cast<std::size_t>(pos.row) * n + pos.col;
      if (covered[k]) fail(Errc::bad_parameter, "transversals overlap");
      covered[k] = true;
    }
  }
  if (mat.x2.size() != static_cast<std::size_t>(n) * n)
    fail(Errc::length_mismatch, "x2 length is not n^2");
}

ImageBuffer scramble_transversal(const ImageBuffer& img, const TransversalDecomposition& d) {
  if (img.n != d.n) fail(Errc::order_mismatch, "image and decomposition orders differ");
  const std::uint32_t n = img.n;
  ImageBuffer out;
  out.n = n;
  out.pixels.resize(img.pixels.size());
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < n; ++i) {
      const Position& src = d.at(i, j);
      const Position& dst = d.at((i + 1) % n, j);
      out.at(dst.row, dst.col) = img.at(src.row, src.col);
    }
  return out;
}

ImageBuffer unscramble_transversal(const ImageBuffer& img, const TransversalDecomposition& d) {
  if (img.n != d.n) fail(Errc::order_mismatch, "image and decomposition orders differ");
  const std::uint32_t n = img.n;
  ImageBuffer out;
  out.n = n;
  out.pixels.resize(img.pixels.size());
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < n; ++i) {
      const Position& src = d.at(i, j);
      const Position& dst = d.at((i + 1) % n, j);
      out.at(src.row, src.col) = img.at(dst.row, dst.col);
    }
  return out;
}

namespace {

std::uint8_t keystream_byte(double x, double c1, double c2, std::uint32_t lm, std::uint32_t lm1) {
  const double factor = 1000.0 + c1 * lm + c2 * lm1;
  const double scaled = std::floor(x * factor);
  return static_cast<std::uint8_t>(static_cast<std::uint64_t>(scaled) % 256);
}

void check_lengths(std::size_t bytes, std::size_t x2, std::size_t lm, std::size_t lm1) {
  if (x2 != bytes || lm != bytes || lm1 != bytes)
    fail(Errc::length_mismatch, "diffusion inputs must all have the same length");
}

}  // namespace

std::vector<std::uint8_t> diffuse(std::span<const std::uint8_t> p2, std::span<const double> x2,
                                  std::span<const std::uint32_t> lm,
                                  std::span<const std::uint32_t> lm1, double c1, double c2) {
  check_lengths(p2.size(), x2.size(), lm.size(), lm1.size());
  std::vector<std::uint8_t> out(p2.size());
  std::uint8_t prev = 0;
  for (std::size_t i = 0; i < p2.size(); ++i) {
    prev = static_cast<std::uint8_t>(p2[i] ^ keystream_byte(x2[i], c1, c2, lm[i], lm1[i]) ^ prev);
    out[i] = prev;
  }
  return out;
}

std::vector<std::uint8_t> undiffuse(std::span<const std::uint8_t> p3, std::span<const double> x2,
                                    std::span<const std::uint32_t> lm,
                                    std::span<const std::uint32_t> lm1, double c1, double c2) {
  check_lengths(p3.size(), x2.size(), lm.size(), lm1.size());
  std::vector<std::uint8_t> out(p3.size());
  std::uint8_t prev = 0;
  for (std::size_t i = 0; i < p3.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(p3[i] ^ keystream_byte(x2[i], c1, c2, lm[i], lm1[i]) ^ prev);
    prev = p3[i];
  }
  return out;
}

std::vector<std::uint32_t> flatten_column_major(const LatinSquare& sq) {
  std::vector<std::uint32_t> flat(sq.cells.size());
  for (std::size_t k = 0; k < flat.size(); ++k)
    flat[k] = sq.at(static_cast<std::uint32_t>(k % sq.n), static_cast<std::uint32_t>(k / sq.n));
  return flat;
}

namespace {

void check_orthogonal_pair(const ImageBuffer& img, const LatinSquare& m1,
                           const LatinSquare& mgamma, bool verify) {
  if (m1.n != img.n || mgamma.n != img.n)
    fail(Errc::order_mismatch, "image and square orders differ");
  if (verify && !are_orthogonal(m1, mgamma))
    fail(Errc::not_orthogonal, "scrambling squares are not orthogonal");
}

}  // namespace

ImageBuffer scramble_orthogonal(const ImageBuffer& img, const LatinSquare& m1,
                                const LatinSquare& mgamma, bool verify) {
  check_orthogonal_pair(img, m1, mgamma, verify);
  const std::uint32_t n = img.n;
  ImageBuffer out;
  out.n = n;
  out.pixels.resize(img.pixels.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) out.at(i, j) = img.at(m1.at(i, j), mgamma.at(i, j));
  return out;
}

ImageBuffer unscramble_orthogonal(const ImageBuffer& img, const LatinSquare& m1,
                                  const LatinSquare& mgamma, bool verify) {
  check_orthogonal_pair(img, m1, mgamma, verify);
  const std::uint32_t n = img.n;
  ImageBuffer out;
  out.n = n;
  out.pixels.resize(img.pixels.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) out.at(m1.at(i, j), mgamma.at(i, j)) = img.at(i, j);
  return out;
}

CipherEnvelope encrypt(const ImageBuffer& q, const KeyMaterial& key, bool verify) {
  validate_image(q);
  const std::uint64_t sum_q = pixel_sum(q);
  const CipherMaterial mat = derive_material(sum_q, q.n, key);
  if (verify) verify_material(mat);

  const ImageBuffer p1 = scramble_transversal(q, mat.d);
  const std::vector<std::uint32_t> lm = flatten_column_major(mat.m);
  const std::vector<std::uint32_t> lm1 = flatten_column_major(mat.m1);
  ImageBuffer p4;
  p4.n = q.n;
  p4.pixels = diffuse(p1.pixels, mat.x2, lm, lm1, key.c1, key.c2);
  const ImageBuffer cipher = scramble_orthogonal(p4, mat.m1, mat.mgamma, verify);

  return CipherEnvelope{q.n, sum_q, cipher.pixels};
}

namespace {

void validate_envelope(const CipherEnvelope& env) {
  if (!is_supported_order(env.n))
    fail(Errc::unsupported_size, "side length " + std::to_string(env.n) + " unsupported");
  if (env.payload.size() != static_cast<std::size_t>(env.n) * env.n)
    fail(Errc::malformed_envelope, "payload length is not n^2");
  if (env.sum_q > 255ull * env.n * env.n)
    fail(Errc::sum_out_of_range, "sumQ exceeds 255*n^2");
}

}  // namespace

DecryptResult decrypt(const CipherEnvelope& env, const KeyMaterial& key, bool verify) {
  validate_envelope(env);
  const CipherMaterial mat = derive_material(env.sum_q, env.n, key);
  if (verify) verify_material(mat);

  ImageBuffer cipher;
  cipher.n = env.n;
  cipher.pixels = env.payload;
  const ImageBuffer p4 = unscramble_orthogonal(cipher, mat.m1, mat.mgamma, verify);
  const std::vector<std::uint32_t> lm = flatten_column_major(mat.m);
  const std::vector<std::uint32_t> lm1 = flatten_column_major(mat.m1);
  ImageBuffer p1;
  p1.n = env.n;
  p1.pixels = undiffuse(p4.pixels, mat.x2, lm, lm1, key.c1, key.c2);

  DecryptResult result;
  result.image = unscramble_transversal(p1, mat.d);
  result.sum_matches = pixel_sum(result.image) == env.sum_q;
  return result;
}

std::vector<std::uint8_t> encode_envelope(const CipherEnvelope& env) {
  validate_envelope(env);
  std::vector<std::uint8_t> out;
  out.reserve(17 + env.payload.size());
  for (const char c : {'L', 'T', 'C', '1'}) out.push_back(static_cast<std::uint8_t>(c));
  out.push_back(0x01);
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(env.n >> shift));
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(env.sum_q >> shift));
  out.insert(out.end(), env.payload.begin(), env.payload.end());
  return out;
}

CipherEnvelope decode_envelope(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || bytes[0] != 'L' || bytes[1] != 'T' || bytes[2] != 'C' || bytes[3] != '1')
    fail(Errc::bad_magic, "missing LTC1 magic");
  if (bytes.size() < 5) fail(Errc::truncated, "envelope ends before version byte");
  if (bytes[4] != 0x01)
    fail(Errc::bad_version, "unknown version " + std::to_string(bytes[4]));
  if (bytes.size() < 17) fail(Errc::truncated, "envelope header incomplete");

  CipherEnvelope env;
  for (std::size_t k = 5; k < 9; ++k) env.n = (env.n << 8) | bytes[k];
  for (std::size_t k = 9; k < 17; ++k) env.sum_q = (env.sum_q << 8) | bytes[k];
  if (!is_supported_order(env.n))
    fail(Errc::unsupported_size, "side length " + std::to_string(env.n) + " unsupported");
  if (env.sum_q > 255ull * env.n * env.n) fail(Errc::sum_out_of_range, "sumQ exceeds 255*n^2");

  const std::size_t expected = static_cast<std::size_t>(env.n) * env.n;
  const std::size_t got = bytes.size() - 17;
  if (got < expected) fail(Errc::truncated, "payload has " + std::to_string(got) + " of " +
                                                std::to_string(expected) + " bytes");
  if (got > expected) fail(Errc::malformed_envelope, "trailing bytes after payload");
  env.payload.assign(bytes.begin() + 17, bytes.end());
  return env;
}

}  // namespace ltc
