#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltc/chaos_keys.hpp"
#include "ltc/latin_design.hpp"

namespace ltc {

// Square grayscale image, row-major bytes.
struct ImageBuffer {
  std::uint32_t n = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::uint32_t i, std::uint32_t j) const { return pixels[i * n + j]; }
  std::uint8_t& at(std::uint32_t i, std::uint32_t j) { return pixels[i * n + j]; }
  bool operator==(const ImageBuffer&) const = default;
};

// Everything the pipeline derives from (sumQ, n, key): the field, the
// key-dependent labeling, the three pairwise orthogonal squares, the
// transversal decomposition and the diffusion sequence x2 (length n^2).
struct CipherMaterial {
  FiniteField field;
  Labeling labeling;
  LatinSquare m;
  LatinSquare m1;
  LatinSquare mgamma;
  TransversalDecomposition d;
  std::vector<double> x2;
};

struct CipherEnvelope {
  std::uint32_t n = 0;
  std::uint64_t sum_q = 0;
  std::vector<std::uint8_t> payload;

  bool operator==(const CipherEnvelope&) const = default;
};

// Side lengths with a default field: 4, 8, 9, 16, 25, 256.
bool is_supported_order(std::uint32_t n);

// Throws unsupported_size / dimension_mismatch when img cannot be processed.
void validate_image(const ImageBuffer& img);

std::uint64_t pixel_sum(const ImageBuffer& img);

// Key schedule: perturb keys with sumQ, run the logistic map for the labeling
// permutation (x1, no burn-in) and the diffusion stream (x2, 100 burn-in),
// and build the square family with a = key.a_code (0 meaning the generator).
CipherMaterial derive_material(std::uint64_t sum_q, std::uint32_t n, const KeyMaterial& key);

// Re-checks every combinatorial claim behind the material (Latin property,
// pairwise orthogonality, transversal partition, complete mappings); throws
// on any failure. Meant for debug runs; encrypt/decrypt trust the
// construction unless asked.
void verify_material(const CipherMaterial& mat);

// First scrambling: cyclic shift by one along each transversal, i.e.
// out[D(i+1, j)] = img[D(i, j)] with i+1 taken mod n.
ImageBuffer scramble_transversal(const ImageBuffer& img, const TransversalDecomposition& d);
ImageBuffer unscramble_transversal(const ImageBuffer& img, const TransversalDecomposition& d);

// Keystream chain: b(i) = floor(x2[i]*(1000 + c1*lm[i] + c2*lm1[i])) mod 256,
// out(i) = p2(i) XOR b(i) XOR out(i-1) with out(-1) = 0. lm/lm1 are the
// column-major flattenings of M and M1.
std::vector<std::uint8_t> diffuse(std::span<const std::uint8_t> p2, std::span<const double> x2,
                                  std::span<const std::uint32_t> lm,
                                  std::span<const std::uint32_t> lm1, double c1, double c2);
std::vector<std::uint8_t> undiffuse(std::span<const std::uint8_t> p3, std::span<const double> x2,
                                    std::span<const std::uint32_t> lm,
                                    std::span<const std::uint32_t> lm1, double c1, double c2);

std::vector<std::uint32_t> flatten_column_major(const LatinSquare& sq);

// Second scrambling: out[i][j] = img[m1[i][j]][mgamma[i][j]], a bijection on
// positions because the squares are orthogonal. verify re-checks
// orthogonality first (not_orthogonal).
ImageBuffer scramble_orthogonal(const ImageBuffer& img, const LatinSquare& m1,
                                const LatinSquare& mgamma, bool verify = false);
ImageBuffer unscramble_orthogonal(const ImageBuffer& img, const LatinSquare& m1,
                                  const LatinSquare& mgamma, bool verify = false);

// Single round: scramble_transversal, diffuse over the row-major flattening,
// scramble_orthogonal; the envelope carries (n, sumQ, payload).
CipherEnvelope encrypt(const ImageBuffer& q, const KeyMaterial& key, bool verify = false);

struct DecryptResult {
  ImageBuffer image;
  // True when the recovered pixel sum equals env.sum_q. A mismatch means a
  // wrong key or damaged payload; the image is returned either way so
  // robustness experiments can inspect it.
  bool sum_matches = false;
};

DecryptResult decrypt(const CipherEnvelope& env, const KeyMaterial& key, bool verify = false);

// Binary form: "LTC1", version byte 0x01, n as u32 big-endian, sumQ as u64
// big-endian, n^2 payload bytes. No padding, no checksum.
std::vector<std::uint8_t> encode_envelope(const CipherEnvelope& env);
CipherEnvelope decode_envelope(std::span<const std::uint8_t> bytes);

}  // namespace ltc
