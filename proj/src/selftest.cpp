#include "ltc/selftest.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <vector>

#include "ltc/cipher_core.hpp"

namespace ltc {
namespace {

// Reference family over GF(4) with the identity labeling and a = 2 (the
// generator): digital forms of M, M1 and Mgamma.
constexpr std::uint32_t kRefM[16] = {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
constexpr std::uint32_t kRefM1[16] = {0, 1, 2, 3, 3, 2, 1, 0, 1, 0, 3, 2, 2, 3, 0, 1};
constexpr std::uint32_t kRefMgamma[16] = {0, 1, 2, 3, 2, 3, 0, 1, 3, 2, 1, 0, 1, 0, 3, 2};

// First transversal of the decomposition (column j = 0), row by row.
constexpr std::uint32_t kRefTransversal0[4][2] = {{0, 0}, {1, 2}, {2, 3}, {3, 1}};

// Transcript: key (mu0 3.99999, key0 1e-15, key1 0.234567, a = 2, c1 = 1.3,
// c2 = 1.5) applied to the 4x4 image 1..16. The tiny key0 pins the sorted
// labeling to the identity, so the squares above drive the whole pipeline.
constexpr double kKeyMu0 = 3.99999;
constexpr double kKeyKey0 = 0.000000000000001;
constexpr double kKeyKey1 = 0.234567;

constexpr std::uint8_t kStageP1[16] = {14, 13, 16, 15, 3, 4, 1, 2, 6, 5, 8, 7, 11, 12, 9, 10};
constexpr std::uint8_t kStageB[16] = {199, 131, 157, 34,  55, 76,  205, 116,
                                      155, 204, 127, 187, 227, 51, 195, 115};
constexpr std::uint8_t kStageP3[16] = {201, 71,  202, 231, 211, 155, 87, 33,
                                       188, 117, 2,   190, 86,  105, 163, 218};
constexpr std::uint8_t kEnvelope[33] = {
    0x4c, 0x54, 0x43, 0x31, 0x01, 0x00, 0x00, 0x00, 0x04, 0x00, 0x00,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x88, 0xc9, 0x9b, 0x02, 0xda, 0xa3,
    0xbe, 0xd3, 0x47, 0x21, 0xca, 0x69, 0xbc, 0x75, 0x56, 0xe7, 0x57};

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void check(const char* name, bool ok) {
    out << (ok ? "ok " : "FAIL ") << name << '\n';
    failures += ok ? 0 : 1;
  }
};

LatinSquare square_from(const std::uint32_t (&cells)[16]) {
  LatinSquare sq;
  sq.n = 4;
  sq.cells.assign(cells, cells + 16);
  return sq;
}

}  // namespace

int run_selftest(std::ostream& out) {
  Reporter r{out};

  const FiniteField field = FiniteField::with_default_poly(4);
  const Labeling identity = Labeling::identity(4);
  const SquareTriple t = build_squares(field, identity, 2);

  r.check("squares.m", t.m == square_from(kRefM));
  r.check("squares.m1", t.m1 == square_from(kRefM1));
  r.check("squares.mgamma", t.mgamma == square_from(kRefMgamma));

  const TransversalDecomposition d = build_decomposition(field, identity, 2);
  bool transversal0_ok = true;
  for (std::uint32_t i = 0; i < 4; ++i)
    transversal0_ok = transversal0_ok &&
                      d.at(i, 0) == Position{kRefTransversal0[i][0], kRefTransversal0[i][1]};
  r.check("decomposition.first_transversal", transversal0_ok);

  bool verifiers_ok = true;
  for (const LatinSquare* sq : {&t.m, &t.m1, &t.mgamma})
    verifiers_ok = verifiers_ok && is_latin_square(*sq);
  verifiers_ok = verifiers_ok && are_orthogonal(t.m, t.m1) && are_orthogonal(t.m, t.mgamma) &&
                 are_orthogonal(t.m1, t.mgamma);
  std::vector<Position> column(4);
  for (std::uint32_t j = 0; j < 4 && verifiers_ok; ++j) {
    for (std::uint32_t i = 0; i < 4; ++i) column[i] = d.at(i, j);
    verifiers_ok = verifiers_ok && is_transversal(t.m, column) &&
                   is_complete_mapping(field, gamma_mapping(field, identity, 2, j));
  }
  r.check("verifiers.family", verifiers_ok);

  KeyMaterial key;
  key.mu0 = kKeyMu0;
  key.key0 = kKeyKey0;
  key.key1 = kKeyKey1;
  key.a_code = 2;
  key.c1 = 1.3;
  key.c2 = 1.5;

  ImageBuffer q;
  q.n = 4;
  q.pixels.resize(16);
  std::iota(q.pixels.begin(), q.pixels.end(), std::uint8_t{1});

  const CipherMaterial mat = derive_material(pixel_sum(q), 4, key);
  bool labeling_ok = true;
  for (std::uint32_t i = 0; i < 4; ++i) labeling_ok = labeling_ok && mat.labeling.perm[i] == i;
  r.check("transcript.identity_labeling", labeling_ok);

  const ImageBuffer p1 = scramble_transversal(q, mat.d);
  r.check("transcript.scramble",
          std::equal(p1.pixels.begin(), p1.pixels.end(), kStageP1));

  const std::vector<std::uint32_t> lm = flatten_column_major(mat.m);
  const std::vector<std::uint32_t> lm1 = flatten_column_major(mat.m1);
  const std::vector<std::uint8_t> p3 = diffuse(p1.pixels, mat.x2, lm, lm1, key.c1, key.c2);
  r.check("transcript.diffuse", std::equal(p3.begin(), p3.end(), kStageP3));

  bool keystream_ok = true;
  for (std::size_t i = 0; i < 16; ++i) {
    const std::uint8_t prev = i == 0 ? 0 : kStageP3[i - 1];
    keystream_ok = keystream_ok && (kStageP3[i] ^ kStageP1[i] ^ prev) == kStageB[i];
  }
  r.check("transcript.keystream", keystream_ok);

  const CipherEnvelope env = encrypt(q, key, /*verify=*/true);
  const std::vector<std::uint8_t> encoded = encode_envelope(env);
  r.check("transcript.envelope",
          encoded.size() == 33 && std::equal(encoded.begin(), encoded.end(), kEnvelope));

  const DecryptResult back = decrypt(env, key, /*verify=*/true);
  r.check("transcript.round_trip", back.sum_matches && back.image == q);

  const KeyMaterial reparsed = parse_key_material(format_key_material(key));
  r.check("keyfile.round_trip", reparsed.mu0 == key.mu0 && reparsed.key0 == key.key0 &&
                                    reparsed.key1 == key.key1 && reparsed.a_code == key.a_code &&
                                    reparsed.c1 == key.c1 && reparsed.c2 == key.c2);

  return r.failures;
}

}  // namespace ltc
