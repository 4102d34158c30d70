#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltc/finite_field.hpp"

namespace ltc {

// A labeling of the field: position i carries element g_i = perm[i], and
// theta_inv is the inverse lookup (element code -> position). perm must be a
// permutation of 0..n-1.
struct Labeling {
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> theta_inv;

  static Labeling identity(std::uint32_t n);
  // Validates that perm is a bijection on 0..n-1; throws not_bijection.
  static Labeling from_permutation(std::vector<std::uint32_t> perm);

  std::uint32_t n() const { return static_cast<std::uint32_t>(perm.size()); }
};

struct LatinSquare {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> cells;  // row-major, n*n symbols in 0..n-1

  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return cells[i * n + j]; }
  std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return cells[i * n + j]; }
  bool operator==(const LatinSquare&) const = default;
};

struct Position {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  bool operator==(const Position&) const = default;
};

// Column j lists the n cells of transversal j: entry (i, j) is the position
// of that transversal's cell in row i.
struct TransversalDecomposition {
  std::uint32_t n = 0;
  std::vector<Position> positions;  // row-major, n*n

  const Position& at(std::uint32_t i, std::uint32_t j) const { return positions[i * n + j]; }
  Position& at(std::uint32_t i, std::uint32_t j) { return positions[i * n + j]; }
};

struct SquareTriple {
  LatinSquare m;        // M[i][j]      = theta^-1(g_i + g_j)
  LatinSquare m1;       // M1[i][j]     = theta^-1((1 + a) g_i + g_j)
  LatinSquare mgamma;   // Mgamma[i][j] = theta^-1(a g_i + g_j)
};

// Validates a: it must be a field code other than 0, 1 and the embedded p-1,
// so that both 1 + a and a are nonzero and M1/Mgamma come out Latin and
// orthogonal to M. Throws code_out_of_range, invalid_a.
void check_a(const FiniteField& f, std::uint32_t a);

SquareTriple build_squares(const FiniteField& f, const Labeling& lab, std::uint32_t a);

// D(i, j) = (i, Mgamma[i][j]); its columns partition M into n disjoint
// transversals.
TransversalDecomposition build_decomposition(const FiniteField& f, const Labeling& lab,
                                             std::uint32_t a);

// The mapping x -> a x + g_j over element codes; a complete mapping of the
// field for valid a.
std::vector<std::uint32_t> gamma_mapping(const FiniteField& f, const Labeling& lab,
                                         std::uint32_t a, std::uint32_t j);

// --- verifiers ------------------------------------------------------------

// Each row and each column a permutation of 0..n-1.
bool is_latin_square(const LatinSquare& sq);

// Superimposing a and b yields all n^2 distinct ordered pairs.
// Throws order_mismatch when sizes differ.
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);

// n cells covering every row, every column and every symbol exactly once.
bool is_transversal(const LatinSquare& sq, std::span<const Position> cells);

// mapping is sigma with sigma(x) and x + sigma(x) both bijections of the
// field. Throws not_bijection when mapping is not a permutation of the codes.
bool is_complete_mapping(const FiniteField& f, std::span<const std::uint32_t> mapping);

// --- plain text form -------------------------------------------------------

// One row per line, symbols space-separated.
std::string to_text(const LatinSquare& sq);
LatinSquare square_from_text(const std::string& text);

}  // namespace ltc
