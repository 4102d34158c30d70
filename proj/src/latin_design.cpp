#include "ltc/latin_design.hpp"

#include <sstream>

namespace ltc {
namespace {

bool is_permutation(std::span<const std::uint32_t> values, std::uint32_t n) {
  if (values.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : values) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

Labeling Labeling::identity(std::uint32_t n) {
  Labeling lab;
  lab.perm.resize(n);
  lab.theta_inv.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    lab.perm[i] = i;
    lab.theta_inv[i] = i;
  }
  return lab;
}

Labeling Labeling::from_permutation(std::vector<std::uint32_t> perm) {
  const std::uint32_t n = static_cast<std::uint32_t>(perm.size());
  if (!is_permutation(perm, n)) fail(Errc::not_bijection, "labeling is not a permutation");
  Labeling lab;
  lab.theta_inv.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) lab.theta_inv[perm[i]] = i;
  lab.perm = std::move(perm);
  return lab;
}

void check_a(const FiniteField& f, std::uint32_t a) {
  if (a >= f.n()) fail(Errc::code_out_of_range, "a = " + std::to_string(a));
  const std::uint32_t minus_one = f.neg(1);
  if (a == 0 || a == 1 || a == minus_one)
    fail(Errc::invalid_a, "a must avoid 0, 1 and " + std::to_string(minus_one));
}

SquareTriple build_squares(const FiniteField& f, const Labeling& lab, std::uint32_t a) {
  check_a(f, a);
  const std::uint32_t n = f.n();
  if (lab.n() != n) fail(Errc::order_mismatch, "labeling order does not match field");

  SquareTriple t;
  for (LatinSquare* sq : {&t.m, &t.m1, &t.mgamma}) {
    sq->n = n;
    sq->cells.resize(static_cast<std::size_t>(n) * n);
  }
  const std::uint32_t one_plus_a = f.add(1, a);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t gi = lab.perm[i];
    const std::uint32_t agi = f.mul(a, gi);
    const std::uint32_t bgi = f.mul(one_plus_a, gi);
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t gj = lab.perm[j];
      t.m.at(i, j) = lab.theta_inv[f.add(gi, gj)];
      t.m1.at(i, j) = lab.theta_inv[f.add(bgi, gj)];
      t.mgamma.at(i, j) = lab.theta_inv[f.add(agi, gj)];
    }
  }
  return t;
}

TransversalDecomposition build_decomposition(const FiniteField& f, const Labeling& lab,
                                             std::uint32_t a) {
  const SquareTriple t = build_squares(f, lab, a);
  const std::uint32_t n = f.n();
  TransversalDecomposition d;
  d.n = n;
  d.positions.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) d.at(i, j) = Position{i, t.mgamma.at(i, j)};
  return d;
}

std::vector<std::uint32_t> gamma_mapping(const FiniteField& f, const Labeling& lab, std::uint32_t a,
                                         std::uint32_t j) {
  check_a(f, a);
  const std::uint32_t n = f.n();
  if (lab.n() != n) fail(Errc::order_mismatch, "labeling order does not match field");
  if (j >= n) fail(Errc::code_out_of_range, "index j = " + std::to_string(j));
  std::vector<std::uint32_t> mapping(n);
  const std::uint32_t gj = lab.perm[j];
  for (std::uint32_t x = 0; x < n; ++x) mapping[x] = f.add(f.mul(a, x), gj);
  return mapping;
}

bool is_latin_square(const LatinSquare& sq) {
  const std::uint32_t n = sq.n;
  if (n == 0 || sq.cells.size() != static_cast<std::size_t>(n) * n) return false;
  std::vector<std::uint32_t> line(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) line[j] = sq.at(i, j);
    if (!is_permutation(line, n)) return false;
  }
  for (std::uint32_t j = 0; j < n; ++j) {
    for (std::uint32_t i = 0; i < n; ++i) line[i] = sq.at(i, j);
    if (!is_permutation(line, n)) return false;
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  if (a.n != b.n) fail(Errc::order_mismatch, "squares have different orders");
  const std::uint32_t n = a.n;
  std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    if (a.cells[k] >= n || b.cells[k] >= n) return false;
    const std::size_t pair = static_cast<std::size_t>(a.cells[k]) * n + b.cells[k];
    if (seen[pair]) return false;
    seen[pair] = true;
  }
  return true;
}

bool is_transversal(const LatinSquare& sq, std::span<const Position> cells) {
  const std::uint32_t n = sq.n;
  if (cells.size() != n) return false;
  std::vector<bool> row_seen(n, false), col_seen(n, false), sym_seen(n, false);
  for (const Position& pos : cells) {
    if (pos.row >= n || pos.col >= n) return false;
    const std::uint32_t sym = sq.at(pos.row, pos.col);
    if (sym >= n || row_seen[pos.row] || col_seen[pos.col] || sym_seen[sym]) return false;
    row_seen[pos.row] = true;
    col_seen[pos.col] = true;
    sym_seen[sym] = true;
  }
  return true;
}

bool is_complete_mapping(const FiniteField& f, std::span<const std::uint32_t> mapping) {
  const std::uint32_t n = f.n();
  if (!is_permutation(mapping, n)) fail(Errc::not_bijection, "mapping is not a permutation");
  std::vector<bool> seen(n, false);
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t y = f.add(x, mapping[x]);
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

std::string to_text(const LatinSquare& sq) {
  std::ostringstream out;
  for (std::uint32_t i = 0; i < sq.n; ++i) {
    for (std::uint32_t j = 0; j < sq.n; ++j) {
      if (j > 0) out << ' ';
      out << sq.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

LatinSquare square_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::uint32_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<std::uint32_t> row;
    std::uint32_t v;
    while (fields >> v) row.push_back(v);
    if (!fields.eof()) fail(Errc::bad_parameter, "non-numeric cell in square text");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const std::uint32_t n = static_cast<std::uint32_t>(rows.size());
  LatinSquare sq;
  sq.n = n;
  sq.cells.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (row.size() != n) fail(Errc::bad_parameter, "square text is not n by n");
    sq.cells.insert(sq.cells.end(), row.begin(), row.end());
  }
  return sq;
}

}  // namespace ltc
