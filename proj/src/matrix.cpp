#include "looptop/matrix.hpp"

#include <charconv>
#include <sstream>

namespace looptop {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  return q;
}

namespace {

// Row-echelon in place; returns rank and the determinant sign/scale product.
std::size_t eliminate(RationalMatrix& a, Rational* det) {
  std::size_t rank = 0;
  if (det) *det = 1;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(rank, j));
      if (det) *det = -*det;
    }
    const Rational p = a(rank, col);
    if (det) *det *= p;
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Rational f = a(i, col) / p;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  if (det && rank < a.rows()) *det = 0;
  return rank;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  return eliminate(a, nullptr);
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  RationalMatrix a = m;
  Rational det;
  eliminate(a, &det);
  return det;
}

Integer determinant(const IntMatrix& m) {
  const Rational d = determinant(to_rational(m));
  return d.get_num();
}

IntMatrix parse_int_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  std::stringstream rows_in(text);
  std::string row_text;
  while (std::getline(rows_in, row_text, ';')) {
    std::vector<Integer> row;
    std::stringstream cells(row_text);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t b = cell.find_first_not_of(" \t\"'");
      std::size_t e = cell.find_last_not_of(" \t\"'");
      if (b == std::string::npos) throw std::invalid_argument("empty matrix entry in '" + text + "'");
      std::string token = cell.substr(b, e - b + 1);
      if (!token.empty() && token.front() == '+') token.erase(0, 1);
      Integer value;
      if (token.empty() || value.set_str(token, 10) != 0)
        throw std::invalid_argument("matrix entries must be integers: '" + token + "'");
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix rows in '" + text + "'");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_int_matrix(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).get_str();
    }
  }
  return out;
}

}  // namespace looptop
