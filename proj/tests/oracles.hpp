// Independent brute-force oracles shared by the unit tests and the acceptance
// binary. Nothing here calls into the library's counting code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "looptop/matrix.hpp"
#include "looptop/words.hpp"

namespace oracle {

using looptop::Integer;
using looptop::IntMatrix;
using looptop::Rational;
using looptop::RationalMatrix;
using looptop::Word;

// Lyndon test by comparing against every proper rotation.
inline bool lyndon_by_rotation(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word rot(w.begin() + static_cast<long>(k), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(k));
    if (!(w < rot)) return false;
  }
  return true;
}

inline bool has_factor(const Word& w, const Word& f) {
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

// Calls visit(word, degree) on every nonempty word of total degree <= D.
inline void all_words(const std::vector<int>& degrees, int D, const std::function<void(const Word&, int)>& visit) {
  Word w;
  std::function<void(int)> rec = [&](int deg) {
    for (std::size_t a = 0; a < degrees.size(); ++a) {
      if (deg + degrees[a] > D) continue;
      w.push_back(static_cast<std::uint8_t>(a));
      visit(w, deg + degrees[a]);
      rec(deg + degrees[a]);
      w.pop_back();
    }
  };
  rec(0);
}

// Lyndon words avoiding `forbidden`, counted per degree, by exhaustion.
inline std::map<int, long> lyndon_counts(const std::vector<int>& degrees, const Word& forbidden, int D) {
  std::map<int, long> counts;
  all_words(degrees, D, [&](const Word& w, int deg) {
    if (lyndon_by_rotation(w) && (forbidden.empty() || !has_factor(w, forbidden))) ++counts[deg];
  });
  return counts;
}

// Words avoiding `forbidden`, counted per degree, by exhaustion (degree 0 = 1).
inline std::vector<long> avoiding_counts(const std::vector<int>& degrees, const Word& forbidden, int D) {
  std::vector<long> counts(static_cast<std::size_t>(D) + 1, 0);
  counts[0] = 1;
  all_words(degrees, D, [&](const Word& w, int deg) {
    if (!has_factor(w, forbidden)) ++counts[static_cast<std::size_t>(deg)];
  });
  return counts;
}

// Coefficients of 1/p for an integer polynomial p with p[0] = 1.
inline std::vector<Integer> reciprocal(const std::map<int, long long>& p, int N) {
  std::vector<Integer> h(static_cast<std::size_t>(N) + 1, 0);
  h[0] = 1;
  for (int k = 1; k <= N; ++k) {
    Integer acc = 0;
    for (const auto& [e, c] : p)
      if (e >= 1 && e <= k) acc -= Integer(static_cast<long>(c)) * h[static_cast<std::size_t>(k - e)];
    h[static_cast<std::size_t>(k)] = acc;
  }
  return h;
}

// Degree-by-degree PBW matching by explicit repeated multiplication by the
// factor series, one generator at a time. graded: odd degrees are exterior.
inline std::map<int, Integer> naive_pbw(const std::vector<Integer>& h, bool graded) {
  const int N = static_cast<int>(h.size()) - 1;
  std::vector<Integer> prod(h.size(), 0);
  prod[0] = 1;
  std::map<int, Integer> out;
  for (int d = 1; d <= N; ++d) {
    const Integer count = h[static_cast<std::size_t>(d)] - prod[static_cast<std::size_t>(d)];
    if (count < 0) throw std::runtime_error("naive_pbw: negative count");
    if (count != 0) out[d] = count;
    for (Integer c = 0; c < count; ++c) {
      if (graded && d % 2 == 1) {
        for (int k = N; k >= d; --k) prod[static_cast<std::size_t>(k)] += prod[static_cast<std::size_t>(k - d)];
      } else {
        for (int k = d; k <= N; ++k) prod[static_cast<std::size_t>(k)] += prod[static_cast<std::size_t>(k - d)];
      }
    }
  }
  return out;
}

// Rank over Q by plain Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Random unimodular n x n integer matrix: a product of elementary moves.
inline IntMatrix random_unimodular(std::size_t n, std::mt19937& rng, int moves = 12) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int m = 0; m < moves; ++m) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    if (m % 3 == 0)
      for (std::size_t k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
  }
  return u;
}

// Inverse of a square rational matrix by Gauss-Jordan; throws when singular.
inline RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix a = m, inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw std::runtime_error("singular matrix");
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a(p, k), a(c, k));
      std::swap(inv(p, k), inv(c, k));
    }
    const Rational piv = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= piv;
      inv(c, k) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(i, k) -= f * a(c, k);
        inv(i, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

}  // namespace oracle
