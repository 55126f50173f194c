#include "looptop/smith.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace looptop {

namespace {

template <class T>
void swap_rows(Matrix<T>& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

template <class T>
void swap_cols(Matrix<T>& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_i += q * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (a(j, c) != 0) a(i, c) += q * a(j, c);
}

void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (a(r, j) != 0) a(r, i) += q * a(r, j);
}

// In-place SNF; left/right accumulate the row and column operations when given.
std::vector<Integer> reduce_dense(IntMatrix& a, IntMatrix* left, IntMatrix* right) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block as pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second)))) best = {i, j};
    if (!best) break;
    swap_rows(a, t, best->first);
    if (left) swap_rows(*left, t, best->first);
    swap_cols(a, t, best->second);
    if (right) swap_cols(*right, t, best->second);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(a, i, t, -q);
        if (left) add_row(*left, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(a, j, t, -q);
        if (right) add_col(*right, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // move a smaller remainder into the pivot position and repeat
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
        swap_rows(a, t, bi);
        if (left) swap_rows(*left, t, bi);
        swap_cols(a, t, bj);
        if (right) swap_cols(*right, t, bj);
        continue;
      }
      // divisibility of the remaining block by the pivot
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (!bad) break;
      add_row(a, t, *bad, 1);
      if (left) add_row(*left, t, *bad, 1);
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) a(t, c) = -a(t, c);
      if (left)
        for (std::size_t c = 0; c < left->cols(); ++c) (*left)(t, c) = -(*left)(t, c);
    }
    diag.push_back(a(t, t));
  }
  return diag;
}

// Column reduction on unit pivots; T is std::int64_t (overflow-checked) or Integer.
template <class T>
struct Eliminator {
  using Column = std::vector<std::pair<std::uint32_t, T>>;

  static bool mul_add(const T& a, const T& f, const T& b, T& out) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
      std::int64_t p;
      if (__builtin_mul_overflow(f, b, &p)) return false;
      return !__builtin_sub_overflow(a, p, &out);
    } else {
      out = a - f * b;
      return true;
    }
  }

  // a -= f * b; false on overflow
  static bool axpy(Column& a, const T& f, const Column& b) {
    Column out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(std::move(a[i++]));
      } else if (i == a.size() || b[j].first < a[i].first) {
        T v;
        if (!mul_add(T(0), f, b[j].second, v)) return false;
        out.emplace_back(b[j].first, v);
        ++j;
      } else {
        T v;
        if (!mul_add(a[i].second, f, b[j].second, v)) return false;
        if (v != 0) out.emplace_back(a[i].first, v);
        ++i, ++j;
      }
    }
    a = std::move(out);
    return true;
  }

  static std::optional<SparseSmith> run(const SparseIntMatrix& m) {
    std::vector<Column> pivots;                         // by pivot row
    std::vector<std::int64_t> pivot_of(m.rows, -1);     // row -> index into pivots
    std::vector<Column> hard;
    for (const auto& src : m.columns) {
      Column col;
      col.reserve(src.size());
      for (const auto& [r, v] : src) {
        if constexpr (std::is_same_v<T, std::int64_t>) {
          if (!v.fits_slong_p()) return std::nullopt;
          col.emplace_back(r, v.get_si());
        } else {
          col.emplace_back(r, v);
        }
      }
      while (!col.empty()) {
        const auto& [low, value] = col.back();
        const std::int64_t p = pivot_of[low];
        if (p < 0) break;
        const Column& pc = pivots[static_cast<std::size_t>(p)];
        const T f = value * pc.back().second;  // pivot entry is +-1
        if (!axpy(col, f, pc)) return std::nullopt;
      }
      if (col.empty()) continue;
      const T& lead = col.back().second;
      if (lead == 1 || lead == -1) {
        pivot_of[col.back().first] = static_cast<std::int64_t>(pivots.size());
        pivots.push_back(std::move(col));
      } else {
        hard.push_back(std::move(col));
      }
    }
    SparseSmith out;
    out.rank = pivots.size();
    if (hard.empty()) return out;
    // eliminate every pivot row from the hard columns, highest row first
    std::vector<std::uint32_t> used_rows;
    for (auto& col : hard) {
      std::size_t k = col.size();
      while (k > 0) {
        const auto row = col[k - 1].first;
        const std::int64_t p = pivot_of[row];
        if (p < 0) {
          --k;
          continue;
        }
        const Column& pc = pivots[static_cast<std::size_t>(p)];
        const T f = col[k - 1].second * pc.back().second;
        if (!axpy(col, f, pc)) return std::nullopt;
        // entries above `row` are unchanged in position; recompute k
        k = static_cast<std::size_t>(std::lower_bound(col.begin(), col.end(), std::make_pair(row, T(0)),
                                                      [](const auto& a, const auto& b) { return a.first < b.first; }) -
                                     col.begin());
      }
      for (const auto& [r, v] : col) used_rows.push_back(r);
    }
    std::sort(used_rows.begin(), used_rows.end());
    used_rows.erase(std::unique(used_rows.begin(), used_rows.end()), used_rows.end());
    IntMatrix residual(used_rows.size(), hard.size());
    for (std::size_t c = 0; c < hard.size(); ++c)
      for (const auto& [r, v] : hard[c]) {
        const auto at = static_cast<std::size_t>(std::lower_bound(used_rows.begin(), used_rows.end(), r) - used_rows.begin());
        if constexpr (std::is_same_v<T, std::int64_t>)
          residual(at, c) = Integer(static_cast<long>(v));
        else
          residual(at, c) = v;
      }
    const auto diag = reduce_dense(residual, nullptr, nullptr);
    out.rank += diag.size();
    for (const auto& d : diag)
      if (d != 1) out.invariants.push_back(d);
    return out;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  IntMatrix a = m;
  out.left = IntMatrix::identity(m.rows());
  out.right = IntMatrix::identity(m.cols());
  out.invariants = reduce_dense(a, &out.left, &out.right);
  IntMatrix expected(m.rows(), m.cols());
  for (std::size_t i = 0; i < out.invariants.size(); ++i) expected(i, i) = out.invariants[i];
  if (!(out.left * m * out.right == expected)) throw IntegrityError("smith_normal_form: transform check failed");
  for (std::size_t i = 0; i + 1 < out.invariants.size(); ++i)
    if (!mpz_divisible_p(out.invariants[i + 1].get_mpz_t(), out.invariants[i].get_mpz_t()))
      throw IntegrityError("smith_normal_form: divisibility chain broken");
  return out;
}

std::vector<Integer> invariant_factors(IntMatrix m) { return reduce_dense(m, nullptr, nullptr); }

IntMatrix SparseIntMatrix::dense() const {
  IntMatrix m(rows, cols());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns[c]) m(r, c) = v;
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& m) {
  SparseIntMatrix s;
  s.rows = m.rows();
  s.columns.resize(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0) s.columns[c].emplace_back(static_cast<std::uint32_t>(r), m(r, c));
  return s;
}

SparseSmith sparse_smith(const SparseIntMatrix& m) {
  if (m.rows > std::numeric_limits<std::uint32_t>::max()) throw CapacityError("sparse_smith: too many rows");
  if (auto fast = Eliminator<std::int64_t>::run(m)) return *fast;
  return *Eliminator<Integer>::run(m);
}

}  // namespace looptop
