#pragma once

// Smith normal form over the integers: a dense reference implementation with
// unimodular transforms, and a sparse eliminator for large boundary matrices.

#include "looptop/matrix.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace looptop {

struct SmithForm {
  std::vector<Integer> invariants;  ///< nonzero diagonal, d1 | d2 | ...
  IntMatrix left;                   ///< unimodular, left * m * right = diagonal
  IntMatrix right;
};

/// Dense SNF with transforms; the product left * m * right is verified.
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero invariant factors only (no transforms).
std::vector<Integer> invariant_factors(IntMatrix m);

/// Sparse integer matrix stored by columns; each column sorted by row.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Integer>>> columns;

  std::size_t cols() const { return columns.size(); }
  IntMatrix dense() const;
  static SparseIntMatrix from_dense(const IntMatrix& m);
};

/// Rank and nonzero invariant factors of a sparse matrix: column reduction
/// on +-1 pivots, then dense SNF of what remains.
struct SparseSmith {
  std::size_t rank = 0;
  std::vector<Integer> invariants;  ///< factors > 1 only; rank counts all
};
SparseSmith sparse_smith(const SparseIntMatrix& m);

}  // namespace looptop
