#include <doctest.h>

#include "looptop/cobar.hpp"
#include "looptop/ntheory.hpp"
#include "looptop/smith.hpp"
#include "looptop/spaces.hpp"
#include "oracles.hpp"

using namespace looptop;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::size_t dense_rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.emplace_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return oracle::rational_rank(rows);
}

IntMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

HomologyGroup homology_of(const SpaceModel& s, int cutoff, int d) { return ChainComplex(coalgebra_of(s), cutoff).homology(d); }

}  // namespace

TEST_CASE("Smith normal form") {
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).invariants == ints({1, 6}));
  CHECK(smith_normal_form(IntMatrix(3, 2)).invariants.empty());
  CHECK(smith_normal_form(IntMatrix{{1, 0}, {0, 1}}).invariants == ints({1, 1}));
  CHECK(invariant_factors(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) == ints({2, 6, 12}));
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 6;
    const IntMatrix m = random_matrix(r, c, rng, -9, 9);
    const auto s = smith_normal_form(m);
    const IntMatrix diag = s.left * m * s.right;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (i == j && i < s.invariants.size())
          CHECK(abs(diag(i, j)) == s.invariants[i]);
        else
          CHECK(diag(i, j) == 0);
      }
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
    for (std::size_t k = 1; k < s.invariants.size(); ++k) CHECK(s.invariants[k] % s.invariants[k - 1] == 0);
    CHECK(s.invariants.size() == dense_rank(m));
    // Sparse elimination agrees with the dense transform version.
    const auto sparse = sparse_smith(SparseIntMatrix::from_dense(m));
    CHECK(sparse.rank == s.invariants.size());
    std::vector<Integer> big;
    for (const auto& x : s.invariants)
      if (x > 1) big.push_back(x);
    CHECK(sparse.invariants == big);
  }
  // Invariant factors are unchanged by unimodular transforms.
  for (int trial = 0; trial < 10; ++trial) {
    const IntMatrix m = random_matrix(4, 4, rng, -6, 6);
    const IntMatrix u = oracle::random_unimodular(4, rng), v = oracle::random_unimodular(4, rng);
    CHECK(invariant_factors(u * m * v) == invariant_factors(m));
  }
}

TEST_CASE("factorization") {
  CHECK(factorize(Integer(360)) == std::map<Integer, int>{{2, 3}, {3, 2}, {5, 1}});
  const Integer big("1000000016000000063");  // 1000000007 * 1000000009
  CHECK(factorize(big) == std::map<Integer, int>{{Integer(1000000007), 1}, {Integer(1000000009), 1}});
  CHECK(prime_divisors(Integer(-36)) == ints({2, 3}));
  CHECK(prime_divisors(Integer(1)).empty());
  CHECK(prime_power_parts(ints({6, 12})) == ints({2, 3, 3, 4}));
}

TEST_CASE("coalgebras of the space families") {
  const auto m22 = coalgebra_of(ManifoldModel{2, 2, {}});
  CHECK(m22.diagonal_string(2) == "a₁⊗a₂ + a₂⊗a₁");
  const auto v8 = coalgebra_of(BettiOneModel{4, 0});
  CHECK(v8.generators.size() == 2);
  CHECK(v8.diagonal_string(1) == "ε₄⊗ε₄");
  const auto x = coalgebra_of(TwoCellModel{2, IntMatrix{{0, 7}, {7, 0}}});
  CHECK(x.diagonal_string(2) == "7α₁⊗α₂ + 7α₂⊗α₁");
  const auto t = coalgebra_of(ConnectedSumModel{{{2, 3}}, {}});
  CHECK(t.diagonal_string(2) == "a₁⊗b₁ + b₁⊗a₁");
  const auto odd = coalgebra_of(ConnectedSumModel{{{3, 3}}, {-1}});
  CHECK(odd.diagonal_string(2) == "-a₁⊗b₁ + b₁⊗a₁");
  FiniteCoalgebra bad;
  const auto g = bad.add_generator("g", 3);
  bad.add_term(g, g, g, 1);
  CHECK_THROWS(check_coalgebra(bad));
}

TEST_CASE("cobar complex of M(2,2)") {
  const ChainComplex cx(coalgebra_of(ManifoldModel{2, 2, {}}), 8);
  CHECK(cx.basis(2) == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto b3 = cx.basis(3);
  CHECK(std::find(b3.begin(), b3.end(), Word{2}) != b3.end());
  CHECK(cx.apply({2}) == std::map<Word, Integer>{{{0, 1}, 1}, {{1, 0}, 1}});
  for (int d = 0; d <= 6; ++d) {
    const auto h = cx.homology(d);
    CHECK(h.rank == d + 1);
    CHECK(h.torsion.empty());
  }
  CHECK_THROWS_AS(cx.homology(8), OutOfWindowError);
  CHECK_THROWS_AS(cx.homology(-1), OutOfWindowError);
}

TEST_CASE("Betti-one cobar complex") {
  const ChainComplex cx(coalgebra_of(BettiOneModel{4, 0}), 14);
  CHECK(cx.apply({1}) == std::map<Word, Integer>{{{0, 0}, 1}});
  CHECK(cx.apply({0}).empty());
  for (int d = 0; d < 14; ++d) {
    const auto h = cx.homology(d);
    const bool expected = d == 0 || d == 3 || d == 10 || d == 13;
    CHECK(h.rank == (expected ? 1 : 0));
    CHECK(h.torsion.empty());
  }
}

TEST_CASE("zero diagonal gives zero differential") {
  const ChainComplex cx(coalgebra_of(TwoCellModel{3, IntMatrix(3, 3)}), 8);
  for (int d = 1; d <= 8; ++d) {
    const auto m = cx.differential(d);
    CHECK(m == IntMatrix(m.rows(), m.cols()));
  }
  const auto expected = expected_loop_ranks(TwoCellModel{3, IntMatrix(3, 3)}, 7);
  for (int d = 0; d < 8; ++d) CHECK(cx.homology(d).rank == expected[d]);
}

TEST_CASE("square zero and homology against dense SNF") {
  for (const SpaceModel& s : {SpaceModel{ManifoldModel{2, 3, {}}}, SpaceModel{ManifoldModel{3, 2, {}}},
                              SpaceModel{ConnectedSumModel{{{2, 3}, {2, 3}}, {1, -1}}},
                              SpaceModel{TwoCellModel{2, IntMatrix{{2, 3}, {3, 4}}}},
                              SpaceModel{TwoCellModel{2, IntMatrix{{0, 4}, {4, 0}}}}, SpaceModel{BettiOneModel{2, 0}}}) {
    const ChainComplex cx(coalgebra_of(s), 6);
    for (int d = 2; d <= 6; ++d) {
      const IntMatrix prod = cx.differential(d - 1) * cx.differential(d);
      CHECK(prod == IntMatrix(prod.rows(), prod.cols()));
    }
    for (int d = 0; d < 6; ++d) {
      const IntMatrix out = d > 0 ? cx.differential(d) : IntMatrix(0, cx.dimension(0));
      const IntMatrix in = cx.differential(d + 1);
      const auto h = cx.homology(d);
      CHECK(h.rank == static_cast<unsigned long>(cx.dimension(d) - dense_rank(out) - dense_rank(in)));
      std::vector<Integer> tors;
      for (const auto& x : invariant_factors(in))
        if (x > 1) tors.push_back(x);
      CHECK(h.invariants == tors);
    }
    CHECK(cx.euler_by_weight() == cx.homology_euler_by_weight());
  }
}

TEST_CASE("homology ranks equal the Hilbert coefficients") {
  for (const SpaceModel& s : {SpaceModel{ManifoldModel{2, 3, {}}}, SpaceModel{ManifoldModel{2, 4, {}}},
                              SpaceModel{ManifoldModel{3, 4, {}}}, SpaceModel{ManifoldModel{2, 3, IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}},
                              SpaceModel{ConnectedSumModel{{{2, 3}, {2, 3}}, {}}}, SpaceModel{ConnectedSumModel{{{2, 4}, {3, 3}}, {1, -1}}}}) {
    const auto report = verify_loop_homology(s, 8);
    CHECK_MESSAGE(report.passed(), format_space(s));
    for (const auto& row : report.degrees) CHECK(row.observed.torsion.empty());
  }
  const auto m23 = verify_loop_homology(ManifoldModel{2, 3, {}}, 8);
  std::vector<Integer> ranks;
  for (const auto& row : m23.degrees) ranks.push_back(row.observed.rank);
  CHECK(ranks == ints({1, 3, 8, 21, 55, 144, 377, 987}));
  const auto t = verify_loop_homology(ConnectedSumModel{{{2, 3}, {2, 3}}, {}}, 6);
  CHECK(t.degrees[1].observed.rank == 2);
  CHECK(t.degrees[2].observed.rank == 6);
  CHECK(t.degrees[3].observed.rank == 15);
}

TEST_CASE("torsion of non-unimodular two-cell complexes") {
  for (long p : {2L, 3L, 5L, 7L}) {
    const auto hyp = homology_of(TwoCellModel{2, IntMatrix{{0, p}, {p, 0}}}, 3, 2);
    CHECK(hyp.rank == 3);
    CHECK(hyp.torsion == ints({p}));
    const auto sq = homology_of(TwoCellModel{2, IntMatrix{{0, p * p}, {p * p, 0}}}, 3, 2);
    CHECK(sq.torsion == ints({p * p}));
    // p^2 [i1,i1] + [i2,i2] has determinant p^2 but no torsion at degree 2.
    const auto diag = homology_of(TwoCellModel{2, IntMatrix{{p * p, 0}, {0, 1}}}, 3, 2);
    CHECK(diag.rank == 3);
    CHECK(diag.torsion.empty());
    const auto report = verify_loop_homology(TwoCellModel{2, IntMatrix{{0, p}, {p, 0}}}, 4);
    CHECK(report.passed());
    CHECK(report.allowed_torsion_primes == ints({p}));
  }
  // Torsion at a prime outside the allowed set is flagged.
  VerificationReport r = verify_loop_homology(TwoCellModel{2, IntMatrix{{0, 6}, {6, 0}}}, 4);
  CHECK(r.passed());
  CHECK(r.allowed_torsion_primes == ints({2, 3}));
}

TEST_CASE("limits") {
  CHECK_THROWS_AS(ChainComplex(coalgebra_of(ManifoldModel{2, 3, {}}), 17), CapacityError);
  CHECK_THROWS_AS(ChainComplex(coalgebra_of(ManifoldModel{2, 3, {}}), 10, CobarLimits{1000, 16}), CapacityError);
  CHECK_THROWS(verify_loop_homology(ManifoldModel{2, 2, {}}, 1));
}

TEST_CASE("cell count matches the built complex") {
  for (const SpaceModel& s : {SpaceModel{ManifoldModel{2, 3, {}}}, SpaceModel{ConnectedSumModel{{{2, 3}, {2, 3}}, {}}},
                              SpaceModel{BettiOneModel{4, 0}}, SpaceModel{ManifoldModel{3, 4, {}}}})
    for (int cutoff : {3, 6, 9}) {
      const auto c = coalgebra_of(s);
      CHECK(cobar_cell_count(c, cutoff) == ChainComplex(c, cutoff).total_cells());
    }
}
