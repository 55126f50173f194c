#include <doctest.h>

#include <set>

#include "looptop/lyndon.hpp"
#include "looptop/ncalgebra.hpp"
#include "looptop/normal_form.hpp"
#include "looptop/series.hpp"
#include "oracles.hpp"

using namespace looptop;

namespace {

NormalizedRelation normalized(const SpaceModel& s) {
  const auto [alphabet, rel] = relation_from_space(s);
  return normalize_relation(alphabet, rel);
}

long long necklace_count(int r, int n) {
  long long acc = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long long p = 1;
    for (int k = 0; k < n / d; ++k) p *= r;
    acc += moebius_mu(d) * p;
  }
  return acc / n;
}

std::vector<Word> labels(const std::vector<LieBasisElement>& elems) {
  std::vector<Word> out;
  for (const auto& e : elems) out.push_back(e.lyndon);
  return out;
}

}  // namespace

TEST_CASE("Lyndon predicate matches rotations") {
  oracle::all_words({1, 1, 1}, 7, [](const Word& w, int) { CHECK(is_lyndon(w) == oracle::lyndon_by_rotation(w)); });
  CHECK_FALSE(is_lyndon({}));
}

TEST_CASE("Lyndon generation") {
  const auto two = generate_lyndon(Alphabet::uniform(2, 1), 3);
  CHECK(two.at(1) == std::vector<Word>{{0}, {1}});
  CHECK(two.at(2) == std::vector<Word>{{0, 1}});
  CHECK(two.at(3) == std::vector<Word>{{0, 0, 1}, {0, 1, 1}});
  CHECK(generate_lyndon(Alphabet::uniform(3, 1), 3).at(3).size() == 8);
  const auto one = generate_lyndon(Alphabet::uniform(1, 1), 5);
  CHECK(one.size() == 1);
  CHECK(one.at(1) == std::vector<Word>{{0}});
  for (int r = 2; r <= 4; ++r) {
    const auto g = generate_lyndon(Alphabet::uniform(r, 1), 7);
    for (int n = 1; n <= 7; ++n) {
      CHECK(static_cast<long long>(g.at(n).size()) == necklace_count(r, n));
      CHECK(std::is_sorted(g.at(n).begin(), g.at(n).end()));
    }
  }
  const Alphabet mixed({1, 2, 1});
  const auto gm = generate_lyndon(mixed, 7);
  const auto brute = oracle::lyndon_counts(mixed.degrees(), {}, 7);
  for (const auto& [d, c] : brute) CHECK(static_cast<long long>(gm.at(d).size()) == c);
}

TEST_CASE("avoiding enumeration and counts") {
  for (const auto& degrees : std::vector<std::vector<int>>{{1, 1, 1}, {1, 1, 1, 1}, {1, 2, 1, 2}, {2, 1, 3}}) {
    const Alphabet a(degrees);
    const auto listed = lyndon_avoiding(a, {0, 1}, 8);
    const auto counts = count_lyndon_avoiding(a, {0, 1}, 8);
    const auto brute = oracle::lyndon_counts(degrees, {0, 1}, 8);
    for (int d = 1; d <= 8; ++d) {
      const auto it = brute.find(d);
      const long long expected = it == brute.end() ? 0 : it->second;
      const auto lt = listed.find(d);
      CHECK(static_cast<long long>(lt == listed.end() ? 0 : lt->second.size()) == expected);
      CHECK(static_cast<long long>(counts[d]) == expected);
    }
  }
  const auto h = lyndon_avoiding(Alphabet::uniform(2, 1), {0, 1}, 6);
  CHECK(h.at(1) == std::vector<Word>{{0}, {1}});
  for (int d = 2; d <= 6; ++d) CHECK(h.count(d) == 0);
}

TEST_CASE("standard factorization") {
  CHECK(standard_factorization({0, 1}) == std::pair<Word, Word>{{0}, {1}});
  CHECK(standard_factorization({0, 0, 1}) == std::pair<Word, Word>{{0}, {0, 1}});
  CHECK(standard_factorization({0, 0, 1, 1}) == std::pair<Word, Word>{{0}, {0, 1, 1}});
  CHECK(standard_factorization({0, 1, 0, 1, 1}) == std::pair<Word, Word>{{0, 1}, {0, 1, 1}});
  for (const auto& [d, ws] : generate_lyndon(Alphabet::uniform(3, 1), 6))
    for (const auto& w : ws) {
      if (w.size() < 2) continue;
      const auto [u, v] = standard_factorization(w);
      CHECK(oracle::lyndon_by_rotation(u));
      CHECK(oracle::lyndon_by_rotation(v));
      CHECK(u < v);
      Word joined = u;
      joined.insert(joined.end(), v.begin(), v.end());
      CHECK(joined == w);
      // v is the longest proper Lyndon suffix
      for (std::size_t k = 1; k < w.size() - v.size(); ++k)
        CHECK_FALSE(oracle::lyndon_by_rotation(Word(w.begin() + static_cast<long>(k), w.end())));
    }
}

TEST_CASE("bracket expansion") {
  const Alphabet a = Alphabet::uniform(2, 1);
  CHECK(bracket_expand(a, {0, 1}) == TensorElement(a, {0, 1}) - TensorElement(a, {1, 0}));
  const auto b = bracket_expand(a, {0, 0, 1});
  CHECK(b.coefficient({0, 0, 1}) == 1);
  CHECK(b.coefficient({0, 1, 0}) == -2);
  CHECK(b.coefficient({1, 0, 0}) == 1);
  CHECK(b.terms().size() == 3);
  CHECK(bracket_expand(a, {1}) == TensorElement(a, {1}));
  CHECK(bracket_string({0, 0, 1}, {"α₁", "α₂"}) == "[α₁,[α₁,α₂]]");
  CHECK(bracket_string({1}, {"α₁", "α₂"}) == "α₂");
  for (const auto& [d, ws] : generate_lyndon(Alphabet::uniform(3, 1), 6))
    for (const auto& w : ws) {
      const auto e = bracket_expand(Alphabet::uniform(3, 1), w);
      REQUIRE_FALSE(e.zero());
      CHECK(e.terms().begin()->first == w);
      CHECK(e.terms().begin()->second == 1);
    }
}

TEST_CASE("Lie basis witnesses") {
  const auto nr = normalized(ManifoldModel{2, 3, {}});
  const auto basis = lie_basis(nr, 3);
  CHECK(labels(basis.at(3)) == std::vector<Word>{{0, 0, 2}, {0, 2, 1}, {0, 2, 2}, {1, 1, 2}, {1, 2, 2}});
  const auto t = normalized(ConnectedSumModel{{{2, 3}, {2, 3}}, {}});
  const auto tb = lie_basis(t, 3);
  // letters: a1 = 0, b1 = 1, a2 = 2, b2 = 3
  CHECK(labels(tb.at(2)) == std::vector<Word>{{0, 2}, {1}, {3}});
  CHECK(labels(tb.at(3)) == std::vector<Word>{{0, 0, 2}, {0, 2, 2}, {0, 3}, {1, 2}, {2, 3}});
  CHECK(labels(lie_basis(normalized(ManifoldModel{2, 2, {}}), 6).at(1)).size() == 2);
  CHECK(lie_basis(normalized(ManifoldModel{2, 2, {}}), 6).size() == 1);
}

TEST_CASE("Lie basis counts match the PBW pipelines") {
  for (int n = 2; n <= 4; ++n)
    for (int r = 2; r <= 5; ++r) {
      if (n % 2 == 1 && r % 2 == 1) continue;
      const int D = 6 * (n - 1);
      const auto nr = normalized(ManifoldModel{n, r, {}});
      const auto basis = lie_basis(nr, D);
      const auto l = moebius_invert_dims(log_lambda_coefficients(manifold_denominator(n, r, D), D), D);
      for (int d = 1; d <= D; ++d) {
        const auto it = basis.find(d);
        CHECK(Integer(static_cast<long>(it == basis.end() ? 0 : it->second.size())) == l.at(d));
      }
    }
}

TEST_CASE("reduced brackets are independent") {
  for (const SpaceModel& s : {SpaceModel{ManifoldModel{2, 3, {}}}, SpaceModel{ManifoldModel{2, 3, IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}},
                              SpaceModel{ConnectedSumModel{{{2, 3}, {2, 3}}, {1, -1}}}}) {
    const auto nr = normalized(s);
    const RewriteSystem rs(nr);
    const auto basis = lie_basis(nr, 6);
    for (const auto& [d, elems] : basis) {
      std::vector<TensorElement> reduced;
      std::set<Word> support;
      for (const auto& e : elems) {
        reduced.push_back(reduce(e.bracket, rs));
        CHECK_FALSE(reduced.back().zero());
        for (const auto& [w, c] : reduced.back().terms()) support.insert(w);
      }
      const std::vector<Word> cols(support.begin(), support.end());
      std::vector<std::vector<Rational>> rows;
      for (const auto& e : reduced) {
        std::vector<Rational> row;
        for (const auto& w : cols) row.push_back(e.coefficient(w));
        rows.push_back(std::move(row));
      }
      CHECK(oracle::rational_rank(rows) == elems.size());
    }
  }
}

TEST_CASE("relation denominator") {
  CHECK(relation_denominator(Alphabet::uniform(3, 1), 4) == manifold_denominator(2, 3, 4));
  CHECK(relation_denominator(Alphabet({1, 2, 1, 2}), 6) == connected_sum_denominator({{2, 3}, {2, 3}}, 6));
}
