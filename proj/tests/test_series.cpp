#include <doctest.h>

#include "looptop/series.hpp"
#include "oracles.hpp"

using namespace looptop;

namespace {

PowerSeries poly(std::vector<std::pair<int, Rational>> terms, int N) { return PowerSeries::polynomial(terms, N); }

std::vector<Integer> integer_coeffs(const PowerSeries& s) {
  std::vector<Integer> out;
  for (const auto& c : s.coefficients()) {
    REQUIRE(is_integer(c));
    out.push_back(c.get_num());
  }
  return out;
}

std::map<int, Integer> as_map(const DimensionTable& t) { return t.dims; }

}  // namespace

TEST_CASE("moebius function") {
  CHECK(moebius_mu(1) == 1);
  CHECK(moebius_mu(6) == 1);
  CHECK(moebius_mu(12) == 0);
  CHECK(moebius_mu(30) == -1);
  CHECK(moebius_mu(7) == -1);
  CHECK_THROWS(moebius_mu(0));
}

TEST_CASE("log coefficients") {
  const auto l1 = log_lambda_coefficients(poly({{0, 1}, {1, -1}}, 3), 3);
  CHECK(l1[1] == Rational(-1));
  CHECK(l1[2] == Rational(-1, 2));
  CHECK(l1[3] == Rational(-1, 3));
  const auto l2 = log_lambda_coefficients(poly({{0, 1}, {1, -2}, {2, 1}}, 2), 2);
  CHECK(l2[1] == -2);
  CHECK(l2[2] == -1);
  const auto l3 = log_lambda_coefficients(poly({{0, 1}, {1, -3}, {2, 1}}, 2), 2);
  CHECK(l3[1] == -3);
  CHECK(l3[2] == Rational(-7, 2));
  CHECK_THROWS(log_lambda_coefficients(poly({{0, 2}}, 3), 3));
}

TEST_CASE("log then exp round-trips") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    PowerSeries s(9);
    s[0] = 1;
    for (int k = 1; k <= 9; ++k) {
      s[k] = Rational(c(rng), 1 + (trial % 3));
      s[k].canonicalize();
    }
    CHECK(s.log().exp() == s);
  }
}

TEST_CASE("truncation order is preserved and checked") {
  const auto a = poly({{0, 1}, {1, 1}}, 4);
  const auto b = poly({{0, 1}, {1, 1}}, 5);
  CHECK_THROWS(a * b);
  CHECK((a * a).order() == 4);
  CHECK(a.inverse().order() == 4);
  CHECK_THROWS(a.truncated(5));
}

TEST_CASE("moebius inversion examples") {
  const auto l = moebius_invert_dims(log_lambda_coefficients(manifold_denominator(2, 3, 3), 3), 3);
  CHECK(l.at(1) == 3);
  CHECK(l.at(2) == 2);
  CHECK(l.at(3) == 5);
  const auto ab = moebius_invert_dims(log_lambda_coefficients(manifold_denominator(2, 2, 10), 10), 10);
  CHECK(ab.at(1) == 2);
  for (int d = 2; d <= 10; ++d) CHECK(ab.at(d) == 0);
  const auto one = moebius_invert_dims(log_lambda_coefficients(poly({{0, 1}, {1, -1}}, 8), 8), 8);
  CHECK(one.dims == std::map<int, Integer>{{1, 1}});
}

TEST_CASE("moebius inversion matches brute-force Lyndon counts") {
  for (int r = 2; r <= 4; ++r) {
    const int D = r == 2 ? 10 : (r == 3 ? 7 : 6);
    const auto l = moebius_invert_dims(log_lambda_coefficients(manifold_denominator(2, r, D), D), D);
    const auto brute = oracle::lyndon_counts(std::vector<int>(static_cast<std::size_t>(r), 1), Word{0, 1}, D);
    for (int d = 1; d <= D; ++d) {
      const auto it = brute.find(d);
      CHECK(l.at(d) == Integer(it == brute.end() ? 0L : it->second));
    }
  }
}

TEST_CASE("ungraded PBW matching") {
  const auto h = manifold_denominator(2, 3, 6).inverse();
  CHECK(pbw_match_ungraded(h, 6) == moebius_invert_dims(log_lambda_coefficients(manifold_denominator(2, 3, 6), 6), 6));
  const auto sq = (poly({{0, 1}, {1, -1}}, 8) * poly({{0, 1}, {1, -1}}, 8)).inverse();
  CHECK(as_map(pbw_match_ungraded(sq, 8)) == std::map<int, Integer>{{1, 2}});
  const auto cs = connected_sum_denominator({{2, 3}, {2, 3}}, 6).inverse();
  CHECK(integer_coeffs(cs)[3] == 15);
  const auto l = pbw_match_ungraded(cs, 3);
  CHECK(l.at(1) == 2);
  CHECK(l.at(2) == 3);
  CHECK(l.at(3) == 5);
  CHECK_THROWS_AS(pbw_match_ungraded(poly({{0, 1}, {2, 1}}, 4), 4), IntegrityError);
}

TEST_CASE("graded PBW matching") {
  const auto h = manifold_denominator(2, 3, 2).inverse();
  const auto m = pbw_match_graded(h, 2);
  CHECK(m.at(1) == 3);
  CHECK(m.at(2) == 5);
  CHECK(as_map(pbw_match_graded(poly({{0, 1}, {1, 1}}, 6), 6)) == std::map<int, Integer>{{1, 1}});
  // 1/(1-t)^2 = (1+t)^2 / (1-t^2)^2, so m1 = m2 = 2 and nothing above.
  const auto ell = pbw_match_graded(manifold_denominator(2, 2, 10).inverse(), 10);
  CHECK(ell.at(1) == 2);
  CHECK(ell.at(2) == 2);
  for (int d = 3; d <= 10; ++d) CHECK(ell.at(d) == 0);
}

TEST_CASE("PBW matchers agree with a naive product oracle") {
  for (int n = 2; n <= 5; ++n)
    for (int r = 2; r <= 6; ++r) {
      const auto h = manifold_denominator(n, r, 12).inverse();
      const auto hc = integer_coeffs(h);
      CHECK(as_map(pbw_match_ungraded(h, 12)) == oracle::naive_pbw(hc, false));
      CHECK(as_map(pbw_match_graded(h, 12)) == oracle::naive_pbw(hc, true));
    }
}

TEST_CASE("rational ranks closed form") {
  const auto t = rational_ranks_closed_form(2, 3, 2);
  CHECK(t.at(1) == 3);
  CHECK(t.at(2) == 5);
  const auto e = rational_ranks_closed_form(2, 2, 10);
  for (int d = 3; d <= 10; ++d) CHECK(e.at(d) == 0);
  const auto s3 = rational_ranks_closed_form(3, 2, 10);
  CHECK(as_map(s3) == std::map<int, Integer>{{2, 2}});
  CHECK_THROWS(rational_ranks_closed_form(2, 1, 5));
}

TEST_CASE("sphere summand counts") {
  const auto c = sphere_summand_counts(2, 3, 4);
  CHECK(c == std::map<int, Integer>{{2, 3}, {3, 2}, {4, 5}});
  const auto ab = sphere_summand_counts(2, 2, 12);
  for (const auto& [dim, count] : ab) CHECK((dim == 2 ? count == 2 : count == 0));
  for (const auto& [dim, count] : sphere_summand_counts(4, 3, 13)) CHECK((dim - 1) % 3 == 0);
  CHECK_THROWS(sphere_summand_counts(2, 1, 4));
}

TEST_CASE("closed form matches brute-force counts on weights") {
  for (int r = 2; r <= 4; ++r) {
    const auto brute = oracle::lyndon_counts(std::vector<int>(static_cast<std::size_t>(r), 1), Word{0, 1}, 6);
    for (int d = 1; d <= 6; ++d) {
      const auto it = brute.find(d);
      CHECK(htpy_closed_form(d, r) == Rational(it == brute.end() ? 0L : it->second));
    }
  }
}

TEST_CASE("growth rate") {
  const auto g3 = growth_rate(3);
  CHECK(g3 == QuadraticSurd{3, 1, 5});
  const auto e = g3.enclose(15);
  CHECK(e.lo > Rational(26180, 10000));
  CHECK(e.hi < Rational(26181, 10000));
  CHECK(e.width() <= Rational(1, 1000));
  // 2 + sqrt 3 is (4 + 2 sqrt 3) / 2
  CHECK(growth_rate(4) == QuadraticSurd{4, 2, 3});
  CHECK(g3.decimal(4) == "2.6180");
  CHECK_THROWS(growth_rate(2));
}

TEST_CASE("partial sums grow like the growth rate") {
  for (int r = 3; r <= 6; ++r) {
    const auto l = moebius_invert_dims(log_lambda_coefficients(manifold_denominator(2, r, 12), 12), 12);
    const auto e = growth_rate(r).enclose(10);
    // l_d is about g^d / d, so c = 1/20 covers D <= 12.
    Rational power = 1;
    for (int D = 1; D <= 12; ++D) {
      power *= e.hi;
      CHECK(Rational(l.partial_sum(D)) >= power / 20);
    }
  }
}

TEST_CASE("integrality violations are errors") {
  PowerSeries bad(3);
  bad[1] = Rational(1, 2);
  CHECK_THROWS_AS(moebius_invert_dims(bad, 3), IntegrityError);
}
