#pragma once

// Truncated power series over the rationals and the counting machinery built
// on them: logarithm coefficients, Moebius inversion of PBW products, and the
// graded and ungraded coefficient matchers.

#include "looptop/common.hpp"

#include <map>
#include <utility>
#include <vector>

namespace looptop {

/// Coefficients c_0..c_N of a power series modulo t^{N+1}.
class PowerSeries {
 public:
  explicit PowerSeries(int truncation_order);
  PowerSeries(std::vector<Rational> coefficients, int truncation_order);

  /// Sum of c * t^k over the given terms, truncated at N.
  static PowerSeries polynomial(const std::vector<std::pair<int, Rational>>& terms, int truncation_order);

  int order() const { return order_; }
  const Rational& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Rational& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Re-truncate to a smaller order.
  PowerSeries truncated(int truncation_order) const;

  PowerSeries& operator+=(const PowerSeries& other);
  PowerSeries& operator-=(const PowerSeries& other);
  PowerSeries& operator*=(const PowerSeries& other);
  PowerSeries& operator*=(const Rational& scalar);

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, const PowerSeries& b) { return a *= b; }
  friend PowerSeries operator*(PowerSeries a, const Rational& s) { return a *= s; }
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  /// Multiplicative inverse; requires a nonzero constant term.
  PowerSeries inverse() const;
  /// log via log(1 - u) = -sum u^k / k; requires constant term 1.
  PowerSeries log() const;
  /// exp via sum s^k / k!; requires constant term 0.
  PowerSeries exp() const;

 private:
  void check_compatible(const PowerSeries& other) const;

  int order_;
  std::vector<Rational> coeffs_;
};

/// Nonnegative integer dimensions indexed by degree 1..max_degree. Degrees
/// absent from the map have dimension zero.
struct DimensionTable {
  std::map<int, Integer> dims;
  int max_degree = 0;

  Integer at(int degree) const;
  void set(int degree, const Integer& value);
  /// Sum of dims over degrees <= degree.
  Integer partial_sum(int degree) const;
  /// Largest degree with a nonzero entry, or 0.
  int support_max() const;

  friend bool operator==(const DimensionTable& a, const DimensionTable& b);
};

/// Classical Moebius function; m = 0 is rejected.
int moebius_mu(long long m);

/// Coefficients lambda_m of log(denominator) for 1 <= m <= N.
PowerSeries log_lambda_coefficients(const PowerSeries& denominator, int N);

/// l_m = -sum_{d|m} mu(d) lambda_{m/d} / d; throws IntegrityError unless every
/// l_m is a nonnegative integer.
DimensionTable moebius_invert_dims(const PowerSeries& lambda, int N);

/// Unique l_d with prod_d (1 - t^d)^{-l_d} = H mod t^{N+1}.
DimensionTable pbw_match_ungraded(const PowerSeries& hilbert, int N);

/// Unique m_i with prod_{odd} (1 + t^i)^{m_i} / prod_{even} (1 - t^i)^{m_i} = H.
DimensionTable pbw_match_graded(const PowerSeries& hilbert, int N);

/// Denominator 1 - r t^{n-1} + t^{2n-2} of the loop-homology series of an
/// (n-1)-connected 2n-manifold with middle Betti number r.
PowerSeries manifold_denominator(int n, int r, int N);

/// Denominator 1 - sum (t^{p_i-1} + t^{q_i-1}) + t^{n-2} for a connected sum of
/// sphere products with the given factor dimensions.
PowerSeries connected_sum_denominator(const std::vector<std::pair<int, int>>& factors, int N);

/// Binomial coefficient in big integers (multiplicative formula).
Integer binomial(long long n, long long k);

/// Inner sum  sum_{a+2b=k} (-1)^b C(a+b,b) r^a / (a+b)  for k >= 1.
Rational htpy_inner_sum(int k, int r);

/// Lie algebra dimension at weight d (degree d(n-1)) by the closed Moebius
/// formula: sum_{c|d} mu(c)/c * htpy_inner_sum(d/c, r).
Rational htpy_closed_form(int d, int r);

/// Rational homotopy ranks m_j for j <= N from the closed formula, checked
/// against pbw_match_graded of 1/(1 - r t^{n-1} + t^{2n-2}).
DimensionTable rational_ranks_closed_form(int n, int r, int N);

/// Number of pi_* S^l summands in pi_* M(n, r) for l <= max_dim. Only
/// dimensions of the form d(n-1)+1 are keys.
std::map<int, Integer> sphere_summand_counts(int n, int r, int max_dim);

/// Exact enclosure [lo, hi] of a real number.
struct Enclosure {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

/// (a + b * sqrt(c)) / 2 with c squarefree and positive.
struct QuadraticSurd {
  Integer a;
  Integer b;
  Integer c;

  /// Enclosure with width at most 10^-digits.
  Enclosure enclose(int digits = 15) const;
  /// Decimal rendering truncated to the given number of places.
  std::string decimal(int places = 10) const;
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

/// Exponential growth rate (r + sqrt(r^2 - 4)) / 2 of the Lie algebra
/// dimensions for r >= 3.
QuadraticSurd growth_rate(int r);

}  // namespace looptop
