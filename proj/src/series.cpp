#include "looptop/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace looptop {

std::string to_string(const Integer& z) { return z.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

PowerSeries::PowerSeries(int truncation_order) : order_(truncation_order) {
  if (truncation_order < 0) throw std::invalid_argument("negative truncation order");
  coeffs_.assign(static_cast<std::size_t>(truncation_order) + 1, Rational(0));
}

PowerSeries::PowerSeries(std::vector<Rational> coefficients, int truncation_order)
    : PowerSeries(truncation_order) {
  const auto n = std::min(coefficients.size(), coeffs_.size());
  for (std::size_t k = 0; k < n; ++k) coeffs_[k] = coefficients[k];
}

PowerSeries PowerSeries::polynomial(const std::vector<std::pair<int, Rational>>& terms, int truncation_order) {
  PowerSeries s(truncation_order);
  for (const auto& [k, c] : terms) {
    if (k < 0) throw std::invalid_argument("negative exponent");
    if (k <= truncation_order) s[k] += c;
  }
  return s;
}

PowerSeries PowerSeries::truncated(int truncation_order) const {
  if (truncation_order > order_) throw std::invalid_argument("cannot extend a truncated series");
  return PowerSeries(coeffs_, truncation_order);
}

void PowerSeries::check_compatible(const PowerSeries& other) const {
  if (order_ != other.order_) throw std::invalid_argument("power series truncation orders differ");
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

PowerSeries& PowerSeries::operator*=(const PowerSeries& other) {
  check_compatible(other);
  std::vector<Rational> out(coeffs_.size());
  for (int i = 0; i <= order_; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; i + j <= order_; ++j) {
      if (other.coeffs_[j] == 0) continue;
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

PowerSeries PowerSeries::inverse() const {
  if (coeffs_[0] == 0) throw std::invalid_argument("series with zero constant term is not invertible");
  PowerSeries inv(order_);
  inv[0] = 1 / coeffs_[0];
  for (int k = 1; k <= order_; ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j) acc += coeffs_[j] * inv[k - j];
    inv[k] = -acc / coeffs_[0];
  }
  return inv;
}

PowerSeries PowerSeries::log() const {
  if (coeffs_[0] != 1) throw std::invalid_argument("log requires constant term 1");
  // u = 1 - H has zero constant term, so u^k vanishes below t^k.
  PowerSeries u(order_);
  for (int k = 1; k <= order_; ++k) u[k] = -coeffs_[k];
  PowerSeries result(order_);
  PowerSeries power = u;
  for (int k = 1; k <= order_; ++k) {
    for (int j = k; j <= order_; ++j) result[j] -= power[j] / Rational(k);
    power *= u;
  }
  return result;
}

PowerSeries PowerSeries::exp() const {
  if (coeffs_[0] != 0) throw std::invalid_argument("exp requires constant term 0");
  PowerSeries result(order_);
  result[0] = 1;
  PowerSeries term(order_);
  term[0] = 1;
  for (int k = 1; k <= order_; ++k) {
    term *= *this;
    term *= Rational(1, k);
    result += term;
  }
  return result;
}

Integer DimensionTable::at(int degree) const {
  auto it = dims.find(degree);
  return it == dims.end() ? Integer(0) : it->second;
}

void DimensionTable::set(int degree, const Integer& value) {
  if (value < 0) throw IntegrityError("negative dimension at degree " + std::to_string(degree));
  if (value == 0)
    dims.erase(degree);
  else
    dims[degree] = value;
}

Integer DimensionTable::partial_sum(int degree) const {
  Integer total = 0;
  for (const auto& [d, v] : dims)
    if (d <= degree) total += v;
  return total;
}

int DimensionTable::support_max() const { return dims.empty() ? 0 : dims.rbegin()->first; }

bool operator==(const DimensionTable& a, const DimensionTable& b) {
  return a.max_degree == b.max_degree && a.dims == b.dims;
}

int moebius_mu(long long m) {
  if (m <= 0) throw std::invalid_argument("moebius_mu: argument must be positive");
  int sign = 1;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

PowerSeries log_lambda_coefficients(const PowerSeries& denominator, int N) {
  if (N < 1) throw std::invalid_argument("log_lambda_coefficients: N must be >= 1");
  if (denominator.order() < N) throw std::invalid_argument("denominator truncated below N");
  if (denominator[0] != 1) throw std::invalid_argument("log_lambda_coefficients: constant term must be 1");
  return denominator.truncated(N).log();
}

namespace {

Integer require_nonnegative_integer(const Rational& q, int degree, const char* what) {
  if (!is_integer(q) || q < 0) {
    throw IntegrityError(std::string(what) + ": degree " + std::to_string(degree) +
                         " gives non-integral or negative value " + q.get_str());
  }
  return q.get_num();
}

// Shared degree-by-degree matcher. `odd_exterior` selects (1 + t^d) factors
// on odd degrees; otherwise every factor is (1 - t^d)^{-1}.
DimensionTable pbw_match(const PowerSeries& hilbert, int N, bool odd_exterior, const char* what) {
  if (N < 1) throw std::invalid_argument(std::string(what) + ": N must be >= 1");
  if (hilbert.order() < N) throw std::invalid_argument(std::string(what) + ": series truncated below N");
  if (hilbert[0] != 1) throw std::invalid_argument(std::string(what) + ": constant term must be 1");
  for (int k = 0; k <= N; ++k)
    if (!is_integer(hilbert[k]) || hilbert[k] < 0)
      throw std::invalid_argument(std::string(what) + ": coefficients must be nonnegative integers");

  DimensionTable table;
  table.max_degree = N;
  std::vector<Integer> product(static_cast<std::size_t>(N) + 1, 0);
  product[0] = 1;
  for (int d = 1; d <= N; ++d) {
    // Factors for degrees < d do not touch the t^d coefficient's freedom:
    // the new factor contributes exactly +count at t^d.
    const Integer count = hilbert[d].get_num() - product[d];
    if (count < 0) {
      throw IntegrityError(std::string(what) + ": matching forces a negative dimension at degree " +
                           std::to_string(d) + "; input is not a PBW Hilbert series");
    }
    table.set(d, count);
    if (count == 0) continue;
    const bool exterior = odd_exterior && (d % 2 == 1);
    // Multiply product by (1 + t^d)^count or (1 - t^d)^{-count}.
    std::vector<Integer> factor(static_cast<std::size_t>(N) + 1, 0);
    for (int k = 0; k * d <= N; ++k) {
      if (exterior) {
        if (count < k) break;
        factor[k * d] = binomial(count.get_si(), k);
      } else {
        // coefficient of t^{kd} in (1 - t^d)^{-c} is C(c + k - 1, k)
        Integer c = count;
        Integer num = 1;
        for (int i = 0; i < k; ++i) num *= (c + i);
        Integer den = 1;
        for (int i = 2; i <= k; ++i) den *= i;
        factor[k * d] = num / den;
      }
    }
    std::vector<Integer> next(static_cast<std::size_t>(N) + 1, 0);
    for (int i = 0; i <= N; ++i) {
      if (product[i] == 0) continue;
      for (int j = 0; i + j <= N; j += d) next[i + j] += product[i] * factor[j];
    }
    product = std::move(next);
  }
  return table;
}

}  // namespace

DimensionTable moebius_invert_dims(const PowerSeries& lambda, int N) {
  if (N < 1) throw std::invalid_argument("moebius_invert_dims: N must be >= 1");
  if (lambda.order() < N) throw std::invalid_argument("moebius_invert_dims: lambda truncated below N");
  DimensionTable table;
  table.max_degree = N;
  for (int m = 1; m <= N; ++m) {
    Rational acc = 0;
    for (int d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const int mu = moebius_mu(d);
      if (mu == 0) continue;
      acc += Rational(mu, d) * lambda[m / d];
    }
    table.set(m, require_nonnegative_integer(-acc, m, "moebius_invert_dims"));
  }
  return table;
}

DimensionTable pbw_match_ungraded(const PowerSeries& hilbert, int N) {
  return pbw_match(hilbert, N, false, "pbw_match_ungraded");
}

DimensionTable pbw_match_graded(const PowerSeries& hilbert, int N) {
  return pbw_match(hilbert, N, true, "pbw_match_graded");
}

PowerSeries manifold_denominator(int n, int r, int N) {
  if (n < 2) throw std::invalid_argument("manifold_denominator: n must be >= 2");
  return PowerSeries::polynomial({{0, 1}, {n - 1, -r}, {2 * n - 2, 1}}, N);
}

PowerSeries connected_sum_denominator(const std::vector<std::pair<int, int>>& factors, int N) {
  if (factors.empty()) throw std::invalid_argument("connected sum needs at least one factor");
  const int n = factors.front().first + factors.front().second;
  std::vector<std::pair<int, Rational>> terms{{0, 1}, {n - 2, 1}};
  for (const auto& [p, q] : factors) {
    if (p + q != n) throw std::invalid_argument("connected sum factors must have equal dimension");
    terms.emplace_back(p - 1, -1);
    terms.emplace_back(q - 1, -1);
  }
  return PowerSeries::polynomial(terms, N);
}

Integer binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

Rational htpy_inner_sum(int k, int r) {
  if (k < 1) throw std::invalid_argument("htpy_inner_sum: k must be >= 1");
  Rational acc = 0;
  for (int b = 0; 2 * b <= k; ++b) {
    const int a = k - 2 * b;
    Integer ra;
    mpz_pow_ui(ra.get_mpz_t(), Integer(r).get_mpz_t(), static_cast<unsigned long>(a));
    Rational term(binomial(a + b, b) * ra, Integer(a + b));
    term.canonicalize();
    if (b % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

Rational htpy_closed_form(int d, int r) {
  Rational acc = 0;
  for (int c = 1; c <= d; ++c) {
    if (d % c != 0) continue;
    const int mu = moebius_mu(c);
    if (mu == 0) continue;
    acc += Rational(mu, c) * htpy_inner_sum(d / c, r);
  }
  return acc;
}

DimensionTable rational_ranks_closed_form(int n, int r, int N) {
  if (n < 2) throw std::invalid_argument("rational_ranks_closed_form: n must be >= 2");
  if (r < 2) throw std::invalid_argument("rational_ranks_closed_form: r must be >= 2");
  if (N < 1) throw std::invalid_argument("rational_ranks_closed_form: N must be >= 1");
  DimensionTable table;
  table.max_degree = N;
  const int step = n - 1;
  for (int d = 1; d * step <= N; ++d) {
    const int j = d * step;
    Rational acc = 0;
    for (int c = 1; c <= d; ++c) {
      if (d % c != 0) continue;
      const int mu = moebius_mu(c);
      if (mu == 0) continue;
      Rational term = Rational(mu, c) * htpy_inner_sum(d / c, r);
      if ((j / c) % 2 != 0) term = -term;
      acc += term;
    }
    if (j % 2 != 0) acc = -acc;
    table.set(j, require_nonnegative_integer(acc, j, "rational_ranks_closed_form"));
  }
  const DimensionTable matched = pbw_match_graded(manifold_denominator(n, r, N).inverse(), N);
  if (!(matched == table)) {
    throw IntegrityError("rational_ranks_closed_form: closed form disagrees with graded PBW matching");
  }
  return table;
}

std::map<int, Integer> sphere_summand_counts(int n, int r, int max_dim) {
  if (n < 2) throw std::invalid_argument("sphere_summand_counts: n must be >= 2");
  if (r < 2) throw std::invalid_argument("sphere_summand_counts: r must be >= 2 (r = 1 is the Betti-one case)");
  std::map<int, Integer> counts;
  const int top_degree = max_dim - 1;
  if (top_degree < 1) return counts;
  const DimensionTable inverted =
      moebius_invert_dims(log_lambda_coefficients(manifold_denominator(n, r, top_degree), top_degree), top_degree);
  const int step = n - 1;
  for (int d = 1; d * step + 1 <= max_dim; ++d) {
    const Rational closed = htpy_closed_form(d, r);
    const Integer value = require_nonnegative_integer(closed, d * step, "sphere_summand_counts");
    if (value != inverted.at(d * step)) {
      throw IntegrityError("sphere_summand_counts: closed form and Moebius inversion disagree at weight " +
                           std::to_string(d));
    }
    counts[d * step + 1] = value;
  }
  for (const auto& [degree, value] : inverted.dims) {
    if (degree % step != 0)
      throw IntegrityError("sphere_summand_counts: Lie dimension off the support at degree " + std::to_string(degree));
  }
  return counts;
}

namespace {

Integer pow10(int k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return p;
}

Integer isqrt(const Integer& x) {
  Integer s;
  mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
  return s;
}

}  // namespace

Enclosure QuadraticSurd::enclose(int digits) const {
  const Integer scale = pow10(digits);
  const Integer s = isqrt(b * b * c * scale * scale);
  const Integer base = a * scale + s;
  Enclosure e{Rational(base, 2 * scale), Rational(base + 1, 2 * scale)};
  e.lo.canonicalize();
  e.hi.canonicalize();
  return e;
}

std::string QuadraticSurd::decimal(int places) const {
  const Integer scale = pow10(places);
  const Integer s = isqrt(b * b * c * scale * scale);
  Integer v = (a * scale + s) / 2;
  std::string digits = v.get_str();
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return digits;
}

QuadraticSurd growth_rate(int r) {
  if (r < 3) throw std::invalid_argument("growth_rate: r must be >= 3 (r = 2 is the elliptic boundary)");
  long long disc = static_cast<long long>(r) * r - 4;
  long long square = 1;
  for (long long f = 2; f * f <= disc; ++f) {
    while (disc % (f * f) == 0) {
      disc /= f * f;
      square *= f;
    }
  }
  return QuadraticSurd{Integer(r), Integer(static_cast<long>(square)), Integer(static_cast<long>(disc))};
}

}  // namespace looptop
