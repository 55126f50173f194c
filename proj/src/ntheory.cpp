#include "looptop/ntheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace looptop {

namespace {

bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Integer rho_factor(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1, q = 1, ys;
    auto step = [&](const Integer& v) {
      Integer w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    std::size_t power = 1, lam = 0;
    const std::size_t batch = 64;
    while (d == 1) {
      x = y;
      for (std::size_t i = 0; i < power; ++i) y = step(y);
      lam = 0;
      while (lam < power && d == 1) {
        ys = y;
        for (std::size_t i = 0; i < std::min(batch, power - lam); ++i) {
          y = step(y);
          Integer diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        lam += batch;
      }
      power *= 2;
    }
    if (d == n) {
      // batch overshot: retrace one step at a time
      do {
        ys = step(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  const Integer f = rho_factor(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

std::map<Integer, int> factorize(const Integer& value) {
  if (value == 0) throw std::invalid_argument("factorize: zero has no factorization");
  Integer n = abs(value);
  std::map<Integer, int> out;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n > 1) factor_into(n, out);
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  if (n == 0) return out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<Integer> prime_power_parts(const std::vector<Integer>& invariants) {
  std::vector<Integer> out;
  for (const Integer& d : invariants) {
    if (abs(d) <= 1) continue;
    for (const auto& [p, e] : factorize(d)) {
      Integer q;
      mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace looptop
