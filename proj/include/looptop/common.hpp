#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace looptop {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when a cross-check between independent pipelines fails, or when a
/// quantity that must be a nonnegative integer comes out otherwise.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query fell outside the degree window a structure was built for.
class OutOfWindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A resource guard (basis size, degree cap) was exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

}  // namespace looptop
