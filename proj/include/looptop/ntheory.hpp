#pragma once

#include "looptop/common.hpp"

#include <map>
#include <vector>

namespace looptop {

/// Prime factorization of |n| (n != 0): trial division, then Pollard rho.
std::map<Integer, int> factorize(const Integer& n);

/// Prime divisors of |n| in increasing order; empty for 0 and +-1.
std::vector<Integer> prime_divisors(const Integer& n);

/// Splits each invariant factor > 1 into its prime-power parts, sorted.
std::vector<Integer> prime_power_parts(const std::vector<Integer>& invariants);

}  // namespace looptop
