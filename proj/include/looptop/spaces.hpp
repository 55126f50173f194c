#pragma once

// Reports on the homotopy of the supported spaces: sphere-summand
// decompositions with witnesses, inverted primes, rational classification,
// Moore-conjecture verdicts, and the Betti-one special cases.

#include "looptop/series.hpp"
#include "looptop/space_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace looptop {

/// Primes p with rank(Q mod p) < 2: prime divisors of the gcd of all 2x2
/// minors. Requires rank(Q) >= 2 over the rationals.
std::vector<Integer> bad_primes(const IntMatrix& q);

enum class Classification { Elliptic, Hyperbolic };
enum class MooreVerdict { EllipticFiniteExponents, HyperbolicNoExponent, HyperbolicUnboundedCofinite };

std::string to_string(Classification c);
std::string to_string(MooreVerdict v);

struct MooreReport {
  MooreVerdict verdict = MooreVerdict::EllipticFiniteExponents;
  std::string justification;
  friend bool operator==(const MooreReport&, const MooreReport&) = default;
};

struct Summand {
  int sphere_dim = 0;
  Integer multiplicity;
  std::vector<std::string> witnesses;  ///< empty when not produced
  friend bool operator==(const Summand&, const Summand&) = default;
};

struct DecompositionReport {
  SpaceModel space;
  int max_dimension = 0;
  std::vector<Integer> inverted_primes;
  std::vector<Summand> summands;
  Classification classification = Classification::Elliptic;
  std::optional<QuadraticSurd> growth;
  std::string loop_decomposition;
  MooreReport moore;
  std::vector<std::string> notes;

  /// Equality of everything except the space itself.
  bool same_content(const DecompositionReport& other) const;
};

/// Witnesses are listed for a dimension only when its multiplicity is at most this.
inline constexpr int kWitnessLimit = 200;

/// Sphere summands of pi_* with dimension <= max_dim. Betti-one manifolds
/// (and manifolds with r = 1) are routed to betti_one_report.
DecompositionReport decomposition_report(const SpaceModel& space, int max_dim);

DecompositionReport betti_one_report(int n, long long m, int max_dim = 0);

/// pi_10 of the 8-dimensional Hopf-invariant-one manifold with parameter m:
/// the cokernel Z/24 + Z/3 modulo (1, -m) and (1 + 2m, m), as invariant
/// factors > 1 (empty for the trivial group).
std::vector<Integer> pi10_v8(long long m);

/// n = 4: m(m+1) = 0 mod 4; n = 8: m(m+1) = 0 mod 8.
bool smoothable(int n, long long m);

Classification classify_rational(const SpaceModel& space);
MooreReport moore_report(const SpaceModel& space);

/// Betti number l(r + 2) - 2 of the universal cover when pi_1 has order l.
long long finite_pi1_betti(long long l, long long r);

/// Rendering of an abelian group from invariant factors: "0", "Z/3", "Z/2 ⊕ Z/4".
std::string group_string(const std::vector<Integer>& invariants);

}  // namespace looptop
