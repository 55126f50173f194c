#pragma once

#include "looptop/matrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace looptop {

/// Closed (n-1)-connected 2n-manifold with middle Betti number r. The
/// intersection matrix is optional; a default unimodular form is used when
/// absent.
struct ManifoldModel {
  int n = 2;
  int r = 2;
  std::optional<IntMatrix> matrix;
};

/// (S^{p_1} x S^{q_1}) # ... # (S^{p_r} x S^{q_r}) with orientation signs.
struct ConnectedSumModel {
  std::vector<std::pair<int, int>> factors;
  std::vector<int> signs;  // empty means all +1

  int dimension() const { return factors.empty() ? 0 : factors.front().first + factors.front().second; }
  int r() const { return static_cast<int>(factors.size()); }
  int sign(std::size_t i) const { return signs.empty() ? 1 : signs.at(i); }
};

/// r n-spheres with one 2n-cell attached; `form` is the cup-product matrix Q.
struct TwoCellModel {
  int n = 2;
  IntMatrix form;

  int r() const { return static_cast<int>(form.rows()); }
};

/// Hopf-invariant-one mapping cone in dimension 2n, n in {2,4,8}, with
/// parameter m reduced mod 12 (n = 4) or mod 120 (n = 8).
struct BettiOneModel {
  int n = 4;
  long long m = 0;
};

using SpaceModel = std::variant<ManifoldModel, ConnectedSumModel, TwoCellModel, BettiOneModel>;

BettiOneModel make_betti_one(int n, long long m);

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const SpaceModel& space);

/// Default form: n odd -> symplectic blocks (r even); n even -> hyperbolic
/// blocks plus <1> when r is odd.
IntMatrix default_intersection_matrix(int n, int r);
IntMatrix intersection_matrix(const ManifoldModel& m);

/// Parses `manifold:n:r[:matrix]`, `csum:p1xq1,p2xq2[:signs=+,-]`,
/// `cw:n:"g11,g12;g21,g22"` and `betti1:n:m`.
SpaceModel parse_space(std::string_view text);
std::string format_space(const SpaceModel& space);

/// Short family tag: manifold, connected-sum, cw, betti-one.
std::string space_kind(const SpaceModel& space);

}  // namespace looptop
