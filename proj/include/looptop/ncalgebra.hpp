#pragma once

// Quadratic relations coming from intersection forms, and their normalization
// to a rewrite rule x0 x1 = f with the plane letters split off.

#include "looptop/matrix.hpp"
#include "looptop/space_model.hpp"
#include "looptop/words.hpp"

#include <string>
#include <utility>
#include <vector>

namespace looptop {

enum class Symmetry { Symmetric, Skew };

/// Relation sum g_ij x_i x_j given by a symmetric or skew matrix.
struct IntersectionRelation {
  RationalMatrix matrix;
  Symmetry symmetry = Symmetry::Symmetric;
  bool integral = true;

  static IntersectionRelation from_integer(const IntMatrix& g);
};

struct NormalizedRelation {
  Alphabet alphabet;            ///< letters of the new basis, plane letters first
  RationalMatrix basis_change;  ///< column k = new letter k in old coordinates
  RationalMatrix transformed;   ///< basis_change^T * g * basis_change
  Word forbidden{0, 1};
  TensorElement algebra_rewrite;  ///< x0 x1 = algebra_rewrite
  TensorElement lie_tail;         ///< [x0, x1] = lie_tail, letters >= 2 only
  Symmetry symmetry = Symmetry::Symmetric;
};

/// Alphabet and relation of a quadratic-eligible space. Betti-one models and
/// forms of rank < 2 are rejected.
std::pair<Alphabet, IntersectionRelation> relation_from_space(const SpaceModel& space);

/// Rewrites the relation over the rationals so that letters 0 and 1 span a
/// nonsingular plane with pairing 1 and every other letter is orthogonal to it.
NormalizedRelation normalize_relation(const Alphabet& alphabet, const IntersectionRelation& rel);

/// sum_{i,j} g_ij x_i x_j.
TensorElement relation_element(const Alphabet& alphabet, const RationalMatrix& g);

/// sum_{i<j} g_ij [x_i, x_j] with the ungraded commutator.
TensorElement upper_bracket_form(const Alphabet& alphabet, const RationalMatrix& g);

/// Generator names for reports: alpha_i for spheres of a wedge; alpha_i,
/// beta_i alternating for connected sums.
std::vector<std::string> generator_names(const SpaceModel& space, int count);

}  // namespace looptop
