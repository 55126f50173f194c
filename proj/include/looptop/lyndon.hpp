#pragma once

// Lyndon words, standard factorization, bracketing, and the Lie basis of
// Lyndon words avoiding the leading term of a normalized relation.

#include "looptop/ncalgebra.hpp"
#include "looptop/series.hpp"
#include "looptop/words.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace looptop {

/// Strictly smaller than each proper rotation.
bool is_lyndon(const Word& word);

/// Lyndon words of total degree <= D, by the Duval successor on lengths
/// <= D / min_degree; lex-sorted per degree.
std::map<int, std::vector<Word>> generate_lyndon(const Alphabet& alphabet, int D);

/// Lyndon words of degree <= D avoiding a two-letter factor, by a pruned
/// prenecklace search; lex-sorted per degree.
std::map<int, std::vector<Word>> lyndon_avoiding(const Alphabet& alphabet, const Word& forbidden, int D);

/// Per-degree counts 0..D of the same words, without storing them.
std::vector<std::uint64_t> count_lyndon_avoiding(const Alphabet& alphabet, const Word& forbidden, int D);

/// l = l1 l2 with l2 the longest proper Lyndon suffix. Length >= 2.
std::pair<Word, Word> standard_factorization(const Word& lyndon);

/// b(l) with b(l1 l2) = [b(l1), b(l2)], ungraded commutator.
TensorElement bracket_expand(const Alphabet& alphabet, const Word& lyndon);

/// Nested bracket string such as "[α₁,[α₁,α₂]]".
std::string bracket_string(const Word& lyndon, const std::vector<std::string>& names);

struct LieBasisElement {
  Word lyndon;
  TensorElement bracket;
  int degree = 0;
};

/// Standard Lyndon words for the relation, with expansions. Per-degree counts
/// are checked against the PBW matching of the closed-form Hilbert series.
std::map<int, std::vector<LieBasisElement>> lie_basis(const NormalizedRelation& nr, int D);

/// 1 - sum_i t^{deg x_i} + t^{deg x0 + deg x1}.
PowerSeries relation_denominator(const Alphabet& alphabet, int N);

}  // namespace looptop
