#pragma once

// Rewriting modulo one quadratic relation x0 x1 = f, and enumeration of the
// words that avoid the factor x0 x1.

#include "looptop/ncalgebra.hpp"
#include "looptop/series.hpp"
#include "looptop/words.hpp"

#include <map>
#include <memory>
#include <vector>

namespace looptop {

class RewriteSystem {
 public:
  /// Rejects a replacement that still contains the forbidden factor.
  RewriteSystem(Alphabet alphabet, Word forbidden, TensorElement replacement);
  explicit RewriteSystem(const NormalizedRelation& nr);

  const Alphabet& alphabet() const { return alphabet_; }
  const Word& forbidden() const { return forbidden_; }
  const TensorElement& replacement() const { return replacement_; }

  /// Normal form of a single word, memoized.
  const std::map<Word, Rational>& normal_form(const Word& word) const;

 private:
  void solve_closure(const Word& word) const;

  Alphabet alphabet_;
  Word forbidden_;
  TensorElement replacement_;
  mutable std::map<Word, std::map<Word, Rational>> cache_;
};

/// Leftmost rewriting of x0 x1. Cycles created by the replacement (possible
/// for diagonal rules) are resolved exactly by solving the finite linear
/// system over the reducible words reached; at most 4^w reducible words are
/// visited per word of length w, else IntegrityError.
TensorElement reduce(const TensorElement& e, const RewriteSystem& rs);

/// Words of total degree <= D avoiding a two-letter factor. Words are listed
/// for degrees <= list_limit; counts cover every degree 0..D.
struct IrreducibleWords {
  std::map<int, std::vector<Word>> words;
  std::map<int, Integer> counts;
  int listed_up_to = 0;
};

inline constexpr int kListLimit = 12;

IrreducibleWords irreducible_words(const Alphabet& alphabet, const Word& forbidden, int D,
                                   int list_limit = kListLimit);

/// Count of factor-avoiding words per degree 0..D by the last-letter transfer.
std::vector<Integer> count_irreducible(const Alphabet& alphabet, const Word& forbidden, int D);

/// sum_d |irreducible words of degree d| t^d, truncated at D.
PowerSeries hilbert_from_enumeration(const Alphabet& alphabet, const Word& forbidden, int D);

}  // namespace looptop
