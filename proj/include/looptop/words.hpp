#pragma once

#include "looptop/common.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace looptop {

using Letter = std::uint8_t;

/// Finite sequence of letter indices. The default vector ordering is the
/// lexicographic order with the prefix rule, letters compared by index.
using Word = std::vector<Letter>;

/// Ordered letters 0..r-1, each with a positive degree. Copies share storage.
class Alphabet {
 public:
  Alphabet() : degrees_(std::make_shared<const std::vector<int>>()) {}
  explicit Alphabet(std::vector<int> degrees);
  static Alphabet uniform(int size, int degree);

  int size() const { return static_cast<int>(degrees_->size()); }
  int degree(Letter letter) const { return (*degrees_)[letter]; }
  const std::vector<int>& degrees() const { return *degrees_; }
  bool uniform() const;
  int min_degree() const;

  int degree(const Word& word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.degrees() == b.degrees(); }

 private:
  std::shared_ptr<const std::vector<int>> degrees_;
};

/// Word rendered with 1-based letter numbers, e.g. {0,0,1} -> "112". Letters
/// past 9 are bracketed: "(10)".
std::string word_label(const Word& word);

/// Decimal digits of k as Unicode subscripts, e.g. 12 -> "₁₂".
std::string subscript(int k);

/// Whether `word` contains `factor` as a consecutive block.
bool contains_factor(const Word& word, const Word& factor);

/// Homogeneous sparse linear combination of words with rational coefficients.
/// Zero coefficients are never stored; the zero element has no degree.
class TensorElement {
 public:
  TensorElement() = default;
  explicit TensorElement(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  TensorElement(Alphabet alphabet, const Word& word, const Rational& coeff = 1);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  /// Degree of every term, or -1 for the zero element.
  int degree() const { return degree_; }
  Rational coefficient(const Word& word) const;

  /// Adds coeff * word; rejects words of a different degree.
  void add_term(const Word& word, const Rational& coeff);

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  TensorElement& operator*=(const Rational& scalar);

  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const Rational& s) { return a *= s; }
  friend TensorElement operator*(const Rational& s, TensorElement a) { return a *= s; }
  /// Concatenation product.
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.alphabet_ == b.alphabet_ && a.terms_ == b.terms_;
  }

  /// Ungraded commutator ab - ba.
  static TensorElement commutator(const TensorElement& a, const TensorElement& b);

  std::string to_string() const;

 private:
  void check_alphabet(const TensorElement& other) const;

  Alphabet alphabet_;
  std::map<Word, Rational> terms_;
  int degree_ = -1;
};

}  // namespace looptop
