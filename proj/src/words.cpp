#include "looptop/words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace looptop {

Alphabet::Alphabet(std::vector<int> degrees) {
  if (degrees.size() > 255) throw std::invalid_argument("alphabet too large");
  for (int d : degrees)
    if (d < 1) throw std::invalid_argument("letter degrees must be >= 1");
  degrees_ = std::make_shared<const std::vector<int>>(std::move(degrees));
}

Alphabet Alphabet::uniform(int size, int degree) {
  if (size < 0) throw std::invalid_argument("negative alphabet size");
  return Alphabet(std::vector<int>(static_cast<std::size_t>(size), degree));
}

bool Alphabet::uniform() const {
  return std::adjacent_find(degrees_->begin(), degrees_->end(), std::not_equal_to<>()) == degrees_->end();
}

int Alphabet::min_degree() const {
  if (degrees_->empty()) throw std::logic_error("empty alphabet has no minimum degree");
  return *std::min_element(degrees_->begin(), degrees_->end());
}

int Alphabet::degree(const Word& word) const {
  int total = 0;
  for (Letter x : word) {
    if (x >= degrees_->size()) throw std::out_of_range("letter outside alphabet");
    total += (*degrees_)[x];
  }
  return total;
}

std::string subscript(int k) {
  static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s;
  for (char c : std::to_string(k)) s += c == '-' ? "₋" : digits[c - '0'];
  return s;
}

std::string word_label(const Word& word) {
  std::string out;
  for (Letter x : word) {
    if (x < 9)
      out.push_back(static_cast<char>('1' + x));
    else
      out += "(" + std::to_string(x + 1) + ")";
  }
  return out;
}

bool contains_factor(const Word& word, const Word& factor) {
  return std::search(word.begin(), word.end(), factor.begin(), factor.end()) != word.end();
}

TensorElement::TensorElement(Alphabet alphabet, const Word& word, const Rational& coeff)
    : alphabet_(std::move(alphabet)) {
  add_term(word, coeff);
}

Rational TensorElement::coefficient(const Word& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorElement::add_term(const Word& word, const Rational& coeff) {
  if (coeff == 0) return;
  const int d = alphabet_.degree(word);
  if (degree_ >= 0 && d != degree_) {
    throw std::invalid_argument("inhomogeneous tensor element: degree " + std::to_string(d) + " added to degree " +
                                std::to_string(degree_));
  }
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  degree_ = terms_.empty() ? -1 : d;
}

void TensorElement::check_alphabet(const TensorElement& other) const {
  if (!(alphabet_ == other.alphabet_)) throw std::invalid_argument("tensor elements over different alphabets");
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  check_alphabet(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  check_alphabet(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    degree_ = -1;
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
  a.check_alphabet(b);
  TensorElement out(a.alphabet_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

TensorElement TensorElement::commutator(const TensorElement& a, const TensorElement& b) {
  return a * b - b * a;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    const Rational mag = abs(c);
    if (mag != 1) os << mag.get_str() << "*";
    os << "x" << word_label(w);
    first = false;
  }
  return os.str();
}

}  // namespace looptop
