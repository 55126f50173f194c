#include "looptop/lyndon.hpp"

#include <algorithm>
#include <stdexcept>

namespace looptop {

bool is_lyndon(const Word& word) {
  if (word.empty()) return false;
  const std::size_t n = word.size();
  for (std::size_t s = 1; s < n; ++s) {
    // compare word with its rotation starting at s
    for (std::size_t i = 0; i < n; ++i) {
      const Letter a = word[i];
      const Letter b = word[(s + i) % n];
      if (a < b) break;
      if (a > b) return false;
      if (i + 1 == n) return false;  // equal rotation: periodic
    }
  }
  return true;
}

std::map<int, std::vector<Word>> generate_lyndon(const Alphabet& alphabet, int D) {
  if (D < 1) throw std::invalid_argument("generate_lyndon: D must be >= 1");
  std::map<int, std::vector<Word>> out;
  const int k = alphabet.size();
  if (k == 0) return out;
  const std::size_t max_len = static_cast<std::size_t>(D / alphabet.min_degree());
  if (max_len == 0) return out;
  Word w{0};
  while (!w.empty()) {
    const int d = alphabet.degree(w);
    if (d <= D) out[d].push_back(w);
    const std::size_t m = w.size();
    while (w.size() < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  for (auto& [d, list] : out) std::sort(list.begin(), list.end());
  return out;
}

std::map<int, std::vector<Word>> lyndon_avoiding(const Alphabet& alphabet, const Word& forbidden, int D) {
  std::map<int, std::vector<Word>> out;
  const int k = alphabet.size();
  Word a;
  // a is a prenecklace with period p; it is Lyndon exactly when p == |a|.
  auto dfs = [&](auto&& self, std::size_t p, int degree) -> void {
    if (!a.empty() && p == a.size()) out[degree].push_back(a);
    const int start = a.empty() ? 0 : a[a.size() - p];
    for (int j = start; j < k; ++j) {
      const Letter letter = static_cast<Letter>(j);
      const int next = degree + alphabet.degree(letter);
      if (next > D) continue;
      if (!a.empty() && a.back() == forbidden[0] && letter == forbidden[1]) continue;
      a.push_back(letter);
      self(self, a.size() == 1 || j > start ? a.size() : p, next);
      a.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  for (auto& [d, list] : out) std::sort(list.begin(), list.end());
  return out;
}

std::vector<std::uint64_t> count_lyndon_avoiding(const Alphabet& alphabet, const Word& forbidden, int D) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(D, 0) + 1), 0);
  const int k = alphabet.size();
  if (k == 0 || D < 1) return counts;
  const std::size_t max_len = static_cast<std::size_t>(D / alphabet.min_degree());
  std::vector<int> a(max_len + 1);
  const std::vector<int>& deg = alphabet.degrees();
  const int f0 = forbidden[0], f1 = forbidden[1];
  // a[1..t] is a prenecklace with period p
  auto dfs = [&](auto&& self, std::size_t t, std::size_t p, int degree) -> void {
    if (t > 0 && p == t) ++counts[static_cast<std::size_t>(degree)];
    if (t == max_len) return;
    const int start = t == 0 ? 0 : a[t + 1 - p];
    const int last = t == 0 ? -1 : a[t];
    for (int j = start; j < k; ++j) {
      const int next = degree + deg[static_cast<std::size_t>(j)];
      if (next > D) continue;
      if (last == f0 && j == f1) continue;
      a[t + 1] = j;
      self(self, t + 1, t == 0 || j > start ? t + 1 : p, next);
    }
  };
  dfs(dfs, 0, 0, 0);
  return counts;
}

std::pair<Word, Word> standard_factorization(const Word& lyndon) {
  if (lyndon.size() < 2) throw std::invalid_argument("standard_factorization: length must be >= 2");
  if (!is_lyndon(lyndon)) throw std::invalid_argument("standard_factorization: not a Lyndon word");
  for (std::size_t i = 1; i < lyndon.size(); ++i) {
    Word right(lyndon.begin() + static_cast<std::ptrdiff_t>(i), lyndon.end());
    if (is_lyndon(right)) return {Word(lyndon.begin(), lyndon.begin() + static_cast<std::ptrdiff_t>(i)), right};
  }
  throw std::logic_error("standard_factorization: no Lyndon suffix");
}

TensorElement bracket_expand(const Alphabet& alphabet, const Word& lyndon) {
  if (lyndon.size() == 1) return TensorElement(alphabet, lyndon);
  const auto [left, right] = standard_factorization(lyndon);
  return TensorElement::commutator(bracket_expand(alphabet, left), bracket_expand(alphabet, right));
}

std::string bracket_string(const Word& lyndon, const std::vector<std::string>& names) {
  if (lyndon.size() == 1) {
    const std::size_t i = lyndon[0];
    return i < names.size() ? names[i] : word_label(lyndon);
  }
  const auto [left, right] = standard_factorization(lyndon);
  return "[" + bracket_string(left, names) + "," + bracket_string(right, names) + "]";
}

PowerSeries relation_denominator(const Alphabet& alphabet, int N) {
  std::vector<std::pair<int, Rational>> terms{{0, Rational(1)}};
  for (int d : alphabet.degrees()) terms.emplace_back(d, Rational(-1));
  if (alphabet.size() >= 2) terms.emplace_back(alphabet.degree(Letter{0}) + alphabet.degree(Letter{1}), Rational(1));
  return PowerSeries::polynomial(terms, N);
}

std::map<int, std::vector<LieBasisElement>> lie_basis(const NormalizedRelation& nr, int D) {
  for (const auto& [w, c] : nr.lie_tail.terms())
    for (Letter x : w)
      if (x < 2) throw std::invalid_argument("lie_basis: relation tail involves a plane letter");
  const auto words = lyndon_avoiding(nr.alphabet, nr.forbidden, D);
  const DimensionTable expected = pbw_match_ungraded(relation_denominator(nr.alphabet, D).inverse(), D);
  std::map<int, std::vector<LieBasisElement>> out;
  for (int d = 1; d <= D; ++d) {
    const auto it = words.find(d);
    const std::size_t found = it == words.end() ? 0 : it->second.size();
    if (Integer(found) != expected.at(d))
      throw IntegrityError("lie_basis: " + std::to_string(found) + " Lyndon words in degree " + std::to_string(d) +
                           " but PBW matching gives " + expected.at(d).get_str());
    if (it == words.end()) continue;
    for (const Word& w : it->second) out[d].push_back({w, bracket_expand(nr.alphabet, w), d});
  }
  return out;
}

}  // namespace looptop
