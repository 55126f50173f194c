#include "looptop/normal_form.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace looptop {

namespace {

using Terms = std::map<Word, Rational>;

void add_scaled(Terms& into, const Terms& from, const Rational& c) {
  for (const auto& [w, a] : from) {
    auto [it, inserted] = into.emplace(w, 0);
    it->second += c * a;
    if (it->second == 0) into.erase(it);
  }
}

std::size_t leftmost(const Word& word, const Word& factor) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == factor[0] && word[i + 1] == factor[1]) return i;
  return std::string::npos;
}

std::size_t fuel_for(std::size_t length) {
  std::size_t fuel = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (fuel > std::numeric_limits<std::size_t>::max() / 4) return std::numeric_limits<std::size_t>::max();
    fuel *= 4;
  }
  return fuel;
}

}  // namespace

RewriteSystem::RewriteSystem(Alphabet alphabet, Word forbidden, TensorElement replacement)
    : alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)), replacement_(std::move(replacement)) {
  if (forbidden_.size() != 2 || forbidden_[0] == forbidden_[1])
    throw std::invalid_argument("forbidden word must have two distinct letters");
  if (!(replacement_.alphabet() == alphabet_)) throw std::invalid_argument("replacement over a different alphabet");
  if (!replacement_.zero() && replacement_.degree() != alphabet_.degree(forbidden_))
    throw std::invalid_argument("replacement is not of the degree of the forbidden word");
  for (const auto& [w, c] : replacement_.terms())
    if (contains_factor(w, forbidden_)) throw std::invalid_argument("replacement contains the forbidden factor");
}

RewriteSystem::RewriteSystem(const NormalizedRelation& nr)
    : RewriteSystem(nr.alphabet, nr.forbidden, nr.algebra_rewrite) {}

const std::map<Word, Rational>& RewriteSystem::normal_form(const Word& word) const {
  auto it = cache_.find(word);
  if (it != cache_.end()) return it->second;
  if (leftmost(word, forbidden_) == std::string::npos) return cache_[word] = Terms{{word, Rational(1)}};
  solve_closure(word);
  return cache_.at(word);
}

void RewriteSystem::solve_closure(const Word& start) const {
  // Unknowns are the uncached reducible words reachable from `start`.
  std::map<Word, std::size_t> index;
  std::vector<Word> unknowns;
  std::vector<std::map<std::size_t, Rational>> rows;
  std::vector<Terms> rhs;
  const std::size_t fuel = fuel_for(start.size());
  std::deque<std::size_t> queue;
  auto intern = [&](const Word& w) {
    auto [it, inserted] = index.emplace(w, unknowns.size());
    if (inserted) {
      if (unknowns.size() >= fuel) throw IntegrityError("reduce: fuel exhausted on " + word_label(start));
      unknowns.push_back(w);
      rows.emplace_back();
      rhs.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(start);
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const Word w = unknowns[k];
    const std::size_t pos = leftmost(w, forbidden_);
    rows[k][k] += 1;
    for (const auto& [t, c] : replacement_.terms()) {
      Word child(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
      child.insert(child.end(), t.begin(), t.end());
      child.insert(child.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 2), w.end());
      const auto cached = cache_.find(child);
      if (cached != cache_.end()) {
        add_scaled(rhs[k], cached->second, c);
      } else if (leftmost(child, forbidden_) == std::string::npos) {
        add_scaled(rhs[k], Terms{{child, Rational(1)}}, c);
      } else {
        const std::size_t j = intern(child);
        auto& a = rows[k][j];
        a -= c;
        if (a == 0) rows[k].erase(j);
      }
    }
  }

  // Gauss-Jordan; later unknowns tend to depend on fewer others, so start there.
  const std::size_t n = unknowns.size();
  std::vector<std::size_t> pivot_row(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = n - 1 - step;
    std::size_t p = n;
    if (!used[k] && rows[k].count(k)) p = k;
    for (std::size_t i = 0; i < n && p == n; ++i)
      if (!used[i] && rows[i].count(k)) p = i;
    if (p == n) throw IntegrityError("reduce: singular rewriting system at " + word_label(start));
    used[p] = true;
    pivot_row[k] = p;
    const Rational inv = 1 / rows[p].at(k);
    for (auto& [j, a] : rows[p]) a *= inv;
    for (auto& [w, a] : rhs[p]) a *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p) continue;
      const auto hit = rows[i].find(k);
      if (hit == rows[i].end()) continue;
      const Rational f = hit->second;
      for (const auto& [j, a] : rows[p]) {
        auto& b = rows[i][j];
        b -= f * a;
        if (b == 0) rows[i].erase(j);
      }
      add_scaled(rhs[i], rhs[p], -f);
    }
  }
  for (std::size_t k = 0; k < n; ++k) cache_[unknowns[k]] = std::move(rhs[pivot_row[k]]);
}

TensorElement reduce(const TensorElement& e, const RewriteSystem& rs) {
  TensorElement out(e.alphabet());
  for (const auto& [w, c] : e.terms())
    for (const auto& [v, a] : rs.normal_form(w)) out.add_term(v, c * a);
  return out;
}

std::vector<Integer> count_irreducible(const Alphabet& alphabet, const Word& forbidden, int D) {
  const int r = alphabet.size();
  // ending[d][a]: factor-avoiding words of degree d ending in letter a.
  std::vector<std::vector<Integer>> ending(static_cast<std::size_t>(D + 1), std::vector<Integer>(r));
  std::vector<Integer> total(static_cast<std::size_t>(D + 1));
  if (D >= 0) total[0] = 1;
  for (int d = 1; d <= D; ++d) {
    for (int b = 0; b < r; ++b) {
      const int prev = d - alphabet.degree(static_cast<Letter>(b));
      if (prev < 0) continue;
      Integer acc = prev == 0 ? Integer(1) : Integer(0);
      if (prev > 0)
        for (int a = 0; a < r; ++a)
          if (!(a == forbidden[0] && b == forbidden[1])) acc += ending[prev][a];
      ending[d][b] = acc;
      total[d] += acc;
    }
  }
  return total;
}

IrreducibleWords irreducible_words(const Alphabet& alphabet, const Word& forbidden, int D, int list_limit) {
  if (forbidden.size() != 2 || forbidden[0] == forbidden[1])
    throw std::invalid_argument("forbidden word must have two distinct letters");
  IrreducibleWords out;
  const auto counts = count_irreducible(alphabet, forbidden, D);
  for (int d = 0; d <= D; ++d) out.counts[d] = counts[d];
  out.listed_up_to = std::min(D, list_limit);
  for (int d = 1; d <= out.listed_up_to; ++d) out.words[d];
  Word current;
  auto dfs = [&](auto&& self, int degree) -> void {
    if (degree > 0) out.words[degree].push_back(current);
    for (int a = 0; a < alphabet.size(); ++a) {
      const Letter letter = static_cast<Letter>(a);
      const int next = degree + alphabet.degree(letter);
      if (next > out.listed_up_to) continue;
      if (!current.empty() && current.back() == forbidden[0] && letter == forbidden[1]) continue;
      current.push_back(letter);
      self(self, next);
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  for (auto& [d, list] : out.words) {
    std::sort(list.begin(), list.end());
    if (Integer(list.size()) != out.counts[d]) throw IntegrityError("irreducible_words: listing and transfer count disagree");
  }
  return out;
}

PowerSeries hilbert_from_enumeration(const Alphabet& alphabet, const Word& forbidden, int D) {
  const auto counts = count_irreducible(alphabet, forbidden, D);
  PowerSeries h(D);
  for (int d = 0; d <= D; ++d) h[d] = Rational(counts[d]);
  return h;
}

}  // namespace looptop
