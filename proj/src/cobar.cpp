#include "looptop/cobar.hpp"

#include "looptop/ntheory.hpp"
#include "looptop/series.hpp"
#include "looptop/spaces.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace looptop {

std::size_t FiniteCoalgebra::add_generator(std::string name, int degree) {
  generators.push_back({std::move(name), degree});
  diagonal.emplace_back();
  return generators.size() - 1;
}

void FiniteCoalgebra::add_term(std::size_t source, std::size_t left, std::size_t right, const Integer& coeff) {
  if (coeff == 0) return;
  for (auto& t : diagonal.at(source))
    if (t.left == left && t.right == right) {
      t.coeff += coeff;
      return;
    }
  diagonal.at(source).push_back({left, right, coeff});
}

std::string FiniteCoalgebra::diagonal_string(std::size_t g) const {
  std::string out;
  for (const auto& t : diagonal.at(g)) {
    if (t.coeff == 0) continue;
    const bool negative = t.coeff < 0;
    const Integer mag = abs(t.coeff);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mag != 1) out += mag.get_str();
    out += generators[t.left].name + "⊗" + generators[t.right].name;
  }
  return out.empty() ? "0" : out;
}

void check_coalgebra(const FiniteCoalgebra& c) {
  const std::size_t G = c.generators.size();
  if (c.diagonal.size() != G) throw IntegrityError("coalgebra: diagonal table size mismatch");
  for (std::size_t g = 0; g < G; ++g) {
    if (c.generators[g].degree < 2) throw IntegrityError("coalgebra: generator degrees must be >= 2");
    for (const auto& t : c.diagonal[g])
      if (t.left >= G || t.right >= G ||
          c.generators[t.left].degree + c.generators[t.right].degree != c.generators[g].degree)
        throw IntegrityError("coalgebra: diagonal term of the wrong degree on " + c.generators[g].name);
  }
  // (D x 1) D = (1 x D) D on every generator
  for (std::size_t g = 0; g < G; ++g) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Integer> lhs, rhs;
    for (const auto& t : c.diagonal[g]) {
      for (const auto& s : c.diagonal[t.left]) lhs[{s.left, s.right, t.right}] += t.coeff * s.coeff;
      for (const auto& s : c.diagonal[t.right]) rhs[{t.left, s.left, s.right}] += t.coeff * s.coeff;
    }
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    if (lhs != rhs) throw IntegrityError("coalgebra: reduced diagonal is not coassociative on " + c.generators[g].name);
  }
}

FiniteCoalgebra coalgebra_of(const SpaceModel& space) {
  validate(space);
  FiniteCoalgebra c;
  if (const auto* m = std::get_if<ManifoldModel>(&space)) {
    const IntMatrix g = intersection_matrix(*m);
    for (int i = 0; i < m->r; ++i) c.add_generator("a" + subscript(i + 1), m->n);
    const auto top = c.add_generator("ζ", 2 * m->n);
    for (int i = 0; i < m->r; ++i)
      for (int j = 0; j < m->r; ++j) c.add_term(top, i, j, g(i, j));
  } else if (const auto* t = std::get_if<ConnectedSumModel>(&space)) {
    for (int i = 0; i < t->r(); ++i) {
      c.add_generator("a" + subscript(i + 1), t->factors[i].first);
      c.add_generator("b" + subscript(i + 1), t->factors[i].second);
    }
    const auto top = c.add_generator("ζ", t->dimension());
    for (int i = 0; i < t->r(); ++i) {
      const auto [p, q] = t->factors[i];
      const int e = t->sign(static_cast<std::size_t>(i));
      c.add_term(top, 2 * i, 2 * i + 1, e);
      c.add_term(top, 2 * i + 1, 2 * i, (p * q) % 2 == 0 ? e : -e);
    }
  } else if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    for (int i = 0; i < x->r(); ++i) c.add_generator("α" + subscript(i + 1), x->n);
    const auto top = c.add_generator("ζ", 2 * x->n);
    for (int i = 0; i < x->r(); ++i)
      for (int j = 0; j < x->r(); ++j) c.add_term(top, i, j, x->form(i, j));
  } else {
    const auto& b = std::get<BettiOneModel>(space);
    const auto mid = c.add_generator("ε" + subscript(b.n), b.n);
    const auto top = c.add_generator("ε" + subscript(2 * b.n), 2 * b.n);
    c.add_term(top, mid, mid, 1);
  }
  check_coalgebra(c);
  return c;
}

CobarLimits cobar_limits_from_env() {
  CobarLimits limits;
  if (const char* env = std::getenv("LOOPTOP_MAX_CELLS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw std::invalid_argument("LOOPTOP_MAX_CELLS must be a positive integer");
    limits.max_cells = static_cast<std::size_t>(v);
  }
  return limits;
}

std::size_t cobar_cell_count(const FiniteCoalgebra& c, int cutoff) {
  std::vector<Integer> words(static_cast<std::size_t>(std::max(cutoff, 0)) + 1, 0);
  words[0] = 1;
  Integer total = 1;
  for (int d = 1; d <= cutoff; ++d) {
    for (const auto& g : c.generators)
      if (g.degree - 1 <= d && g.degree > 1) words[d] += words[d - (g.degree - 1)];
    total += words[d];
  }
  return total.fits_ulong_p() ? total.get_ui() : std::numeric_limits<std::size_t>::max();
}

namespace {

// Integer basis of the rational solutions of w_l + w_r = w_g over all diagonal
// terms: every such grading is preserved by the cobar differential.
std::vector<std::vector<long long>> preserved_gradings(const FiniteCoalgebra& c) {
  const std::size_t G = c.generators.size();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t g = 0; g < G; ++g)
    for (const auto& t : c.diagonal[g]) {
      std::vector<Rational> row(G, Rational(0));
      row[t.left] += 1;
      row[t.right] += 1;
      row[g] -= 1;
      rows.push_back(std::move(row));
    }
  // reduced row echelon form
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < G && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j < G; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<std::vector<long long>> basis;
  for (std::size_t free = 0; free < G; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(G, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -rows[k][free];
    Integer lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<long long> w;
    for (const auto& x : v) {
      const Rational y = x * lcm;
      if (!y.get_num().fits_slong_p()) throw CapacityError("cobar: grading coefficients too large");
      w.push_back(y.get_num().get_si());
    }
    basis.push_back(std::move(w));
  }
  return basis;
}

}  // namespace

ChainComplex::ChainComplex(FiniteCoalgebra coalgebra, int cutoff, const CobarLimits& limits)
    : coalgebra_(std::move(coalgebra)), cutoff_(cutoff) {
  if (cutoff_ < 1) throw std::invalid_argument("cobar: cutoff must be >= 1");
  if (cutoff_ > limits.max_cutoff)
    throw CapacityError("cobar: cutoff " + std::to_string(cutoff_) + " exceeds the cap " +
                        std::to_string(limits.max_cutoff) + " (override to go further)");
  check_coalgebra(coalgebra_);
  if (coalgebra_.generators.size() > 255) throw CapacityError("cobar: too many generators");
  const auto gradings = preserved_gradings(coalgebra_);
  letter_grade_.assign(coalgebra_.generators.size(), Grade(gradings.size()));
  for (std::size_t k = 0; k < gradings.size(); ++k)
    for (std::size_t g = 0; g < coalgebra_.generators.size(); ++g) letter_grade_[g][k] = gradings[k][g];
  enumerate(limits);
  build_differentials();
  check_square_zero();
}

int ChainComplex::degree(const Word& word) const {
  int d = 0;
  for (Letter x : word) d += coalgebra_.generators[x].degree - 1;
  return d;
}

long long ChainComplex::weight(const Word& word) const {
  long long w = 0;
  for (Letter x : word) w += coalgebra_.generators[x].degree;
  return w;
}

void ChainComplex::enumerate(const CobarLimits& limits) {
  const std::size_t G = coalgebra_.generators.size();
  Word word;
  Grade grade(letter_grade_.empty() ? 0 : letter_grade_[0].size(), 0);
  auto dfs = [&](auto&& self, int d) -> void {
    if (++total_cells_ > limits.max_cells)
      throw CapacityError("cobar: more than " + std::to_string(limits.max_cells) +
                          " basis words (raise LOOPTOP_MAX_CELLS or lower the degree)");
    blocks_[{d, grade}].basis.push_back(word);
    for (std::size_t g = 0; g < G; ++g) {
      const int next = d + coalgebra_.generators[g].degree - 1;
      if (next > cutoff_) continue;
      word.push_back(static_cast<Letter>(g));
      for (std::size_t k = 0; k < grade.size(); ++k) grade[k] += letter_grade_[g][k];
      self(self, next);
      for (std::size_t k = 0; k < grade.size(); ++k) grade[k] -= letter_grade_[g][k];
      word.pop_back();
    }
  };
  dfs(dfs, 0);
  for (auto& [key, block] : blocks_) std::sort(block.basis.begin(), block.basis.end());
}

std::map<Word, Integer> ChainComplex::apply(const Word& word) const {
  std::map<Word, Integer> out;
  int prefix = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& gen = coalgebra_.generators[word[i]];
    for (const auto& t : coalgebra_.diagonal[word[i]]) {
      // Leibniz sign from the prefix, desuspension sign from the left factor
      const bool negative = (prefix + coalgebra_.generators[t.left].degree) % 2 != 0;
      Word image(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
      image.push_back(static_cast<Letter>(t.left));
      image.push_back(static_cast<Letter>(t.right));
      image.insert(image.end(), word.begin() + static_cast<std::ptrdiff_t>(i + 1), word.end());
      auto& v = out[image];
      v += negative ? Integer(-t.coeff) : t.coeff;
      if (v == 0) out.erase(image);
    }
    prefix += gen.degree - 1;
  }
  return out;
}

void ChainComplex::build_differentials() {
  for (auto& [key, block] : blocks_) {
    const auto& [d, grade] = key;
    block.boundary.columns.resize(block.basis.size());
    if (d == 0) continue;
    const auto target = blocks_.find({d - 1, grade});
    block.boundary.rows = target == blocks_.end() ? 0 : target->second.basis.size();
    for (std::size_t c = 0; c < block.basis.size(); ++c) {
      const auto image = apply(block.basis[c]);
      if (image.empty()) continue;
      if (target == blocks_.end()) throw IntegrityError("cobar: differential leaves its grade block");
      const auto& rows = target->second.basis;
      auto& col = block.boundary.columns[c];
      for (const auto& [w, v] : image) {
        const auto it = std::lower_bound(rows.begin(), rows.end(), w);
        if (it == rows.end() || *it != w) throw IntegrityError("cobar: differential leaves its grade block");
        col.emplace_back(static_cast<std::uint32_t>(it - rows.begin()), v);
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }
}

void ChainComplex::check_square_zero() const {
  for (const auto& [key, block] : blocks_) {
    const auto& [d, grade] = key;
    if (d < 2) continue;
    const auto mid = blocks_.find({d - 1, grade});
    if (mid == blocks_.end()) continue;
    for (const auto& col : block.boundary.columns) {
      std::map<std::uint32_t, Integer> acc;
      for (const auto& [r, v] : col)
        for (const auto& [r2, v2] : mid->second.boundary.columns[r]) acc[r2] += v * v2;
      for (const auto& [r2, v] : acc)
        if (v != 0) throw IntegrityError("cobar: d∘d != 0 in degree " + std::to_string(d) + " (sign convention)");
    }
  }
}

std::size_t ChainComplex::dimension(int d) const {
  std::size_t n = 0;
  for (const auto& [key, block] : blocks_)
    if (key.first == d) n += block.basis.size();
  return n;
}

std::vector<Word> ChainComplex::basis(int d) const {
  std::vector<Word> out;
  for (const auto& [key, block] : blocks_)
    if (key.first == d) out.insert(out.end(), block.basis.begin(), block.basis.end());
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix ChainComplex::differential(int d) const {
  const auto rows = basis(d - 1);
  const auto cols = basis(d);
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [w, v] : apply(cols[c])) {
      const auto it = std::lower_bound(rows.begin(), rows.end(), w);
      m(static_cast<std::size_t>(it - rows.begin()), c) = v;
    }
  return m;
}

const SparseSmith& ChainComplex::smith_of(const Key& key) const {
  auto it = smith_cache_.find(key);
  if (it == smith_cache_.end()) it = smith_cache_.emplace(key, sparse_smith(blocks_.at(key).boundary)).first;
  return it->second;
}

HomologyGroup ChainComplex::homology(int d) const {
  if (d < 0 || d >= cutoff_)
    throw OutOfWindowError("homology in degree " + std::to_string(d) + " needs cutoff > " + std::to_string(d) +
                           " (built to " + std::to_string(cutoff_) + ")");
  HomologyGroup h;
  h.rank = 0;
  for (const auto& [key, block] : blocks_) {
    if (key.first != d) continue;
    const std::size_t out_rank = d > 0 ? smith_of(key).rank : 0;
    std::size_t in_rank = 0;
    const Key above{d + 1, key.second};
    if (blocks_.count(above)) {
      const auto& s = smith_of(above);
      in_rank = s.rank;
      h.invariants.insert(h.invariants.end(), s.invariants.begin(), s.invariants.end());
    }
    if (out_rank + in_rank > block.basis.size()) throw IntegrityError("cobar: rank-nullity audit failed");
    h.rank += static_cast<unsigned long>(block.basis.size() - out_rank - in_rank);
  }
  std::sort(h.invariants.begin(), h.invariants.end());
  h.torsion = prime_power_parts(h.invariants);
  return h;
}

std::map<long long, long long> ChainComplex::euler_by_weight() const {
  std::map<long long, long long> out;
  for (const auto& [key, block] : blocks_)
    for (const auto& w : block.basis) out[weight(w)] += key.first % 2 == 0 ? 1 : -1;
  return out;
}

std::map<long long, long long> ChainComplex::homology_euler_by_weight() const {
  std::map<long long, long long> out;
  for (const auto& [key, block] : blocks_) {
    const int d = key.first;
    if (block.basis.empty()) continue;
    const long long w = weight(block.basis.front());  // degree is part of the grading
    const std::size_t out_rank = d > 0 ? smith_of(key).rank : 0;
    const Key above{d + 1, key.second};
    const std::size_t in_rank = blocks_.count(above) ? smith_of(above).rank : 0;
    const long long free = static_cast<long long>(block.basis.size() - out_rank - in_rank);
    out[w] += d % 2 == 0 ? free : -free;
  }
  return out;
}

std::vector<Integer> expected_loop_ranks(const SpaceModel& space, int N) {
  validate(space);
  PowerSeries series(N);
  auto free_series = [&](int r, int n) {
    // zero reduced diagonal: tensor algebra on r generators and the top cell
    return PowerSeries::polynomial({{0, Rational(1)}, {n - 1, Rational(-r)}, {2 * n - 1, Rational(-1)}}, N).inverse();
  };
  auto betti_one_series = [&](int n) {
    return PowerSeries::polynomial({{0, Rational(1)}, {n - 1, Rational(1)}}, N) *
           PowerSeries::polynomial({{0, Rational(1)}, {3 * n - 2, Rational(-1)}}, N).inverse();
  };
  if (const auto* m = std::get_if<ManifoldModel>(&space)) {
    series = m->r == 1 ? betti_one_series(m->n) : manifold_denominator(m->n, m->r, N).inverse();
  } else if (const auto* t = std::get_if<ConnectedSumModel>(&space)) {
    series = connected_sum_denominator(t->factors, N).inverse();
  } else if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    const std::size_t rk = rank(x->form);
    if (rk == 0)
      series = free_series(x->r(), x->n);
    else if (rk >= 2)
      series = manifold_denominator(x->n, x->r(), N).inverse();
    else if (x->r() == 1)
      series = betti_one_series(x->n);
    else
      throw std::invalid_argument("cw: no closed-form loop homology for a form of rank 1");
  } else {
    series = betti_one_series(std::get<BettiOneModel>(space).n);
  }
  std::vector<Integer> out;
  for (int d = 0; d <= N; ++d) {
    if (!is_integer(series[d])) throw IntegrityError("expected_loop_ranks: non-integral coefficient");
    out.push_back(series[d].get_num());
  }
  return out;
}

VerificationReport verify_loop_homology(const SpaceModel& space, int cutoff, const CobarLimits& limits) {
  if (cutoff < 2) throw std::invalid_argument("verify: cutoff must be >= 2");
  VerificationReport report;
  report.space = format_space(space);
  report.cutoff = cutoff;
  const auto expected = expected_loop_ranks(space, cutoff - 1);
  if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    if (rank(x->form) >= 2)
      report.allowed_torsion_primes = bad_primes(x->form);
    else if (x->r() == 1)
      report.allowed_torsion_primes = prime_divisors(x->form(0, 0));
  }
  const ChainComplex cx(coalgebra_of(space), cutoff, limits);
  report.cells = cx.total_cells();
  for (int d = 0; d < cutoff; ++d) {
    DegreeCheck row;
    row.degree = d;
    row.expected = expected[d];
    row.observed = cx.homology(d);
    if (row.observed.rank != row.expected) {
      row.ok = false;
      report.discrepancies.push_back("degree " + std::to_string(d) + ": rank " + row.observed.rank.get_str() +
                                     ", expected " + row.expected.get_str());
    }
    for (const auto& q : row.observed.torsion) {
      bool allowed = false;
      for (const auto& p : report.allowed_torsion_primes) allowed = allowed || mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t());
      if (!allowed) {
        row.ok = false;
        report.discrepancies.push_back("degree " + std::to_string(d) + ": unexpected torsion Z/" + q.get_str());
      }
    }
    report.degrees.push_back(std::move(row));
  }
  return report;
}

}  // namespace looptop
