#include "looptop/ncalgebra.hpp"

#include <optional>
#include <stdexcept>

namespace looptop {

namespace {

using Vec = std::vector<Rational>;

Rational pairing(const RationalMatrix& g, const Vec& u, const Vec& w) {
  Rational acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0) acc += u[i] * g(i, j) * w[j];
  }
  return acc;
}

Vec unit(std::size_t r, std::size_t i) {
  Vec v(r, Rational(0));
  v[i] = 1;
  return v;
}

Vec axpy(const Vec& x, const Rational& a, const Vec& y) {
  Vec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * y[i];
  return out;
}

Vec scaled(Vec v, const Rational& s) {
  for (auto& x : v) x *= s;
  return v;
}

// Degree of a vector in the span of letters, or nullopt when it mixes degrees.
std::optional<int> vector_degree(const Alphabet& alphabet, const Vec& v) {
  std::optional<int> deg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const int d = alphabet.degree(static_cast<Letter>(i));
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

bool plane_nonsingular(const RationalMatrix& g, const Vec& u, const Vec& w) {
  return pairing(g, u, u) * pairing(g, w, w) - pairing(g, u, w) * pairing(g, w, u) != 0;
}

// Orthogonal vectors f0, f1 with nonzero self-pairing, by Lagrange reduction.
std::pair<Vec, Vec> lagrange_pair(const RationalMatrix& g) {
  const std::size_t r = g.rows();
  std::vector<Vec> pool;
  for (std::size_t i = 0; i < r; ++i) pool.push_back(unit(r, i));
  std::vector<Vec> found;
  while (found.size() < 2) {
    std::optional<Vec> f;
    for (const auto& v : pool)
      if (pairing(g, v, v) != 0) {
        f = v;
        break;
      }
    if (!f) {
      for (std::size_t i = 0; i < pool.size() && !f; ++i)
        for (std::size_t j = i + 1; j < pool.size() && !f; ++j)
          if (pairing(g, pool[i], pool[j]) != 0) f = axpy(pool[i], 1, pool[j]);
    }
    if (!f) throw std::invalid_argument("normalize_relation: form has rank < 2");
    const Rational self = pairing(g, *f, *f);
    std::vector<Vec> next;
    for (const auto& v : pool) {
      Vec p = axpy(v, -pairing(g, v, *f) / self, *f);
      bool nonzero = false;
      for (const auto& x : p) nonzero = nonzero || x != 0;
      if (nonzero) next.push_back(std::move(p));
    }
    pool = std::move(next);
    found.push_back(*f);
  }
  return {found[0], found[1]};
}

}  // namespace

IntersectionRelation IntersectionRelation::from_integer(const IntMatrix& g) {
  IntersectionRelation rel;
  rel.matrix = to_rational(g);
  if (g.is_skew())
    rel.symmetry = Symmetry::Skew;
  else if (g.is_symmetric())
    rel.symmetry = Symmetry::Symmetric;
  else
    throw std::invalid_argument("relation matrix must be symmetric or skew-symmetric");
  rel.integral = true;
  return rel;
}

std::pair<Alphabet, IntersectionRelation> relation_from_space(const SpaceModel& space) {
  validate(space);
  if (const auto* m = std::get_if<ManifoldModel>(&space)) {
    if (m->r < 2) throw std::invalid_argument("relation_from_space: Betti number 1 has no quadratic relation of rank >= 2");
    IntersectionRelation rel = IntersectionRelation::from_integer(intersection_matrix(*m));
    rel.symmetry = m->n % 2 == 0 ? Symmetry::Symmetric : Symmetry::Skew;
    return {Alphabet::uniform(m->r, m->n - 1), rel};
  }
  if (const auto* t = std::get_if<ConnectedSumModel>(&space)) {
    const int r = t->r();
    std::vector<int> degrees;
    IntMatrix g(static_cast<std::size_t>(2 * r), static_cast<std::size_t>(2 * r));
    for (int i = 0; i < r; ++i) {
      degrees.push_back(t->factors[i].first - 1);
      degrees.push_back(t->factors[i].second - 1);
      g(2 * i, 2 * i + 1) = t->sign(static_cast<std::size_t>(i));
      g(2 * i + 1, 2 * i) = -t->sign(static_cast<std::size_t>(i));
    }
    IntersectionRelation rel = IntersectionRelation::from_integer(g);
    rel.symmetry = Symmetry::Skew;
    return {Alphabet(std::move(degrees)), rel};
  }
  if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    if (rank(x->form) < 2) throw std::invalid_argument("relation_from_space: cup-product form has rank < 2 over Q");
    IntersectionRelation rel = IntersectionRelation::from_integer(x->form);
    rel.symmetry = x->n % 2 == 0 ? Symmetry::Symmetric : Symmetry::Skew;
    return {Alphabet::uniform(x->r(), x->n - 1), rel};
  }
  throw std::invalid_argument("relation_from_space: Betti-one models are handled by the cobar oracle");
}

TensorElement relation_element(const Alphabet& alphabet, const RationalMatrix& g) {
  TensorElement e(alphabet);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != 0) e.add_term(Word{static_cast<Letter>(i), static_cast<Letter>(j)}, g(i, j));
  return e;
}

TensorElement upper_bracket_form(const Alphabet& alphabet, const RationalMatrix& g) {
  TensorElement e(alphabet);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j) {
      if (g(i, j) == 0) continue;
      e.add_term(Word{static_cast<Letter>(i), static_cast<Letter>(j)}, g(i, j));
      e.add_term(Word{static_cast<Letter>(j), static_cast<Letter>(i)}, -g(i, j));
    }
  return e;
}

NormalizedRelation normalize_relation(const Alphabet& alphabet, const IntersectionRelation& rel) {
  const RationalMatrix& g = rel.matrix;
  const std::size_t r = g.rows();
  if (!g.square() || static_cast<int>(r) != alphabet.size())
    throw std::invalid_argument("normalize_relation: matrix does not match the alphabet");
  if (rel.symmetry == Symmetry::Skew ? !g.is_skew() : !g.is_symmetric())
    throw std::invalid_argument("normalize_relation: matrix does not have the declared symmetry");
  if (rank(g) < 2) throw std::invalid_argument("normalize_relation: rank < 2, no nonsingular plane");

  std::optional<int> relation_degree;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (g(i, j) == 0) continue;
      const int d = alphabet.degree(static_cast<Letter>(i)) + alphabet.degree(static_cast<Letter>(j));
      if (relation_degree && *relation_degree != d) throw std::invalid_argument("normalize_relation: relation is not homogeneous");
      relation_degree = d;
    }

  std::optional<std::pair<Vec, Vec>> plane;
  for (std::size_t i = 0; i < r && !plane; ++i) {
    for (std::size_t j = i + 1; j < r && !plane; ++j) {
      const Vec ei = unit(r, i);
      const Vec ej = unit(r, j);
      if (!plane_nonsingular(g, ei, ej)) continue;
      if (g(i, j) != 0) {
        plane.emplace(ei, scaled(ej, 1 / g(i, j)));
      } else if (alphabet.degree(static_cast<Letter>(i)) == alphabet.degree(static_cast<Letter>(j))) {
        // diagonal plane: pair e_i with e_i + e_j
        plane.emplace(ei, scaled(axpy(ei, 1, ej), 1 / g(i, i)));
      }
    }
  }
  if (!plane) {
    if (!alphabet.uniform()) throw std::invalid_argument("normalize_relation: no homogeneous nonsingular plane");
    auto [f0, f1] = lagrange_pair(g);
    const Rational self = pairing(g, f0, f0);
    plane.emplace(f0, scaled(axpy(f0, 1, f1), 1 / self));
  }
  const auto& [u, w] = *plane;
  if (pairing(g, u, w) != 1 || !plane_nonsingular(g, u, w))
    throw std::logic_error("normalize_relation: plane selection failed");

  // Complete {u, w} with coordinate vectors, then orthogonalize them.
  std::vector<Vec> basis{u, w};
  const Rational uu = pairing(g, u, u), uw = pairing(g, u, w), wu = pairing(g, w, u), ww = pairing(g, w, w);
  const Rational det = uu * ww - wu * uw;
  for (std::size_t k = 0; k < r && basis.size() < r; ++k) {
    RationalMatrix probe(r, basis.size() + 1);
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (std::size_t i = 0; i < r; ++i) probe(i, c) = basis[c][i];
    probe(k, basis.size()) = 1;
    if (rank(probe) != basis.size() + 1) continue;
    const Vec ek = unit(r, k);
    // Solve B(v,u) = B(v,w) = 0 for v = e_k - alpha u - beta w.
    const Rational bu = pairing(g, ek, u), bw = pairing(g, ek, w);
    const Rational alpha = (bu * ww - bw * wu) / det;
    const Rational beta = (uu * bw - uw * bu) / det;
    basis.push_back(axpy(axpy(ek, -alpha, u), -beta, w));
  }

  NormalizedRelation nr;
  nr.symmetry = rel.symmetry;
  nr.basis_change = RationalMatrix(r, r);
  std::vector<int> degrees;
  for (std::size_t c = 0; c < r; ++c) {
    const auto deg = vector_degree(alphabet, basis[c]);
    if (!deg) throw std::invalid_argument("normalize_relation: basis change would mix letter degrees");
    degrees.push_back(*deg);
    for (std::size_t i = 0; i < r; ++i) nr.basis_change(i, c) = basis[c][i];
  }
  nr.alphabet = Alphabet(std::move(degrees));
  nr.transformed = nr.basis_change.transpose() * g * nr.basis_change;
  const RationalMatrix& h = nr.transformed;
  if (h(0, 1) != 1) throw std::logic_error("normalize_relation: pairing of the plane is not 1");
  for (std::size_t k = 2; k < r; ++k)
    if (h(0, k) != 0 || h(1, k) != 0 || h(k, 0) != 0 || h(k, 1) != 0)
      throw std::logic_error("normalize_relation: complement not orthogonal to the plane");

  nr.algebra_rewrite = TensorElement(nr.alphabet);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == 0 && j == 1) continue;
      if (h(i, j) != 0) nr.algebra_rewrite.add_term(Word{static_cast<Letter>(i), static_cast<Letter>(j)}, -h(i, j));
    }
  nr.lie_tail = TensorElement(nr.alphabet);
  for (std::size_t k = 2; k < r; ++k)
    for (std::size_t l = k + 1; l < r; ++l) {
      if (h(k, l) == 0) continue;
      nr.lie_tail.add_term(Word{static_cast<Letter>(k), static_cast<Letter>(l)}, -h(k, l));
      nr.lie_tail.add_term(Word{static_cast<Letter>(l), static_cast<Letter>(k)}, h(k, l));
    }
  return nr;
}

std::vector<std::string> generator_names(const SpaceModel& space, int count) {
  std::vector<std::string> names;
  const bool pairs = std::holds_alternative<ConnectedSumModel>(space);
  for (int i = 0; i < count; ++i) {
    if (pairs)
      names.push_back((i % 2 == 0 ? "α" : "β") + subscript(i / 2 + 1));
    else
      names.push_back("α" + subscript(i + 1));
  }
  return names;
}

}  // namespace looptop
