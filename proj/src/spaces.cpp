#include "looptop/spaces.hpp"

#include "looptop/lyndon.hpp"
#include "looptop/ncalgebra.hpp"
#include "looptop/ntheory.hpp"
#include "looptop/smith.hpp"

#include <stdexcept>

namespace looptop {

namespace {

std::string superscript(int k) {
  static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(k)) s += digits[c - '0'];
  return s;
}

std::string sphere(int h) { return "S" + superscript(h); }

std::string primes_text(const std::vector<Integer>& primes) {
  std::string s;
  for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? ", " : "") + primes[i].get_str();
  return s;
}

std::string loop_text(const std::vector<Summand>& summands, bool infinite, int max_dim,
                      const std::vector<Integer>& inverted) {
  std::string s = "ΩX ≃ ";
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (i) s += " × ";
    const auto& sm = summands[i];
    if (sm.multiplicity == 1)
      s += "Ω" + sphere(sm.sphere_dim);
    else
      s += "(Ω" + sphere(sm.sphere_dim) + ")^" + sm.multiplicity.get_str();
  }
  if (summands.empty()) s += "*";
  if (infinite) s += " × ⋯ (weak product; factors listed through dimension " + std::to_string(max_dim) + ")";
  if (!inverted.empty()) s += ", after inverting " + primes_text(inverted);
  return s;
}

// Witness strings for every dimension whose multiplicity is small enough.
void attach_witnesses(std::vector<Summand>& summands, const SpaceModel& space, int max_degree) {
  const auto [alphabet, rel] = relation_from_space(space);
  const NormalizedRelation nr = normalize_relation(alphabet, rel);
  int limit = 0;
  for (const auto& sm : summands) {
    if (sm.multiplicity > kWitnessLimit) break;
    limit = sm.sphere_dim - 1;
  }
  limit = std::min(limit, max_degree);
  if (limit < 1) return;
  const auto words = lyndon_avoiding(nr.alphabet, nr.forbidden, limit);
  const auto names = generator_names(space, nr.alphabet.size());
  for (auto& sm : summands) {
    const int degree = sm.sphere_dim - 1;
    if (degree > limit) break;
    const auto it = words.find(degree);
    const std::size_t found = it == words.end() ? 0 : it->second.size();
    if (Integer(found) != sm.multiplicity)
      throw IntegrityError("decomposition: Lyndon count " + std::to_string(found) + " in degree " +
                           std::to_string(degree) + " disagrees with multiplicity " + sm.multiplicity.get_str());
    if (it != words.end())
      for (const Word& w : it->second) sm.witnesses.push_back(bracket_string(w, names));
  }
}

}  // namespace

std::vector<Integer> bad_primes(const IntMatrix& q) {
  if (rank(q) < 2) throw std::invalid_argument("bad_primes: rank of Q over Q must be >= 2");
  Integer g = 0;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t k = i + 1; k < q.rows(); ++k)
      for (std::size_t j = 0; j < q.cols(); ++j)
        for (std::size_t l = j + 1; l < q.cols(); ++l) {
          const Integer minor = q(i, j) * q(k, l) - q(i, l) * q(k, j);
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
        }
  return prime_divisors(g);
}

std::string to_string(Classification c) { return c == Classification::Elliptic ? "elliptic" : "hyperbolic"; }

std::string to_string(MooreVerdict v) {
  switch (v) {
    case MooreVerdict::EllipticFiniteExponents: return "elliptic-with-finite-exponents";
    case MooreVerdict::HyperbolicNoExponent: return "hyperbolic-no-exponent-all-primes";
    default: return "hyperbolic-unbounded-cofinite-primes";
  }
}

bool DecompositionReport::same_content(const DecompositionReport& o) const {
  return max_dimension == o.max_dimension && inverted_primes == o.inverted_primes && summands == o.summands &&
         classification == o.classification && growth == o.growth && loop_decomposition == o.loop_decomposition &&
         moore == o.moore && notes == o.notes;
}

std::string group_string(const std::vector<Integer>& invariants) {
  std::string s;
  for (const auto& d : invariants) {
    if (d == 1) continue;
    s += (s.empty() ? "" : " ⊕ ") + (d == 0 ? std::string("Z") : "Z/" + d.get_str());
  }
  return s.empty() ? "0" : s;
}

std::vector<Integer> pi10_v8(long long m) {
  // generators g = gamma o beta (order 24), e = E delta (order 3); relations as columns
  const Integer mm(static_cast<long>(m));
  IntMatrix rel{{24, 0, 1, 1 + 2 * mm}, {0, 3, -mm, mm}};
  std::vector<Integer> out;
  for (const auto& d : invariant_factors(rel))
    if (d != 1) out.push_back(d);
  return out;
}

bool smoothable(int n, long long m) {
  const long long modulus = n == 4 ? 4 : n == 8 ? 8 : 0;
  if (modulus == 0) throw std::invalid_argument("smoothable: n must be 4 or 8");
  const long long r = ((m % modulus) + modulus) % modulus;
  return (r * (r + 1)) % modulus == 0;
}

long long finite_pi1_betti(long long l, long long r) {
  if (l < 1) throw std::invalid_argument("finite_pi1_betti: group order must be >= 1");
  if (r < 0) throw std::invalid_argument("finite_pi1_betti: Betti number must be >= 0");
  return l * (r + 2) - 2;
}

Classification classify_rational(const SpaceModel& space) {
  validate(space);
  if (const auto* m = std::get_if<ManifoldModel>(&space)) return m->r <= 2 ? Classification::Elliptic : Classification::Hyperbolic;
  if (const auto* t = std::get_if<ConnectedSumModel>(&space)) return t->r() == 1 ? Classification::Elliptic : Classification::Hyperbolic;
  if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    if (x->r() >= 3) return Classification::Hyperbolic;
    // r <= 2: elliptic exactly when the cup form is nondegenerate over Q
    return static_cast<int>(rank(x->form)) == x->r() ? Classification::Elliptic : Classification::Hyperbolic;
  }
  return Classification::Elliptic;
}

MooreReport moore_report(const SpaceModel& space) {
  MooreReport out;
  const Classification c = classify_rational(space);
  if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    if (c == Classification::Elliptic) {
      out.verdict = MooreVerdict::EllipticFiniteExponents;
      if (x->r() == 2) {
        const int window = 16;
        for (int d = 2; d <= window; ++d)
          if (htpy_closed_form(d, 2) != 0) throw IntegrityError("moore: r = 2 Lie algebra is not finite in the window");
        out.justification = "window-limited: the Lie algebra counts vanish for weights 2.." + std::to_string(window) +
                            ", so the space is treated as rationally elliptic with finite p-exponents; the two-cell "
                            "case with r = 2 is not settled in general";
      } else {
        out.justification = "rationally elliptic (one n-cell with nonzero cup square): finite p-exponents for every prime";
      }
    } else if (x->r() >= 3) {
      out.verdict = MooreVerdict::HyperbolicUnboundedCofinite;
      out.justification =
          "rationally hyperbolic with r >= 3 n-cells: unbounded p-primary torsion for all but finitely many primes "
          "(the exceptional set is not computed)";
    } else {
      out.verdict = MooreVerdict::HyperbolicUnboundedCofinite;
      out.justification =
          "rationally hyperbolic with a degenerate cup form and r <= 2: unbounded p-exponents are expected but this "
          "case is not settled here";
    }
    return out;
  }
  if (c == Classification::Elliptic) {
    out.verdict = MooreVerdict::EllipticFiniteExponents;
    if (std::holds_alternative<ManifoldModel>(space) && std::get<ManifoldModel>(space).r == 2)
      out.justification = "rationally elliptic (Betti number 2): homotopy groups agree with those of S^n × S^n, "
                          "so Moore's conjecture holds with finite p-exponents for every prime";
    else if (std::holds_alternative<ConnectedSumModel>(space))
      out.justification = "rationally elliptic: the space is a sphere product, with finite p-exponents for every prime";
    else
      out.justification = "rationally elliptic (Betti number 1): the loop space splits into a sphere and the loop "
                          "space of a sphere, with finite p-exponents for every prime";
  } else {
    out.verdict = MooreVerdict::HyperbolicNoExponent;
    out.justification = "rationally hyperbolic: spheres of arbitrarily large dimension occur among the summands, so "
                        "no prime has a finite p-exponent; Moore's conjecture holds";
  }
  return out;
}

DecompositionReport betti_one_report(int n, long long m, int max_dim) {
  const BettiOneModel b = make_betti_one(n, m);
  validate(SpaceModel{b});
  DecompositionReport rep;
  rep.space = b;
  rep.max_dimension = max_dim;
  rep.classification = Classification::Elliptic;
  rep.moore = moore_report(SpaceModel{b});
  const int top = 3 * n - 1;
  if (max_dim <= 0 || top <= max_dim) rep.summands.push_back({top, 1, {}});
  if (n == 2) {
    rep.loop_decomposition = "ΩX ≃ S¹ × ΩS⁵";
    rep.notes = {"π_2 = Z", "π_k ≅ π_k S⁵ for k ≥ 3"};
    return rep;
  }
  if (n == 4) {
    const auto pi10 = pi10_v8(b.m);
    if (b.m % 3 == 1) {
      rep.inverted_primes = {3};
      rep.loop_decomposition = "ΩX ≃ S³ × ΩS¹¹, after inverting 3";
      rep.notes = {"integral decomposition fails: π_10 = " + group_string(pi10) + " while π_9 S³ = Z/3",
                   "π_k ⊗ Z[1/3] ≅ (π_{k-1} S³ ⊕ π_k S¹¹) ⊗ Z[1/3]",
                   "homotopy groups agree for all m ≡ 1 mod 3"};
    } else {
      rep.loop_decomposition = "ΩX ≃ S³ × ΩS¹¹";
      rep.notes = {"π_k ≅ π_{k-1} S³ ⊕ π_k S¹¹", "π_10 = " + group_string(pi10)};
    }
    rep.notes.push_back(std::string("smoothing condition m(m+1) ≡ 0 mod 4: ") + (smoothable(4, b.m) ? "holds" : "fails"));
    return rep;
  }
  rep.inverted_primes = {2, 3};
  rep.loop_decomposition = "ΩX ≃ S⁷ × ΩS²³, after inverting 2, 3";
  rep.notes = {"π_k ⊗ Z[1/6] ≅ (π_{k-1} S⁷ ⊕ π_k S²³) ⊗ Z[1/6]",
               std::string("smoothing condition m(m+1) ≡ 0 mod 8: ") + (smoothable(8, b.m) ? "holds" : "fails")};
  return rep;
}

DecompositionReport decomposition_report(const SpaceModel& space, int max_dim) {
  validate(space);
  if (max_dim < 2) throw std::invalid_argument("decomposition: max dimension must be >= 2");
  if (const auto* b = std::get_if<BettiOneModel>(&space)) return betti_one_report(b->n, b->m, max_dim);
  if (const auto* m = std::get_if<ManifoldModel>(&space); m && m->r == 1) {
    DecompositionReport rep = betti_one_report(m->n, 0, max_dim);
    rep.space = space;
    rep.notes.insert(rep.notes.begin(), "Betti number 1: reported for the standard projective plane (m = 0); use "
                                        "betti1:n:m for other Hopf-invariant-one attaching maps");
    return rep;
  }
  DecompositionReport rep;
  rep.space = space;
  rep.max_dimension = max_dim;
  rep.classification = classify_rational(space);
  rep.moore = moore_report(space);

  if (std::holds_alternative<ConnectedSumModel>(space)) {
    const auto& t = std::get<ConnectedSumModel>(space);
    const int N = max_dim - 1;
    const PowerSeries denom = connected_sum_denominator(t.factors, N);
    const DimensionTable by_log = moebius_invert_dims(log_lambda_coefficients(denom, N), N);
    const DimensionTable by_pbw = pbw_match_ungraded(denom.inverse(), N);
    if (!(by_log == by_pbw)) throw IntegrityError("decomposition: Moebius and PBW counts disagree");
    for (int d = 1; d <= N; ++d)
      if (by_pbw.at(d) != 0) rep.summands.push_back({d + 1, by_pbw.at(d), {}});
  } else {
    int n = 0, r = 0;
    if (const auto* mm = std::get_if<ManifoldModel>(&space)) {
      n = mm->n;
      r = mm->r;
    } else {
      const auto& x = std::get<TwoCellModel>(space);
      if (rank(x.form) < 2)
        throw std::invalid_argument("decomposition: cup-product form of rank < 2 over Q has no decomposition");
      n = x.n;
      r = x.r();
      rep.inverted_primes = bad_primes(x.form);
    }
    const auto counts = sphere_summand_counts(n, r, max_dim);
    const int N = max_dim - 1;
    const DimensionTable by_pbw = pbw_match_ungraded(manifold_denominator(n, r, N).inverse(), N);
    for (const auto& [h, c] : counts) {
      if (by_pbw.at(h - 1) != c) throw IntegrityError("decomposition: closed form and PBW counts disagree");
      if (c != 0) rep.summands.push_back({h, c, {}});
    }
    if (r >= 3) rep.growth = growth_rate(r);
  }
  attach_witnesses(rep.summands, space, max_dim - 1);
  const bool infinite = rep.classification == Classification::Hyperbolic;
  rep.loop_decomposition = loop_text(rep.summands, infinite, max_dim, rep.inverted_primes);
  if (std::holds_alternative<ConnectedSumModel>(space) && infinite)
    rep.notes.push_back("growth rate omitted: the connected-sum denominator is not quadratic in general");
  if (!rep.summands.empty() && rep.summands.back().witnesses.empty())
    rep.notes.push_back("witnesses listed only for dimensions with multiplicity <= " + std::to_string(kWitnessLimit));
  return rep;
}

}  // namespace looptop
