#pragma once

// Finite graded coalgebras of the supported spaces, their cobar complexes up
// to a degree cutoff, and integral homology by Smith normal form.

#include "looptop/smith.hpp"
#include "looptop/space_model.hpp"
#include "looptop/words.hpp"

#include <map>
#include <string>
#include <vector>

namespace looptop {

struct CoalgebraGenerator {
  std::string name;
  int degree = 0;
};

struct DiagonalTerm {
  std::size_t left = 0;
  std::size_t right = 0;
  Integer coeff;
};

/// Reduced diagonal on a finite list of homogeneous generators.
struct FiniteCoalgebra {
  std::vector<CoalgebraGenerator> generators;
  std::vector<std::vector<DiagonalTerm>> diagonal;  ///< per generator

  std::size_t add_generator(std::string name, int degree);
  void add_term(std::size_t source, std::size_t left, std::size_t right, const Integer& coeff);
  /// e.g. "a₁⊗a₂ + a₂⊗a₁"; "0" for a primitive generator.
  std::string diagonal_string(std::size_t generator) const;
};

/// Throws IntegrityError on a degree mismatch or a coassociativity failure.
void check_coalgebra(const FiniteCoalgebra& c);

/// The 1 / middle / top coalgebra of a space (unit omitted).
FiniteCoalgebra coalgebra_of(const SpaceModel& space);

struct CobarLimits {
  std::size_t max_cells = 200000;
  int max_cutoff = 16;
};

/// Default limits; LOOPTOP_MAX_CELLS overrides the cell cap.
CobarLimits cobar_limits_from_env();

/// Number of basis words of degree <= cutoff, counted without building them.
std::size_t cobar_cell_count(const FiniteCoalgebra& c, int cutoff);

struct HomologyGroup {
  Integer rank;
  std::vector<Integer> torsion;     ///< prime-power orders, sorted
  std::vector<Integer> invariants;  ///< invariant factors > 1 of the incoming boundary
};

/// Cobar complex: words in desuspended generators, split into blocks by
/// degree and by a multigrading preserved by the differential.
class ChainComplex {
 public:
  using Grade = std::vector<long long>;

  ChainComplex(FiniteCoalgebra coalgebra, int cutoff, const CobarLimits& limits = CobarLimits{});

  int cutoff() const { return cutoff_; }
  const FiniteCoalgebra& coalgebra() const { return coalgebra_; }
  std::size_t total_cells() const { return total_cells_; }

  /// Chain rank in degree d (0 <= d <= cutoff).
  std::size_t dimension(int d) const;
  /// Basis of degree d in lexicographic word order.
  std::vector<Word> basis(int d) const;
  /// Differential C_d -> C_{d-1} as a dense matrix in the basis() orders.
  IntMatrix differential(int d) const;
  /// Differential applied to one basis word.
  std::map<Word, Integer> apply(const Word& word) const;
  /// Desuspended degree of a word.
  int degree(const Word& word) const;

  /// Requires 0 <= d < cutoff; OutOfWindowError otherwise.
  HomologyGroup homology(int d) const;

  /// Sum over degrees d of (-1)^d dim C_d restricted to one weight.
  std::map<long long, long long> euler_by_weight() const;
  std::map<long long, long long> homology_euler_by_weight() const;

 private:
  struct Block {
    std::vector<Word> basis;
    SparseIntMatrix boundary;  ///< into the block of degree d-1 with the same grade
  };
  using Key = std::pair<int, Grade>;

  void enumerate(const CobarLimits& limits);
  void build_differentials();
  void check_square_zero() const;
  const SparseSmith& smith_of(const Key& key) const;
  long long weight(const Word& word) const;

  FiniteCoalgebra coalgebra_;
  int cutoff_;
  std::vector<Grade> letter_grade_;
  std::map<Key, Block> blocks_;
  std::size_t total_cells_ = 0;
  mutable std::map<Key, SparseSmith> smith_cache_;
};

struct DegreeCheck {
  int degree = 0;
  Integer expected;
  HomologyGroup observed;
  bool ok = true;
};

struct VerificationReport {
  std::string space;
  int cutoff = 0;
  std::size_t cells = 0;
  std::vector<Integer> allowed_torsion_primes;
  std::vector<DegreeCheck> degrees;
  std::vector<std::string> discrepancies;

  bool passed() const { return discrepancies.empty(); }
};

/// Expected loop-homology ranks for degrees 0..N from the closed-form series.
std::vector<Integer> expected_loop_ranks(const SpaceModel& space, int N);

/// Builds the cobar complex to `cutoff` and compares degrees 0..cutoff-1 with
/// the closed-form ranks and the torsion allowed for the space.
VerificationReport verify_loop_homology(const SpaceModel& space, int cutoff,
                                        const CobarLimits& limits = CobarLimits{});

}  // namespace looptop
