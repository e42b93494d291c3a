#pragma once

// Shift-invariant probability measures given by their cylinder masses.
//
// Every mass query returns the linear value together with its logarithm;
// sums of masses are formed in the log domain so deep cylinders do not
// underflow.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mfent/potential.hpp"
#include "mfent/symbolic.hpp"

namespace mfent {

struct CylinderMass {
  double value;
  double log_value;  // -inf for zero mass
};

/// Stationary chain on blocks of `block` symbols; Markov measures use
/// block = 1, Gibbs measures of an r-local potential use block = r - 1.
struct BlockChain {
  int block = 1;
  std::vector<Word> states;     // admissible words of length `block`, lexicographic
  std::vector<int> state_code;  // base-m code of a block -> state index or -1
  Eigen::MatrixXd P;            // transition between overlapping blocks
  Eigen::VectorXd pi;           // stationary distribution
  Eigen::MatrixXd log_P;
  Eigen::VectorXd log_pi;

  int state_of(std::span<const Symbol> block_symbols, int alphabet_size) const;
};

/// Data of a Gibbs measure built from a locally constant potential.
struct GibbsData {
  Potential potential;
  double perron_root;     // of the weighted transfer matrix exp(psi)
  Eigen::VectorXd left;   // left Perron vector, normalized left . right = 1
  Eigen::VectorXd right;  // right Perron vector
};

class MeasureModel {
 public:
  enum class Kind { bernoulli, markov, gibbs, mixture };

  /// Product measure on the full shift over p.size() symbols.
  static MeasureModel bernoulli(std::vector<double> p);
  /// Stationary vector solved from P.
  static MeasureModel markov(const ShiftSpace& space, const Eigen::MatrixXd& P);
  /// Stationary vector supplied; validated against P to 1e-12.
  static MeasureModel markov(const ShiftSpace& space, const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);
  static MeasureModel gibbs(const ShiftSpace& space, const Potential& potential);

  Kind kind() const;
  const ShiftSpace& space() const;

  CylinderMass mass(const Word& w) const;
  double log_mass(const Word& w) const;
  /// mass(wa) / mass(w), read off the one-step data where the model has it.
  double conditional(const Word& w, Symbol a) const;

  /// log masses of x's prefixes of length 0..max_length.
  std::vector<double> prefix_log_masses(const Word& x, std::size_t max_length) const;

  /// Bernoulli weights; empty for other kinds.
  const std::vector<double>& bernoulli_weights() const;
  /// Markov (block 1) or Gibbs (block r-1) chain; nullptr otherwise.
  const BlockChain* chain() const;
  const GibbsData* gibbs_data() const;
  /// Potential whose Gibbs measure this is: log p_b, log P_ab, or the Gibbs
  /// table. Empty for mixtures and when some admissible transition has mass 0.
  std::optional<Potential> defining_potential() const;

  /// Components of a mixture; nullptr otherwise.
  const MeasureModel* mixture_first() const;
  const MeasureModel* mixture_second() const;
  double mixture_weight() const;

  struct Impl;

 private:
  explicit MeasureModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend MeasureModel mixture(const MeasureModel&, const MeasureModel&, double);

  std::shared_ptr<const Impl> impl_;
};

CylinderMass cylinder_mass(const MeasureModel& model, const Word& w);

/// Formal convex combination lambda * a + (1 - lambda) * b.
MeasureModel mixture(const MeasureModel& a, const MeasureModel& b, double lambda);

/// Stationary vector of a row-stochastic irreducible matrix.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P);

struct DoublingReport {
  DepthOffset k;
  int n_max = 0;
  double empirical_sup = 1.0;          // +inf when a zero-mass child of a positive cylinder exists
  std::optional<double> analytic_bound;  // empty means unbounded

  bool bounded() const { return analytic_bound.has_value(); }
};

/// sup over n <= n_max and x of mass(prefix_{n+k-1}) / mass(prefix_{n+k}).
DoublingReport doubling_check(const MeasureModel& model, DepthOffset k, int n_max);

/// The k- and n-independent bound used by doubling_check.
std::optional<double> analytic_doubling_bound(const MeasureModel& model);

/// log masses of every admissible word of the given length, lexicographic.
/// Refuses (NumericError) beyond 2^24 words.
std::vector<double> level_log_masses(const MeasureModel& model, std::size_t length);

/// Words of the given length drawn from the measure itself (seeded).
std::vector<Word> sample_typical_words(const MeasureModel& model, std::size_t length, std::size_t count,
                                       std::uint64_t seed);

}  // namespace mfent
