#pragma once

// Pointwise decay rates of Bowen-ball masses along a finite prefix, the
// finite level-set filtration, and sampling of words with a prescribed rate.

#include <cstdint>
#include <vector>

#include "mfent/measure.hpp"
#include "mfent/symbolic.hpp"

namespace mfent {

struct LocalEntropySample {
  Word word;
  DepthOffset k;
  std::vector<double> estimates;  // estimates[n - 1] = -(1/n) log mass(prefix_{n+k}), n = 1..n_max
  double lower;                   // min over the tail
  double upper;                   // max over the tail; +inf when a prefix has zero mass
  bool zero_mass = false;
};

/// tail_fraction in (0, 1]: the share of the largest n used for lower/upper.
LocalEntropySample local_entropy(const MeasureModel& model, const Word& x, DepthOffset k, int n_max,
                                 double tail_fraction = 0.25);

/// beta - delta < -(1/n) log mass(prefix_{n+M}(x)) < beta + delta for every
/// N <= n <= |x| - M, with eps_M = 2^{-M}.
bool filtration_member(const MeasureModel& model, const Word& x, double beta, double delta, DepthOffset M, int N);
/// Only the lower inequality of filtration_member; this one is monotone in M
/// as well as in N.
bool filtration_lower_member(const MeasureModel& model, const Word& x, double beta, double delta, DepthOffset M,
                             int N);

/// Words of length n sharing one symbol-frequency type whose value
/// -(sum_i n_i log p_i)/n lies within tol of beta (the closest such type,
/// ties to the lexicographically largest count vector), in an order shuffled by
/// the seed. Bernoulli measures only. DomainError when beta is outside
/// [min_i -log p_i - tol, max_i -log p_i + tol] or no type is close enough.
std::vector<Word> sample_level_set(const MeasureModel& model, double beta, double tol, int n, std::size_t count,
                                   std::uint64_t seed);

/// Mean of (lower + upper) / 2 over samples: a Monte Carlo estimate only.
double mean_local_entropy(const std::vector<LocalEntropySample>& samples);

}  // namespace mfent
