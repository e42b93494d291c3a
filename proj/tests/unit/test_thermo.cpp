#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mfent/errors.hpp"
#include "mfent/thermo.hpp"

using namespace mfent;

namespace {

const double kLog2 = std::log(2.0);

ShiftSpace golden_mean() {
  Eigen::MatrixXi a(2, 2);
  a << 1, 1, 1, 0;
  return ShiftSpace(a);
}

Potential zero_potential(const ShiftSpace& s) {
  Potential psi;
  for (const Word& w : admissible_words(s, 2)) psi.table[w] = 0.0;
  return psi;
}

}  // namespace

TEST_CASE("pressure examples") {
  const MeasureModel skew = MeasureModel::bernoulli({0.3, 0.7});
  const Potential psi = *skew.defining_potential();
  for (double q : {-2.0, -0.5, 0.0, 1.0, 2.5})
    CHECK(pressure(ShiftSpace::full(2), psi, q) ==
          doctest::Approx(std::log(std::pow(0.3, q) + std::pow(0.7, q))).epsilon(1e-12));
  Eigen::MatrixXd P(2, 2);
  P << 0.4, 0.6, 1.0, 0.0;
  const MeasureModel chain = MeasureModel::markov(golden_mean(), P);
  CHECK(std::abs(pressure(golden_mean(), *chain.defining_potential(), 1.0)) <= 1e-12);
  CHECK(pressure(golden_mean(), zero_potential(golden_mean()), 1.0) ==
        doctest::Approx(std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
  Eigen::MatrixXi periodic(2, 2);
  periodic << 0, 1, 1, 0;
  CHECK_THROWS_AS(pressure(ShiftSpace(periodic), zero_potential(ShiftSpace(periodic)), 1.0), DomainError);
}

TEST_CASE("closed-form partition growth rates") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  for (double q : {-3.0, -1.0, 0.0, 0.5, 2.0}) CHECK(closed_form_h(fair, q) == doctest::Approx((1.0 - q) * kLog2));
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  CHECK(closed_form_h(quarter, 0.0) == doctest::Approx(kLog2));
  CHECK(closed_form_h(MeasureModel::bernoulli({1.0, 0.0}), -1.0) == std::numeric_limits<double>::infinity());
  CHECK(closed_form_h(MeasureModel::bernoulli({1.0, 0.0}), 2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(closed_form_h(mixture(fair, quarter, 0.5), 1.0), DomainError);
}

TEST_CASE("Gibbs identity") {
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  CHECK(gibbs_identity_residual(quarter, 2.0) <= 1e-12);
  CHECK(gibbs_identity(quarter, 2.0).growth_rate == doctest::Approx(std::log(5.0 / 8.0)));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd P(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) P(i, j) = u(rng);
      P.row(i) /= P.row(i).sum();
    }
    const MeasureModel m = MeasureModel::markov(ShiftSpace::full(3), P);
    for (double q : {-2.0, -1.0, 0.5, 1.0, 2.0}) CHECK(gibbs_identity_residual(m, q) <= 1e-9);
  }
  Potential psi;
  psi.r = 3;
  for (const Word& w : admissible_words(golden_mean(), 3)) psi.table[w] = 0.1 * static_cast<double>(w[0] + 2 * w[2]);
  const MeasureModel g = MeasureModel::gibbs(golden_mean(), psi);
  for (double q : {-1.5, 0.3, 2.0}) CHECK(gibbs_identity_residual(g, q) <= 1e-9);
  CHECK_THROWS_AS(gibbs_identity(MeasureModel::bernoulli({1.0, 0.0}), 1.0), DomainError);
}

TEST_CASE("pressure is convex in the scale") {
  Potential psi;
  psi.r = 2;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 1.0);
  for (const Word& w : admissible_words(golden_mean(), 2)) psi.table[w] = u(rng);
  std::vector<double> values;
  for (int i = -20; i <= 20; ++i) values.push_back(pressure(golden_mean(), psi, 0.25 * i));
  for (std::size_t i = 1; i + 1 < values.size(); ++i) CHECK(values[i + 1] - 2 * values[i] + values[i - 1] >= -1e-9);
}

TEST_CASE("correlation entropy") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  for (double q : {-2.0, 0.0, 0.5, 3.0})
    for (int n : {1, 5, 12}) CHECK(std::abs(correlation_entropy(fair, q, n, DepthOffset(0)) - kLog2) <= 1e-12);
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  CHECK(std::abs(correlation_entropy(quarter, 2.0, 14, DepthOffset(0)) - std::log(8.0 / 5.0)) <= 1e-12);
  CHECK(correlation_entropy(quarter, 0.0, 10, DepthOffset(0)) == doctest::Approx(kLog2));
  CHECK_THROWS_AS(correlation_entropy(fair, 1.0, 4, DepthOffset(0)), DomainError);
}
