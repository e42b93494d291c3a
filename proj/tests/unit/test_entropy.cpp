#include <cmath>
#include <limits>

#include "doctest.h"
#include "mfent/entropy.hpp"
#include "mfent/errors.hpp"

using namespace mfent;

namespace {

const double kLog2 = std::log(2.0);
const double kLogPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

ShiftSpace golden_mean() {
  Eigen::MatrixXi a(2, 2);
  a << 1, 1, 1, 0;
  return ShiftSpace(a);
}

// Maximal-entropy Markov measure of the golden-mean shift.
MeasureModel parry() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Eigen::MatrixXd P(2, 2);
  P << 1.0 / phi, 1.0 / (phi * phi), 1.0, 0.0;
  return MeasureModel::markov(golden_mean(), P);
}

}  // namespace

TEST_CASE("critical exponent root finding") {
  const auto uniform = critical_exponent([](double t) { return (kLog2 - t) * 8.0; }, -1.0, 1.0, 1e-12);
  CHECK(uniform.value == doctest::Approx(kLog2).epsilon(1e-11));
  CHECK_FALSE(uniform.degenerate);
  const auto single = critical_exponent([](double t) { return -5.0 * t; }, -1.0, 1.0, 1e-12);
  CHECK(std::abs(single.value) <= 1e-11);
  const auto flat = critical_exponent([](double) { return 0.0; }, -1.0, 3.0);
  CHECK(flat.degenerate);
  CHECK(flat.value == 1.0);
  // Roots far outside the initial bracket are found by widening it.
  CHECK(critical_exponent([](double t) { return 1000.0 - t; }, -1.0, 1.0).value == doctest::Approx(1000.0));
  CHECK(critical_exponent([](double t) { return -1000.0 - t; }, -1.0, 1.0).value == doctest::Approx(-1000.0));
  CHECK(critical_exponent([](double) { return kInf; }, -1.0, 1.0).value == kInf);
  CHECK(critical_exponent([](double) { return -kInf; }, -1.0, 1.0).value == -kInf);
  CHECK_THROWS_AS(critical_exponent([](double) { return 1.0; }, -1.0, 1.0), NumericError);
  CHECK_THROWS_AS(critical_exponent([](double t) { return -t; }, 1.0, -1.0), DomainError);
}

TEST_CASE("Bowen entropy examples") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const CylinderSet Y = CylinderSet::whole(ShiftSpace::full(2));
  const EntropyEstimate top = bowen_entropy(fair, Y, 0.0, DepthOffset(0));
  CHECK(top.value == doctest::Approx(kLog2).epsilon(1e-6));
  CHECK(top.method == EntropyMethod::root);
  CHECK(top.N_used == 16);
  CHECK(top.D_used == 16);
  CHECK(std::abs(bowen_entropy(fair, Y, 1.0, DepthOffset(0)).value) <= 0.01);
  const EntropyEstimate golden = bowen_entropy(parry(), CylinderSet::whole(golden_mean()), 0.0, DepthOffset(0));
  CHECK(std::abs(golden.value - kLogPhi) <= 0.01);
  CHECK(golden.error_bar >= 0.0);
  CHECK_THROWS_AS(bowen_entropy(MeasureModel::bernoulli({1.0, 0.0}), Y, 1.0, DepthOffset(0)), DomainError);
}

TEST_CASE("packing entropy examples") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const CylinderSet Y = CylinderSet::whole(ShiftSpace::full(2));
  CHECK(std::abs(packing_entropy_delta(fair, Y, 0.0, DepthOffset(0)).value - kLog2) <= 0.01);
  CHECK(std::abs(packing_entropy_delta(fair, Y, 2.0, DepthOffset(0)).value + kLog2) <= 0.01);
  // One cylinder per order: the chain above a single deep word.
  const MeasureModel skew = MeasureModel::bernoulli({0.3, 0.7});
  const CylinderSet point(ShiftSpace::full(2), {Word::parse("0110100110010110")});
  const std::vector<ScheduleEntry> short_schedule{{4, 4}, {8, 8}, {12, 12}};
  CHECK(std::abs(packing_entropy_delta(skew, point, 0.0, DepthOffset(0), short_schedule).value) <= 1e-8);

  for (int depth = 0; depth <= 3; ++depth) {
    const EntropyEstimate outer = packing_entropy(fair, Y, 0.0, DepthOffset(0), default_schedule(), depth);
    CHECK(outer.value == doctest::Approx(packing_entropy_delta(fair, Y, 0.0, DepthOffset(0)).value).epsilon(1e-9));
  }
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  const CylinderSet half(ShiftSpace::full(2), {Word{1}});
  CHECK(packing_entropy(quarter, half, 1.0, DepthOffset(0)).value <= 1e-9);
}

TEST_CASE("a finite union takes the larger exponent") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const ShiftSpace full = ShiftSpace::full(2);
  const Word deep = Word::parse("1111111111111111");
  const CylinderSet fat(full, {Word{0}});
  const CylinderSet thin(full, {deep});
  const CylinderSet both(full, {Word{0}, deep});
  const std::vector<ScheduleEntry> schedule{{4, 4}, {8, 8}, {12, 12}};
  const double a = packing_entropy(fair, fat, 0.0, DepthOffset(0), schedule).value;
  const double b = packing_entropy(fair, thin, 0.0, DepthOffset(0), schedule).value;
  const double ab = packing_entropy(fair, both, 0.0, DepthOffset(0), schedule).value;
  CHECK(a == doctest::Approx(kLog2).epsilon(1e-6));
  CHECK(std::abs(b) <= 1e-8);
  CHECK(std::abs(ab - std::max(a, b)) <= 0.01);
}

TEST_CASE("ordering of the three exponents") {
  const MeasureModel m = parry();
  const CylinderSet E(golden_mean(), {Word{0, 0}, Word{1, 0, 1}});
  const std::vector<ScheduleEntry> schedule{{4, 4}, {8, 8}, {12, 12}};
  for (double q : {-1.0, 0.0, 0.5, 2.0}) {
    const auto b = bowen_entropy(m, E, q, DepthOffset(0), schedule);
    const auto p = packing_entropy(m, E, q, DepthOffset(0), schedule);
    const auto d = packing_entropy_delta(m, E, q, DepthOffset(0), schedule);
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      CHECK(b.per_entry[i] <= p.per_entry[i] + 1e-9);
      CHECK(p.per_entry[i] <= d.per_entry[i] + 1e-9);
    }
    CHECK(b.value <= p.value + b.error_bar + p.error_bar + 1e-9);
    CHECK(p.value <= d.value + p.error_bar + d.error_bar + 1e-9);
  }
}

TEST_CASE("exponents at finer scales are not smaller") {
  const MeasureModel m = MeasureModel::bernoulli({0.3, 0.7});
  const CylinderSet E(ShiftSpace::full(2), {Word{0, 1}, Word{1, 1, 0}});
  const std::vector<ScheduleEntry> schedule{{6, 6}};
  double previous = -kInf;
  for (int k = 0; k <= 3; ++k) {
    const double v = packing_entropy_delta(m, E, 0.0, DepthOffset(k), schedule).raw;
    CHECK(v >= previous - 1e-9);
    previous = v;
  }
}

TEST_CASE("extended answers") {
  const MeasureModel degenerate = MeasureModel::bernoulli({1.0, 0.0});
  const CylinderSet Y = CylinderSet::whole(ShiftSpace::full(2));
  const std::vector<ScheduleEntry> schedule{{3, 3}, {5, 5}};
  CHECK(packing_entropy_delta(degenerate, Y, -1.0, DepthOffset(0), schedule).value == kInf);
  const CylinderSet dead(ShiftSpace::full(2), {Word{1}});
  CHECK(packing_entropy_delta(degenerate, dead, 2.0, DepthOffset(0), schedule).value == -kInf);
}

TEST_CASE("growth-rate estimates") {
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  const auto h2 = growth_rate_entropy(quarter, 2.0, DepthOffset(0));
  CHECK(h2.value == doctest::Approx(std::log(5.0 / 8.0)).epsilon(1e-12));
  CHECK(h2.method == EntropyMethod::growth_rate);
  const auto golden = growth_rate_entropy(parry(), 0.0, DepthOffset(1));
  CHECK(std::abs(golden.value - kLogPhi) <= 1e-3);
  CHECK(log_partition_sum(quarter, 1.0, 10) == doctest::Approx(0.0));
  CHECK_THROWS_AS(growth_rate_entropy(quarter, 0.0, DepthOffset(0), {{4, 4}, {4, 4}}), DomainError);
}
