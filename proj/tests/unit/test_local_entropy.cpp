#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mfent/errors.hpp"
#include "mfent/local_entropy.hpp"

using namespace mfent;

namespace {

const double kLog2 = std::log(2.0);

Word repeated(const Word& block, std::size_t times) {
  std::vector<Symbol> s;
  for (std::size_t i = 0; i < times; ++i) s.insert(s.end(), block.symbols().begin(), block.symbols().end());
  return Word(s);
}

Word random_word(std::size_t n, std::mt19937_64& rng) {
  std::vector<Symbol> s(n);
  for (auto& c : s) c = static_cast<Symbol>(rng() % 2);
  return Word(s);
}

}  // namespace

TEST_CASE("local entropy along prefixes") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  std::mt19937_64 rng(8);
  const auto s = local_entropy(fair, random_word(64, rng), DepthOffset(0), 64);
  for (double e : s.estimates) CHECK(e == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(s.lower == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(s.upper == doctest::Approx(kLog2).epsilon(1e-12));

  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  const auto equal = local_entropy(quarter, repeated(Word{0, 1}, 1000), DepthOffset(0), 2000);
  CHECK(std::abs(equal.lower - 0.5 * std::log(16.0 / 3.0)) <= 2e-2);
  CHECK(std::abs(equal.upper - 0.5 * std::log(16.0 / 3.0)) <= 2e-2);
  const auto ones = local_entropy(quarter, repeated(Word{1}, 120), DepthOffset(0), 100);
  CHECK(std::abs(ones.lower - std::log(4.0 / 3.0)) <= 1e-3);
  CHECK(std::abs(ones.upper - std::log(4.0 / 3.0)) <= 1e-3);
  CHECK(ones.estimates.size() == 100);
}

TEST_CASE("zero-mass prefixes are flagged") {
  const MeasureModel degenerate = MeasureModel::bernoulli({1.0, 0.0});
  const auto s = local_entropy(degenerate, Word::parse("0001000"), DepthOffset(0), 7);
  CHECK(s.zero_mass);
  CHECK(s.upper == std::numeric_limits<double>::infinity());
  const auto t = local_entropy(degenerate, Word::parse("0000"), DepthOffset(0), 4);
  CHECK_FALSE(t.zero_mass);
  CHECK(t.upper == 0.0);
  CHECK_THROWS_AS(local_entropy(degenerate, Word::parse("00"), DepthOffset(1), 2), DomainError);
  CHECK_THROWS_AS(local_entropy(degenerate, Word::parse("00"), DepthOffset(0), 2, 0.0), DomainError);
}

TEST_CASE("filtration membership") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Word x = random_word(40, rng);
    CHECK(filtration_member(fair, x, kLog2, 1e-6, DepthOffset(0), 1 + i));
    CHECK_FALSE(filtration_member(fair, x, 1.0, 0.1, DepthOffset(0), 5));
  }
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  CHECK(filtration_member(quarter, repeated(Word{1}, 80), std::log(4.0 / 3.0), 0.05, DepthOffset(0), 50));
  CHECK_THROWS_AS(filtration_member(quarter, Word::parse("11"), 0.3, 0.1, DepthOffset(1), 2), DomainError);
}

TEST_CASE("level-set sampling") {
  const MeasureModel quarter = MeasureModel::bernoulli({0.25, 0.75});
  const auto zeros = sample_level_set(quarter, std::log(4.0), 1e-3, 30, 5, 1);
  REQUIRE(zeros.size() == 5);
  for (const Word& w : zeros) CHECK(w == repeated(Word{0}, 30));

  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const auto any = sample_level_set(fair, kLog2, 1e-9, 24, 10, 5);
  CHECK(any.size() == 10);
  for (const Word& w : any) CHECK(filtration_member(fair, w, kLog2, 1e-6, DepthOffset(0), 1));

  CHECK_THROWS_AS(sample_level_set(quarter, 2.0, 1e-3, 30, 5, 1), DomainError);
  CHECK_THROWS_AS(sample_level_set(quarter, 0.2, 1e-3, 30, 5, 1), DomainError);
  CHECK_THROWS_AS(sample_level_set(mixture(fair, quarter, 0.5), 0.5, 1e-3, 4, 1, 1), DomainError);

  const double beta = 0.5 * std::log(16.0 / 3.0);
  const auto a = sample_level_set(quarter, beta, 1e-3, 200, 8, 42);
  const auto b = sample_level_set(quarter, beta, 1e-3, 200, 8, 42);
  CHECK(a == b);
  for (const Word& w : a) CHECK(filtration_member(quarter, w, beta, 2e-3, DepthOffset(0), 200));
}

TEST_CASE("mean local entropy") {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  std::vector<LocalEntropySample> samples;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 4; ++i) samples.push_back(local_entropy(fair, random_word(20, rng), DepthOffset(0), 20));
  CHECK(mean_local_entropy(samples) == doctest::Approx(kLog2));
  CHECK_THROWS_AS(mean_local_entropy({}), DomainError);
}
