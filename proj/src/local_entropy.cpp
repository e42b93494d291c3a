#include "mfent/local_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mfent/errors.hpp"
#include "mfent/log_domain.hpp"

namespace mfent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxTypes = std::size_t{1} << 24;

// -(1/n) log mass(prefix_{n+M}) for n = 1..|x| - M (index n - 1).
std::vector<double> rates(const MeasureModel& model, const Word& x, int offset) {
  const auto lm = model.prefix_log_masses(x, x.size());
  std::vector<double> out;
  for (std::size_t len = static_cast<std::size_t>(offset) + 1; len <= x.size(); ++len) {
    const double n = static_cast<double>(len) - offset;
    out.push_back(lm[len] == log_zero() ? kInf : -lm[len] / n);
  }
  return out;
}

void enumerate_types(int m, int n, std::vector<int>& counts, int symbol, int left,
                     std::vector<std::vector<int>>& out) {
  if (symbol == m - 1) {
    counts[static_cast<std::size_t>(symbol)] = left;
    if (out.size() >= kMaxTypes) throw NumericError("too many symbol-frequency types to scan");
    out.push_back(counts);
    return;
  }
  for (int c = left; c >= 0; --c) {
    counts[static_cast<std::size_t>(symbol)] = c;
    enumerate_types(m, n, counts, symbol + 1, left - c, out);
  }
}

}  // namespace

LocalEntropySample local_entropy(const MeasureModel& model, const Word& x, DepthOffset k, int n_max,
                                 double tail_fraction) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw DomainError("tail fraction must lie in (0, 1]");
  const std::size_t need = static_cast<std::size_t>(n_max + k.value());
  if (x.size() < need)
    throw DomainError("word of length " + std::to_string(x.size()) + " is shorter than n_max + k = " +
                      std::to_string(need));
  LocalEntropySample out;
  out.word = x;
  out.k = k;
  out.estimates = rates(model, x.prefix(need), k.value());
  const std::size_t tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n_max))));
  const auto begin = out.estimates.end() - static_cast<std::ptrdiff_t>(tail);
  out.lower = *std::min_element(begin, out.estimates.end());
  out.upper = *std::max_element(begin, out.estimates.end());
  out.zero_mass = std::any_of(out.estimates.begin(), out.estimates.end(), [](double e) { return e == kInf; });
  if (out.zero_mass) out.upper = kInf;
  return out;
}

bool filtration_member(const MeasureModel& model, const Word& x, double beta, double delta, DepthOffset M, int N) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (x.size() < static_cast<std::size_t>(N + M.value())) throw DomainError("word is shorter than N + M");
  const auto r = rates(model, x, M.value());
  for (std::size_t n = static_cast<std::size_t>(N); n <= r.size(); ++n) {
    if (!(r[n - 1] > beta - delta && r[n - 1] < beta + delta)) return false;
  }
  return true;
}

bool filtration_lower_member(const MeasureModel& model, const Word& x, double beta, double delta, DepthOffset M,
                             int N) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (x.size() < static_cast<std::size_t>(N + M.value())) throw DomainError("word is shorter than N + M");
  const auto r = rates(model, x, M.value());
  for (std::size_t n = static_cast<std::size_t>(N); n <= r.size(); ++n) {
    if (!(r[n - 1] > beta - delta)) return false;
  }
  return true;
}

std::vector<Word> sample_level_set(const MeasureModel& model, double beta, double tol, int n, std::size_t count,
                                   std::uint64_t seed) {
  if (model.kind() != MeasureModel::Kind::bernoulli)
    throw DomainError("level-set sampling supports Bernoulli measures only");
  if (n < 1) throw DomainError("word length n must be >= 1");
  if (!(tol >= 0.0)) throw DomainError("tol must be >= 0");
  const auto& p = model.bernoulli_weights();
  const int m = static_cast<int>(p.size());
  double lo = kInf;
  double hi = -kInf;
  for (double pi : p) {
    if (pi <= 0.0) continue;
    lo = std::min(lo, -std::log(pi));
    hi = std::max(hi, -std::log(pi));
  }
  if (!(beta >= lo - tol && beta <= hi + tol))
    throw DomainError("no point has local entropy " + std::to_string(beta) + ": the attainable range is [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "], so the level set is empty");

  std::vector<std::vector<int>> types;
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  enumerate_types(m, n, counts, 0, n, types);
  const std::vector<int>* best = nullptr;
  double best_gap = kInf;
  for (const auto& type : types) {
    double s = 0.0;
    bool possible = true;
    for (int i = 0; i < m; ++i) {
      const int c = type[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (p[static_cast<std::size_t>(i)] <= 0.0) {
        possible = false;
        break;
      }
      s -= c * std::log(p[static_cast<std::size_t>(i)]);
    }
    if (!possible) continue;
    const double gap = std::abs(s / n - beta);
    if (gap < best_gap) {
      best_gap = gap;
      best = &type;
    }
  }
  if (best == nullptr || best_gap > tol)
    throw DomainError("no symbol-frequency type of length " + std::to_string(n) + " lies within " +
                      std::to_string(tol) + " of beta = " + std::to_string(beta));

  std::vector<Symbol> base;
  for (int i = 0; i < m; ++i) base.insert(base.end(), static_cast<std::size_t>((*best)[static_cast<std::size_t>(i)]), i);
  std::mt19937_64 rng(seed);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::shuffle(base.begin(), base.end(), rng);
    out.emplace_back(base);
  }
  return out;
}

double mean_local_entropy(const std::vector<LocalEntropySample>& samples) {
  if (samples.empty()) throw DomainError("mean local entropy needs at least one sample");
  double acc = 0.0;
  for (const auto& s : samples) acc += 0.5 * (s.lower + s.upper);
  return acc / static_cast<double>(samples.size());
}

}  // namespace mfent
