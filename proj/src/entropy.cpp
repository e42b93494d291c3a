#include "mfent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mfent/errors.hpp"
#include "mfent/log_domain.hpp"
#include "mfent/premeasure.hpp"

namespace mfent {

std::vector<ScheduleEntry> default_schedule() { return {{4, 4}, {8, 8}, {12, 12}, {16, 16}}; }

int default_cover_depth(int N) { return std::min(6, N); }

CriticalExponent critical_exponent(const std::function<double(double)>& log_value_at, double t_lo, double t_hi,
                                   double tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr int kMaxDoublings = 60;
  if (!(t_lo < t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi))
    throw DomainError("critical exponent needs a finite bracket with t_lo < t_hi");
  if (!(tol > 0.0)) throw DomainError("critical exponent needs tol > 0");

  double f_lo = log_value_at(t_lo);
  double f_hi = log_value_at(t_hi);
  if (f_lo == 0.0 && f_hi == 0.0) return {0.5 * (t_lo + t_hi), true};

  double width = t_hi - t_lo;
  for (int i = 0; f_lo < 0.0; ++i) {
    if (i == kMaxDoublings) {
      if (f_lo == -inf) return {-inf, false};
      throw NumericError("value stays below 1 as t decreases to " + std::to_string(t_lo) +
                         " (last log value " + std::to_string(f_lo) + ")");
    }
    t_hi = t_lo;
    f_hi = f_lo;
    width *= 2.0;
    t_lo -= width;
    f_lo = log_value_at(t_lo);
  }
  for (int i = 0; f_hi > 0.0; ++i) {
    if (i == kMaxDoublings) {
      if (f_hi == inf) return {inf, false};
      throw NumericError("value stays above 1 as t increases to " + std::to_string(t_hi) +
                         " (last log value " + std::to_string(f_hi) + ")");
    }
    t_lo = t_hi;
    f_lo = f_hi;
    width *= 2.0;
    t_hi += width;
    f_hi = log_value_at(t_hi);
  }
  if (f_lo == 0.0 && f_hi == 0.0) return {0.5 * (t_lo + t_hi), true};
  if (f_lo == 0.0) return {t_lo, false};
  if (f_hi == 0.0) return {t_hi, false};
  if (std::isnan(f_lo) || std::isnan(f_hi)) throw NumericError("value function returned NaN");

  while (t_hi - t_lo > tol) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;
    const double f = log_value_at(mid);
    if (std::isnan(f)) throw NumericError("value function returned NaN at t = " + std::to_string(mid));
    if (f > 0.0) {
      t_lo = mid;
    } else if (f < 0.0) {
      t_hi = mid;
    } else {
      return {mid, false};
    }
  }
  return {0.5 * (t_lo + t_hi), false};
}

namespace {

void check_schedule(const std::vector<ScheduleEntry>& schedule) {
  if (schedule.empty()) throw DomainError("schedule must not be empty");
  for (const ScheduleEntry& e : schedule) {
    if (e.N < 1) throw DomainError("schedule entry has N < 1");
    if (e.D < e.N) throw DomainError("schedule entry has D < N");
  }
}

EntropyEstimate summarize(std::vector<double> raws, const std::vector<ScheduleEntry>& schedule, DepthOffset k,
                          EntropyMethod method, bool degenerate) {
  EntropyEstimate out;
  out.method = method;
  out.k = k;
  out.N_used = schedule.back().N;
  out.D_used = schedule.back().D;
  out.raw = raws.back();
  out.value = out.raw;
  out.error_bar = 0.0;
  out.degenerate = degenerate;
  if (raws.size() >= 2) {
    const double r1 = raws[raws.size() - 2];
    const double r2 = raws.back();
    const double n1 = schedule[schedule.size() - 2].N;
    const double n2 = schedule.back().N;
    if (std::isfinite(r1) && std::isfinite(r2)) {
      out.error_bar = std::abs(r2 - r1);
      if (n2 != n1) out.value = (n2 * r2 - n1 * r1) / (n2 - n1);
    } else if (r1 != r2) {
      out.error_bar = std::numeric_limits<double>::infinity();
    }
  }
  out.per_entry = std::move(raws);
  return out;
}

template <typename Evaluate>
EntropyEstimate root_estimate(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                              const std::vector<ScheduleEntry>& schedule, Evaluate evaluate) {
  check_schedule(schedule);
  std::vector<double> raws;
  bool degenerate = false;
  for (const ScheduleEntry& e : schedule) {
    const CylinderTree tree(model, E, q, e.N, e.D, k);
    const CriticalExponent root =
        critical_exponent([&](double t) { return evaluate(tree, t, e); }, -1.0, 1.0);
    raws.push_back(root.value);
    degenerate = degenerate || root.degenerate;
  }
  return summarize(std::move(raws), schedule, k, EntropyMethod::root, degenerate);
}

}  // namespace

EntropyEstimate bowen_entropy(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                              const std::vector<ScheduleEntry>& schedule) {
  if (q > 0.0 && !analytic_doubling_bound(model))
    throw DomainError("covering entropy with q > 0 needs a measure with the doubling property; this one has none");
  return root_estimate(model, E, q, k, schedule,
                       [](const CylinderTree& tree, double t, const ScheduleEntry&) { return tree.covering(t); });
}

EntropyEstimate packing_entropy_delta(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                                      const std::vector<ScheduleEntry>& schedule) {
  return root_estimate(model, E, q, k, schedule,
                       [](const CylinderTree& tree, double t, const ScheduleEntry&) { return tree.packing(t); });
}

EntropyEstimate packing_entropy(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                                const std::vector<ScheduleEntry>& schedule, int cover_depth) {
  return root_estimate(model, E, q, k, schedule, [&](const CylinderTree& tree, double t, const ScheduleEntry& e) {
    const int depth = cover_depth < 0 ? default_cover_depth(e.N) : cover_depth;
    return tree.packing_outer(t, std::min(depth, e.D + k.value()));
  });
}

double log_partition_sum(const MeasureModel& model, double q, std::size_t length) {
  LogSum<double> acc;
  for (double lm : level_log_masses(model, length)) acc.add(log_psi(q, lm));
  return acc.value();
}

EntropyEstimate growth_rate_entropy(const MeasureModel& model, double q, DepthOffset k,
                                    const std::vector<ScheduleEntry>& schedule) {
  check_schedule(schedule);
  std::vector<double> ns;
  std::vector<double> sums;
  for (const ScheduleEntry& e : schedule) {
    ns.push_back(e.N);
    sums.push_back(log_partition_sum(model, q, static_cast<std::size_t>(e.N + k.value())));
  }
  EntropyEstimate out;
  out.method = EntropyMethod::growth_rate;
  out.k = k;
  out.N_used = schedule.back().N;
  out.D_used = schedule.back().D;
  out.error_bar = 0.0;
  out.per_entry = sums;
  const bool any_inf = std::any_of(sums.begin(), sums.end(), [](double s) { return s == log_infinity(); });
  if (any_inf) {
    out.value = out.raw = log_infinity();
    return out;
  }
  if (ns.size() == 1) {
    out.value = out.raw = sums[0] / ns[0];
    return out;
  }
  double mean_n = 0.0;
  double mean_s = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    mean_n += ns[i];
    mean_s += sums[i];
  }
  mean_n /= static_cast<double>(ns.size());
  mean_s /= static_cast<double>(ns.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sxy += (ns[i] - mean_n) * (sums[i] - mean_s);
    sxx += (ns[i] - mean_n) * (ns[i] - mean_n);
  }
  if (sxx == 0.0) throw DomainError("growth-rate regression needs at least two distinct N");
  out.value = sxy / sxx;
  const std::size_t last = ns.size() - 1;
  out.raw = (sums[last] - sums[last - 1]) / (ns[last] - ns[last - 1]);
  if (ns.size() >= 3) {
    const double before = (sums[last - 1] - sums[last - 2]) / (ns[last - 1] - ns[last - 2]);
    out.error_bar = std::abs(out.raw - before);
  }
  return out;
}

}  // namespace mfent
