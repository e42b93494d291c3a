#pragma once

// Critical exponents of the pre-measures in t, estimated over a schedule of
// finite (N, D) truncations.

#include <functional>
#include <vector>

#include "mfent/measure.hpp"
#include "mfent/symbolic.hpp"

namespace mfent {

struct ScheduleEntry {
  int N;
  int D;
};

/// N in {4, 8, 12, 16} with D = N.
std::vector<ScheduleEntry> default_schedule();
/// min(6, N).
int default_cover_depth(int N);

struct CriticalExponent {
  double value;     // may be -inf or +inf
  bool degenerate;  // value function flat at 1: bracket midpoint returned
};

/// Root of log_value_at(t) = 0 for a nonincreasing function given in the log
/// domain. The bracket is widened by doubling (at most 60 times) until it
/// straddles the root. A function stuck at +inf returns +inf, one stuck at
/// -inf returns -inf; any other failure raises NumericError.
CriticalExponent critical_exponent(const std::function<double(double)>& log_value_at, double t_lo, double t_hi,
                                   double tol = 1e-10);

enum class EntropyMethod { root, growth_rate };

struct EntropyEstimate {
  double value;      // 1/N extrapolation of the last two schedule entries
  double raw;        // value at the largest schedule entry
  EntropyMethod method;
  int N_used;
  int D_used;
  DepthOffset k;
  double error_bar;  // spread of the raw values of the last two entries
  bool degenerate = false;
  std::vector<double> per_entry;
};

/// Critical exponent of the covering pre-measure. q > 0 needs a finite
/// doubling bound.
EntropyEstimate bowen_entropy(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                              const std::vector<ScheduleEntry>& schedule = default_schedule());
/// Critical exponent of the packing pre-measure.
EntropyEstimate packing_entropy_delta(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                                      const std::vector<ScheduleEntry>& schedule = default_schedule());
/// Critical exponent of the partition-refined packing value; cover_depth < 0
/// selects default_cover_depth(N) per entry.
EntropyEstimate packing_entropy(const MeasureModel& model, const CylinderSet& E, double q, DepthOffset k,
                                const std::vector<ScheduleEntry>& schedule = default_schedule(),
                                int cover_depth = -1);

/// log sum over admissible words of the given length of Psi_q(mass).
double log_partition_sum(const MeasureModel& model, double q, std::size_t length);

/// Least-squares slope of log_partition_sum(q, N + k) against N over the
/// schedule (only N is used).
EntropyEstimate growth_rate_entropy(const MeasureModel& model, double q, DepthOffset k,
                                    const std::vector<ScheduleEntry>& schedule = default_schedule());

}  // namespace mfent
