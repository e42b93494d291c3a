#pragma once

// The partition growth-rate curve h(q), its Legendre transform and the
// word-counting level-set spectrum it is compared against.

#include <vector>

#include "mfent/entropy.hpp"
#include "mfent/measure.hpp"

namespace mfent {

enum class Provenance { numeric, closed_form };

struct SpectrumCurve {
  std::vector<double> q_grid;  // strictly increasing
  std::vector<double> h_values;
  std::vector<double> error_bars;
  Provenance provenance = Provenance::numeric;
  bool convexity_certificate = false;
  int N_used = 0;
  int D_used = 0;
  DepthOffset k;
};

/// Divided second differences of h all >= -tol (infinite values skipped).
bool is_convex(const std::vector<double>& q, const std::vector<double>& h, double tol = 1e-9);

/// Wraps given samples; checks the grid and sets the certificate.
SpectrumCurve make_curve(std::vector<double> q_grid, std::vector<double> h_values,
                         Provenance provenance = Provenance::numeric);

/// Growth-rate estimate of h(q) at every grid point.
SpectrumCurve h_curve(const MeasureModel& model, const std::vector<double>& q_grid, DepthOffset k,
                      const std::vector<ScheduleEntry>& schedule = default_schedule(), unsigned threads = 1);
SpectrumCurve closed_form_curve(const MeasureModel& model, const std::vector<double>& q_grid);

/// -q_max to q_max in steps of `step`.
std::vector<double> symmetric_grid(double q_max, double step);

struct LegendrePoint {
  double beta;
  double h_star;  // -inf outside the domain
  bool in_domain;
};

/// inf_q (q beta + h(q)), minimized exactly on a convex quadratic
/// interpolant of each grid segment. beta outside the slope range spanned by
/// the end secants (slack 1e-6) is reported as -inf.
std::vector<LegendrePoint> legendre(const SpectrumCurve& curve, const std::vector<double>& beta_grid);
double legendre_at(const SpectrumCurve& curve, double beta);

struct DomainEndpoints {
  double beta_lower;  // minus the secant slope of the two largest q
  double beta_upper;  // minus the secant slope of the two smallest q
  double raw_lower;   // max over q > 0 of -h(q)/q
  double raw_upper;   // min over q < 0 of -h(q)/q
  double error_bar;
  bool wide_grid;     // grid reaches |q| >= 10 on both sides
};
DomainEndpoints domain_endpoints(const SpectrumCurve& curve);

struct OneSidedDerivatives {
  double minus;
  double plus;
};
/// q must be an interior grid point.
OneSidedDerivatives one_sided_derivatives(const SpectrumCurve& curve, double q);

struct LevelSetBin {
  double beta;  // count-weighted mean of the words' values
  double bin_lo;
  double bin_hi;
  std::size_t count;
  double log_count;
  int word_length;
  double entropy_estimate;  // log_count / n
};

/// Every positive-mass word w of length n + k, binned by
/// beta_w = -(1/n) log mass(w) into [i w, (i+1) w).
std::vector<LevelSetBin> level_set_spectrum_oracle(const MeasureModel& model, int n, double bin_width = 0.125,
                                                   DepthOffset k = DepthOffset{});

/// log masses of the positive-mass words of length n + k with
/// |beta_w - beta| <= window / 2.
std::vector<double> level_window_log_masses(const MeasureModel& model, double beta, int n, double window,
                                            DepthOffset k = DepthOffset{});
/// (1/n) log of the number of words in the window; -inf when empty.
double level_window_entropy(const MeasureModel& model, double beta, int n, double window = 0.18,
                            DepthOffset k = DepthOffset{});

struct LevelIdentityCheck {
  double q;
  double beta;      // -h'(q)
  double entropy;   // level_window_entropy at beta
  double exponent;  // (1/n) log sum over the window of mass^q
  double residual;  // |entropy - (q beta + exponent)|
};

/// Compares the level-set entropy at beta = -h'(q) with q beta plus the
/// critical exponent of the window-restricted partition sum. h' comes from a
/// local growth-rate curve; a kink (one-sided derivatives differing by more
/// than 1e-3) raises DomainError.
LevelIdentityCheck level_identity_check(const MeasureModel& model, double q, int n, DepthOffset k = DepthOffset{},
                                        double window = 0.18);
double level_identity_residual(const MeasureModel& model, double q, int n, DepthOffset k = DepthOffset{});

}  // namespace mfent
