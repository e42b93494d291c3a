#include "mfent/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "mfent/errors.hpp"
#include "mfent/log_domain.hpp"
#include "mfent/parallel.hpp"
#include "mfent/premeasure.hpp"
#include "mfent/thermo.hpp"

namespace mfent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDomainSlack = 1e-6;

void check_grid(const std::vector<double>& q) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q[i])) throw DomainError("q grid must be finite");
    if (i > 0 && !(q[i] > q[i - 1])) throw DomainError("q grid must be strictly increasing");
  }
}

double secant(const SpectrumCurve& c, std::size_t i, std::size_t j) {
  return (c.h_values[j] - c.h_values[i]) / (c.q_grid[j] - c.q_grid[i]);
}

}  // namespace

bool is_convex(const std::vector<double>& q, const std::vector<double>& h, double tol) {
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    if (!std::isfinite(h[i - 1]) || !std::isfinite(h[i]) || !std::isfinite(h[i + 1])) continue;
    const double left = (h[i] - h[i - 1]) / (q[i] - q[i - 1]);
    const double right = (h[i + 1] - h[i]) / (q[i + 1] - q[i]);
    if ((right - left) / (0.5 * (q[i + 1] - q[i - 1])) < -tol) return false;
  }
  return true;
}

SpectrumCurve make_curve(std::vector<double> q_grid, std::vector<double> h_values, Provenance provenance) {
  check_grid(q_grid);
  if (q_grid.size() != h_values.size()) throw DomainError("q grid and h values differ in length");
  SpectrumCurve out;
  out.convexity_certificate = is_convex(q_grid, h_values);
  out.error_bars.assign(q_grid.size(), 0.0);
  out.q_grid = std::move(q_grid);
  out.h_values = std::move(h_values);
  out.provenance = provenance;
  return out;
}

SpectrumCurve h_curve(const MeasureModel& model, const std::vector<double>& q_grid, DepthOffset k,
                      const std::vector<ScheduleEntry>& schedule, unsigned threads) {
  if (!model.space().irreducible()) throw DomainError("h(q) needs an irreducible shift space");
  check_grid(q_grid);
  const auto estimates = parallel_map(
      q_grid.size(), [&](std::size_t i) { return growth_rate_entropy(model, q_grid[i], k, schedule); }, threads);
  std::vector<double> h;
  for (const EntropyEstimate& e : estimates) h.push_back(e.value);
  SpectrumCurve out = make_curve(q_grid, std::move(h), Provenance::numeric);
  for (std::size_t i = 0; i < estimates.size(); ++i) out.error_bars[i] = estimates[i].error_bar;
  out.N_used = schedule.back().N;
  out.D_used = schedule.back().D;
  out.k = k;
  return out;
}

SpectrumCurve closed_form_curve(const MeasureModel& model, const std::vector<double>& q_grid) {
  std::vector<double> h;
  for (double q : q_grid) h.push_back(closed_form_h(model, q));
  return make_curve(q_grid, std::move(h), Provenance::closed_form);
}

std::vector<double> symmetric_grid(double q_max, double step) {
  if (!(q_max > 0.0) || !(step > 0.0)) throw DomainError("grid needs q_max > 0 and step > 0");
  const long count = std::lround(q_max / step);
  std::vector<double> out;
  for (long i = -count; i <= count; ++i) out.push_back(static_cast<double>(i) * step);
  return out;
}

double legendre_at(const SpectrumCurve& curve, double beta) {
  const std::size_t n = curve.q_grid.size();
  if (n < 3) throw DomainError("Legendre transform needs at least 3 grid points");
  const double slope_lo = secant(curve, 0, 1);
  const double slope_hi = secant(curve, n - 2, n - 1);
  if (!(beta >= -slope_hi - kDomainSlack && beta <= -slope_lo + kDomainSlack)) return -kInf;

  const auto& q = curve.q_grid;
  const auto& h = curve.h_values;
  double best = kInf;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!std::isfinite(h[i]) || !std::isfinite(h[i + 1])) continue;
    best = std::min(best, q[i] * beta + h[i]);
    best = std::min(best, q[i + 1] * beta + h[i + 1]);
    // Quadratic through the segment ends and one neighbour.
    const std::size_t extra = i + 2 < n ? i + 2 : i - 1;
    if (extra >= n || !std::isfinite(h[extra])) continue;
    const double s = (h[i + 1] - h[i]) / (q[i + 1] - q[i]);
    const double a = ((h[extra] - h[i]) - s * (q[extra] - q[i])) / ((q[extra] - q[i]) * (q[extra] - q[i + 1]));
    if (!(a > 0.0)) continue;
    const double star = 0.5 * (q[i] + q[i + 1]) - (beta + s) / (2.0 * a);
    if (!(star > q[i] && star < q[i + 1])) continue;
    const double interp = h[i] + s * (star - q[i]) + a * (star - q[i]) * (star - q[i + 1]);
    best = std::min(best, star * beta + interp);
  }
  return best;
}

std::vector<LegendrePoint> legendre(const SpectrumCurve& curve, const std::vector<double>& beta_grid) {
  std::vector<LegendrePoint> out;
  for (double beta : beta_grid) {
    const double v = legendre_at(curve, beta);
    out.push_back({beta, v, v != -kInf});
  }
  return out;
}

DomainEndpoints domain_endpoints(const SpectrumCurve& curve) {
  const auto& q = curve.q_grid;
  const auto& h = curve.h_values;
  const std::size_t n = q.size();
  if (n == 0 || !(q.front() < 0.0) || !(q.back() > 0.0))
    throw DomainError("domain endpoints need grid points with q < 0 and q > 0");
  DomainEndpoints out{};
  out.raw_lower = -kInf;
  out.raw_upper = kInf;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i] > 0.0) {
      out.raw_lower = std::max(out.raw_lower, -h[i] / q[i]);
      ++positives;
    } else if (q[i] < 0.0) {
      out.raw_upper = std::min(out.raw_upper, -h[i] / q[i]);
      ++negatives;
    }
  }
  out.beta_lower = positives >= 2 ? -secant(curve, n - 2, n - 1) : out.raw_lower;
  out.beta_upper = negatives >= 2 ? -secant(curve, 0, 1) : out.raw_upper;
  out.error_bar = std::max(std::abs(out.beta_lower - out.raw_lower), std::abs(out.beta_upper - out.raw_upper));
  if (std::isnan(out.error_bar)) out.error_bar = 0.0;
  out.wide_grid = q.front() <= -10.0 && q.back() >= 10.0;
  return out;
}

OneSidedDerivatives one_sided_derivatives(const SpectrumCurve& curve, double q) {
  const auto& grid = curve.q_grid;
  const auto& h = curve.h_values;
  const auto it = std::find(grid.begin(), grid.end(), q);
  if (it == grid.end()) throw DomainError("one-sided derivatives need q on the grid");
  const std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i == 0 || i + 1 == grid.size()) throw DomainError("one-sided derivatives need an interior grid point");

  // Difference quotients at the two nearest points on one side, combined to
  // cancel the first-order error.
  auto side = [&](std::size_t near, std::optional<std::size_t> far) {
    const double d1 = grid[near] - q;
    const double q1 = (h[near] - h[i]) / d1;
    if (!far) return q1;
    const double d2 = grid[*far] - q;
    const double q2 = (h[*far] - h[i]) / d2;
    return (d2 * q1 - d1 * q2) / (d2 - d1);
  };
  OneSidedDerivatives out;
  out.minus = side(i - 1, i >= 2 ? std::optional<std::size_t>(i - 2) : std::nullopt);
  out.plus = side(i + 1, i + 2 < grid.size() ? std::optional<std::size_t>(i + 2) : std::nullopt);
  return out;
}

namespace {

std::vector<double> level_betas(const MeasureModel& model, int n, DepthOffset k) {
  if (n < 1) throw DomainError("word length n must be >= 1");
  std::vector<double> out;
  for (double lm : level_log_masses(model, static_cast<std::size_t>(n + k.value()))) {
    if (lm != log_zero()) out.push_back(-lm / n);
  }
  return out;
}

}  // namespace

std::vector<LevelSetBin> level_set_spectrum_oracle(const MeasureModel& model, int n, double bin_width,
                                                   DepthOffset k) {
  if (!(bin_width > 0.0)) throw DomainError("bin width must be > 0");
  struct Acc {
    std::size_t count = 0;
    double beta_sum = 0.0;
  };
  std::map<long, Acc> bins;
  for (double beta : level_betas(model, n, k)) {
    Acc& a = bins[static_cast<long>(std::floor(beta / bin_width))];
    ++a.count;
    a.beta_sum += beta;
  }
  std::vector<LevelSetBin> out;
  for (const auto& [index, a] : bins) {
    LevelSetBin bin;
    bin.bin_lo = static_cast<double>(index) * bin_width;
    bin.bin_hi = bin.bin_lo + bin_width;
    bin.count = a.count;
    bin.beta = a.beta_sum / static_cast<double>(a.count);
    bin.log_count = std::log(static_cast<double>(a.count));
    bin.word_length = n;
    bin.entropy_estimate = bin.log_count / n;
    out.push_back(bin);
  }
  return out;
}

std::vector<double> level_window_log_masses(const MeasureModel& model, double beta, int n, double window,
                                            DepthOffset k) {
  if (!(window > 0.0)) throw DomainError("window must be > 0");
  std::vector<double> out;
  for (double lm : level_log_masses(model, static_cast<std::size_t>(n + k.value()))) {
    if (lm == log_zero()) continue;
    if (std::abs(-lm / n - beta) <= 0.5 * window) out.push_back(lm);
  }
  return out;
}

double level_window_entropy(const MeasureModel& model, double beta, int n, double window, DepthOffset k) {
  const auto words = level_window_log_masses(model, beta, n, window, k);
  if (words.empty()) return log_zero();
  return std::log(static_cast<double>(words.size())) / n;
}

LevelIdentityCheck level_identity_check(const MeasureModel& model, double q, int n, DepthOffset k, double window) {
  if (n < 3) throw DomainError("level identity check needs n >= 3");
  const std::vector<double> local{q - 0.1, q - 0.05, q, q + 0.05, q + 0.1};
  const std::vector<ScheduleEntry> schedule{{n / 3, n / 3}, {2 * n / 3, 2 * n / 3}, {n, n}};
  const SpectrumCurve curve = h_curve(model, local, k, schedule);
  const OneSidedDerivatives d = one_sided_derivatives(curve, q);
  if (!(std::abs(d.plus - d.minus) <= 1e-3))
    throw DomainError("h is not differentiable at q = " + std::to_string(q) + " (one-sided derivatives " +
                      std::to_string(d.minus) + " and " + std::to_string(d.plus) + ")");
  LevelIdentityCheck out;
  out.q = q;
  out.beta = -0.5 * (d.minus + d.plus);
  const auto words = level_window_log_masses(model, out.beta, n, window, k);
  if (words.empty()) throw NumericError("no words of length n fall in the window around beta");
  out.entropy = std::log(static_cast<double>(words.size())) / n;
  LogSum<double> sum;
  for (double lm : words) sum.add(log_psi(q, lm));
  // The restricted sum times exp(-t n) crosses 1 at t = (1/n) log sum.
  out.exponent = sum.value() / n;
  out.residual = std::abs(out.entropy - (q * out.beta + out.exponent));
  return out;
}

double level_identity_residual(const MeasureModel& model, double q, int n, DepthOffset k) {
  return level_identity_check(model, q, n, k).residual;
}

}  // namespace mfent
