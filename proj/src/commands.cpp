#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "mfent/config.hpp"
#include "mfent/errors.hpp"
#include "mfent/local_entropy.hpp"
#include "mfent/parallel.hpp"
#include "mfent/premeasure.hpp"
#include "mfent/spectrum.hpp"
#include "mfent/thermo.hpp"

namespace mfent {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

int exit_code_for(const std::exception& error) {
  return dynamic_cast<const DomainError*>(&error) != nullptr ? 2 : 1;
}

namespace {

class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::vector<std::string>& header) : path_(path), out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string num(double v) { return format_number(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

struct Context {
  const ExperimentConfig& config;
  const RunOptions& options;
  std::ostream& log;
  std::uint64_t seed;

  std::filesystem::path file(const std::string& name) const { return options.out_dir / name; }
  void wrote(const Csv& csv) const { log << "wrote " << csv.path().string() << '\n'; }
};

void run_spectrum(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  const SpectrumCurve curve = h_curve(c.model(), c.q_grid, c.k, c.schedule, ctx.options.threads);
  const std::string N = num(curve.N_used);
  const std::string D = num(curve.D_used);
  const std::string k = num(curve.k.value());

  Csv hc(ctx.file("h_curve.csv"), {"q", "h", "h_minus", "h_plus", "error_bar", "N", "D", "k"});
  for (std::size_t i = 0; i < curve.q_grid.size(); ++i) {
    std::string minus;
    std::string plus;
    if (i > 0 && i + 1 < curve.q_grid.size()) {
      const auto d = one_sided_derivatives(curve, curve.q_grid[i]);
      minus = num(d.minus);
      plus = num(d.plus);
    }
    hc.row({num(curve.q_grid[i]), num(curve.h_values[i]), minus, plus, num(curve.error_bars[i]), N, D, k});
  }
  ctx.wrote(hc);

  const DomainEndpoints ends = domain_endpoints(curve);
  Csv ec(ctx.file("endpoints.csv"),
         {"beta_lower", "beta_upper", "raw_lower", "raw_upper", "error_bar", "wide_grid", "N", "D", "k"});
  ec.row({num(ends.beta_lower), num(ends.beta_upper), num(ends.raw_lower), num(ends.raw_upper), num(ends.error_bar),
          flag(ends.wide_grid), N, D, k});
  ctx.wrote(ec);

  std::vector<double> betas = c.beta_grid;
  if (betas.empty()) {
    const double lo = std::isfinite(ends.beta_lower) ? ends.beta_lower - 0.1 : 0.0;
    const double hi = std::isfinite(ends.beta_upper) ? ends.beta_upper + 0.1 : lo + 2.0;
    for (int i = 0; i <= 100; ++i) betas.push_back(lo + (hi - lo) * i / 100.0);
  }
  Csv lc(ctx.file("legendre.csv"), {"beta", "h_star", "in_domain", "N", "D", "k"});
  for (const LegendrePoint& p : legendre(curve, betas)) lc.row({num(p.beta), num(p.h_star), flag(p.in_domain), N, D, k});
  ctx.wrote(lc);
  ctx.log << "convexity_certificate " << flag(curve.convexity_certificate) << '\n';
}

void run_premeasure(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  const CylinderSet K = c.target_set();
  const PremeasureParams p{c.q, c.t, c.N, c.k, c.D};
  const int cover_depth = c.cover_depth < 0 ? default_cover_depth(c.N) : c.cover_depth;
  Csv out(ctx.file("premeasure.csv"),
          {"quantity", "log_value", "value", "exact", "q", "t", "N", "D", "k", "cover_depth"});
  auto emit = [&](const std::string& name, const PremeasureValue& v, const std::string& depth) {
    out.row({name, num(v.log_value), num(v.value()), flag(v.exact_at_depth), num(c.q), num(c.t), num(c.N), num(c.D),
             num(c.k.value()), depth});
  };
  emit("covering", covering_premeasure(c.model(), K, p), "");
  emit("packing", packing_premeasure(c.model(), K, p), "");
  emit("packing_outer", packing_outer(c.model(), K, p, std::min(cover_depth, c.D + c.k.value())), num(cover_depth));
  ctx.wrote(out);
}

void run_entropy(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  const CylinderSet E = c.target_set();
  Csv out(ctx.file("entropy.csv"),
          {"quantity", "value", "raw", "error_bar", "method", "degenerate", "q", "N", "D", "k", "cover_depth"});
  auto emit = [&](const std::string& name, const EntropyEstimate& e, const std::string& depth) {
    out.row({name, num(e.value), num(e.raw), num(e.error_bar), e.method == EntropyMethod::root ? "root" : "growth_rate",
             flag(e.degenerate), num(c.q), num(e.N_used), num(e.D_used), num(e.k.value()), depth});
  };
  using Task = std::function<EntropyEstimate()>;
  const std::vector<std::pair<std::string, Task>> tasks{
      {"bowen", [&] { return bowen_entropy(c.model(), E, c.q, c.k, c.schedule); }},
      {"packing_delta", [&] { return packing_entropy_delta(c.model(), E, c.q, c.k, c.schedule); }},
      {"packing", [&] { return packing_entropy(c.model(), E, c.q, c.k, c.schedule, c.cover_depth); }},
  };
  const auto results =
      parallel_map(tasks.size(), [&](std::size_t i) { return tasks[i].second(); }, ctx.options.threads);
  const std::string depth = c.cover_depth < 0 ? "min(6,N)" : num(c.cover_depth);
  for (std::size_t i = 0; i < tasks.size(); ++i) emit(tasks[i].first, results[i], i == 2 ? depth : "");
  ctx.wrote(out);
}

void run_verify_gibbs(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  Csv out(ctx.file("gibbs.csv"), {"q", "growth_rate", "pressure_q", "pressure_one", "residual"});
  double worst = 0.0;
  for (double q : c.gibbs_q) {
    const GibbsIdentity g = gibbs_identity(c.model(), q);
    worst = std::max(worst, g.residual);
    out.row({num(q), num(g.growth_rate), num(g.pressure_q), num(g.pressure_one), num(g.residual)});
  }
  ctx.wrote(out);
  ctx.log << "max_residual " << format_number(worst) << '\n';
}

void run_doubling(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  const DoublingReport r = doubling_check(c.model(), DepthOffset(c.doubling_k), c.doubling_n_max);
  Csv out(ctx.file("doubling.csv"), {"k", "n_max", "empirical_sup", "analytic_bound", "bounded"});
  out.row({num(r.k.value()), num(r.n_max), num(r.empirical_sup),
           r.analytic_bound ? num(*r.analytic_bound) : "unbounded", flag(r.bounded())});
  ctx.wrote(out);
  ctx.log << (r.bounded() ? "bounded" : "unbounded") << '\n';
}

void run_local(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  const std::size_t length = static_cast<std::size_t>(c.n_max + c.k.value());
  const std::vector<Word> points =
      c.words.empty() ? sample_typical_words(c.model(), length, c.samples, ctx.seed) : c.words;
  const auto samples = parallel_map(
      points.size(), [&](std::size_t i) { return local_entropy(c.model(), points[i], c.k, c.n_max, c.tail_fraction); },
      ctx.options.threads);
  const int m = c.space.alphabet_size();
  Csv out(ctx.file("local.csv"), {"word", "lower", "upper", "zero_mass", "n_max", "k"});
  for (const LocalEntropySample& s : samples)
    out.row({s.word.str(m), num(s.lower), num(s.upper), flag(s.zero_mass), num(c.n_max), num(c.k.value())});
  ctx.wrote(out);
  ctx.log << "mean_local_entropy_estimate " << format_number(mean_local_entropy(samples)) << '\n';
}

void run_level_spectrum(const Context& ctx) {
  const ExperimentConfig& c = ctx.config;
  Csv bins(ctx.file("level_bins.csv"),
           {"beta", "bin_lo", "bin_hi", "count", "entropy_estimate", "n", "k"});
  for (const LevelSetBin& b : level_set_spectrum_oracle(c.model(), c.n, c.bin_width, c.k))
    bins.row({num(b.beta), num(b.bin_lo), num(b.bin_hi), num(b.count), num(b.entropy_estimate), num(c.n),
              num(c.k.value())});
  ctx.wrote(bins);

  const auto checks = parallel_map(
      c.identity_q.size(),
      [&](std::size_t i) { return level_identity_check(c.model(), c.identity_q[i], c.n, c.k, c.window); },
      ctx.options.threads);
  Csv ids(ctx.file("level_identity.csv"), {"q", "beta", "entropy", "exponent", "residual", "window", "n", "k"});
  for (const LevelIdentityCheck& r : checks)
    ids.row({num(r.q), num(r.beta), num(r.entropy), num(r.exponent), num(r.residual), num(c.window), num(c.n),
             num(c.k.value())});
  ctx.wrote(ids);
}

const std::map<std::string, std::function<void(const Context&)>>& commands() {
  static const std::map<std::string, std::function<void(const Context&)>> table{
      {"spectrum", run_spectrum},   {"premeasure", run_premeasure}, {"entropy", run_entropy},
      {"verify-gibbs", run_verify_gibbs}, {"doubling", run_doubling},   {"local", run_local},
      {"level-spectrum", run_level_spectrum},
  };
  return table;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : commands()) out.push_back(name);
  return out;
}

int run(const std::string& command, const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  const auto it = commands().find(command);
  if (it == commands().end()) throw ConfigError("unknown command '" + command + "'");
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + options.out_dir.string() + ": " + ec.message());
  it->second(Context{config, options, log, options.seed.value_or(config.seed)});
  return 0;
}

}  // namespace mfent
