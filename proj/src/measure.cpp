#include "mfent/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "mfent/errors.hpp"
#include "mfent/log_domain.hpp"
#include "mfent/perron.hpp"

namespace mfent {

namespace {

constexpr double kStochasticTol = 1e-12;

double safe_log(double x) { return x > 0.0 ? std::log(x) : log_zero(); }

int ipow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int block_code(std::span<const Symbol> symbols, int m) {
  int code = 0;
  for (Symbol s : symbols) code = code * m + s;
  return code;
}

// States and the base-m lookup table shared by Markov and Gibbs chains.
BlockChain chain_skeleton(const ShiftSpace& space, int block) {
  BlockChain chain;
  chain.block = block;
  chain.states = admissible_words(space, static_cast<std::size_t>(block));
  const int m = space.alphabet_size();
  chain.state_code.assign(static_cast<std::size_t>(ipow(m, block)), -1);
  for (std::size_t i = 0; i < chain.states.size(); ++i)
    chain.state_code[static_cast<std::size_t>(block_code(chain.states[i].symbols(), m))] = static_cast<int>(i);
  return chain;
}

// u -> v is an edge of the block graph when they overlap and u.v_last is admissible.
bool block_edge(const ShiftSpace& space, const Word& u, const Word& v) {
  const std::size_t b = u.size();
  for (std::size_t i = 1; i < b; ++i) {
    if (u[i] != v[i - 1]) return false;
  }
  return space.allows(u.back(), v.back());
}

void finish_logs(BlockChain& chain) {
  chain.log_P = chain.P.unaryExpr([](double x) { return safe_log(x); });
  chain.log_pi = chain.pi.unaryExpr([](double x) { return safe_log(x); });
}

double chain_log_mass(const BlockChain& chain, const Word& w, int m) {
  if (w.empty()) return 0.0;
  const std::size_t b = static_cast<std::size_t>(chain.block);
  if (w.size() < b) {
    LogSum<double> acc;
    for (std::size_t i = 0; i < chain.states.size(); ++i) {
      if (w.is_prefix_of(chain.states[i])) acc.add(chain.log_pi(static_cast<Eigen::Index>(i)));
    }
    return acc.value();
  }
  const int modulus = ipow(m, chain.block);
  int code = block_code(w.symbols().subspan(0, b), m);
  int state = chain.state_code[static_cast<std::size_t>(code)];
  double out = chain.log_pi(state);
  for (std::size_t i = b; i < w.size() && out != log_zero(); ++i) {
    code = (code * m + w[i]) % modulus;
    const int next = chain.state_code[static_cast<std::size_t>(code)];
    out += chain.log_P(state, next);
    state = next;
  }
  return out;
}

}  // namespace

int BlockChain::state_of(std::span<const Symbol> block_symbols, int alphabet_size) const {
  return state_code[static_cast<std::size_t>(block_code(block_symbols, alphabet_size))];
}

struct MeasureModel::Impl {
  Kind kind;
  ShiftSpace space;
  std::vector<double> p;
  std::vector<double> log_p;
  std::optional<BlockChain> chain;
  std::optional<GibbsData> gibbs;
  std::optional<MeasureModel> first;
  std::optional<MeasureModel> second;
  double lambda = 1.0;

  Impl(Kind k, ShiftSpace s) : kind(k), space(std::move(s)) {}
};

MeasureModel MeasureModel::bernoulli(std::vector<double> p) {
  const int m = static_cast<int>(p.size());
  if (m < 2) throw DomainError("Bernoulli measure needs at least two symbols");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || !std::isfinite(p[i]))
      throw DomainError("Bernoulli weight p[" + std::to_string(i) + "] must be a finite nonnegative number");
    total += p[i];
  }
  if (std::abs(total - 1.0) > kStochasticTol)
    throw DomainError("Bernoulli weights sum to " + std::to_string(total) + ", expected 1");
  auto impl = std::make_shared<Impl>(Kind::bernoulli, ShiftSpace::full(m));
  impl->log_p.reserve(p.size());
  for (double x : p) impl->log_p.push_back(safe_log(x));
  impl->p = std::move(p);
  return MeasureModel(std::move(impl));
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P) {
  const Eigen::Index m = P.rows();
  Eigen::MatrixXd system = P.transpose() - Eigen::MatrixXd::Identity(m, m);
  system.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  Eigen::VectorXd pi = system.colPivHouseholderQr().solve(rhs);
  if (!pi.allFinite()) throw NumericError("stationary distribution is not unique");
  return pi.cwiseMax(0.0) / pi.cwiseMax(0.0).sum();
}

namespace {

void validate_stochastic(const ShiftSpace& space, const Eigen::MatrixXd& P) {
  const int m = space.alphabet_size();
  if (P.rows() != m || P.cols() != m)
    throw DomainError("Markov matrix must be " + std::to_string(m) + "x" + std::to_string(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!(P(i, j) >= 0.0) || !std::isfinite(P(i, j)))
        throw DomainError("Markov row " + std::to_string(i) + " has a negative or non-finite entry");
      if (P(i, j) > 0.0 && !space.allows(i, j))
        throw DomainError("Markov row " + std::to_string(i) + " puts mass on inadmissible transition " +
                          std::to_string(i) + "->" + std::to_string(j));
    }
    const double s = P.row(i).sum();
    if (std::abs(s - 1.0) > kStochasticTol)
      throw DomainError("Markov row " + std::to_string(i) + " sums to " + std::to_string(s) + ", not 1");
  }
}

}  // namespace

MeasureModel MeasureModel::markov(const ShiftSpace& space, const Eigen::MatrixXd& P) {
  validate_stochastic(space, P);
  return markov(space, P, stationary_distribution(P));
}

MeasureModel MeasureModel::markov(const ShiftSpace& space, const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  validate_stochastic(space, P);
  const int m = space.alphabet_size();
  if (pi.size() != m) throw DomainError("stationary vector must have " + std::to_string(m) + " entries");
  if ((pi.array() < 0.0).any()) throw DomainError("stationary vector has a negative entry");
  if (std::abs(pi.sum() - 1.0) > kStochasticTol) throw DomainError("stationary vector does not sum to 1");
  const Eigen::RowVectorXd drift = pi.transpose() * P - pi.transpose();
  if (drift.cwiseAbs().maxCoeff() > kStochasticTol)
    throw DomainError("stationary vector is not invariant: |pi P - pi| = " +
                      std::to_string(drift.cwiseAbs().maxCoeff()));

  auto impl = std::make_shared<Impl>(Kind::markov, space);
  BlockChain chain = chain_skeleton(space, 1);
  chain.P = P;
  chain.pi = pi;
  finish_logs(chain);
  impl->chain = std::move(chain);
  return MeasureModel(std::move(impl));
}

MeasureModel MeasureModel::gibbs(const ShiftSpace& space, const Potential& potential) {
  potential.validate(space);
  if (!space.irreducible()) throw DomainError("Gibbs measure needs an irreducible shift space");
  BlockChain chain = chain_skeleton(space, potential.r - 1);
  const auto n = static_cast<Eigen::Index>(chain.states.size());
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const Word& su = chain.states[static_cast<std::size_t>(u)];
      const Word& sv = chain.states[static_cast<std::size_t>(v)];
      if (block_edge(space, su, sv)) weighted(u, v) = std::exp(potential(su.extended(sv.back())));
    }
  }
  const auto right = perron(weighted);
  const auto left = perron(Eigen::MatrixXd(weighted.transpose()));
  const double lambda = right.root;
  Eigen::VectorXd r = right.vector;
  Eigen::VectorXd l = left.vector / left.vector.dot(r);

  chain.P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) chain.P(u, v) = weighted(u, v) * r(v) / (lambda * r(u));
    chain.P.row(u) /= chain.P.row(u).sum();
  }
  chain.pi = l.cwiseProduct(r);
  chain.pi /= chain.pi.sum();
  finish_logs(chain);

  auto impl = std::make_shared<Impl>(Kind::gibbs, space);
  impl->chain = std::move(chain);
  impl->gibbs = GibbsData{potential, lambda, l, r};
  return MeasureModel(std::move(impl));
}

MeasureModel::Kind MeasureModel::kind() const { return impl_->kind; }
const ShiftSpace& MeasureModel::space() const { return impl_->space; }

double MeasureModel::log_mass(const Word& w) const {
  impl_->space.require_admissible(w);
  switch (impl_->kind) {
    case Kind::bernoulli: {
      double out = 0.0;
      for (Symbol s : w.symbols()) out += impl_->log_p[static_cast<std::size_t>(s)];
      return out;
    }
    case Kind::markov:
    case Kind::gibbs:
      return chain_log_mass(*impl_->chain, w, impl_->space.alphabet_size());
    case Kind::mixture: {
      const double la = impl_->lambda > 0.0 ? std::log(impl_->lambda) + impl_->first->log_mass(w) : log_zero();
      const double lb =
          impl_->lambda < 1.0 ? std::log1p(-impl_->lambda) + impl_->second->log_mass(w) : log_zero();
      return log_add(la, lb);
    }
  }
  return log_zero();
}

double MeasureModel::conditional(const Word& w, Symbol a) const {
  const Word wa = w.extended(a);
  impl_->space.require_admissible(wa);
  switch (impl_->kind) {
    case Kind::bernoulli:
      return impl_->p[static_cast<std::size_t>(a)];
    case Kind::markov:
    case Kind::gibbs: {
      const BlockChain& chain = *impl_->chain;
      const std::size_t b = static_cast<std::size_t>(chain.block);
      if (w.size() < b) break;
      const int m = impl_->space.alphabet_size();
      const int from = chain.state_of(w.symbols().subspan(w.size() - b), m);
      const int to = chain.state_of(wa.symbols().subspan(wa.size() - b), m);
      return chain.P(from, to);
    }
    case Kind::mixture:
      break;
  }
  const double lw = log_mass(w);
  if (lw == log_zero()) throw DomainError("conditional mass given a zero-mass word");
  return std::exp(log_mass(wa) - lw);
}

CylinderMass MeasureModel::mass(const Word& w) const {
  const double lm = log_mass(w);
  return {std::exp(lm), lm};
}

std::vector<double> MeasureModel::prefix_log_masses(const Word& x, std::size_t max_length) const {
  if (x.size() < max_length) throw DomainError("word shorter than requested prefix length");
  impl_->space.require_admissible(x.prefix(max_length));
  std::vector<double> out(max_length + 1, 0.0);
  switch (impl_->kind) {
    case Kind::bernoulli:
      for (std::size_t i = 0; i < max_length; ++i)
        out[i + 1] = out[i] + impl_->log_p[static_cast<std::size_t>(x[i])];
      return out;
    case Kind::markov:
    case Kind::gibbs: {
      const BlockChain& chain = *impl_->chain;
      const int m = impl_->space.alphabet_size();
      const std::size_t b = static_cast<std::size_t>(chain.block);
      for (std::size_t len = 0; len <= std::min(b, max_length); ++len)
        out[len] = chain_log_mass(chain, x.prefix(len), m);
      if (max_length <= b) return out;
      const int modulus = ipow(m, chain.block);
      int code = block_code(x.symbols().subspan(0, b), m);
      int state = chain.state_code[static_cast<std::size_t>(code)];
      for (std::size_t i = b; i < max_length; ++i) {
        code = (code * m + x[i]) % modulus;
        const int next = chain.state_code[static_cast<std::size_t>(code)];
        out[i + 1] = out[i] == log_zero() ? log_zero() : out[i] + chain.log_P(state, next);
        state = next;
      }
      return out;
    }
    case Kind::mixture: {
      const auto a = impl_->first->prefix_log_masses(x, max_length);
      const auto b = impl_->second->prefix_log_masses(x, max_length);
      const double la = impl_->lambda > 0.0 ? std::log(impl_->lambda) : log_zero();
      const double lb = impl_->lambda < 1.0 ? std::log1p(-impl_->lambda) : log_zero();
      for (std::size_t i = 0; i <= max_length; ++i) out[i] = log_add(la + a[i], lb + b[i]);
      return out;
    }
  }
  return out;
}

const std::vector<double>& MeasureModel::bernoulli_weights() const { return impl_->p; }

const BlockChain* MeasureModel::chain() const { return impl_->chain ? &*impl_->chain : nullptr; }

const GibbsData* MeasureModel::gibbs_data() const { return impl_->gibbs ? &*impl_->gibbs : nullptr; }

const MeasureModel* MeasureModel::mixture_first() const { return impl_->first ? &*impl_->first : nullptr; }
const MeasureModel* MeasureModel::mixture_second() const { return impl_->second ? &*impl_->second : nullptr; }
double MeasureModel::mixture_weight() const { return impl_->lambda; }

std::optional<Potential> MeasureModel::defining_potential() const {
  Potential out;
  out.r = 2;
  const ShiftSpace& space = impl_->space;
  const int m = space.alphabet_size();
  switch (impl_->kind) {
    case Kind::bernoulli:
      for (Symbol a = 0; a < m; ++a) {
        for (Symbol b = 0; b < m; ++b) {
          if (impl_->p[static_cast<std::size_t>(b)] <= 0.0) return std::nullopt;
          out.table[Word{a, b}] = impl_->log_p[static_cast<std::size_t>(b)];
        }
      }
      return out;
    case Kind::markov:
      for (Symbol a = 0; a < m; ++a) {
        for (Symbol b = 0; b < m; ++b) {
          if (!space.allows(a, b)) continue;
          if (impl_->chain->P(a, b) <= 0.0) return std::nullopt;
          out.table[Word{a, b}] = impl_->chain->log_P(a, b);
        }
      }
      return out;
    case Kind::gibbs:
      return impl_->gibbs->potential;
    case Kind::mixture:
      return std::nullopt;
  }
  return std::nullopt;
}

CylinderMass cylinder_mass(const MeasureModel& model, const Word& w) { return model.mass(w); }

MeasureModel mixture(const MeasureModel& a, const MeasureModel& b, double lambda) {
  if (!(a.space() == b.space())) throw DomainError("mixture components live on different shift spaces");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mixture weight must lie in [0, 1]");
  auto impl = std::make_shared<MeasureModel::Impl>(MeasureModel::Kind::mixture, a.space());
  impl->first = a;
  impl->second = b;
  impl->lambda = lambda;
  return MeasureModel(std::move(impl));
}

std::optional<double> analytic_doubling_bound(const MeasureModel& model) {
  const ShiftSpace& space = model.space();
  switch (model.kind()) {
    case MeasureModel::Kind::bernoulli: {
      const auto& p = model.bernoulli_weights();
      const double lo = *std::min_element(p.begin(), p.end());
      if (lo <= 0.0) return std::nullopt;
      return 1.0 / lo;
    }
    case MeasureModel::Kind::markov:
    case MeasureModel::Kind::gibbs: {
      const BlockChain& chain = *model.chain();
      double lo = std::numeric_limits<double>::infinity();
      const auto n = static_cast<Eigen::Index>(chain.states.size());
      for (Eigen::Index u = 0; u < n; ++u) {
        for (Eigen::Index v = 0; v < n; ++v) {
          if (!block_edge(space, chain.states[static_cast<std::size_t>(u)], chain.states[static_cast<std::size_t>(v)]))
            continue;
          if (chain.P(u, v) <= 0.0) return std::nullopt;
          lo = std::min(lo, chain.P(u, v));
        }
      }
      double bound = 1.0 / lo;
      // Words of length 2..block are still inside the stationary marginal.
      for (int len = 2; len <= chain.block; ++len) {
        for (const Word& w : admissible_words(space, static_cast<std::size_t>(len))) {
          const double child = model.log_mass(w);
          if (child == log_zero()) return std::nullopt;
          bound = std::max(bound, std::exp(model.log_mass(w.parent()) - child));
        }
      }
      return bound;
    }
    case MeasureModel::Kind::mixture: {
      // Mediant inequality: a mixture ratio never exceeds the larger component ratio.
      const auto a = analytic_doubling_bound(*model.mixture_first());
      const auto b = analytic_doubling_bound(*model.mixture_second());
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
  }
  return std::nullopt;
}

namespace {

constexpr double kMaxDoublingNodes = 1 << 24;

void doubling_walk(const MeasureModel& model, const Word& w, std::size_t min_len, std::size_t max_len,
                   double& sup) {
  if (w.size() >= max_len) return;
  for (const Word& c : children(model.space(), w)) {
    const double step = model.conditional(w, c.back());
    if (c.size() >= min_len) sup = std::max(sup, step > 0.0 ? 1.0 / step : std::numeric_limits<double>::infinity());
    if (step > 0.0) doubling_walk(model, c, min_len, max_len, sup);
  }
}

}  // namespace

DoublingReport doubling_check(const MeasureModel& model, DepthOffset k, int n_max) {
  if (k.value() < 1) throw DomainError("doubling check needs k >= 1");
  if (n_max < 1) throw DomainError("doubling check needs n_max >= 1");
  const std::size_t max_len = static_cast<std::size_t>(n_max + k.value());
  if (std::pow(static_cast<double>(model.space().alphabet_size()), static_cast<double>(max_len)) > kMaxDoublingNodes)
    throw NumericError("doubling check would enumerate more than 2^24 words");
  DoublingReport report;
  report.k = k;
  report.n_max = n_max;
  report.empirical_sup = 1.0;
  doubling_walk(model, Word{}, static_cast<std::size_t>(k.value() + 1), max_len, report.empirical_sup);
  report.analytic_bound = analytic_doubling_bound(model);
  return report;
}

}  // namespace mfent

namespace mfent {

namespace {

void level_walk(const MeasureModel& model, const Word& w, std::size_t length, std::vector<double>& out) {
  if (w.size() == length) {
    out.push_back(model.log_mass(w));
    return;
  }
  for (const Word& c : children(model.space(), w)) level_walk(model, c, length, out);
}

}  // namespace

std::vector<double> level_log_masses(const MeasureModel& model, std::size_t length) {
  if (std::pow(static_cast<double>(model.space().alphabet_size()), static_cast<double>(length)) > kMaxDoublingNodes)
    throw NumericError("refusing to enumerate more than 2^24 words of length " + std::to_string(length));
  std::vector<double> out;
  level_walk(model, Word{}, length, out);
  return out;
}

std::vector<Word> sample_typical_words(const MeasureModel& model, std::size_t length, std::size_t count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Word w;
    double log_w = 0.0;
    while (w.size() < length) {
      // Draw the next symbol from the conditional masses mass(wa) / mass(w).
      const auto kids = children(model.space(), w);
      double u = unit(rng);
      Word pick = kids.back();
      double pick_log = log_zero();
      for (const Word& c : kids) {
        const double lc = model.log_mass(c);
        const double cond = std::exp(lc - log_w);
        if (cond <= 0.0) continue;
        pick = c;
        pick_log = lc;
        if (u < cond) break;
        u -= cond;
      }
      if (pick_log == log_zero()) throw NumericError("sampling reached a zero-mass cylinder");
      w = pick;
      log_w = pick_log;
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace mfent
