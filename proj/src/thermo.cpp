#include "mfent/thermo.hpp"

#include <cmath>
#include <limits>

#include "mfent/errors.hpp"
#include "mfent/log_domain.hpp"
#include "mfent/perron.hpp"

namespace mfent {

Eigen::MatrixXd transfer_matrix(const ShiftSpace& space, const Potential& psi, double scale) {
  psi.validate(space);
  const auto blocks = admissible_words(space, static_cast<std::size_t>(psi.r - 1));
  const auto n = static_cast<Eigen::Index>(blocks.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    const Word& from = blocks[static_cast<std::size_t>(u)];
    for (Eigen::Index v = 0; v < n; ++v) {
      const Word& to = blocks[static_cast<std::size_t>(v)];
      if (!std::equal(from.symbols().begin() + 1, from.symbols().end(), to.symbols().begin())) continue;
      const Word joined = from.extended(to.back());
      if (!space.admissible(joined)) continue;
      out(u, v) = std::exp(scale * psi(joined));
    }
  }
  return out;
}

double pressure(const ShiftSpace& space, const Potential& psi, double scale) {
  if (!space.irreducible()) throw DomainError("pressure needs an irreducible shift space");
  return log_perron_root(transfer_matrix(space, psi, scale));
}

namespace {

// Psi_q on a transition probability; nullopt stands for +inf.
std::optional<double> psi_power(double p, double q) {
  if (q == 0.0) return 1.0;
  if (p <= 0.0) {
    if (q < 0.0) return std::nullopt;
    return 0.0;
  }
  return std::pow(p, q);
}

}  // namespace

double closed_form_h(const MeasureModel& model, double q) {
  const ShiftSpace& space = model.space();
  switch (model.kind()) {
    case MeasureModel::Kind::bernoulli: {
      LogSum<double> acc;
      for (double p : model.bernoulli_weights()) {
        if (q == 0.0) {
          acc.add(0.0);
        } else if (p <= 0.0) {
          if (q < 0.0) return std::numeric_limits<double>::infinity();
        } else {
          acc.add(q * std::log(p));
        }
      }
      return acc.value();
    }
    case MeasureModel::Kind::markov:
    case MeasureModel::Kind::gibbs: {
      if (!space.irreducible()) throw DomainError("closed-form h needs an irreducible shift space");
      const BlockChain& chain = *model.chain();
      const auto n = static_cast<Eigen::Index>(chain.states.size());
      Eigen::MatrixXd powered = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index u = 0; u < n; ++u) {
        const Word& from = chain.states[static_cast<std::size_t>(u)];
        for (Eigen::Index v = 0; v < n; ++v) {
          const Word& to = chain.states[static_cast<std::size_t>(v)];
          if (!std::equal(from.symbols().begin() + 1, from.symbols().end(), to.symbols().begin())) continue;
          if (!space.allows(from.back(), to.back())) continue;
          const auto entry = psi_power(chain.P(u, v), q);
          if (!entry) return std::numeric_limits<double>::infinity();
          powered(u, v) = *entry;
        }
      }
      if (q < 0.0 && (chain.pi.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
      return log_perron_root(powered);
    }
    case MeasureModel::Kind::mixture:
      break;
  }
  throw DomainError("closed-form h is only available for Bernoulli, Markov and Gibbs measures");
}

GibbsIdentity gibbs_identity(const MeasureModel& model, double q) {
  if (model.kind() == MeasureModel::Kind::mixture)
    throw DomainError("Gibbs identity needs a Bernoulli, Markov or Gibbs measure");
  const auto psi = model.defining_potential();
  if (!psi) throw DomainError("measure has a zero-mass admissible transition and no finite potential");
  GibbsIdentity out;
  out.q = q;
  out.growth_rate = closed_form_h(model, q);
  out.pressure_q = pressure(model.space(), *psi, q);
  out.pressure_one = pressure(model.space(), *psi, 1.0);
  out.residual = std::abs(out.growth_rate - (out.pressure_q - q * out.pressure_one));
  return out;
}

double gibbs_identity_residual(const MeasureModel& model, double q) { return gibbs_identity(model, q).residual; }

double correlation_entropy(const MeasureModel& model, double q, int n, DepthOffset k) {
  if (q == 1.0) throw DomainError("correlation entropy is singular at q = 1");
  if (n < 1) throw DomainError("correlation entropy needs n >= 1");
  LogSum<double> acc;
  for (double lm : level_log_masses(model, static_cast<std::size_t>(n + k.value()))) {
    if (lm != log_zero()) acc.add(q * lm);
  }
  return acc.value() / ((1.0 - q) * n);
}

}  // namespace mfent
