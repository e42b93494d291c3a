#pragma once

// Thermodynamic reference values: pressure of locally constant potentials,
// closed-form partition growth rates and the correlation-integral entropy.
// These are the independent oracles the numeric spectrum is checked against.

#include <Eigen/Core>

#include "mfent/measure.hpp"
#include "mfent/potential.hpp"

namespace mfent {

/// Transfer matrix over admissible (r-1)-blocks with entries exp(scale * psi).
Eigen::MatrixXd transfer_matrix(const ShiftSpace& space, const Potential& psi, double scale);

/// P(scale * psi) = log of the Perron root of the transfer matrix.
double pressure(const ShiftSpace& space, const Potential& psi, double scale);

/// Closed-form h(q) = lim (1/n) log sum_{|w|=n} Psi_q(mass(w)).
/// Bernoulli: log sum_i p_i^q; Markov and Gibbs: log Perron root of the
/// entrywise q-power of the block transition matrix. +inf when q < 0 and an
/// admissible cylinder has zero mass.
double closed_form_h(const MeasureModel& model, double q);

struct GibbsIdentity {
  double q;
  double growth_rate;     // closed_form_h(q)
  double pressure_q;      // P(q psi)
  double pressure_one;    // P(psi)
  double residual;        // |growth_rate - (pressure_q - q pressure_one)|
};

/// Compares the partition growth rate with P(q psi) - q P(psi).
GibbsIdentity gibbs_identity(const MeasureModel& model, double q);
double gibbs_identity_residual(const MeasureModel& model, double q);

/// (1 / ((1-q) n)) log sum_{|w|=n+k} mass(w)^q, the finite-n correlation
/// integral of mass(B^n)^{q-1} against the measure.
double correlation_entropy(const MeasureModel& model, double q, int n, DepthOffset k);

}  // namespace mfent
