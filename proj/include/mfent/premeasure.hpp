#pragma once

// Covering and packing pre-measures of a clopen set on the cylinder tree.
//
// A centered (N, eps)-covering of K by Bowen balls is, under the dyadic
// metric, an antichain of cylinders meeting K whose union contains K; a
// centered packing is any antichain of cylinders meeting K. A ball of order n
// is a cylinder of length n + k and carries the weight
//   Psi_q(mass) * exp(-t n).
// Orders are restricted to [N, D]; D is the truncation of the unbounded
// orders. All values are extended reals carried as logarithms.

#include <span>
#include <vector>

#include "mfent/measure.hpp"
#include "mfent/symbolic.hpp"

namespace mfent {

/// Psi_s(x): x^s, with Psi_s(0) = +inf for s < 0 and Psi_0 = 1.
struct PsiValue {
  double value;
  double log_value;
};
PsiValue psi(double s, double x);
/// log Psi_s(exp(log_x)).
double log_psi(double s, double log_x);

struct PremeasureParams {
  double q = 0.0;
  double t = 0.0;
  int N = 1;
  DepthOffset k;
  int D = 1;

  void validate() const;
};

struct PremeasureValue {
  double log_value;     // -inf is the value 0, +inf is +inf
  bool exact_at_depth;  // false when the value over-estimates the D-capped quantity
  double value() const;
};

/// Nodes of the cylinder tree that meet K, down to cylinder depth D + k.
/// Weights depend on q only; t is applied at evaluation time so one tree
/// serves a whole root search.
class CylinderTree {
 public:
  CylinderTree(const MeasureModel& model, const CylinderSet& K, double q, int N, int D, DepthOffset k);

  double covering(double t) const;
  double packing(double t) const;
  /// Inf over partitions of K into pieces K n [w], |w| <= cover_depth, of the
  /// summed packing values of the pieces.
  double packing_outer(double t, int cover_depth) const;

  std::size_t size() const { return nodes_.size(); }
  int N() const { return N_; }
  int D() const { return D_; }
  DepthOffset k() const { return k_; }

 private:
  struct Node {
    int parent;
    int order;  // Bowen order n = depth - k
    double log_psi;
    std::vector<int> kids;
  };

  double weight(const Node& node, double t) const { return node.log_psi - t * node.order; }
  bool selectable(const Node& node) const { return node.order >= N_ && node.order <= D_; }
  std::vector<double> packing_table(double t) const;

  std::vector<Node> nodes_;  // preorder, root first
  int N_;
  int D_;
  DepthOffset k_;
};

PremeasureValue covering_premeasure(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p);
PremeasureValue packing_premeasure(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p);
/// Refined packing construction restricted to cylinder-partition covers;
/// flagged inexact, an upper bound for the value over arbitrary covers.
PremeasureValue packing_outer(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p,
                              int cover_depth);

enum class OracleMode { min_covering, max_packing };

struct OracleQuery {
  double q;
  double t;
  int N;
  OracleMode mode;
};

/// Brute-force optimum over every antichain of cylinders meeting K with
/// orders in [N, D]. Refuses trees above 2^16 nodes. Test oracle only.
double antichain_oracle(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p,
                        OracleMode mode);
/// Several queries sharing one enumeration of the antichains (log values).
std::vector<double> antichain_oracle(const MeasureModel& model, const CylinderSet& K, int D, DepthOffset k,
                                     std::span<const OracleQuery> queries);

}  // namespace mfent
