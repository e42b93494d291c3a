// Exhaustive antichain enumeration. Shares nothing with the tree DP beyond
// the measure and the set: values are linear-domain sums over explicitly
// listed antichains.

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfent/errors.hpp"
#include "mfent/premeasure.hpp"

namespace mfent {

namespace {

constexpr std::size_t kMaxOracleNodes = std::size_t{1} << 16;

struct OracleNode {
  int order;
  bool leaf;
  std::size_t subtree_end;  // one past the last preorder descendant
  double mass;
};

void collect(const MeasureModel& model, const CylinderSet& K, const Word& w, std::size_t max_depth, int k,
             std::vector<OracleNode>& out) {
  for (const Word& c : children(model.space(), w)) {
    if (!K.intersects(c)) continue;
    if (out.size() >= kMaxOracleNodes) throw NumericError("antichain oracle refuses trees above 2^16 nodes");
    const std::size_t at = out.size();
    out.push_back({static_cast<int>(c.size()) - k, c.size() == max_depth, 0, model.mass(c).value});
    if (c.size() < max_depth) collect(model, K, c, max_depth, k, out);
    out[at].subtree_end = out.size();
  }
}

class Enumerator {
 public:
  Enumerator(std::vector<OracleNode> nodes, std::span<const OracleQuery> queries)
      : nodes_(std::move(nodes)), queries_(queries.begin(), queries.end()) {
    // Weights depend on (q, t) only; queries sharing them share one running sum.
    std::vector<std::pair<double, double>> keys;
    for (const OracleQuery& query : queries_) {
      const std::pair<double, double> key{query.q, query.t};
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
      if (std::find(orders_.begin(), orders_.end(), query.N) == orders_.end()) orders_.push_back(query.N);
      has_packing_ = has_packing_ || query.mode == OracleMode::max_packing;
    }
    std::sort(orders_.begin(), orders_.end());
    for (const OracleQuery& query : queries_) {
      const auto c = std::find(keys.begin(), keys.end(), std::pair{query.q, query.t}) - keys.begin();
      const auto g = std::find(orders_.begin(), orders_.end(), query.N) - orders_.begin();
      slot_.push_back(static_cast<std::size_t>(g) * keys.size() + static_cast<std::size_t>(c));
    }
    columns_ = keys.size();
    weights_.resize(columns_ * nodes_.size());
    for (std::size_t c = 0; c < columns_; ++c) {
      const auto [q, t] = keys[c];
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const OracleNode& node = nodes_[i];
        double psi_value;
        if (q == 0.0) {
          psi_value = 1.0;
        } else if (node.mass == 0.0) {
          psi_value = q < 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        } else {
          psi_value = std::pow(node.mass, q);
        }
        weights_[i * columns_ + c] = psi_value * std::exp(-t * node.order);
      }
    }
    best_cover_.assign(orders_.size() * columns_, std::numeric_limits<double>::infinity());
    best_pack_.assign(orders_.size() * columns_, 0.0);
    found_cover_.assign(orders_.size(), false);
    sums_.assign((nodes_.size() + 1) * columns_, 0.0);
  }

  std::vector<double> run() {
    if (!queries_.empty()) walk(0, 0, true, std::numeric_limits<int>::max());
    std::vector<double> out;
    for (std::size_t j = 0; j < queries_.size(); ++j) {
      const std::size_t g = slot_[j] / columns_;
      if (queries_[j].mode == OracleMode::min_covering) {
        out.push_back(found_cover_[g] ? std::log(best_cover_[slot_[j]]) : std::numeric_limits<double>::infinity());
      } else {
        out.push_back(std::log(best_pack_[slot_[j]]));
      }
    }
    return out;
  }

 private:
  // Decide node i onwards. `covers`: every leaf so far lies under a chosen
  // node; `min_order`: smallest order chosen so far.
  void walk(std::size_t i, std::size_t level, bool covers, int min_order) {
    const std::size_t nc = columns_;
    if (i == nodes_.size()) {
      const double* sum = &sums_[level * nc];
      for (std::size_t g = 0; g < orders_.size() && orders_[g] <= min_order; ++g) {
        double* pack = &best_pack_[g * nc];
        for (std::size_t c = 0; c < nc; ++c) pack[c] = std::max(pack[c], sum[c]);
        if (!covers) continue;
        double* cover = &best_cover_[g * nc];
        for (std::size_t c = 0; c < nc; ++c) cover[c] = std::min(cover[c], sum[c]);
        found_cover_[g] = true;
      }
      return;
    }
    const OracleNode& node = nodes_[i];
    // Leave node i out; an unchosen leaf leaves part of K uncovered.
    const bool still_covers = covers && !node.leaf;
    if (still_covers || has_packing_) walk(i + 1, level, still_covers, min_order);
    // Take node i and skip its subtree.
    if (node.order >= orders_.front()) {
      const double* from = &sums_[level * nc];
      double* to = &sums_[(level + 1) * nc];
      const double* w = &weights_[i * nc];
      for (std::size_t c = 0; c < nc; ++c) to[c] = from[c] + w[c];
      walk(node.subtree_end, level + 1, covers, std::min(min_order, node.order));
    }
  }

  std::vector<OracleNode> nodes_;
  std::vector<OracleQuery> queries_;
  std::vector<int> orders_;        // distinct N, ascending
  std::vector<std::size_t> slot_;  // query -> order group * columns + (q, t) column
  std::size_t columns_ = 0;
  bool has_packing_ = false;
  std::vector<double> weights_;
  std::vector<double> sums_;
  std::vector<double> best_cover_;
  std::vector<double> best_pack_;
  std::vector<bool> found_cover_;
};

}  // namespace

std::vector<double> antichain_oracle(const MeasureModel& model, const CylinderSet& K, int D, DepthOffset k,
                                     std::span<const OracleQuery> queries) {
  if (K.empty()) throw DomainError("antichain oracle needs a non-empty set");
  for (const OracleQuery& query : queries) PremeasureParams{query.q, query.t, query.N, k, D}.validate();
  std::vector<OracleNode> nodes;
  collect(model, K, Word{}, static_cast<std::size_t>(D + k.value()), k.value(), nodes);
  return Enumerator(std::move(nodes), queries).run();
}

double antichain_oracle(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p,
                        OracleMode mode) {
  const OracleQuery query{p.q, p.t, p.N, mode};
  return antichain_oracle(model, K, p.D, p.k, std::span<const OracleQuery>(&query, 1))[0];
}

}  // namespace mfent
