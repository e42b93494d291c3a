#include "mfent/premeasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mfent/errors.hpp"
#include "mfent/log_domain.hpp"

namespace mfent {

PsiValue psi(double s, double x) {
  if (!(x >= 0.0)) throw DomainError("Psi_s is defined on [0, inf); got " + std::to_string(x));
  const double lx = x > 0.0 ? std::log(x) : log_zero();
  const double lv = log_psi(s, lx);
  return {std::exp(lv), lv};
}

double log_psi(double s, double log_x) {
  if (s == 0.0) return 0.0;
  if (log_x == log_zero()) return s < 0.0 ? log_infinity() : log_zero();
  return s * log_x;
}

void PremeasureParams::validate() const {
  if (N < 1) throw DomainError("N must be >= 1");
  if (D < N) throw DomainError("depth cap D must be >= N");
  if (!std::isfinite(q) || !std::isfinite(t)) throw DomainError("q and t must be finite");
}

double PremeasureValue::value() const { return std::exp(log_value); }

namespace {

constexpr std::size_t kMaxTreeNodes = std::size_t{1} << 24;

}  // namespace

CylinderTree::CylinderTree(const MeasureModel& model, const CylinderSet& K, double q, int N, int D, DepthOffset k)
    : N_(N), D_(D), k_(k) {
  if (!(model.space() == K.space())) throw DomainError("set and measure live on different shift spaces");
  if (K.empty()) throw DomainError("pre-measures need a non-empty set");
  PremeasureParams{q, 0.0, N, k, D}.validate();

  const std::size_t max_depth = static_cast<std::size_t>(D + k.value());
  const ShiftSpace& space = model.space();
  // Depth-first build; `inside` marks [w] contained in K, otherwise `active`
  // lists the members of K that extend w.
  struct Frame {
    Word word;
    int parent;
    bool inside;
    std::vector<const Word*> active;
  };
  std::vector<Frame> stack;
  std::vector<const Word*> all;
  for (const Word& u : K.members()) all.push_back(&u);
  stack.push_back({Word{}, -1, K.covers(Word{}), all});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const int index = static_cast<int>(nodes_.size());
    if (nodes_.size() >= kMaxTreeNodes) throw NumericError("cylinder tree exceeds 2^24 nodes");
    nodes_.push_back({f.parent, static_cast<int>(f.word.size()) - k.value(), log_psi(q, model.log_mass(f.word)), {}});
    if (f.parent >= 0) nodes_[static_cast<std::size_t>(f.parent)].kids.push_back(index);
    if (f.word.size() >= max_depth) continue;
    auto kids = children(space, f.word);
    // Reverse push keeps preorder in symbol order.
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      Frame child{*it, index, f.inside, {}};
      if (!f.inside) {
        for (const Word* u : f.active) {
          if (u->size() == it->size() && *u == *it) {
            child.inside = true;
            break;
          }
          if (it->is_prefix_of(*u)) child.active.push_back(u);
        }
        if (!child.inside && child.active.empty()) continue;
        if (child.inside) child.active.clear();
      }
      stack.push_back(std::move(child));
    }
  }
}

double CylinderTree::covering(double t) const {
  std::vector<double> cost(nodes_.size());
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const Node& node = nodes_[i];
    if (node.order >= D_) {
      cost[i] = weight(node, t);
      continue;
    }
    LogSum<double> below;
    for (int c : node.kids) below.add(cost[static_cast<std::size_t>(c)]);
    cost[i] = selectable(node) ? std::min(weight(node, t), below.value()) : below.value();
  }
  return cost[0];
}

std::vector<double> CylinderTree::packing_table(double t) const {
  std::vector<double> best(nodes_.size());
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const Node& node = nodes_[i];
    if (node.order >= D_) {
      best[i] = weight(node, t);
      continue;
    }
    LogSum<double> below;
    for (int c : node.kids) below.add(best[static_cast<std::size_t>(c)]);
    best[i] = selectable(node) ? std::max(weight(node, t), below.value()) : below.value();
  }
  return best;
}

double CylinderTree::packing(double t) const { return packing_table(t)[0]; }

double CylinderTree::packing_outer(double t, int cover_depth) const {
  if (cover_depth < 0 || cover_depth > D_ + k_.value())
    throw DomainError("cover depth must lie in [0, D + k]");
  const std::vector<double> below = packing_table(t);
  // Packing of K n [w] also admits the balls of the ancestors of w.
  std::vector<double> ancestors(nodes_.size(), log_zero());
  std::vector<double> piece(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    if (node.parent >= 0) {
      const Node& up = nodes_[static_cast<std::size_t>(node.parent)];
      const double via = selectable(up) ? weight(up, t) : log_zero();
      ancestors[i] = std::max(ancestors[static_cast<std::size_t>(node.parent)], via);
    }
    piece[i] = std::max(below[i], ancestors[i]);
  }
  std::vector<double> outer(nodes_.size(), log_zero());
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const Node& node = nodes_[i];
    const int depth = node.order + k_.value();
    if (depth > cover_depth) continue;
    if (depth == cover_depth) {
      outer[i] = piece[i];
      continue;
    }
    LogSum<double> split;
    for (int c : node.kids) split.add(outer[static_cast<std::size_t>(c)]);
    outer[i] = std::min(piece[i], split.value());
  }
  return outer[0];
}

PremeasureValue covering_premeasure(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p) {
  p.validate();
  return {CylinderTree(model, K, p.q, p.N, p.D, p.k).covering(p.t), true};
}

PremeasureValue packing_premeasure(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p) {
  p.validate();
  return {CylinderTree(model, K, p.q, p.N, p.D, p.k).packing(p.t), true};
}

PremeasureValue packing_outer(const MeasureModel& model, const CylinderSet& K, const PremeasureParams& p,
                              int cover_depth) {
  p.validate();
  return {CylinderTree(model, K, p.q, p.N, p.D, p.k).packing_outer(p.t, cover_depth), false};
}

}  // namespace mfent
