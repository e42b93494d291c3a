#pragma once

// One-sided subshifts of finite type, words, cylinders and clopen cylinder
// sets. Points of the shift are only ever handled through finite prefixes.
//
// Metric: rho(x, y) = 2^{-min{i : x_i != y_i}}. With eps = 2^{-k} the open
// Bowen ball B^n_eps(x) is exactly the cylinder of the length-(n+k) prefix.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace mfent {

using Symbol = int;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  /// Digits "0110" (alphabets up to 36 via 0-9a-z) or comma separated "10,3,2".
  static Word parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  Symbol back() const { return symbols_.back(); }
  std::span<const Symbol> symbols() const { return symbols_; }

  Word prefix(std::size_t length) const;
  Word parent() const { return prefix(size() - 1); }
  Word extended(Symbol s) const;
  Word prepended(Symbol s) const;
  bool is_prefix_of(const Word& other) const;

  /// Inverse of parse for the given alphabet size.
  std::string str(int alphabet_size = 10) const;

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// eps = 2^{-k}; larger k means a smaller scale.
class DepthOffset {
 public:
  constexpr DepthOffset() = default;
  explicit DepthOffset(int k);

  int value() const { return k_; }
  double epsilon() const;
  DepthOffset next() const { return DepthOffset(k_ + 1); }

  auto operator<=>(const DepthOffset&) const = default;

 private:
  int k_ = 0;
};

class ShiftSpace {
 public:
  /// Validates the 0/1 matrix; throws DomainError naming a dead symbol.
  explicit ShiftSpace(Eigen::MatrixXi transitions);

  static ShiftSpace full(int alphabet_size);

  int alphabet_size() const { return static_cast<int>(transitions_.rows()); }
  const Eigen::MatrixXi& transitions() const { return transitions_; }
  bool allows(Symbol from, Symbol to) const { return transitions_(from, to) != 0; }

  /// Some power of the transition matrix is entrywise positive.
  bool irreducible() const { return irreducible_; }
  bool is_full() const { return full_; }

  bool admissible(const Word& w) const;
  /// Throws DomainError if w is not admissible.
  void require_admissible(const Word& w) const;

  bool operator==(const ShiftSpace& other) const {
    return transitions_.rows() == other.transitions_.rows() && transitions_ == other.transitions_;
  }

 private:
  Eigen::MatrixXi transitions_;
  bool irreducible_ = false;
  bool full_ = false;
};

ShiftSpace make_shift(int alphabet_size, const Eigen::MatrixXi& transitions);

/// Admissible one-symbol extensions of w in symbol order.
std::vector<Word> children(const ShiftSpace& space, const Word& w);

/// All admissible words of the given length, lexicographic.
std::vector<Word> admissible_words(const ShiftSpace& space, std::size_t length);

/// Length-(n+k) prefix of x: the cylinder equal to B^n_eps(x), eps = 2^{-k}.
Word bowen_cylinder(const Word& x, int n, DepthOffset k);

/// Finite antichain of admissible words, kept in canonical form: sorted, and
/// whenever every child of a word is present the children are replaced by it.
class CylinderSet {
 public:
  /// Empty set.
  explicit CylinderSet(ShiftSpace space);
  /// Throws DomainError on inadmissible members or a prefix pair.
  CylinderSet(ShiftSpace space, std::vector<Word> members);

  static CylinderSet whole(ShiftSpace space);

  const ShiftSpace& space() const { return space_; }
  const std::vector<Word>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t max_depth() const;

  /// [w] is a subset of this set (some member is a prefix of w).
  bool covers(const Word& w) const;
  /// [w] meets this set.
  bool intersects(const Word& w) const;
  /// This set intersected with [w].
  CylinderSet restricted_to(const Word& w) const;

  bool subset_of(const CylinderSet& other) const;
  CylinderSet united(const CylinderSet& other) const;

  bool operator==(const CylinderSet& other) const {
    return space_ == other.space_ && members_ == other.members_;
  }

 private:
  void canonicalize();

  ShiftSpace space_;
  std::vector<Word> members_;
};

bool intersects(const CylinderSet& K, const Word& w);

/// Exact Hausdorff distance between clopen sets; a dyadic value 2^{-d}.
/// Both empty gives 0, exactly one empty gives 1.
double hausdorff_distance(const CylinderSet& A, const CylinderSet& B);

}  // namespace mfent
