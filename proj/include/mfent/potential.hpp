#pragma once

#include <map>

#include "mfent/symbolic.hpp"

namespace mfent {

/// Locally constant potential: one value per admissible word of length r.
struct Potential {
  int r = 2;
  std::map<Word, double> table;

  /// Throws DomainError unless the table covers exactly the admissible
  /// length-r words of the space (the message names the offending word).
  void validate(const ShiftSpace& space) const;
  double operator()(const Word& w) const;
  Potential scaled(double factor) const;
};

}  // namespace mfent
