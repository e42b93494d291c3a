#include "mfent/potential.hpp"

#include <cmath>

#include "mfent/errors.hpp"

namespace mfent {

void Potential::validate(const ShiftSpace& space) const {
  if (r < 2) throw DomainError("potential locality r must be >= 2");
  const int m = space.alphabet_size();
  for (const Word& w : admissible_words(space, static_cast<std::size_t>(r))) {
    const auto it = table.find(w);
    if (it == table.end()) throw DomainError("potential table is missing word '" + w.str(m) + "'");
    if (!std::isfinite(it->second))
      throw DomainError("potential value for word '" + w.str(m) + "' is not finite");
  }
  for (const auto& [w, value] : table) {
    if (w.size() != static_cast<std::size_t>(r) || !space.admissible(w))
      throw DomainError("potential table has unexpected word '" + w.str(m) + "'");
  }
}

double Potential::operator()(const Word& w) const {
  const auto it = table.find(w);
  if (it == table.end()) throw DomainError("potential is not defined on word '" + w.str() + "'");
  return it->second;
}

Potential Potential::scaled(double factor) const {
  Potential out{r, {}};
  for (const auto& [w, value] : table) out.table.emplace(w, factor * value);
  return out;
}

}  // namespace mfent
