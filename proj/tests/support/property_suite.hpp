#pragma once

// Randomized invariant checks shared by the unit suite and the acceptance run.

#include <cstdint>
#include <string>
#include <vector>

namespace mfent::props {

struct Report {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

Report monotone_in_set(std::uint64_t seed, int cases);
Report monotone_in_t(std::uint64_t seed, int cases);
Report monotone_in_N(std::uint64_t seed, int cases);
Report covering_below_packing(std::uint64_t seed, int cases);
Report outer_subadditive(std::uint64_t seed, int cases);
Report psi_identities(std::uint64_t seed, int cases);
Report h_convex(std::uint64_t seed, int cases);
Report h_star_concave(std::uint64_t seed, int cases);
Report filtration_nesting(std::uint64_t seed, int cases);
Report hausdorff_axioms(std::uint64_t seed, int cases);
Report semicontinuity(std::uint64_t seed, int cases);

std::vector<Report> all(std::uint64_t seed, int cases_each);

}  // namespace mfent::props
