#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncsim {

// One Monte-Carlo check: `observed` against `bound` in the stated direction.
struct SuiteResult {
  std::string name;
  long long trials = 0;
  double observed = 0;
  double bound = 0;
  bool upper = false;  // true: pass iff observed <= bound, else observed >= bound
  bool pass = false;
  std::string detail;
};

// Random m vectors of F_q^n span min(m,n) dimensions with frequency 1-O(1/q).
std::vector<SuiteResult> suite_full_rank(std::uint32_t q, int trials, std::uint64_t seed);
// With Π1 ⊄ Π2, m samples from Π1 all land inside Π2 with frequency O(q^-m).
std::vector<SuiteResult> suite_subset_capture(std::uint32_t q, int trials, std::uint64_t seed);
// dim(Π ∩ Π_k) follows the (min(m,n)+k-n)^+ formula with frequency 1-O(1/q).
std::vector<SuiteResult> suite_intersection_dim(std::uint32_t q, int trials, std::uint64_t seed);
// Four-way minimum for samples drawn from two overlapping subspaces.
std::vector<SuiteResult> suite_joint_sampling(std::uint32_t q, int trials, std::uint64_t seed);
// A random subspace is in general position w.r.t. a family of r=3 subspaces.
std::vector<SuiteResult> suite_general_position(std::uint32_t q, int trials, std::uint64_t seed);
// Dissemination reaches steady state by 2D(G)-1 and every node then collects
// innovative packets at its min-cut rate.
std::vector<SuiteResult> suite_steady_state(std::uint32_t q, int runs, std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(std::uint32_t q, int trials, std::uint64_t seed);

}  // namespace ncsim
