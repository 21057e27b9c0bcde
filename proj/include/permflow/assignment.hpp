#pragma once

#include <vector>

#include "permflow/vec.hpp"

namespace permflow::assignment {

// Dense square cost matrix, row-major. Entries are squared lengths (or any
// nonnegative finite pairing cost).
struct CostMatrix {
  int n = 0;
  std::vector<double> entries;  // n*n, row-major

  CostMatrix() = default;
  explicit CostMatrix(int n_) : n(n_), entries(static_cast<size_t>(n_) * n_, 0.0) {}

  double& at(int a, int b) { return entries[static_cast<size_t>(a) * n + b]; }
  double at(int a, int b) const { return entries[static_cast<size_t>(a) * n + b]; }

  double max_entry() const;
  // Throws std::domain_error on non-finite or negative entries.
  void validate() const;
};

// Optimal pairing together with dual certificates.
//
// sigma[a] is the target matched to source a. The duals satisfy
// u[a] + v[b] <= cost(a,b) for all pairs, with equality on matched pairs,
// and are normalized so v[0] == 0. Among cost-equal optimal permutations
// the lexicographically smallest sigma is returned.
struct AssignmentResult {
  std::vector<int> sigma;
  std::vector<double> u;
  std::vector<double> v;
  double total_cost = 0.0;

  int size() const { return static_cast<int>(sigma.size()); }
};

// Optimality certificate produced by verify_optimality. all_pass is true iff
// sigma is a bijection, the duals are feasible and complementary within tol,
// the stored cost matches the matrix, and no 2- or 3-cycle reassignment
// improves the cost by more than tol.
struct CertificateReport {
  bool bijective = false;
  double max_feasibility_violation = 0.0;  // max over (a,b) of u[a]+v[b]-c(a,b)
  double max_slackness_residual = 0.0;     // max over a of |u[a]+v[sigma[a]]-c(a,sigma[a])|
  double duality_gap = 0.0;                // |sum u + sum v - total_cost|
  double cost_residual = 0.0;              // |recomputed cost - total_cost|
  double min_two_cycle_margin = 0.0;       // min over swaps of (new cost - old cost)
  double min_three_cycle_margin = 0.0;     // min over 3-rotations
  double tol = 0.0;
  bool all_pass = false;
};

// entries[a][b] = |sources[a] - targets[b]|^2. Counts must match.
CostMatrix squared_distance_costs(const std::vector<Vec>& sources, const std::vector<Vec>& targets);

// Exact solver (shortest augmenting path with dual maintenance, O(n^3)).
// Deterministic: ties between cost-equal optima resolve to the
// lexicographically smallest permutation.
AssignmentResult solve_assignment(const CostMatrix& costs);

// Permutation and total cost only; same sigma as solve_assignment but skips
// the dual reconstruction. This is the hot path for repeated re-matching.
std::vector<int> solve_assignment_sigma(const CostMatrix& costs, double* total_cost = nullptr);

// Exhaustive enumeration over all n! permutations, n <= 9. Same tie-break
// and the same dual construction as solve_assignment.
AssignmentResult brute_force_assignment(const CostMatrix& costs);

CertificateReport verify_optimality(const CostMatrix& costs, const AssignmentResult& result, double tol);

// Scale-aware default tolerance for dual certificates.
double certificate_tol(const CostMatrix& costs);

// Monotone rearrangement: k-th smallest source pairs with k-th smallest
// target, O(n log n). Equals solve_assignment on the induced squared-distance
// matrix when values are distinct; ties resolve by index (stable).
AssignmentResult sorted_assignment_1d(const std::vector<double>& sources, const std::vector<double>& targets);

}  // namespace permflow::assignment
