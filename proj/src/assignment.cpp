#include "permflow/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permflow::assignment {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double permutation_cost(const CostMatrix& c, const std::vector<int>& sigma) {
  double s = 0.0;
  for (int a = 0; a < c.n; ++a) s += c.at(a, sigma[a]);
  return s;
}

// Shortest augmenting path with dual maintenance. Internally 1-based with a
// dummy column 0; returns sigma plus the (pre-normalization) potentials.
void jv_solve(const CostMatrix& c, std::vector<int>& sigma, std::vector<double>& u, std::vector<double>& v) {
  const int n = c.n;
  std::vector<double> pu(n + 1, 0.0), pv(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // column -> row
  std::vector<int> way(n + 1, 0);
  std::vector<double> minv(n + 1, 0.0);
  std::vector<char> used(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c.at(i0 - 1, j - 1) - pu[i0] - pv[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          pu[match[j]] += delta;
          pv[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  sigma.assign(n, -1);
  for (int j = 1; j <= n; ++j) sigma[match[j] - 1] = j - 1;
  u.assign(n, 0.0);
  v.assign(n, 0.0);
  for (int i = 0; i < n; ++i) u[i] = pu[i + 1];
  for (int j = 0; j < n; ++j) v[j] = pv[j + 1];
}

// Lexicographically smallest perfect matching of the tight graph (edges whose
// reduced cost against the solver potentials is within tie_tol). Every
// cost-equal optimal permutation is supported on tight edges, so this
// normalizes the tie-break without touching the optimum.
std::vector<int> lexicographic_matching(const CostMatrix& c, std::vector<int> sigma, const std::vector<double>& u,
                                        const std::vector<double>& v) {
  const int n = c.n;
  const double tie_tol = 1e-11 * (1.0 + c.max_entry());

  std::vector<std::vector<int>> tight(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (c.at(a, b) - u[a] - v[b] <= tie_tol) tight[a].push_back(b);
    }
  }

  std::vector<int> owner(n, -1);
  for (int a = 0; a < n; ++a) owner[sigma[a]] = a;
  std::vector<char> fixed_col(n, 0);
  std::vector<char> visited(n, 0);

  // Reroute the row holding column b to the free column through unfixed rows.
  auto reroute = [&](auto&& self, int row, int free_col) -> bool {
    for (int col : tight[row]) {
      if (fixed_col[col] || visited[col]) continue;
      visited[col] = 1;
      if (col == free_col || self(self, owner[col], free_col)) {
        owner[col] = row;
        sigma[row] = col;
        return true;
      }
    }
    return false;
  };

  for (int a = 0; a < n; ++a) {
    for (int b : tight[a]) {
      if (b >= sigma[a]) break;
      if (fixed_col[b]) continue;
      std::fill(visited.begin(), visited.end(), 0);
      visited[b] = 1;
      const int displaced = owner[b];
      const int freed = sigma[a];
      if (reroute(reroute, displaced, freed)) {
        sigma[a] = b;
        owner[b] = a;
        break;
      }
    }
    fixed_col[sigma[a]] = 1;
  }
  return sigma;
}

std::vector<int> canonical_sigma(const CostMatrix& c, double* total_cost) {
  std::vector<int> sigma;
  std::vector<double> u, v;
  jv_solve(c, sigma, u, v);
  std::vector<int> lex = lexicographic_matching(c, sigma, u, v);
  // Guard: adopt the normalized permutation only when it is genuinely
  // cost-neutral (or better) in the same arithmetic.
  const double cost_lex = permutation_cost(c, lex);
  const double cost_jv = permutation_cost(c, sigma);
  const bool take_lex = cost_lex <= cost_jv;
  if (total_cost != nullptr) *total_cost = take_lex ? cost_lex : cost_jv;
  return take_lex ? lex : sigma;
}

// Duals from the matched graph: shortest-path potentials over target nodes,
// edges sigma[a] -> b with weight c(a,b) - c(a,sigma[a]) and a virtual source
// at distance 0 from every node. Optimality of sigma (cyclical monotonicity)
// rules out negative cycles; the relaxation round cap keeps float noise from
// looping. Normalized so v[0] == 0.
void reconstruct_duals(const CostMatrix& c, const std::vector<int>& sigma, std::vector<double>& u,
                       std::vector<double>& v) {
  const int n = c.n;
  std::vector<double> dist(n, 0.0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      const double base = dist[sigma[a]] - c.at(a, sigma[a]);
      for (int b = 0; b < n; ++b) {
        const double w = base + c.at(a, b);
        if (w < dist[b]) {
          dist[b] = w;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  v.assign(n, 0.0);
  for (int b = 0; b < n; ++b) v[b] = dist[b] - dist[0];
  u.assign(n, 0.0);
  for (int a = 0; a < n; ++a) u[a] = c.at(a, sigma[a]) - v[sigma[a]];
}

}  // namespace

double CostMatrix::max_entry() const {
  double m = 0.0;
  for (double e : entries) m = std::max(m, e);
  return m;
}

void CostMatrix::validate() const {
  if (n <= 0) throw std::invalid_argument("CostMatrix: empty matrix");
  if (entries.size() != static_cast<size_t>(n) * n) throw std::invalid_argument("CostMatrix: size mismatch");
  for (double e : entries) {
    if (!std::isfinite(e)) throw std::domain_error("CostMatrix: non-finite entry");
    if (e < 0.0) throw std::domain_error("CostMatrix: negative entry");
  }
}

CostMatrix squared_distance_costs(const std::vector<Vec>& sources, const std::vector<Vec>& targets) {
  if (sources.size() != targets.size())
    throw std::invalid_argument("squared_distance_costs: source/target counts differ (" +
                                std::to_string(sources.size()) + " vs " + std::to_string(targets.size()) + ")");
  if (sources.empty()) throw std::invalid_argument("squared_distance_costs: empty input");
  const int n = static_cast<int>(sources.size());
  CostMatrix c(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) c.at(a, b) = dist2(sources[a], targets[b]);
  return c;
}

std::vector<int> solve_assignment_sigma(const CostMatrix& costs, double* total_cost) {
  costs.validate();
  return canonical_sigma(costs, total_cost);
}

AssignmentResult solve_assignment(const CostMatrix& costs) {
  costs.validate();
  AssignmentResult r;
  r.sigma = canonical_sigma(costs, &r.total_cost);
  reconstruct_duals(costs, r.sigma, r.u, r.v);
  return r;
}

AssignmentResult brute_force_assignment(const CostMatrix& costs) {
  costs.validate();
  const int n = costs.n;
  if (n > 9) throw std::invalid_argument("brute_force_assignment: n > 9 (n! enumeration refused)");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = permutation_cost(costs, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double cost = permutation_cost(costs, perm);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  }

  AssignmentResult r;
  r.sigma = std::move(best);
  r.total_cost = best_cost;
  reconstruct_duals(costs, r.sigma, r.u, r.v);
  return r;
}

double certificate_tol(const CostMatrix& costs) { return 1e-9 * (1.0 + costs.max_entry()); }

CertificateReport verify_optimality(const CostMatrix& costs, const AssignmentResult& result, double tol) {
  const int n = costs.n;
  CertificateReport rep;
  rep.tol = tol;
  if (result.size() != n || static_cast<int>(result.u.size()) != n || static_cast<int>(result.v.size()) != n)
    throw std::invalid_argument("verify_optimality: result size does not match cost matrix");

  std::vector<char> seen(n, 0);
  rep.bijective = true;
  for (int a = 0; a < n; ++a) {
    const int b = result.sigma[a];
    if (b < 0 || b >= n || seen[b]) {
      rep.bijective = false;
      break;
    }
    seen[b] = 1;
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      rep.max_feasibility_violation =
          std::max(rep.max_feasibility_violation, result.u[a] + result.v[b] - costs.at(a, b));

  double recomputed = 0.0;
  double dual_sum = 0.0;
  for (int a = 0; a < n; ++a) {
    const int b = result.sigma[a];
    if (b >= 0 && b < n) {
      rep.max_slackness_residual =
          std::max(rep.max_slackness_residual, std::abs(result.u[a] + result.v[b] - costs.at(a, b)));
      recomputed += costs.at(a, b);
    }
    dual_sum += result.u[a] + result.v[a];
  }
  rep.duality_gap = std::abs(dual_sum - result.total_cost);
  rep.cost_residual = std::abs(recomputed - result.total_cost);

  // No improving swap or 3-rotation may exist for an optimal matching.
  rep.min_two_cycle_margin = kInf;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int sa = result.sigma[a], sb = result.sigma[b];
      const double delta = costs.at(a, sb) + costs.at(b, sa) - costs.at(a, sa) - costs.at(b, sb);
      rep.min_two_cycle_margin = std::min(rep.min_two_cycle_margin, delta);
    }
  }
  rep.min_three_cycle_margin = kInf;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      for (int g = 0; g < n; ++g) {
        if (g == a || g == b) continue;
        const int sa = result.sigma[a], sb = result.sigma[b], sg = result.sigma[g];
        const double delta =
            costs.at(a, sb) + costs.at(b, sg) + costs.at(g, sa) - costs.at(a, sa) - costs.at(b, sb) - costs.at(g, sg);
        rep.min_three_cycle_margin = std::min(rep.min_three_cycle_margin, delta);
      }
    }
  }
  if (n < 2) rep.min_two_cycle_margin = 0.0;
  if (n < 3) rep.min_three_cycle_margin = 0.0;

  rep.all_pass = rep.bijective && rep.max_feasibility_violation <= tol && rep.max_slackness_residual <= tol &&
                 rep.duality_gap <= tol && rep.cost_residual <= tol && rep.min_two_cycle_margin >= -tol &&
                 rep.min_three_cycle_margin >= -tol;
  return rep;
}

AssignmentResult sorted_assignment_1d(const std::vector<double>& sources, const std::vector<double>& targets) {
  if (sources.size() != targets.size())
    throw std::invalid_argument("sorted_assignment_1d: source/target counts differ");
  if (sources.empty()) throw std::invalid_argument("sorted_assignment_1d: empty input");
  const int n = static_cast<int>(sources.size());

  std::vector<int> src_order(n), tgt_order(n);
  std::iota(src_order.begin(), src_order.end(), 0);
  std::iota(tgt_order.begin(), tgt_order.end(), 0);
  auto by_value = [](const std::vector<double>& vals) {
    return [&vals](int i, int j) { return vals[i] < vals[j] || (vals[i] == vals[j] && i < j); };
  };
  std::sort(src_order.begin(), src_order.end(), by_value(sources));
  std::sort(tgt_order.begin(), tgt_order.end(), by_value(targets));

  AssignmentResult r;
  r.sigma.assign(n, -1);
  for (int k = 0; k < n; ++k) r.sigma[src_order[k]] = tgt_order[k];
  r.total_cost = 0.0;
  for (int a = 0; a < n; ++a) {
    const double d = sources[a] - targets[r.sigma[a]];
    r.total_cost += d * d;
  }

  // Chain duals along the sorted order: tight on matched pairs and on each
  // adjacent (source k+1, target k) constraint; feasible for every pair
  // because the squared-distance matrix is Monge under this ordering.
  std::vector<double> v_sorted(n, 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    const double s = sources[src_order[k + 1]];
    const double d_next = s - targets[tgt_order[k + 1]];
    const double d_prev = s - targets[tgt_order[k]];
    v_sorted[k + 1] = v_sorted[k] + d_next * d_next - d_prev * d_prev;
  }
  r.v.assign(n, 0.0);
  for (int k = 0; k < n; ++k) r.v[tgt_order[k]] = v_sorted[k];
  const double shift = r.v[0];
  for (double& vb : r.v) vb -= shift;
  r.u.assign(n, 0.0);
  for (int a = 0; a < n; ++a) {
    const double d = sources[a] - targets[r.sigma[a]];
    r.u[a] = d * d - r.v[r.sigma[a]];
  }
  return r;
}

}  // namespace permflow::assignment
