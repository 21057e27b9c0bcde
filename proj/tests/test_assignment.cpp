#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "permflow/assignment.hpp"

using namespace permflow;
using namespace permflow::assignment;

namespace {

// Independent oracle: direct enumeration, kept separate from the library's
// brute_force_assignment so the two can cross-check each other.
std::pair<std::vector<int>, double> enumerate_min(const CostMatrix& c) {
  std::vector<int> perm(c.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int a = 0; a < c.n; ++a) s += c.at(a, perm[a]);
    if (s < best_cost) {
      best_cost = s;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_cost};
}

CostMatrix random_matrix(int n, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(0.0, scale);
  CostMatrix c(n);
  for (double& e : c.entries) e = dist(rng);
  return c;
}

bool is_bijection(const std::vector<int>& sigma) {
  std::vector<char> seen(sigma.size(), 0);
  for (int b : sigma) {
    if (b < 0 || b >= static_cast<int>(sigma.size()) || seen[b]) return false;
    seen[b] = 1;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("assignment");

TEST_CASE("squared_distance_costs basics") {
  CostMatrix c = squared_distance_costs({Vec(0, 0)}, {Vec(3, 4)});
  CHECK(c.n == 1);
  CHECK(c.at(0, 0) == doctest::Approx(25.0));

  CostMatrix c2 = squared_distance_costs({Vec(0, 0), Vec(1, 0)}, {Vec(0, 0), Vec(2, 0)});
  CHECK(c2.at(0, 0) == 0.0);
  CHECK(c2.at(0, 1) == 4.0);
  CHECK(c2.at(1, 0) == 1.0);
  CHECK(c2.at(1, 1) == 1.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Vec> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(Vec(dist(rng), dist(rng), dist(rng)));
  CostMatrix self = squared_distance_costs(pts, pts);
  for (int a = 0; a < self.n; ++a) CHECK(self.at(a, a) == 0.0);

  CHECK_THROWS_AS(squared_distance_costs({Vec(0)}, {Vec(0), Vec(1)}), std::invalid_argument);
}

TEST_CASE("solve_assignment single pair and identity tie") {
  CostMatrix c(1);
  c.at(0, 0) = 5.0;
  AssignmentResult r = solve_assignment(c);
  CHECK(r.sigma == std::vector<int>{0});
  CHECK(r.total_cost == 5.0);

  CostMatrix c2(2);
  c2.at(0, 0) = 0.0;
  c2.at(0, 1) = 1.0;
  c2.at(1, 0) = 1.0;
  c2.at(1, 1) = 0.0;
  AssignmentResult r2 = solve_assignment(c2);
  CHECK(r2.sigma == std::vector<int>{0, 1});
  CHECK(r2.total_cost == 0.0);
}

TEST_CASE("solve_assignment rejects bad entries") {
  CostMatrix c(2);
  c.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve_assignment(c), std::domain_error);
  c.at(0, 0) = -1.0;
  CHECK_THROWS_AS(solve_assignment(c), std::domain_error);
}

TEST_CASE("solver matches enumeration oracle on random instances") {
  std::mt19937 rng(42);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      CostMatrix c = random_matrix(n, rng);
      auto [oracle_sigma, oracle_cost] = enumerate_min(c);
      AssignmentResult r = solve_assignment(c);
      CHECK(r.total_cost == oracle_cost);
      CHECK(r.sigma == oracle_sigma);
      CHECK(is_bijection(r.sigma));
    }
  }
}

TEST_CASE("brute_force_assignment agrees with solver and refuses n > 9") {
  CostMatrix c1(1);
  c1.at(0, 0) = 5.0;
  CHECK(brute_force_assignment(c1).total_cost == 5.0);

  std::mt19937 rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    CostMatrix c = random_matrix(4, rng);
    AssignmentResult bf = brute_force_assignment(c);
    AssignmentResult hs = solve_assignment(c);
    CHECK(bf.total_cost == hs.total_cost);
    CHECK(bf.sigma == hs.sigma);
    CHECK(bf.u == hs.u);  // same canonical dual construction on the same sigma
    CHECK(bf.v == hs.v);
  }

  CostMatrix big(10);
  CHECK_THROWS_AS(brute_force_assignment(big), std::invalid_argument);
}

TEST_CASE("dual certificates: feasibility, slackness, duality gap") {
  std::mt19937 rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    CostMatrix c = random_matrix(6, rng, 3.0);
    AssignmentResult r = solve_assignment(c);
    const double tol = certificate_tol(c);
    CertificateReport rep_out = verify_optimality(c, r, tol);
    CHECK(rep_out.all_pass);
    CHECK(rep_out.duality_gap <= 1e-9 * (1.0 + r.total_cost));
    AssignmentResult bf = brute_force_assignment(c);
    CHECK(bf.total_cost == r.total_cost);
  }
}

TEST_CASE("verify_optimality flags a deliberately swapped matching") {
  CostMatrix c(2);
  c.at(0, 0) = 0.0;
  c.at(0, 1) = 1.0;
  c.at(1, 0) = 1.0;
  c.at(1, 1) = 0.0;
  AssignmentResult r = solve_assignment(c);
  std::swap(r.sigma[0], r.sigma[1]);  // unique optimum -> swap must fail
  r.total_cost = c.at(0, r.sigma[0]) + c.at(1, r.sigma[1]);
  CertificateReport rep = verify_optimality(c, r, certificate_tol(c));
  CHECK_FALSE(rep.all_pass);
  CHECK(rep.min_two_cycle_margin < 0.0);
}

TEST_CASE("lexicographic tie-break matches enumeration on tied matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> small(0, 2);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      CostMatrix c(n);
      for (double& e : c.entries) e = static_cast<double>(small(rng));
      auto [oracle_sigma, oracle_cost] = enumerate_min(c);  // first hit = lexicographically smallest
      AssignmentResult r = solve_assignment(c);
      CHECK(r.total_cost == oracle_cost);
      CHECK(r.sigma == oracle_sigma);
    }
  }
}

TEST_CASE("translation invariance of the argmin") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Vec> sources, targets;
    for (int i = 0; i < 7; ++i) {
      sources.push_back(Vec(dist(rng), dist(rng)));
      targets.push_back(Vec(dist(rng), dist(rng)));
    }
    const Vec t(dist(rng), dist(rng));
    std::vector<Vec> shifted = sources;
    for (Vec& s : shifted) s += t;
    AssignmentResult base = solve_assignment(squared_distance_costs(sources, targets));
    AssignmentResult moved = solve_assignment(squared_distance_costs(shifted, targets));
    CHECK(base.sigma == moved.sigma);
  }
}

TEST_CASE("sorted_assignment_1d pairs monotonically") {
  AssignmentResult r = sorted_assignment_1d({0.9, 0.1}, {0.0, 1.0});
  CHECK(r.sigma == std::vector<int>{1, 0});
  CHECK(r.total_cost == doctest::Approx(0.02));

  std::vector<double> vals = {0.1, 0.4, 0.7};
  AssignmentResult ident = sorted_assignment_1d(vals, vals);
  CHECK(ident.sigma == std::vector<int>{0, 1, 2});
  CHECK(ident.total_cost == 0.0);
}

TEST_CASE("sorted_assignment_1d equals solver and brute force on random data") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 8;
    std::vector<double> src(n), tgt(n);
    for (int i = 0; i < n; ++i) {
      src[i] = dist(rng);
      tgt[i] = (i + 0.5) / n;
    }
    std::vector<Vec> sv, tv;
    for (int i = 0; i < n; ++i) {
      sv.push_back(Vec(src[i]));
      tv.push_back(Vec(tgt[i]));
    }
    CostMatrix c = squared_distance_costs(sv, tv);
    AssignmentResult sorted = sorted_assignment_1d(src, tgt);
    AssignmentResult solved = solve_assignment(c);
    AssignmentResult bf = brute_force_assignment(c);
    CHECK(sorted.sigma == solved.sigma);
    CHECK(sorted.total_cost == solved.total_cost);
    CHECK(solved.total_cost == bf.total_cost);
    CertificateReport cert = verify_optimality(c, sorted, certificate_tol(c));
    CHECK(cert.all_pass);
  }
}

TEST_CASE("1D monotonicity of the general solver") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 6;
    std::vector<double> src(n);
    for (double& s : src) s = dist(rng);
    std::vector<double> tgt(n);
    for (int i = 0; i < n; ++i) tgt[i] = (i + 0.5) / n;
    std::vector<Vec> sv, tv;
    for (int i = 0; i < n; ++i) {
      sv.push_back(Vec(src[i]));
      tv.push_back(Vec(tgt[i]));
    }
    AssignmentResult solved = solve_assignment(squared_distance_costs(sv, tv));
    // matched targets must be sorted the same way as the sources
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return src[i] < src[j]; });
    for (int k = 0; k + 1 < n; ++k) CHECK(tgt[solved.sigma[order[k]]] < tgt[solved.sigma[order[k + 1]]]);
  }
}

TEST_SUITE_END();
