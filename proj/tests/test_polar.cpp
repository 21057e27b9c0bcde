#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "permflow/polar.hpp"

using namespace permflow;
using namespace permflow::polar;
namespace asg = permflow::assignment;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec> random_cloud(int n, int dim, std::mt19937& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i)
    out.push_back(Vec(dist(rng), dim >= 2 ? dist(rng) : 0.0, dim >= 3 ? dist(rng) : 0.0));
  return out;
}

// Histogram with synthetic counts proportional to exact per-cell integrals of
// rho(x) = 1 - 4 pi^2 amp cos(2 pi x1) on the unit square.
DensityHistogram cosine_density_histogram(const PointCloud& grid, double amp) {
  DensityHistogram h;
  h.box = grid.box;
  h.counts.assign(h.box.cell_count(), 0);
  const double scale = 1e12;
  for (int flat = 0; flat < h.box.cell_count(); ++flat) {
    const auto idx = h.box.unflatten(flat);
    const double xl = h.box.lo.x + idx[0] * h.box.widths[0];
    const double xr = xl + h.box.widths[0];
    const double mass = h.box.widths[1] * (h.box.widths[0] - 2.0 * kPi * amp * (std::sin(2.0 * kPi * xr) - std::sin(2.0 * kPi * xl)));
    h.counts[flat] = static_cast<long>(std::llround(scale * mass));
  }
  h.total = std::accumulate(h.counts.begin(), h.counts.end(), 0L);
  return h;
}

double cosine_residual(int n, double amp) {
  PointCloud grid = make_grid(Domain::square, n);
  PotentialSamples phi;
  phi.locations = grid.points;
  for (const Vec& p : grid.points) phi.phi.push_back(0.5 * norm2(p) + amp * std::cos(2.0 * kPi * p.x));
  return monge_ampere_residual(phi, cosine_density_histogram(grid, amp));
}

}  // namespace

TEST_SUITE_BEGIN("polar");

TEST_CASE("make_grid cell centers") {
  PointCloud g1 = make_grid(Domain::interval, 4);
  REQUIRE(g1.count() == 4);
  CHECK(g1.points[0].x == doctest::Approx(0.125));
  CHECK(g1.points[1].x == doctest::Approx(0.375));
  CHECK(g1.points[2].x == doctest::Approx(0.625));
  CHECK(g1.points[3].x == doctest::Approx(0.875));

  PointCloud g2 = make_grid(Domain::square, 2);
  REQUIRE(g2.count() == 4);
  CHECK(g2.points[0].x == doctest::Approx(0.25));
  CHECK(g2.points[0].y == doctest::Approx(0.25));
  CHECK(g2.points[3].x == doctest::Approx(0.75));
  CHECK(g2.points[3].y == doctest::Approx(0.75));

  CHECK_THROWS_AS(make_grid(Domain::square, 1), std::invalid_argument);
}

TEST_CASE("disk grid covers the right area fraction") {
  PointCloud g = make_grid(Domain::disk, 16);
  const double fraction = static_cast<double>(g.count()) / 256.0;
  CHECK(std::abs(fraction - kPi / 4.0) < 0.05);
  for (const Vec& p : g.points) CHECK(norm2(p) <= 1.0);
  // pairwise distinct comes with distinct cells
  std::vector<int> cells = g.cell_of_point;
  std::sort(cells.begin(), cells.end());
  CHECK(std::adjacent_find(cells.begin(), cells.end()) == cells.end());
}

TEST_CASE("cylinder grid stacks disk layers over [0,1]") {
  PointCloud g = make_grid(Domain::cylinder, 8);
  PointCloud disk = make_grid(Domain::disk, 8);
  CHECK(g.box.shape[2] == 4);
  CHECK(g.count() == 4 * disk.count());
  CHECK(g.points.front().z == doctest::Approx(0.125));
  CHECK(g.points.back().z == doctest::Approx(0.875));
  // volume consistency: N * cell volume ~ pi (disk area) * 1 (height)
  CHECK(g.count() * g.box.cell_volume() == doctest::Approx(kPi).epsilon(0.12));
}

TEST_CASE("projection of the grid itself is the identity") {
  PointCloud g = make_grid(Domain::square, 3);
  ProjectionResult pr = project_to_s(g.points, g);
  for (int a = 0; a < g.count(); ++a) CHECK(pr.assignment.sigma[a] == a);
  CHECK(pr.assignment.total_cost == 0.0);
}

TEST_CASE("projection is idempotent on rearrangements") {
  PointCloud g = make_grid(Domain::square, 3);
  std::mt19937 rng(11);
  std::vector<Vec> arranged = g.points;
  std::shuffle(arranged.begin(), arranged.end(), rng);
  ProjectionResult pr = project_to_s(arranged, g);
  CHECK(pr.assignment.total_cost == 0.0);
  for (int a = 0; a < g.count(); ++a) {
    CHECK(pr.rearrangement[a].x == arranged[a].x);
    CHECK(pr.rearrangement[a].y == arranged[a].y);
  }
  ProjectionResult again = project_to_s(pr.rearrangement, g);
  CHECK(again.assignment.total_cost == 0.0);
  for (int a = 0; a < g.count(); ++a) {
    CHECK(again.rearrangement[a].x == pr.rearrangement[a].x);
    CHECK(again.rearrangement[a].y == pr.rearrangement[a].y);
  }
}

TEST_CASE("quarter turn of the disk lattice projects at zero cost") {
  PointCloud g = make_grid(Domain::disk, 6);
  std::vector<Vec> rotated;
  for (const Vec& p : g.points) rotated.push_back(Vec(-p.y, p.x));
  ProjectionResult pr = project_to_s(rotated, g);
  CHECK(pr.assignment.total_cost == 0.0);
  for (int a = 0; a < g.count(); ++a) {
    CHECK(pr.rearrangement[a].x == rotated[a].x);
    CHECK(pr.rearrangement[a].y == rotated[a].y);
  }
}

TEST_CASE("projection cost equals brute-force minimum for small clouds") {
  PointCloud g = make_grid(Domain::interval, 8);
  std::mt19937 rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Vec> m = random_cloud(8, 1, rng, -0.2, 1.2);
    ProjectionResult pr = project_to_s(m, g);
    asg::AssignmentResult bf = asg::brute_force_assignment(asg::squared_distance_costs(m, g.points));
    CHECK(pr.assignment.total_cost == bf.total_cost);
  }
}

TEST_CASE("projection pairing is cyclically monotone") {
  PointCloud g = make_grid(Domain::square, 4);
  std::mt19937 rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Vec> m = random_cloud(g.count(), 2, rng, -0.3, 1.3);
    asg::CostMatrix c = asg::squared_distance_costs(m, g.points);
    ProjectionResult pr = project_to_s(m, g);
    asg::CertificateReport cert = asg::verify_optimality(c, pr.assignment, asg::certificate_tol(c));
    CHECK(cert.all_pass);
  }
}

TEST_CASE("potential of the identity map is |x|^2/2 up to a constant") {
  PointCloud g = make_grid(Domain::square, 3);
  ProjectionResult pr = project_to_s(g.points, g);
  PotentialSamples phi = convex_potential(g.points, pr.assignment);
  for (int a = 1; a < g.count(); ++a) {
    const double expected = 0.5 * (norm2(g.points[a]) - norm2(g.points[0]));
    CHECK(phi.phi[a] - phi.phi[0] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("translated grid still projects with the identity permutation") {
  PointCloud g = make_grid(Domain::square, 3);
  std::vector<Vec> shifted = g.points;
  for (Vec& p : shifted) p += Vec(0.03, -0.02);
  ProjectionResult pr = project_to_s(shifted, g);
  for (int a = 0; a < g.count(); ++a) CHECK(pr.assignment.sigma[a] == a);
}

TEST_CASE("potential differences match the brute-force dual route") {
  PointCloud g = make_grid(Domain::interval, 3);
  std::vector<Vec> m = {Vec(0.4), Vec(0.05), Vec(0.99)};
  asg::CostMatrix c = asg::squared_distance_costs(m, g.points);
  PotentialSamples via_solver = convex_potential(m, asg::solve_assignment(c));
  PotentialSamples via_brute = convex_potential(m, asg::brute_force_assignment(c));
  for (int a = 0; a < 3; ++a) CHECK(via_solver.phi[a] == via_brute.phi[a]);
}

TEST_CASE("1D potential is discretely convex") {
  PointCloud g = make_grid(Domain::interval, 8);
  std::mt19937 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Vec> m = random_cloud(8, 1, rng);
    std::sort(m.begin(), m.end(), [](const Vec& a, const Vec& b) { return a.x < b.x; });
    ProjectionResult pr = project_to_s(m, g);
    // monotone pairing
    for (int k = 0; k + 1 < 8; ++k) CHECK(pr.rearrangement[k].x < pr.rearrangement[k + 1].x);
    PotentialSamples phi = convex_potential(m, pr.assignment);
    double prev_slope = -1e300;
    for (int k = 0; k + 1 < 8; ++k) {
      const double slope = (phi.phi[k + 1] - phi.phi[k]) / (m[k + 1].x - m[k].x);
      CHECK(slope >= prev_slope - 1e-9);
      prev_slope = slope;
    }
  }
}

TEST_CASE("empirical density of the grid is uniform") {
  PointCloud g = make_grid(Domain::square, 4);
  DensityHistogram h = empirical_density(g.points, g);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), 0L) == g.count());
  for (int flat = 0; flat < h.box.cell_count(); ++flat) {
    CHECK(h.counts[flat] == 1);
    CHECK(h.mass(flat) == doctest::Approx(1.0 / g.count()));
  }
  CHECK(h.clamped == 0);
}

TEST_CASE("empirical density piles a collapsed cloud into one cell") {
  PointCloud g = make_grid(Domain::square, 4);
  std::vector<Vec> m(g.count(), Vec(0.3, 0.8));
  DensityHistogram h = empirical_density(m, g);
  long nonzero = 0;
  for (long cnt : h.counts)
    if (cnt > 0) ++nonzero;
  CHECK(nonzero == 1);
  CHECK(*std::max_element(h.counts.begin(), h.counts.end()) == g.count());
}

TEST_CASE("empirical density approximates 1/(2 sqrt x) for the squared map") {
  const int n_samples = 10000;
  PointCloud bins = make_grid(Domain::interval, 50);
  std::vector<Vec> m;
  for (int i = 0; i < n_samples; ++i) {
    const double a = (i + 0.5) / n_samples;
    m.push_back(Vec(a * a));
  }
  DensityHistogram h = empirical_density(m, bins);
  // change-of-variables oracle: mass over [xl, xr] is sqrt(xr) - sqrt(xl)
  for (int flat = 5; flat < 50; ++flat) {
    const double xl = flat / 50.0, xr = (flat + 1) / 50.0;
    const double expected = std::sqrt(xr) - std::sqrt(xl);
    CHECK(std::abs(h.mass(flat) - expected) / expected < 0.10);
  }
}

TEST_CASE("Monge-Ampere residual vanishes for the quadratic potential") {
  PointCloud g = make_grid(Domain::square, 16);
  PotentialSamples phi;
  phi.locations = g.points;
  for (const Vec& p : g.points) phi.phi.push_back(0.5 * norm2(p));
  DensityHistogram h = empirical_density(g.points, g);
  CHECK(monge_ampere_residual(phi, h) == 0.0);
}

TEST_CASE("Monge-Ampere residual of the projected identity map vanishes") {
  PointCloud g = make_grid(Domain::square, 8);
  ProjectionResult pr = project_to_s(g.points, g);
  PotentialSamples phi = convex_potential(g.points, pr.assignment);
  DensityHistogram h = empirical_density(g.points, g);
  CHECK(monge_ampere_residual(phi, h) <= 1e-12);
}

TEST_CASE("Monge-Ampere residual drops under grid refinement") {
  const double r16 = cosine_residual(16, 0.01);
  const double r32 = cosine_residual(32, 0.01);
  CHECK(r16 > 0.0);
  CHECK(r32 <= r16 / 1.5);
}

TEST_CASE("Monge-Ampere residual rejects non-tensor grids") {
  PointCloud g = make_grid(Domain::disk, 8);
  PotentialSamples phi;
  phi.locations = g.points;
  phi.phi.assign(g.count(), 0.0);
  DensityHistogram h = empirical_density(g.points, g);
  CHECK_THROWS_AS(monge_ampere_residual(phi, h), std::invalid_argument);
}

TEST_SUITE_END();
