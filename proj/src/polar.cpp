#include "permflow/polar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace permflow::polar {

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::interval: return "interval";
    case Domain::square: return "square";
    case Domain::cube: return "cube";
    case Domain::disk: return "disk";
    case Domain::cylinder: return "cylinder";
  }
  return "?";
}

Domain parse_domain(const std::string& name) {
  if (name == "interval") return Domain::interval;
  if (name == "square") return Domain::square;
  if (name == "cube") return Domain::cube;
  if (name == "disk") return Domain::disk;
  if (name == "cylinder") return Domain::cylinder;
  throw std::invalid_argument("unknown domain '" + name + "' (interval|square|cube|disk|cylinder)");
}

double BoxGrid::cell_volume() const {
  double v = 1.0;
  for (int ax = 0; ax < dim; ++ax) v *= widths[ax];
  return v;
}

std::array<int, 3> BoxGrid::unflatten(int flat) const {
  std::array<int, 3> idx{0, 0, 0};
  idx[0] = flat % shape[0];
  idx[1] = (flat / shape[0]) % shape[1];
  idx[2] = flat / (shape[0] * shape[1]);
  return idx;
}

Vec BoxGrid::cell_center(int ix, int iy, int iz) const {
  return Vec(lo.x + (ix + 0.5) * widths[0], dim >= 2 ? lo.y + (iy + 0.5) * widths[1] : 0.0,
             dim >= 3 ? lo.z + (iz + 0.5) * widths[2] : 0.0);
}

std::array<int, 3> BoxGrid::locate(const Vec& p, bool* clamped) const {
  const double coords[3] = {p.x, p.y, p.z};
  const double los[3] = {lo.x, lo.y, lo.z};
  std::array<int, 3> idx{0, 0, 0};
  bool out = false;
  for (int ax = 0; ax < dim; ++ax) {
    int i = static_cast<int>(std::floor((coords[ax] - los[ax]) / widths[ax]));
    if (i < 0) {
      i = 0;
      out = true;
    }
    if (i >= shape[ax]) {
      i = shape[ax] - 1;
      out = true;
    }
    idx[ax] = i;
  }
  if (clamped != nullptr) *clamped = out;
  return idx;
}

PointCloud make_grid(Domain domain, int n_per_axis) {
  if (n_per_axis < 2) throw std::invalid_argument("make_grid: n_per_axis must be >= 2");
  PointCloud g;
  g.domain = domain;
  g.n_per_axis = n_per_axis;
  const int n = n_per_axis;

  switch (domain) {
    case Domain::interval:
      g.dim = 1;
      g.box = {1, {n, 1, 1}, Vec(0.0), {1.0 / n, 1.0, 1.0}};
      break;
    case Domain::square:
      g.dim = 2;
      g.box = {2, {n, n, 1}, Vec(0.0, 0.0), {1.0 / n, 1.0 / n, 1.0}};
      break;
    case Domain::cube:
      g.dim = 3;
      g.box = {3, {n, n, n}, Vec(0.0, 0.0, 0.0), {1.0 / n, 1.0 / n, 1.0 / n}};
      break;
    case Domain::disk:
      g.dim = 2;
      g.box = {2, {n, n, 1}, Vec(-1.0, -1.0), {2.0 / n, 2.0 / n, 1.0}};
      break;
    case Domain::cylinder: {
      g.dim = 3;
      const int layers = std::max(1, static_cast<int>(std::lround(n / 2.0)));
      g.box = {3, {n, n, layers}, Vec(-1.0, -1.0, 0.0), {2.0 / n, 2.0 / n, 1.0 / layers}};
      break;
    }
  }

  const bool round_xy = (domain == Domain::disk || domain == Domain::cylinder);
  for (int iz = 0; iz < g.box.shape[2]; ++iz) {
    for (int iy = 0; iy < g.box.shape[1]; ++iy) {
      for (int ix = 0; ix < g.box.shape[0]; ++ix) {
        Vec c = g.box.cell_center(ix, iy, iz);
        if (round_xy) {
          // Integer-ratio centers keep the retained lattice exactly symmetric
          // under negation and quarter turns.
          c.x = static_cast<double>(2 * ix + 1 - n) / n;
          c.y = static_cast<double>(2 * iy + 1 - n) / n;
          if (c.x * c.x + c.y * c.y > 1.0) continue;
        }
        g.points.push_back(c);
        g.cell_of_point.push_back(g.box.flat_index(ix, iy, iz));
      }
    }
  }
  return g;
}

DensityHistogram empirical_density(const std::vector<Vec>& mapped, const PointCloud& grid) {
  DensityHistogram h;
  h.box = grid.box;
  h.counts.assign(h.box.cell_count(), 0);
  h.total = static_cast<long>(mapped.size());
  if (mapped.empty()) throw std::invalid_argument("empirical_density: empty input");
  for (const Vec& p : mapped) {
    bool clamped = false;
    const auto idx = h.box.locate(p, &clamped);
    if (clamped) ++h.clamped;
    ++h.counts[h.box.flat_index(idx[0], idx[1], idx[2])];
  }
  return h;
}

ProjectionResult project_to_s(const std::vector<Vec>& mapped, const PointCloud& grid) {
  if (static_cast<int>(mapped.size()) != grid.count())
    throw std::invalid_argument("project_to_s: map size " + std::to_string(mapped.size()) +
                                " does not match grid size " + std::to_string(grid.count()));
  ProjectionResult out;
  out.assignment = assignment::solve_assignment(assignment::squared_distance_costs(mapped, grid.points));
  out.rearrangement.reserve(mapped.size());
  for (int a = 0; a < grid.count(); ++a) out.rearrangement.push_back(grid.points[out.assignment.sigma[a]]);
  return out;
}

PotentialSamples convex_potential(const std::vector<Vec>& mapped, const assignment::AssignmentResult& result) {
  if (static_cast<int>(mapped.size()) != result.size())
    throw std::invalid_argument("convex_potential: assignment size does not match map");
  PotentialSamples s;
  s.locations = mapped;
  s.phi.reserve(mapped.size());
  for (size_t a = 0; a < mapped.size(); ++a) s.phi.push_back(0.5 * (norm2(mapped[a]) - result.u[a]));
  return s;
}

namespace {

// Centered second differences of the node values; axes with one cell drop out.
double hessian_determinant(const std::vector<double>& phi, const BoxGrid& box, int ix, int iy, int iz) {
  const int dim = box.dim;
  auto at = [&](int dx, int dy, int dz) { return phi[box.flat_index(ix + dx, iy + dy, iz + dz)]; };
  const double hx = box.widths[0], hy = box.widths[1], hz = box.widths[2];

  const double pxx = (at(1, 0, 0) - 2.0 * at(0, 0, 0) + at(-1, 0, 0)) / (hx * hx);
  if (dim == 1) return pxx;

  const double pyy = (at(0, 1, 0) - 2.0 * at(0, 0, 0) + at(0, -1, 0)) / (hy * hy);
  const double pxy = (at(1, 1, 0) - at(1, -1, 0) - at(-1, 1, 0) + at(-1, -1, 0)) / (4.0 * hx * hy);
  if (dim == 2) return pxx * pyy - pxy * pxy;

  const double pzz = (at(0, 0, 1) - 2.0 * at(0, 0, 0) + at(0, 0, -1)) / (hz * hz);
  const double pxz = (at(1, 0, 1) - at(1, 0, -1) - at(-1, 0, 1) + at(-1, 0, -1)) / (4.0 * hx * hz);
  const double pyz = (at(0, 1, 1) - at(0, 1, -1) - at(0, -1, 1) + at(0, -1, -1)) / (4.0 * hy * hz);
  return pxx * (pyy * pzz - pyz * pyz) - pxy * (pxy * pzz - pyz * pxz) + pxz * (pxy * pyz - pyy * pxz);
}

}  // namespace

double monge_ampere_residual(const PotentialSamples& phi, const DensityHistogram& density) {
  const BoxGrid& box = density.box;
  const int cells = box.cell_count();
  if (static_cast<int>(phi.locations.size()) != cells)
    throw std::invalid_argument("monge_ampere_residual: needs one sample per lattice node (full tensor grid)");

  // Transfer phi values to lattice nodes by nearest-node association.
  std::vector<double> node_phi(cells, 0.0);
  std::vector<char> taken(cells, 0);
  for (size_t a = 0; a < phi.locations.size(); ++a) {
    bool clamped = false;
    const auto idx = box.locate(phi.locations[a], &clamped);
    const int flat = box.flat_index(idx[0], idx[1], idx[2]);
    if (clamped || taken[flat])
      throw std::invalid_argument("monge_ampere_residual: sample locations do not cover the lattice one-to-one");
    taken[flat] = 1;
    node_phi[flat] = phi.phi[a];
  }

  const int dim = box.dim;
  double residual = 0.0;
  const std::array<int, 3> losh = {dim >= 1 ? 1 : 0, dim >= 2 ? 1 : 0, dim >= 3 ? 1 : 0};
  for (int iz = losh[2]; iz < box.shape[2] - losh[2]; ++iz) {
    for (int iy = losh[1]; iy < box.shape[1] - losh[1]; ++iy) {
      for (int ix = losh[0]; ix < box.shape[0] - losh[0]; ++ix) {
        const double det = hessian_determinant(node_phi, box, ix, iy, iz);
        const double rho = density.density(box.flat_index(ix, iy, iz));
        residual += std::abs(det - rho);
      }
    }
  }
  return residual * box.cell_volume();
}

}  // namespace permflow::polar
