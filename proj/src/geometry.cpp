// SPDX-License-Identifier: Apache-2.0
#include "apwcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apwcert/errors.hpp"

namespace apwcert::geometry {

MuffinTinGeometry MuffinTinGeometry::cubic(double side, std::vector<Sphere> spheres) {
  MuffinTinGeometry g;
  g.cell = side * Eigen::Matrix3d::Identity();
  g.spheres = std::move(spheres);
  return g;
}

double MuffinTinGeometry::volume() const { return std::abs(cell.determinant()); }

void MuffinTinGeometry::validate() const {
  const double det = cell.determinant();
  const double scale = cell.colwise().norm().maxCoeff();
  if (!(std::abs(det) > 1e-12 * scale * scale * scale))
    throw GeometryInvalid("cell vectors are not linearly independent");
  for (const auto& s : spheres)
    if (!(s.radius > 0.0)) throw GeometryInvalid("sphere radius must be positive");
  for (size_t i = 0; i < spheres.size(); ++i)
    for (size_t j = i + 1; j < spheres.size(); ++j) {
      const double d = (spheres[i].center - spheres[j].center).norm();
      if (!(d > spheres[i].radius + spheres[j].radius))
        throw GeometryInvalid("(A') violated: closed spheres " + std::to_string(i) + " and " + std::to_string(j) +
                              " intersect");
    }
  // Strictly inside the open cell: distance from the center to each face
  // plane exceeds the radius. Face normals are the reciprocal directions.
  const Eigen::Matrix3d B = reciprocal();
  for (size_t i = 0; i < spheres.size(); ++i) {
    const Vec3 c = fractional(spheres[i].center);
    for (int d = 0; d < 3; ++d) {
      const double plane_gap = 2.0 * 3.14159265358979323846 / B.col(d).norm(); // spacing of the face planes
      const double dist_lo = c[d] * plane_gap;
      const double dist_hi = (1.0 - c[d]) * plane_gap;
      if (!(dist_lo > spheres[i].radius && dist_hi > spheres[i].radius))
        throw GeometryInvalid("(A') violated: closed sphere " + std::to_string(i) +
                              " is not strictly inside the open cell");
    }
  }
}

Eigen::Matrix3d MuffinTinGeometry::reciprocal() const {
  return 2.0 * 3.14159265358979323846 * cell.inverse().transpose();
}

Vec3 MuffinTinGeometry::fractional(const Vec3& x) const { return cell.inverse() * x; }

bool MuffinTinGeometry::in_closed_cell(const Vec3& x, double tol) const {
  const Vec3 f = fractional(x);
  for (int d = 0; d < 3; ++d)
    if (f[d] < -tol || f[d] > 1.0 + tol) return false;
  return true;
}

std::optional<size_t> MuffinTinGeometry::sphere_containing(const Vec3& x) const {
  for (size_t i = 0; i < spheres.size(); ++i)
    if ((x - spheres[i].center).norm() < spheres[i].radius) return i;
  return std::nullopt;
}

std::vector<Vec3> reciprocal_vectors_sorted(const MuffinTinGeometry& geom, int max_index, const Vec3& k) {
  const Eigen::Matrix3d B = geom.reciprocal();
  std::vector<Vec3> gs;
  gs.reserve(static_cast<size_t>(2 * max_index + 1) * (2 * max_index + 1) * (2 * max_index + 1));
  for (int i = -max_index; i <= max_index; ++i)
    for (int j = -max_index; j <= max_index; ++j)
      for (int l = -max_index; l <= max_index; ++l) gs.push_back(i * B.col(0) + j * B.col(1) + l * B.col(2));
  std::sort(gs.begin(), gs.end(), [&](const Vec3& a, const Vec3& b) {
    const double na = (k + a).squaredNorm(), nb = (k + b).squaredNorm();
    if (std::abs(na - nb) > 1e-12 * (1.0 + na + nb)) return na < nb;
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
  });
  return gs;
}

bool is_reciprocal_vector(const MuffinTinGeometry& geom, const Vec3& G, double tol) {
  for (int i = 0; i < 3; ++i) {
    const double t = G.dot(geom.cell.col(i)) / (2.0 * 3.14159265358979323846);
    if (std::abs(t - std::round(t)) > tol) return false;
  }
  return true;
}

} // namespace apwcert::geometry
