// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace apwcert::geometry {

using Vec3 = Eigen::Vector3d;

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

// Unit cell spanned by the columns of `cell` from the origin, with
// non-overlapping muffin-tin spheres strictly inside the open cell.
// Computations are three-dimensional.
struct MuffinTinGeometry {
  Eigen::Matrix3d cell = Eigen::Matrix3d::Identity(); // columns a1, a2, a3
  std::vector<Sphere> spheres;

  static MuffinTinGeometry cubic(double side, std::vector<Sphere> spheres = {});

  // Throws GeometryInvalid naming the violated assumption: linear
  // independence of the cell vectors, sphere disjointness, spheres strictly
  // inside the open cell ("(A')").
  void validate() const;

  double volume() const;
  // Reciprocal basis B with B.col(i) . cell.col(j) = 2 pi delta_ij.
  Eigen::Matrix3d reciprocal() const;
  Vec3 fractional(const Vec3& x) const;
  bool in_closed_cell(const Vec3& x, double tol = 1e-12) const;
  // Index of the sphere containing x (strict interior), if any.
  std::optional<size_t> sphere_containing(const Vec3& x) const;
};

// All integer-combination reciprocal vectors with |n_i| <= max_index,
// sorted by |k + G| for the given k (ties broken lexicographically for
// determinism).
std::vector<Vec3> reciprocal_vectors_sorted(const MuffinTinGeometry& geom, int max_index, const Vec3& k);

// Whether G satisfies G . a_i in 2 pi Z for all cell vectors.
bool is_reciprocal_vector(const MuffinTinGeometry& geom, const Vec3& G, double tol = 1e-9);

} // namespace apwcert::geometry
