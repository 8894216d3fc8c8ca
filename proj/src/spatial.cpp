#include "rdf_forge/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rdf_forge::spatial {

bool is_rotation(const Mat3& r, double tol) {
  if (!r.allFinite()) return false;
  const Mat3 err = r * r.transpose() - Mat3::Identity();
  if (err.cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(r.determinant() - 1.0) <= tol;
}

bool Transform::is_valid(double tol) const {
  return translation_.allFinite() && is_rotation(rotation_, tol);
}

std::array<double, 16> Transform::to_homogeneous() const {
  std::array<double, 16> h{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) h[r * 4 + c] = rotation_(r, c);
    h[r * 4 + 3] = translation_(r);
  }
  h[15] = 1.0;
  return h;
}

Transform compose(const Transform& a, const Transform& b) {
  return {a.rotation() * b.rotation(), a.rotation() * b.translation() + a.translation()};
}

Transform inverse(const Transform& t) {
  const Mat3 rt = t.rotation().transpose();
  return {rt, -(rt * t.translation())};
}

Transform relative(const Transform& world_a, const Transform& world_b) {
  const Mat3 rt = world_a.rotation().transpose();
  return {rt * world_b.rotation(), rt * (world_b.translation() - world_a.translation())};
}

Mat3 rot_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Mat3 rot_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Mat3 rot_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

Mat3 axis_angle(const Vec3& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 k;
  k << 0, -axis.z(), axis.y(),
       axis.z(), 0, -axis.x(),
       -axis.y(), axis.x(), 0;
  return Mat3::Identity() + s * k + (1.0 - c) * (k * k);
}

double rotation_angle(const Mat3& r) {
  // atan2 form stays accurate near 0 and π where acos of the trace does not.
  const Vec3 w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  return std::atan2(0.5 * w.norm(), 0.5 * (r.trace() - 1.0));
}

double max_abs_diff(const Transform& a, const Transform& b) {
  return std::max((a.rotation() - b.rotation()).cwiseAbs().maxCoeff(),
                  (a.translation() - b.translation()).cwiseAbs().maxCoeff());
}

Mat3 rpy_to_rot(const Rpy& rpy) {
  return rot_z(rpy.yaw) * rot_y(rpy.pitch) * rot_x(rpy.roll);
}

Rpy rot_to_rpy(const Mat3& r) {
  // Two-step extraction: pick yaw, strip it, then read pitch and roll from
  // Ry(p)·Rx(r) whose entries are well conditioned even near gimbal lock.
  Rpy out;
  const double cos_pitch = std::hypot(r(0, 0), r(1, 0));
  if (cos_pitch <= kGimbalLockTol) {
    out.yaw = std::atan2(-r(0, 1), r(1, 1));
  } else {
    out.yaw = std::atan2(r(1, 0), r(0, 0));
  }
  const Mat3 rest = rot_z(out.yaw).transpose() * r;
  out.pitch = std::atan2(-rest(2, 0), rest(0, 0));
  if (cos_pitch > kGimbalLockTol) out.roll = std::atan2(-rest(1, 2), rest(1, 1));
  if (out.yaw == -M_PI) out.yaw = M_PI;
  if (out.roll == -M_PI) out.roll = M_PI;
  return out;
}

UnitAxis::UnitAxis(const Vec3& v) : v_(v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("axis is not of unit length");
  }
}

UnitAxis UnitAxis::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n == 0.0) throw std::invalid_argument("axis has zero length");
  return UnitAxis(v / n, 0);
}

InertiaTensor InertiaTensor::from_matrix(const Mat3& m) {
  return {m(0, 0), m(1, 1), m(2, 2),
          0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 2) + m(2, 0)), 0.5 * (m(1, 2) + m(2, 1))};
}

Mat3 InertiaTensor::matrix() const {
  Mat3 m;
  m << ixx, ixy, ixz,
       ixy, iyy, iyz,
       ixz, iyz, izz;
  return m;
}

Vec3 InertiaTensor::principal_moments() const {
  Eigen::SelfAdjointEigenSolver<Mat3> solver(matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool InertiaTensor::positive_semidefinite(double tol) const {
  return principal_moments().minCoeff() >= -tol;
}

bool InertiaTensor::satisfies_triangle_inequality(double tol) const {
  const Vec3 l = principal_moments();
  // Sorted ascending, so the binding case is the largest against the other two.
  return l(0) + l(1) >= l(2) - tol;
}

InertiaTensor InertiaTensor::scaled(double factor) const {
  return {ixx * factor, iyy * factor, izz * factor, ixy * factor, ixz * factor, iyz * factor};
}

double max_abs_diff(const InertiaTensor& a, const InertiaTensor& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

InertiaTensor rotate_inertia(const InertiaTensor& i, const Mat3& r) {
  return InertiaTensor::from_matrix(r * i.matrix() * r.transpose());
}

namespace {

Mat3 point_mass_term(double mass, const Vec3& d) {
  return mass * (d.squaredNorm() * Mat3::Identity() - d * d.transpose());
}

}  // namespace

InertiaTensor parallel_axis(const InertiaTensor& i_com, double mass, const Vec3& d) {
  if (!(mass >= 0.0)) throw std::invalid_argument("parallel_axis: negative mass");
  return InertiaTensor::from_matrix(i_com.matrix() + point_mass_term(mass, d));
}

InertiaTensor parallel_axis_inverse(const InertiaTensor& i_point, double mass, const Vec3& d) {
  if (!(mass >= 0.0)) throw std::invalid_argument("parallel_axis_inverse: negative mass");
  return InertiaTensor::from_matrix(i_point.matrix() - point_mass_term(mass, d));
}

}  // namespace rdf_forge::spatial
