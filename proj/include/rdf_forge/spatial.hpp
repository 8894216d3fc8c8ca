#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>

namespace rdf_forge::spatial {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Tolerances shared by every module.
inline constexpr double kOrthonormalityTol = 1e-9;
inline constexpr double kRoundTripTol = 1e-12;
inline constexpr double kUnitNormTol = 1e-9;
inline constexpr double kGimbalLockTol = 1e-9;
inline constexpr double kInertiaEigenTol = 1e-12;
inline constexpr double kTriangleInequalityTol = 1e-9;

/// True when R·Rᵀ = I and det R = +1 within kOrthonormalityTol.
bool is_rotation(const Mat3& r, double tol = kOrthonormalityTol);

/// Rigid-body pose. `rotation` maps child-frame coordinates into the parent
/// frame, `translation` is the child origin expressed in the parent frame.
class Transform {
 public:
  Transform() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}
  Transform(const Mat3& rotation, const Vec3& translation)
      : rotation_(rotation), translation_(translation) {}

  static Transform identity() { return {}; }
  static Transform translate(double x, double y, double z) { return {Mat3::Identity(), Vec3(x, y, z)}; }
  static Transform translate(const Vec3& t) { return {Mat3::Identity(), t}; }
  static Transform rotate(const Mat3& r) { return {r, Vec3::Zero()}; }

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  bool is_valid(double tol = kOrthonormalityTol) const;

  Vec3 apply(const Vec3& p) const { return rotation_ * p + translation_; }

  /// Row-major 4×4 homogeneous matrix.
  std::array<double, 16> to_homogeneous() const;

 private:
  Mat3 rotation_;
  Vec3 translation_;
};

/// a·b: apply b first, then a.
Transform compose(const Transform& a, const Transform& b);
Transform inverse(const Transform& t);
/// Pose of b expressed in frame a: inverse(a)·b.
Transform relative(const Transform& world_a, const Transform& world_b);

Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);
/// Rotation by `angle` about the unit vector `axis` (Rodrigues).
Mat3 axis_angle(const Vec3& axis, double angle);
/// Angle of the rotation R, in [0, π].
double rotation_angle(const Mat3& r);

/// Largest |a_ij − b_ij| over rotation and translation entries.
double max_abs_diff(const Transform& a, const Transform& b);

/// Fixed-axis roll (X), pitch (Y), yaw (Z): R = Rz(yaw)·Ry(pitch)·Rx(roll).
struct Rpy {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

Mat3 rpy_to_rot(const Rpy& rpy);

/// Inverse of rpy_to_rot. Roll and yaw land in (−π, π], pitch in
/// [−π/2, π/2]. At gimbal lock roll is 0 and yaw carries the free angle.
Rpy rot_to_rpy(const Mat3& r);

/// A direction of unit length.
class UnitAxis {
 public:
  /// Throws std::invalid_argument unless |v| = 1 within kUnitNormTol.
  explicit UnitAxis(const Vec3& v);
  /// Normalizes v; throws std::invalid_argument for a zero or non-finite v.
  static UnitAxis normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }
  UnitAxis operator-() const { return UnitAxis(-v_, 0); }

 private:
  UnitAxis(const Vec3& v, int) : v_(v) {}
  Vec3 v_;
};

/// Symmetric inertia tensor in kg·m², stored as its six independent entries.
struct InertiaTensor {
  double ixx = 0.0;
  double iyy = 0.0;
  double izz = 0.0;
  double ixy = 0.0;
  double ixz = 0.0;
  double iyz = 0.0;

  static InertiaTensor diagonal(double xx, double yy, double zz) { return {xx, yy, zz, 0, 0, 0}; }
  /// Symmetrizes m before extracting entries.
  static InertiaTensor from_matrix(const Mat3& m);

  Mat3 matrix() const;
  double trace() const { return ixx + iyy + izz; }

  /// Eigenvalues in ascending order.
  Vec3 principal_moments() const;

  bool positive_semidefinite(double tol = kInertiaEigenTol) const;
  /// λi + λj ≥ λk for every permutation of the principal moments.
  bool satisfies_triangle_inequality(double tol = kTriangleInequalityTol) const;
  bool is_physical() const { return positive_semidefinite() && satisfies_triangle_inequality(); }

  InertiaTensor scaled(double factor) const;
};

double max_abs_diff(const InertiaTensor& a, const InertiaTensor& b);

/// R·I·Rᵀ: re-expresses I in the frame whose axes are rotated by R.
InertiaTensor rotate_inertia(const InertiaTensor& i, const Mat3& r);

/// Inertia about a point offset by d from the center of mass:
/// I_com + m·(dᵀd·1 − d·dᵀ). Requires mass ≥ 0.
InertiaTensor parallel_axis(const InertiaTensor& i_com, double mass, const Vec3& d);

/// Undoes parallel_axis: recovers I_com from an inertia about a point at
/// offset d from the center of mass.
InertiaTensor parallel_axis_inverse(const InertiaTensor& i_point, double mass, const Vec3& d);

}  // namespace rdf_forge::spatial
