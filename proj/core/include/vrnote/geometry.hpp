// Copyright 2026 The vrnote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace vrnote {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Pinhole intrinsics shared by both cameras of a rectified rig.
struct CameraIntrinsics {
  double fx = 240.0;
  double fy = 240.0;
  double cx = 320.0;
  double cy = 120.0;
  int width = 640;
  int height = 240;

  /// Throws InvalidArgument unless fx, fy > 0 and the principal point lies
  /// inside the image.
  void validate() const;
};

/// Rigid transform mapping camera coordinates into the world frame:
/// world = rotation * camera + translation.
struct RigidPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 to_world(const Vec3& p) const { return rotation * p + translation; }
  Vec3 to_local(const Vec3& p) const {
    return rotation.transpose() * (p - translation);
  }
  Vec3 direction_to_world(const Vec3& d) const { return rotation * d; }
  Vec3 direction_to_local(const Vec3& d) const {
    return rotation.transpose() * d;
  }
};

/// Camera pose at `eye` looking at `target`, with image rows roughly aligned
/// to the plane orthogonal to `world_up`. Camera axes: x right, y down,
/// z forward.
RigidPose look_at(const Vec3& eye, const Vec3& target, const Vec3& world_up);

/// Rectified stereo pair. The right camera sits `baseline` meters along the
/// left camera's +x axis; `rig_pose` places the left camera in the world.
struct StereoRig {
  CameraIntrinsics intrinsics;
  double baseline = 0.04;
  RigidPose rig_pose;

  void validate() const;
};

/// Tip position in world meters plus unit direction from tip toward tail.
struct StylusPose {
  Vec3 tip = Vec3::Zero();
  Vec3 axis = Vec3::UnitZ();
};

struct Plane {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();

  double signed_distance(const Vec3& p) const {
    return (p - point).dot(normal);
  }
};

/// Pinhole projection of a camera-frame point. Throws PointBehindCamera when
/// p.z <= 0.
Vec2 project(const Vec3& p, const CameraIntrinsics& k);

inline constexpr double kDefaultMinDisparity = 0.5;

/// Triangulates a left-image pixel with the given horizontal disparity
/// (u_left - u_right) into the left camera frame. Throws DegenerateDisparity
/// when disparity <= min_disparity.
Vec3 unproject_stereo(double u_left, double v, double disparity,
                      const StereoRig& rig,
                      double min_disparity = kDefaultMinDisparity);

/// Point where the ray origin + t * dir (t >= 0) meets the plane.
Vec3 ray_plane_intersect(const Vec3& origin, const Vec3& dir,
                         const Plane& plane);

/// Angle in radians between two directions (not necessarily unit).
double angle_between(const Vec3& a, const Vec3& b);

/// Angle in radians between two lines, ignoring direction sign.
double line_angle(const Vec3& a, const Vec3& b);

}  // namespace vrnote
