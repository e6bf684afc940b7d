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

#include "vrnote/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vrnote/error.hpp"

namespace vrnote {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "focal lengths must be positive");
  }
  if (width <= 0 || height <= 0 || cx < 0.0 || cx >= width || cy < 0.0 ||
      cy >= height) {
    throw Error(ErrorCode::kInvalidArgument,
                "principal point must lie inside the image");
  }
}

void StereoRig::validate() const {
  intrinsics.validate();
  if (!(baseline > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "baseline must be positive");
  }
}

RigidPose look_at(const Vec3& eye, const Vec3& target, const Vec3& world_up) {
  const Vec3 forward = (target - eye).normalized();
  Vec3 right = forward.cross(world_up);
  if (right.norm() < 1e-12) {
    throw Error(ErrorCode::kInvalidArgument,
                "look_at: forward is parallel to world_up");
  }
  right.normalize();
  const Vec3 down = forward.cross(right);
  RigidPose pose;
  pose.rotation.col(0) = right;
  pose.rotation.col(1) = down;
  pose.rotation.col(2) = forward;
  pose.translation = eye;
  return pose;
}

Vec2 project(const Vec3& p, const CameraIntrinsics& k) {
  if (!(p.z() > 0.0)) {
    throw Error(ErrorCode::kPointBehindCamera);
  }
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy};
}

Vec3 unproject_stereo(double u_left, double v, double disparity,
                      const StereoRig& rig, double min_disparity) {
  if (!(disparity > min_disparity)) {
    throw Error(ErrorCode::kDegenerateDisparity);
  }
  const CameraIntrinsics& k = rig.intrinsics;
  const double z = k.fx * rig.baseline / disparity;
  return {(u_left - k.cx) * z / k.fx, (v - k.cy) * z / k.fy, z};
}

Vec3 ray_plane_intersect(const Vec3& origin, const Vec3& dir,
                         const Plane& plane) {
  if (!(dir.norm() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ray direction is zero");
  }
  const double denom = dir.dot(plane.normal);
  if (std::abs(denom) < 1e-9) {
    throw Error(ErrorCode::kRayParallelToPlane);
  }
  const double t = (plane.point - origin).dot(plane.normal) / denom;
  if (t < 0.0) {
    throw Error(ErrorCode::kIntersectionBehindOrigin);
  }
  Vec3 hit = origin + t * dir;
  // Remove the residual off-plane component left by rounding.
  hit -= plane.signed_distance(hit) * plane.normal;
  return hit;
}

double angle_between(const Vec3& a, const Vec3& b) {
  // atan2 form stays accurate for nearly parallel vectors.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double line_angle(const Vec3& a, const Vec3& b) {
  const double angle = angle_between(a, b);
  return std::min(angle, M_PI - angle);
}

}  // namespace vrnote
