// Copyright 2026 The Cislunar SDA Toolkit Authors
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

#ifndef SDA_STATE_HPP
#define SDA_STATE_HPP

#include <Eigen/Core>

namespace sda {

// Synodic-frame state [x, y, z, vx, vy, vz] in DU and DU/TU.
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec3 = Eigen::Matrix<double, 3, 1>;
using Vec2 = Eigen::Matrix<double, 2, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat3 = Eigen::Matrix<double, 3, 3>;

inline Vec3 position(const Vec6& s) { return s.head<3>(); }
inline Vec3 velocity(const Vec6& s) { return s.tail<3>(); }

inline bool all_finite(const Vec6& s) { return s.allFinite(); }

}  // namespace sda

#endif  // SDA_STATE_HPP
