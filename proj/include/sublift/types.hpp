// Copyright 2026 The sublift authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sublift {

using Scalar = double;
using Index = Eigen::Index;

using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using VecI = Eigen::Matrix<int, Eigen::Dynamic, 1>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense per-pixel data on a 2-D grid: one column per pixel, channels down
/// the rows. Pixel (x, y) lives at linear index x + width*y.
struct Field {
  int width = 0;
  int height = 0;
  Mat data;

  Field() = default;
  Field(int w, int h, Index channels)
      : width(w), height(h), data(Mat::Zero(channels, Index(w) * Index(h))) {}

  Index pixels() const { return data.cols(); }
  Index channels() const { return data.rows(); }
  Index at(int x, int y) const { return Index(x) + Index(width) * Index(y); }

  auto pixel(Index p) { return data.col(p); }
  auto pixel(Index p) const { return data.col(p); }
  auto pixel(int x, int y) { return data.col(at(x, y)); }
  auto pixel(int x, int y) const { return data.col(at(x, y)); }
};

}  // namespace sublift
