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

#include "sublift/types.hpp"

#include <vector>

namespace sublift {

/// Lower convex hull of graph points (x_k, z_k), x_k in R^n with n = 1 or 2.
/// The induced function is the tightest convex minorant of the samples on
/// conv{x_k} and equals the max over the facet planes z = <g, x> + h.
struct LowerHull {
  std::vector<Index> vertices;  // indices into the input sample list
  Mat facet_gradients;          // n x F
  Vec facet_offsets;            // F
};

/// Coplanarity / tie tolerance is 1e-9 relative to the sample bounding box;
/// samples lying on a facet within it are kept as hull vertices. Coplanar
/// sample sets degenerate to a single affine facet.
LowerHull lower_convex_hull(const Mat& points, const Vec& values,
                            Scalar tol = 1e-9);

Scalar lower_hull_value(const LowerHull& hull, const Vec& x);

}  // namespace sublift
