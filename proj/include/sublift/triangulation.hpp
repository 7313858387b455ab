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

#include <iosfwd>
#include <utility>
#include <vector>

namespace sublift {

struct Interval {
  Scalar lo = 0;
  Scalar hi = 1;
};

/// One n-simplex of the label-space partition together with the linear
/// algebra the lifting needs. With K = (T; 1^T), the inverse K^{-1} splits
/// into the barycentric map A (first n columns) and offset b (last column),
/// so that A*(T*alpha) + b = alpha for every alpha in the unit simplex.
struct Simplex {
  VecI vertex_ids;       // n+1 global vertex indices
  Mat vertex_matrix;     // n x (n+1), label coordinates as columns
  Mat barycentric_map;   // A: (n+1) x n
  Vec barycentric_offset;  // b: n+1
  Mat edge_inv;          // (TD)^{-1}, TD = (t_1 - t_{n+1}, ..., t_n - t_{n+1})
  Mat edge_inv_t;        // (TD)^{-T}
};

/// Uniform simplicial partition of a box label space. Each grid cell is
/// split into n! simplices by the Kuhn triangulation, which keeps shared
/// facets consistent between neighboring cells.
class Triangulation {
 public:
  static Triangulation uniform(const std::vector<Interval>& bounds,
                               const std::vector<int>& labels_per_dim);

  int dim() const { return dim_; }
  Index num_vertices() const { return vertices_.cols(); }
  Index num_simplices() const { return Index(simplices_.size()); }

  const Mat& vertices() const { return vertices_; }
  auto vertex(Index k) const { return vertices_.col(k); }
  const Simplex& simplex(Index i) const { return simplices_[size_t(i)]; }

  const std::vector<Interval>& bounds() const { return bounds_; }
  Scalar max_extent() const;

  /// Barycentric coordinates of p with respect to simplex i (may be
  /// negative when p lies outside the simplex).
  Vec barycentric(Index i, const Vec& p) const;
  bool contains(Index i, const Vec& p, Scalar tol = 1e-9) const;

  /// Containing simplex and clipped barycentric coordinates. On shared
  /// facets the lowest simplex index wins.
  std::pair<Index, Vec> locate(const Vec& point) const;

  Vec lift(const Vec& point) const;
  Vec unlift(Vec u) const;

  void write_debug(std::ostream& os) const;

 private:
  int dim_ = 0;
  Mat vertices_;
  std::vector<Simplex> simplices_;
  std::vector<Interval> bounds_;
  std::vector<int> labels_per_dim_;
  std::vector<Scalar> spacing_;
  Index simplices_per_cell_ = 0;

  Index vertex_index(const std::vector<int>& grid) const;
  Index cell_index(const std::vector<int>& cell) const;
};

/// Euclidean projection onto {u >= 0, sum u = 1}.
Vec project_to_standard_simplex(Vec u);

}  // namespace sublift
