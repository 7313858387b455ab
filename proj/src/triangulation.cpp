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

#include "sublift/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace sublift {

namespace {
constexpr Scalar kBoundsTol = 1e-9;
constexpr Scalar kBaryTol = 1e-9;
}  // namespace

Index Triangulation::vertex_index(const std::vector<int>& grid) const {
  Index idx = 0;
  Index stride = 1;
  for (int j = 0; j < dim_; ++j) {
    idx += stride * grid[size_t(j)];
    stride *= labels_per_dim_[size_t(j)];
  }
  return idx;
}

Index Triangulation::cell_index(const std::vector<int>& cell) const {
  Index idx = 0;
  Index stride = 1;
  for (int j = 0; j < dim_; ++j) {
    idx += stride * cell[size_t(j)];
    stride *= labels_per_dim_[size_t(j)] - 1;
  }
  return idx;
}

Triangulation Triangulation::uniform(const std::vector<Interval>& bounds,
                                     const std::vector<int>& labels_per_dim) {
  const int n = int(bounds.size());
  if (n < 1 || n > 3)
    throw Error("triangulation: unsupported label dimension " + std::to_string(n));
  if (labels_per_dim.size() != bounds.size())
    throw Error("triangulation: bounds/labels dimension mismatch");
  for (int j = 0; j < n; ++j) {
    if (!(bounds[size_t(j)].hi > bounds[size_t(j)].lo))
      throw Error("triangulation: degenerate interval in dimension " + std::to_string(j));
    if (labels_per_dim[size_t(j)] < 2)
      throw Error("triangulation: need at least 2 labels per dimension");
  }

  Triangulation tri;
  tri.dim_ = n;
  tri.bounds_ = bounds;
  tri.labels_per_dim_ = labels_per_dim;
  tri.spacing_.resize(size_t(n));

  Index num_vertices = 1;
  for (int j = 0; j < n; ++j) {
    tri.spacing_[size_t(j)] =
        (bounds[size_t(j)].hi - bounds[size_t(j)].lo) / (labels_per_dim[size_t(j)] - 1);
    num_vertices *= labels_per_dim[size_t(j)];
  }

  tri.vertices_.resize(n, num_vertices);
  std::vector<int> grid(size_t(n), 0);
  for (Index k = 0; k < num_vertices; ++k) {
    for (int j = 0; j < n; ++j)
      tri.vertices_(j, k) = bounds[size_t(j)].lo + grid[size_t(j)] * tri.spacing_[size_t(j)];
    for (int j = 0; j < n; ++j) {
      if (++grid[size_t(j)] < labels_per_dim[size_t(j)]) break;
      grid[size_t(j)] = 0;
    }
  }

  std::vector<std::vector<int>> perms;
  std::vector<int> perm(size_t(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  tri.simplices_per_cell_ = Index(perms.size());

  Index num_cells = 1;
  for (int j = 0; j < n; ++j) num_cells *= labels_per_dim[size_t(j)] - 1;
  tri.simplices_.reserve(size_t(num_cells * tri.simplices_per_cell_));

  std::vector<int> cell(size_t(n), 0);
  std::vector<int> corner(size_t(n));
  for (Index c = 0; c < num_cells; ++c) {
    for (const auto& p : perms) {
      Simplex s;
      s.vertex_ids.resize(n + 1);
      corner = cell;
      s.vertex_ids[0] = int(tri.vertex_index(corner));
      for (int j = 0; j < n; ++j) {
        ++corner[size_t(p[size_t(j)])];
        s.vertex_ids[j + 1] = int(tri.vertex_index(corner));
      }

      s.vertex_matrix.resize(n, n + 1);
      for (int j = 0; j <= n; ++j)
        s.vertex_matrix.col(j) = tri.vertices_.col(s.vertex_ids[j]);

      Mat K(n + 1, n + 1);
      K.topRows(n) = s.vertex_matrix;
      K.row(n).setOnes();
      Eigen::JacobiSVD<Mat> svd(K);
      const Scalar smin = svd.singularValues().minCoeff();
      const Scalar smax = svd.singularValues().maxCoeff();
      if (smin <= 0 || smax / smin > 1e12)
        throw Error("triangulation: ill-conditioned simplex basis");
      Mat Kinv = Eigen::PartialPivLU<Mat>(K).inverse();
      s.barycentric_map = Kinv.leftCols(n);
      s.barycentric_offset = Kinv.col(n);

      Mat TD(n, n);
      for (int j = 0; j < n; ++j)
        TD.col(j) = s.vertex_matrix.col(j) - s.vertex_matrix.col(n);
      s.edge_inv = Eigen::PartialPivLU<Mat>(TD).inverse();
      s.edge_inv_t = s.edge_inv.transpose();

      tri.simplices_.push_back(std::move(s));
    }
    for (int j = 0; j < n; ++j) {
      if (++cell[size_t(j)] < labels_per_dim[size_t(j)] - 1) break;
      cell[size_t(j)] = 0;
    }
  }
  return tri;
}

Scalar Triangulation::max_extent() const {
  Scalar e = 0;
  for (const auto& b : bounds_) e = std::max(e, b.hi - b.lo);
  return e;
}

Vec Triangulation::barycentric(Index i, const Vec& p) const {
  const Simplex& s = simplices_[size_t(i)];
  return s.barycentric_map * p + s.barycentric_offset;
}

bool Triangulation::contains(Index i, const Vec& p, Scalar tol) const {
  return barycentric(i, p).minCoeff() >= -tol;
}

std::pair<Index, Vec> Triangulation::locate(const Vec& point) const {
  if (point.size() != dim_) throw Error("locate: dimension mismatch");
  Vec p = point;
  for (int j = 0; j < dim_; ++j) {
    const auto& b = bounds_[size_t(j)];
    if (p[j] < b.lo - kBoundsTol || p[j] > b.hi + kBoundsTol)
      throw Error("locate: point outside label space");
    p[j] = std::clamp(p[j], b.lo, b.hi);
  }

  // Candidate cells per dimension: the containing cell, plus the one below
  // when the point sits on a grid line. Candidates are scanned in ascending
  // linear order so the lowest simplex index wins on shared facets.
  std::vector<std::vector<int>> cand(size_t(dim_));
  for (int j = 0; j < dim_; ++j) {
    const Scalar t = (p[j] - bounds_[size_t(j)].lo) / spacing_[size_t(j)];
    int c = std::clamp(int(std::floor(t)), 0, labels_per_dim_[size_t(j)] - 2);
    const Scalar line_tol = kBoundsTol / spacing_[size_t(j)] + 1e-12;
    if (c > 0 && t - c <= line_tol) cand[size_t(j)].push_back(c - 1);
    cand[size_t(j)].push_back(c);
    if (c + 1 <= labels_per_dim_[size_t(j)] - 2 && (c + 1) - t <= line_tol)
      cand[size_t(j)].push_back(c + 1);
  }

  Index best = -1;
  Scalar best_min = -std::numeric_limits<Scalar>::infinity();
  std::vector<size_t> pick(size_t(dim_), 0);
  std::vector<int> cell(size_t(dim_));
  bool done = false;
  while (!done) {
    for (int j = 0; j < dim_; ++j) cell[size_t(j)] = cand[size_t(j)][pick[size_t(j)]];
    const Index base = cell_index(cell) * simplices_per_cell_;
    for (Index k = 0; k < simplices_per_cell_; ++k) {
      const Index i = base + k;
      Vec alpha = barycentric(i, p);
      const Scalar amin = alpha.minCoeff();
      if (amin >= -kBaryTol) {
        alpha = alpha.cwiseMax(0.0);
        alpha /= alpha.sum();
        return {i, alpha};
      }
      if (amin > best_min) {
        best_min = amin;
        best = i;
      }
    }
    done = true;
    for (int j = dim_ - 1; j >= 0; --j) {
      if (++pick[size_t(j)] < cand[size_t(j)].size()) {
        done = false;
        break;
      }
      pick[size_t(j)] = 0;
    }
  }

  // Roundoff pushed the point marginally outside every candidate; fall back
  // to the nearest one.
  Vec alpha = barycentric(best, p).cwiseMax(0.0);
  alpha /= alpha.sum();
  return {best, alpha};
}

Vec Triangulation::lift(const Vec& point) const {
  auto [i, alpha] = locate(point);
  Vec u = Vec::Zero(num_vertices());
  const Simplex& s = simplices_[size_t(i)];
  for (int j = 0; j <= dim_; ++j) u[s.vertex_ids[j]] += alpha[j];
  return u;
}

Vec Triangulation::unlift(Vec u) const {
  if (u.size() != num_vertices()) throw Error("unlift: dimension mismatch");
  const Scalar sum = u.sum();
  if (std::abs(sum) < 1e-12) throw Error("unlift: cannot renormalize all-zero vector");
  if (std::abs(sum - 1.0) > 1e-6) u /= sum;
  return vertices_ * u;
}

void Triangulation::write_debug(std::ostream& os) const {
  os << "dim " << dim_ << "\n";
  os << "vertices " << num_vertices() << "\n";
  for (Index k = 0; k < num_vertices(); ++k) {
    for (int j = 0; j < dim_; ++j) os << (j ? " " : "") << vertices_(j, k);
    os << "\n";
  }
  os << "simplices " << num_simplices() << "\n";
  for (const auto& s : simplices_) {
    for (int j = 0; j <= dim_; ++j) os << (j ? " " : "") << s.vertex_ids[j];
    os << "\n";
  }
}

Vec project_to_standard_simplex(Vec u) {
  std::vector<Scalar> v(u.data(), u.data() + u.size());
  std::sort(v.begin(), v.end(), std::greater<Scalar>());
  Scalar cumsum = 0;
  Scalar theta = 0;
  int support = 0;
  for (size_t j = 0; j < v.size(); ++j) {
    cumsum += v[j];
    const Scalar candidate = (cumsum - 1.0) / Scalar(j + 1);
    if (v[j] - candidate > 0) {
      theta = candidate;
      support = int(j + 1);
    }
  }
  (void)support;
  return (u.array() - theta).cwiseMax(0.0).matrix();
}

}  // namespace sublift
