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

#include <functional>

namespace sublift {

/// A point (r, s) subject to an epigraph constraint f*(r) <= s.
struct EpiPoint {
  Vec r;
  Scalar s = 0;
};

/// Conjugate of the quadratic rho(u) = (a/2)|u|^2 + <b,u> + c, evaluated at x:
/// rho*(x) = |x - b|^2 / (2a) - c.
Scalar quadratic_conjugate(const Vec& x, Scalar a, const Vec& b, Scalar c);

/// Euclidean projection of (p, eta) onto {(x, y) : |x-b|^2/(2a) - c <= y}.
/// By symmetry about the paraboloid axis this is a 1-D projection onto the
/// parabola y = x^2/(2a); the radial optimality condition is a cubic solved
/// with safeguarded Newton on a sign-changing bracket.
EpiPoint project_epigraph_quadratic(const Vec& p, Scalar eta, Scalar a,
                                    const Vec& b, Scalar c);

/// Euclidean projection of (p, eta) onto
///   {(x, y) : <tau_k, x> - vals_k <= y for all k},
/// the epigraph of the piecewise linear conjugate max_k <tau_k, x> - vals_k.
/// Solved with a primal active-set method; throws after 100 iterations.
EpiPoint project_epigraph_pwl(const Vec& p, Scalar eta, const Mat& taus,
                              const Vec& vals);

/// Projection onto the Minkowski sum of the epigraphs of the quadratic
/// conjugate rho* and of the simplex support function delta_Delta*, i.e.
/// onto the epigraph of (rho + delta_Delta)*. The two component projections
/// are alternated on the residual until the summed point settles.
EpiPoint project_epigraph_sum(const Vec& p, Scalar eta, Scalar a, const Vec& b,
                              Scalar c, const Mat& simplex_vertices);

using EpiProjector = std::function<EpiPoint(const Vec&, Scalar)>;

/// Projection onto the intersection of two epigraphs given their individual
/// projections, via Dykstra's alternating scheme (tolerance 1e-7, at most
/// 200 sweeps; throws with the residual on non-convergence).
EpiPoint project_epigraph_intersection(const Vec& p, Scalar eta,
                                       const EpiProjector& branch1,
                                       const EpiProjector& branch2);

/// Frobenius-nearest matrix with all singular values <= radius. Closed form
/// for 2x2 and for single-row/column shapes, one-sided Jacobi otherwise.
Mat project_spectral_ball(const Mat& m, Scalar radius = 1.0);

/// Singular values of a d x n matrix, descending (d, n <= 3).
Vec singular_values_small(const Mat& m);

/// Euclidean projection onto the simplex spanned by the columns of
/// `vertices` (n x (n+1)), by enumerating the projections onto all faces.
Vec project_onto_simplex(const Vec& z, const Mat& vertices);

}  // namespace sublift
