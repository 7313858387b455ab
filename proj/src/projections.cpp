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

#include "sublift/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace sublift {

Scalar quadratic_conjugate(const Vec& x, Scalar a, const Vec& b, Scalar c) {
  return (x - b).squaredNorm() / (2 * a) - c;
}

EpiPoint project_epigraph_quadratic(const Vec& p, Scalar eta, Scalar a,
                                    const Vec& b, Scalar c) {
  if (!(a > 0)) throw Error("project_epigraph_quadratic: curvature must be positive");
  const Scalar eta_s = eta + c;
  Vec z = p - b;
  const Scalar rad = z.norm();
  if (rad * rad / (2 * a) <= eta_s) return {p, eta};

  if (rad < 1e-300) return {b, -c};  // on the axis, below the vertex

  // Radial reduction: minimize (x - rad)^2 + (x^2/(2a) - eta_s)^2 over x >= 0.
  // f(x) = x^3/(2a^2) + x (1 - eta_s/a) - rad changes sign on [0, rad] for
  // infeasible inputs and has a unique positive root there.
  const Scalar scale = std::max({Scalar(1), rad, std::abs(eta_s)});
  auto f = [&](Scalar x) {
    return x * x * x / (2 * a * a) + x * (1 - eta_s / a) - rad;
  };
  Scalar lo = 0, hi = rad, x = rad;
  for (int it = 0; it < 200; ++it) {
    const Scalar fx = f(x);
    if (std::abs(fx) <= 1e-15 * scale) break;
    if (fx > 0)
      hi = x;
    else
      lo = x;
    const Scalar df = 3 * x * x / (2 * a * a) + (1 - eta_s / a);
    Scalar xn = (df > 0) ? x - fx / df : lo;
    if (!(xn > lo && xn < hi)) xn = (lo + hi) / 2;
    if (std::abs(xn - x) <= 1e-17 * scale) {
      x = xn;
      break;
    }
    x = xn;
  }
  EpiPoint out;
  out.r = b + z * (x / rad);
  out.s = x * x / (2 * a) - c;
  return out;
}

EpiPoint project_epigraph_pwl(const Vec& p, Scalar eta, const Mat& taus,
                              const Vec& vals) {
  const Index n = p.size();
  const Index m = taus.cols();
  if (m == 0) throw Error("project_epigraph_pwl: empty constraint set");

  // Constraints <a_k, z> <= vals_k with a_k = (tau_k, -1) on z = (x, y).
  Mat A(n + 1, m);
  A.topRows(n) = taus;
  A.row(n).setConstant(-1);

  Vec z0(n + 1);
  z0.head(n) = p;
  z0[n] = eta;

  Vec slack = A.transpose() * z0 - vals;  // positive = violated
  const Scalar scale =
      std::max({Scalar(1), z0.cwiseAbs().maxCoeff(), vals.cwiseAbs().maxCoeff()});
  Index worst = 0;
  const Scalar worst_slack = slack.maxCoeff(&worst);
  if (worst_slack <= 0) return {p, eta};

  // Feasible start: lift y to the active constraint value.
  Vec z = z0;
  z[n] = eta + worst_slack;
  std::vector<Index> working = {worst};

  Mat AW(n + 1, n + 1);
  Vec bW(n + 1), lambda;
  for (int iter = 0; iter < 100; ++iter) {
    const Index k = Index(working.size());
    for (Index j = 0; j < k; ++j) {
      AW.col(j) = A.col(working[size_t(j)]);
      bW[j] = vals[working[size_t(j)]];
    }
    // Projection of z0 onto the affine set {A_W^T z = b_W}.
    Vec zeq;
    if (k > 0) {
      Mat gram = AW.leftCols(k).transpose() * AW.leftCols(k);
      lambda = gram.ldlt().solve(AW.leftCols(k).transpose() * z0 - bW.head(k));
      zeq = z0 - AW.leftCols(k) * lambda;
    } else {
      zeq = z0;
    }

    const Vec d = zeq - z;
    if (d.norm() <= 1e-12 * scale) {
      if (k == 0) return {z.head(n), z[n]};
      Index drop = 0;
      const Scalar lmin = lambda.head(k).minCoeff(&drop);
      if (lmin >= -1e-11) return {z.head(n), z[n]};
      working.erase(working.begin() + drop);
      continue;
    }

    Scalar t = 1;
    Index blocker = -1;
    for (Index kk = 0; kk < m; ++kk) {
      if (std::find(working.begin(), working.end(), kk) != working.end()) continue;
      const Scalar ad = A.col(kk).dot(d);
      if (ad <= 1e-14 * scale) continue;
      const Scalar tk = (vals[kk] - A.col(kk).dot(z)) / ad;
      if (tk < t) {
        t = std::max(tk, Scalar(0));
        blocker = kk;
      }
    }
    z += t * d;
    if (blocker >= 0)
      working.push_back(blocker);
    else
      z = zeq;  // full step, working set unchanged; multipliers checked next
  }
  std::ostringstream msg;
  msg << "project_epigraph_pwl: active-set did not settle in 100 iterations"
      << " (m=" << m << ", working=" << working.size() << ")";
  throw Error(msg.str());
}

EpiPoint project_epigraph_sum(const Vec& p, Scalar eta, Scalar a, const Vec& b,
                              Scalar c, const Mat& simplex_vertices) {
  const Index n = p.size();
  const Vec zero_vals = Vec::Zero(simplex_vertices.cols());

  // min |u + v - z|^2 over u in epi(rho*), v in epi(support*): alternate the
  // two component projections on the residual. The summed point is unique.
  Vec u(n + 1), v(n + 1);
  v.setZero();  // (0, 0) always satisfies the support-function epigraph
  u.head(n) = p;
  u[n] = eta;

  Vec prev_sum = Vec::Constant(n + 1, std::numeric_limits<Scalar>::infinity());
  const Scalar scale = std::max(Scalar(1), std::max(p.cwiseAbs().maxCoeff(), std::abs(eta)));
  for (int it = 0; it < 50000; ++it) {
    EpiPoint pu = project_epigraph_quadratic(p - v.head(n), eta - v[n], a, b, c);
    u.head(n) = pu.r;
    u[n] = pu.s;
    EpiPoint pv =
        project_epigraph_pwl(p - u.head(n), eta - u[n], simplex_vertices, zero_vals);
    v.head(n) = pv.r;
    v[n] = pv.s;
    Vec sum = u + v;
    if ((sum - prev_sum).cwiseAbs().maxCoeff() <= 1e-12 * scale) break;
    prev_sum = sum;
  }
  return {u.head(n) + v.head(n), u[n] + v[n]};
}

EpiPoint project_epigraph_intersection(const Vec& p, Scalar eta,
                                       const EpiProjector& branch1,
                                       const EpiProjector& branch2) {
  const Index n = p.size();
  Vec x(n + 1);
  x.head(n) = p;
  x[n] = eta;
  Vec pc = Vec::Zero(n + 1), qc = Vec::Zero(n + 1);
  const Scalar scale = std::max(Scalar(1), x.cwiseAbs().maxCoeff());

  Scalar residual = std::numeric_limits<Scalar>::infinity();
  for (int sweep = 0; sweep < 200; ++sweep) {
    Vec xp = x + pc;
    EpiPoint y1 = branch1(xp.head(n), xp[n]);
    Vec y(n + 1);
    y.head(n) = y1.r;
    y[n] = y1.s;
    pc = xp - y;

    Vec yq = y + qc;
    EpiPoint y2 = branch2(yq.head(n), yq[n]);
    Vec xn(n + 1);
    xn.head(n) = y2.r;
    xn[n] = y2.s;
    qc = yq - xn;

    const Scalar change = (xn - x).cwiseAbs().maxCoeff();
    x = xn;
    if (change <= 1e-9 * scale) {
      // x is branch2-feasible by construction; require branch1 feasibility.
      EpiPoint chk = branch1(x.head(n), x[n]);
      Vec cx(n + 1);
      cx.head(n) = chk.r;
      cx[n] = chk.s;
      residual = (cx - x).norm();
      if (residual <= 1e-7 * scale) return {x.head(n), x[n]};
    }
  }
  std::ostringstream msg;
  msg << "project_epigraph_intersection: Dykstra did not converge in 200 sweeps"
      << " (residual " << residual << ")";
  throw Error(msg.str());
}

namespace {

// Split a 2x2 matrix into its scaled-rotation and scaled-reflection parts;
// the singular values are Q+R and |Q-R| and clamping them rescales the two
// parts without touching the rotation angles.
Mat clamp_2x2(const Mat& m, Scalar radius) {
  const Scalar E = (m(0, 0) + m(1, 1)) / 2;
  const Scalar F = (m(0, 0) - m(1, 1)) / 2;
  const Scalar G = (m(1, 0) + m(0, 1)) / 2;
  const Scalar H = (m(1, 0) - m(0, 1)) / 2;
  const Scalar Q = std::hypot(E, H);
  const Scalar R = std::hypot(F, G);
  const Scalar s1 = Q + R;
  const Scalar s2 = Q - R;
  if (s1 <= radius && std::abs(s2) <= radius) return m;
  const Scalar s1c = std::min(s1, radius);
  const Scalar s2c = std::clamp(s2, -radius, radius);
  const Scalar fq = Q > 1e-300 ? (s1c + s2c) / (2 * Q) : 0;
  const Scalar fr = R > 1e-300 ? (s1c - s2c) / (2 * R) : 0;
  Mat out(2, 2);
  out(0, 0) = fq * E + fr * F;
  out(0, 1) = -fq * H + fr * G;
  out(1, 0) = fq * H + fr * G;
  out(1, 1) = fq * E - fr * F;
  return out;
}

// One-sided Jacobi: returns B with orthogonal columns and V with B_in = B V^T.
void one_sided_jacobi(Mat& B, Mat& V) {
  const Index k = B.cols();
  V = Mat::Identity(k, k);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (Index pcol = 0; pcol < k - 1; ++pcol) {
      for (Index qcol = pcol + 1; qcol < k; ++qcol) {
        const Scalar app = B.col(pcol).squaredNorm();
        const Scalar aqq = B.col(qcol).squaredNorm();
        const Scalar apq = B.col(pcol).dot(B.col(qcol));
        if (std::abs(apq) <= 1e-14 * std::sqrt(app * aqq) + 1e-300) continue;
        rotated = true;
        const Scalar zeta = (aqq - app) / (2 * apq);
        const Scalar t =
            (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const Scalar cs = 1 / std::sqrt(1 + t * t);
        const Scalar sn = cs * t;
        const Vec bp = B.col(pcol);
        B.col(pcol) = cs * bp - sn * B.col(qcol);
        B.col(qcol) = sn * bp + cs * B.col(qcol);
        const Vec vp = V.col(pcol);
        V.col(pcol) = cs * vp - sn * V.col(qcol);
        V.col(qcol) = sn * vp + cs * V.col(qcol);
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

Mat project_spectral_ball(const Mat& m, Scalar radius) {
  if (radius <= 0) return Mat::Zero(m.rows(), m.cols());
  const Index d = m.rows(), n = m.cols();
  if (d == 1 || n == 1) {
    const Scalar nrm = m.norm();
    return nrm > radius ? Mat(m * (radius / nrm)) : m;
  }
  if (d == 2 && n == 2) return clamp_2x2(m, radius);

  Mat B = d >= n ? m : Mat(m.transpose());
  Mat V;
  one_sided_jacobi(B, V);
  bool changed = false;
  for (Index j = 0; j < B.cols(); ++j) {
    const Scalar sigma = B.col(j).norm();
    if (sigma > radius) {
      B.col(j) *= radius / sigma;
      changed = true;
    }
  }
  if (!changed) return m;
  Mat out = B * V.transpose();
  return d >= n ? out : Mat(out.transpose());
}

Vec singular_values_small(const Mat& m) {
  const Index d = m.rows(), n = m.cols();
  if (d == 1 || n == 1) {
    Vec s(1);
    s[0] = m.norm();
    return s;
  }
  Mat B = d >= n ? m : Mat(m.transpose());
  Mat V;
  one_sided_jacobi(B, V);
  Vec s(B.cols());
  for (Index j = 0; j < B.cols(); ++j) s[j] = B.col(j).norm();
  std::sort(s.data(), s.data() + s.size(), std::greater<Scalar>());
  return s;
}

Vec project_onto_simplex(const Vec& z, const Mat& vertices) {
  const Index n = z.size();
  const Index nv = vertices.cols();
  Vec best = vertices.col(0);
  Scalar best_dist = (z - best).squaredNorm();

  std::vector<Index> subset;
  for (unsigned mask = 1; mask < (1u << nv); ++mask) {
    subset.clear();
    for (Index j = 0; j < nv; ++j)
      if (mask & (1u << j)) subset.push_back(j);
    const Index k = Index(subset.size());
    if (k == 1) {
      const Vec& v0 = vertices.col(subset[0]);
      const Scalar dist = (z - v0).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = v0;
      }
      continue;
    }
    // Projection onto the affine hull of the face, then a barycentric
    // feasibility check.
    Mat Bm(n, k - 1);
    const Vec v0 = vertices.col(subset[0]);
    for (Index j = 1; j < k; ++j) Bm.col(j - 1) = vertices.col(subset[size_t(j)]) - v0;
    Mat gram = Bm.transpose() * Bm;
    Vec y = gram.ldlt().solve(Bm.transpose() * (z - v0));
    if (y.minCoeff() < -1e-12 || y.sum() > 1 + 1e-12) continue;
    const Vec x = v0 + Bm * y;
    const Scalar dist = (z - x).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

}  // namespace sublift
