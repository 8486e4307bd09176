#include "curvloci/geom.hpp"

#include <algorithm>

namespace curvloci {

namespace {

Vec2 normalized_homogeneous(double u, double v) {
  double m = std::max(std::fabs(u), std::fabs(v));
  if (m > 0.0) {
    u /= m;
    v /= m;
  }
  if (u < 0.0 || (u == 0.0 && v < 0.0)) {
    u = -u;
    v = -v;
  }
  return {u, v};
}

}  // namespace

int form_rank(const QuadraticForm2& q, double tau) {
  double s = form_scale(q);
  if (s == 0.0) return 0;
  if (std::fabs(form_det(q)) <= tau * s * s) return 1;
  return 2;
}

BinaryQuadraticRoots solve_binary_quadratic(double A, double B, double C,
                                            double coef_tol, double disc_tol) {
  BinaryQuadraticRoots out;
  const double m = std::max({std::fabs(A), std::fabs(B), std::fabs(C)});
  if (m <= coef_tol) {
    out.all = true;
    return out;
  }
  if (m <= kNearFactor * coef_tol) out.near_degenerate = true;

  const bool za = std::fabs(A) <= coef_tol;
  const bool zb = std::fabs(B) <= coef_tol;
  const bool zc = std::fabs(C) <= coef_tol;
  auto push = [&out](double u, double v) { out.roots[out.count++] = normalized_homogeneous(u, v); };

  if (za && zc) {  // B uv = 0
    push(1.0, 0.0);
    push(0.0, 1.0);
    return out;
  }
  if (za) {  // v (B u + C v) = 0
    if (zb) {
      out.double_root = true;
      push(1.0, 0.0);
      return out;
    }
    push(1.0, 0.0);
    push(-C, B);
    return out;
  }
  if (zc) {  // u (A u + B v) = 0
    if (zb) {
      out.double_root = true;
      push(0.0, 1.0);
      return out;
    }
    push(0.0, 1.0);
    push(-B, A);
    return out;
  }

  const double disc = B * B - 4.0 * A * C;
  if (std::fabs(disc) <= disc_tol) {
    out.double_root = true;
    push(-B, 2.0 * A);
    return out;
  }
  if (std::fabs(disc) <= kNearFactor * disc_tol) out.near_degenerate = true;
  if (disc < 0.0) return out;

  // Citardauq for the second root: t1*t2 = C/A, with r the larger-magnitude
  // monic-root numerator.
  const double sq = std::sqrt(disc);
  const double r = -0.5 * (B + std::copysign(sq, B));
  push(r, A);
  push(C, r);
  return out;
}

double normalize_angle_mod_pi(double phi) {
  const double pi = 3.14159265358979323846;
  phi = std::fmod(phi, pi);
  if (phi < 0.0) phi += pi;
  if (phi >= pi) phi -= pi;
  return phi;
}

double angle_dist_mod_pi(double a, double b) {
  const double pi = 3.14159265358979323846;
  double d = std::fabs(normalize_angle_mod_pi(a) - normalize_angle_mod_pi(b));
  return std::min(d, pi - d);
}

bool angle_sets_equal(const std::vector<double>& s1, const std::vector<double>& s2,
                      double tol) {
  if (s1.size() != s2.size()) return false;
  for (double a : s1) {
    double best = 1e300;
    for (double b : s2) best = std::min(best, angle_dist_mod_pi(a, b));
    if (best > tol) return false;
  }
  for (double b : s2) {
    double best = 1e300;
    for (double a : s1) best = std::min(best, angle_dist_mod_pi(a, b));
    if (best > tol) return false;
  }
  return true;
}

}  // namespace curvloci
