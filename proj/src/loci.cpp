#include "curvloci/loci.hpp"

#include <algorithm>
#include <cmath>

namespace curvloci {

BdeCoefficients bde_coefficients(const SecondFundamentalForm& a) {
  return {a.l1 * a.m2 - a.l2 * a.m1, a.l1 * a.n2 - a.l2 * a.n1, a.m1 * a.n2 - a.m2 * a.n1};
}

double resultant(const SecondFundamentalForm& a) {
  BdeCoefficients k = bde_coefficients(a);
  return 0.25 * (4.0 * k.p * k.r - k.q * k.q);
}

EllipseLocus curvature_ellipse(const SecondFundamentalForm& a, double tau) {
  EllipseLocus e;
  e.center = {0.5 * (a.l1 + a.n1), 0.5 * (a.l2 + a.n2)};
  e.m[0][0] = 0.5 * (a.l1 - a.n1);
  e.m[0][1] = a.m1;
  e.m[1][0] = 0.5 * (a.l2 - a.n2);
  e.m[1][1] = a.m2;

  const double s = sff_scale(a);
  const double mnorm = std::max({std::fabs(e.m[0][0]), std::fabs(e.m[0][1]),
                                 std::fabs(e.m[1][0]), std::fabs(e.m[1][1])});
  if (s == 0.0 || mnorm <= tau * s) {
    e.degeneracy = EllipseDegeneracy::Point;
    e.endpoints = {e.center, e.center};
    return e;
  }
  const double det = e.m[0][0] * e.m[1][1] - e.m[0][1] * e.m[1][0];
  const double det_tol = tau * mnorm * mnorm;  // relative to ||M||^2
  if (std::fabs(det) > det_tol) {
    e.degeneracy = EllipseDegeneracy::Ellipse;
    if (std::fabs(det) <= kNearFactor * det_tol) e.near_degenerate = true;
    return e;
  }

  // Rank-one M: image of the circle is the segment center +- ||w|| u with u
  // the unit column span and w the column coordinates along u.
  e.degeneracy = EllipseDegeneracy::Segment;
  Vec2 c0 = {e.m[0][0], e.m[1][0]};
  Vec2 c1 = {e.m[0][1], e.m[1][1]};
  Vec2 u = normalized(norm(c0) >= norm(c1) ? c0 : c1);
  Vec2 w = {dot(c0, u), dot(c1, u)};
  double halflen = norm(w);
  e.endpoints = {e.center - halflen * u, e.center + halflen * u};
  return e;
}

const char* to_string(PointType t) {
  switch (t) {
    case PointType::Elliptic: return "elliptic";
    case PointType::Hyperbolic: return "hyperbolic";
    case PointType::Semiumbilic: return "semiumbilic";
    case PointType::Parabolic: return "parabolic";
    case PointType::InflectionReal: return "inflection_real";
    case PointType::InflectionImaginary: return "inflection_imaginary";
    case PointType::InflectionAt: return "inflection_at";
    case PointType::UmbilicNonFlat: return "umbilic_nonflat";
    case PointType::FlatUmbilic: return "flat_umbilic";
  }
  return "?";
}

PointClassification classify_point_r4(const SecondFundamentalForm& a, double tau) {
  PointClassification out;
  const double s = sff_scale(a);
  if (s == 0.0) {
    out.type = PointType::FlatUmbilic;
    return out;
  }
  auto near = [&out](double value, double threshold) {
    if (std::fabs(value) > threshold && std::fabs(value) <= kNearFactor * threshold)
      out.near_degenerate = true;
  };

  const BdeCoefficients k = bde_coefficients(a);
  // 2 det M = p + r; equivalent, up to a positive factor, to the vanishing
  // of the curvature of the ellipse parametrization.
  const double degen = k.p + k.r;
  const double tol2 = tau * s * s;
  near(degen, tol2);

  if (std::fabs(degen) > tol2) {
    const double delta = 0.25 * (4.0 * k.p * k.r - k.q * k.q);
    const double tol4 = tau * s * s * s * s;
    near(delta, tol4);
    if (std::fabs(delta) <= tol4) out.type = PointType::Parabolic;
    else if (delta > 0.0) out.type = PointType::Elliptic;
    else out.type = PointType::Hyperbolic;
    return out;
  }

  EllipseLocus e = curvature_ellipse(a, tau);
  if (e.degeneracy == EllipseDegeneracy::Point) {
    if (norm(e.center) <= tau * s) out.type = PointType::FlatUmbilic;
    else out.type = PointType::UmbilicNonFlat;
    near(norm(e.center), tau * s);
    return out;
  }

  // Segment: radial iff the supporting line passes through the origin.
  Vec2 u = normalized(e.endpoints[1] - e.endpoints[0]);
  const double d = cross(e.center, u);
  const double tol1 = tau * s;
  near(d, tol1);
  if (std::fabs(d) > tol1) {
    out.type = PointType::Semiumbilic;
    return out;
  }
  const double t = -dot(e.center, u);  // origin position along the line
  const double r = 0.5 * norm(e.endpoints[1] - e.endpoints[0]);
  near(std::fabs(t) - r, tol1);
  if (std::fabs(t) < r - tol1) out.type = PointType::InflectionReal;
  else if (std::fabs(t) <= r + tol1) out.type = PointType::InflectionAt;
  else out.type = PointType::InflectionImaginary;
  return out;
}

TangentDirectionSet asymptotic_directions_r4(const SecondFundamentalForm& a, double tau) {
  const BdeCoefficients k = bde_coefficients(a);
  const double s = sff_scale(a);
  BinaryQuadraticRoots roots =
      solve_binary_quadratic(k.p, k.q, k.r, tau * s * s, 4.0 * tau * s * s * s * s);
  TangentDirectionSet out;
  out.all = roots.all;
  out.double_root = roots.double_root;
  out.near_degenerate = roots.near_degenerate;
  for (int i = 0; i < roots.count; ++i)
    out.directions.emplace_back(roots.roots[i].x, roots.roots[i].y);
  return out;
}

NormalAngleSet binormal_directions_r4(const SecondFundamentalForm& a, double tau) {
  // det Hess h_nu = (l1 c + l2 s)(n1 c + n2 s) - (m1 c + m2 s)^2, a
  // homogeneous quadratic in (c, s) = (cos phi, sin phi).
  const double qa = a.l1 * a.n1 - a.m1 * a.m1;
  const double qb = a.l1 * a.n2 + a.l2 * a.n1 - 2.0 * a.m1 * a.m2;
  const double qc = a.l2 * a.n2 - a.m2 * a.m2;
  const double s = sff_scale(a);
  BinaryQuadraticRoots roots =
      solve_binary_quadratic(qa, qb, qc, tau * s * s, 4.0 * tau * s * s * s * s);
  NormalAngleSet out;
  out.all = roots.all;
  out.near_degenerate = roots.near_degenerate;
  for (int i = 0; i < roots.count; ++i)
    out.angles.push_back(normalize_angle_mod_pi(std::atan2(roots.roots[i].y, roots.roots[i].x)));
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

const char* to_string(GOrbit g) {
  switch (g) {
    case GOrbit::HyperbolicPair: return "(x^2,y^2)";
    case GOrbit::EllipticPair: return "(xy,x^2-y^2)";
    case GOrbit::ParabolicPair: return "(x^2,xy)";
    case GOrbit::InflectionPair: return "(x^2+-y^2,0)";
    case GOrbit::DegenerateInflectionPair: return "(x^2,0)";
    case GOrbit::ZeroPair: return "(0,0)";
  }
  return "?";
}

GOrbit g_orbit(const QuadraticForm2& q1, const QuadraticForm2& q2, double tau) {
  SecondFundamentalForm a{q1.a, q1.b, q1.c, q2.a, q2.b, q2.c};
  const double s = sff_scale(a);
  if (s == 0.0) return GOrbit::ZeroPair;
  const BdeCoefficients k = bde_coefficients(a);
  const double tol2 = tau * s * s;
  const double delta = 0.25 * (4.0 * k.p * k.r - k.q * k.q);
  const double tol4 = tau * s * s * s * s;
  if (delta > tol4) return GOrbit::EllipticPair;
  if (delta < -tol4) return GOrbit::HyperbolicPair;
  const bool rank1 = std::fabs(k.p) <= tol2 && std::fabs(k.q) <= tol2 && std::fabs(k.r) <= tol2;
  if (!rank1) return GOrbit::ParabolicPair;
  // Proportional rows: the pencil reduces to a single form.
  QuadraticForm2 q = form_scale(q1) >= form_scale(q2) ? q1 : q2;
  return form_rank(q, tau) == 2 ? GOrbit::InflectionPair : GOrbit::DegenerateInflectionPair;
}

}  // namespace curvloci
