#include "curvloci/projection.hpp"

#include <array>
#include <cmath>

namespace curvloci {

CorankSurface project(const MongeSurface4& s, Vec2 p, TangentDirection v, double tol) {
  if (!monge_at(s, p, tol))
    throw PreconditionError("surface is not in Monge form at the point");
  // Rotate source coordinates so v maps to (0,1): with v = (a,b) unit, the
  // rotation has columns (b,-a) and (a,b); no trig, so axis directions stay
  // exact.
  Vec2 u = v.unit();
  CorankSurface out;
  out.g2 = s.f1.substitute_affine(p.x, p.y, u.y, u.x, -u.x, u.y);
  out.g3 = s.f2.substitute_affine(p.x, p.y, u.y, u.x, -u.x, u.y);
  double v1 = out.g2.value_at(0.0, 0.0);
  double v2 = out.g3.value_at(0.0, 0.0);
  if (v1 != 0.0) out.g2 = out.g2 - Expr::number(v1);
  if (v2 != 0.0) out.g3 = out.g3 - Expr::number(v2);

  Jet2 j2 = out.g2.jet2_at(0.0, 0.0);
  Jet2 j3 = out.g3.jet2_at(0.0, 0.0);
  out.e_coef = 1.0 + j2.dx * j2.dx + j3.dx * j3.dx;
  out.f_coef = j2.dx * j2.dy + j3.dx * j3.dy;
  out.g_coef = j2.dy * j2.dy + j3.dy * j3.dy;
  return out;
}

SecondFundamentalForm corank_sff(const CorankSurface& m, double tol) {
  Jet2 j2 = m.g2.jet2_at(0.0, 0.0);
  Jet2 j3 = m.g3.jet2_at(0.0, 0.0);
  if (std::fabs(j2.dx) > tol || std::fabs(j2.dy) > tol || std::fabs(j3.dx) > tol ||
      std::fabs(j3.dy) > tol)
    throw PreconditionError("parametrization does not have corank 1 at the origin");

  // Normal frame by Gram-Schmidt of the ambient axes off the tangent line
  // im(df) = span{(1, g2_x, g3_x)}; exact axes at an exact corank point.
  std::array<double, 3> t = {1.0, j2.dx, j3.dx};
  double tn = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
  for (double& c : t) c /= tn;
  auto gs = [&](std::array<double, 3> v, const std::array<double, 3>& w) {
    double d = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
    for (int i = 0; i < 3; ++i) v[i] -= d * w[i];
    return v;
  };
  std::array<double, 3> nu1 = gs({0.0, 1.0, 0.0}, t);
  double n1n = std::sqrt(nu1[0] * nu1[0] + nu1[1] * nu1[1] + nu1[2] * nu1[2]);
  for (double& c : nu1) c /= n1n;
  std::array<double, 3> nu2 = gs(gs({0.0, 0.0, 1.0}, t), nu1);
  double n2n = std::sqrt(nu2[0] * nu2[0] + nu2[1] * nu2[1] + nu2[2] * nu2[2]);
  for (double& c : nu2) c /= n2n;

  auto project2 = [&](double a2, double a3, const std::array<double, 3>& nu) {
    return a2 * nu[1] + a3 * nu[2];
  };
  SecondFundamentalForm out;
  out.l1 = project2(j2.dxx, j3.dxx, nu1);
  out.m1 = project2(j2.dxy, j3.dxy, nu1);
  out.n1 = project2(j2.dyy, j3.dyy, nu1);
  out.l2 = project2(j2.dxx, j3.dxx, nu2);
  out.m2 = project2(j2.dxy, j3.dxy, nu2);
  out.n2 = project2(j2.dyy, j3.dyy, nu2);
  return out;
}

const char* to_string(ParabolaDegeneracy d) {
  switch (d) {
    case ParabolaDegeneracy::Parabola: return "parabola";
    case ParabolaDegeneracy::HalfLine: return "half_line";
    case ParabolaDegeneracy::Line: return "line";
    case ParabolaDegeneracy::PointLocus: return "point";
  }
  return "?";
}

ParabolaLocus curvature_parabola(const SecondFundamentalForm& a, double tau) {
  ParabolaLocus p;
  p.a = {a.l1, a.l2};
  p.b = {2.0 * a.m1, 2.0 * a.m2};
  p.c = {a.n1, a.n2};

  const double s = sff_scale(a);
  const Vec2 mv = {a.m1, a.m2};
  const Vec2 nv = {a.n1, a.n2};
  const double r = a.m1 * a.n2 - a.m2 * a.n1;
  const double tol2 = tau * s * s;
  const double tol1 = tau * s;

  if (std::fabs(r) > tol2) {
    p.degeneracy = ParabolaDegeneracy::Parabola;
    if (std::fabs(r) <= kNearFactor * tol2) p.near_degenerate = true;
    return p;
  }
  if (norm(nv) > tol1) {
    // eta(y) = a + n (y + beta)^2 with m = beta n: a ray from the vertex
    // along n.
    p.degeneracy = ParabolaDegeneracy::HalfLine;
    double beta = dot(mv, nv) / dot(nv, nv);
    p.vertex = p.at(-beta);
    p.direction = normalized(nv);
    if (norm(nv) <= kNearFactor * tol1) p.near_degenerate = true;
    return p;
  }
  if (norm(mv) > tol1) {
    p.degeneracy = ParabolaDegeneracy::Line;
    p.vertex = p.a;
    p.direction = normalized(p.b);
    if (norm(mv) <= kNearFactor * tol1) p.near_degenerate = true;
    return p;
  }
  p.degeneracy = ParabolaDegeneracy::PointLocus;
  p.vertex = p.a;
  return p;
}

const char* to_string(MondOrbit m) {
  switch (m) {
    case MondOrbit::CrossCap: return "(x,y^2,xy)";
    case MondOrbit::Y2: return "(x,y^2,0)";
    case MondOrbit::XY: return "(x,xy,0)";
    case MondOrbit::Zero: return "(x,0,0)";
  }
  return "?";
}

MondOrbit mond_orbit(const SecondFundamentalForm& a, double tau) {
  const double s = sff_scale(a);
  const double r = a.m1 * a.n2 - a.m2 * a.n1;
  if (std::fabs(r) > tau * s * s) return MondOrbit::CrossCap;
  const double nn = std::hypot(a.n1, a.n2);
  if (nn > tau * s) return MondOrbit::Y2;
  const double mn = std::hypot(a.m1, a.m2);
  if (mn > tau * s) return MondOrbit::XY;
  return MondOrbit::Zero;
}

CorankDirectionSet asymptotic_directions_corank(const SecondFundamentalForm& a, double tau) {
  CorankDirectionSet out;
  const ParabolaLocus par = curvature_parabola(a, tau);
  const BdeCoefficients k = bde_coefficients(a);
  const double s = sff_scale(a);
  const double tol2 = tau * s * s;

  switch (par.degeneracy) {
    case ParabolaDegeneracy::Parabola: {
      // det(eta, eta') = 2 (r y^2 + q y + p); roots in y, never the null
      // direction here.
      BinaryQuadraticRoots roots =
          solve_binary_quadratic(k.r, k.q, k.p, tol2, 4.0 * tau * s * s * s * s);
      out.double_root = roots.double_root;
      for (int i = 0; i < roots.count; ++i) {
        const Vec2& h = roots.roots[i];
        if (h.y == 0.0) out.directions.push_back(CorankDirection::at_infinity());
        else out.directions.push_back(CorankDirection::finite(h.x / h.y));
      }
      return out;
    }
    case ParabolaDegeneracy::HalfLine: {
      // The supporting line misses the origin iff q != 0; then the vertex
      // parameter and the null direction are the two asymptotic directions.
      if (std::fabs(k.q) <= tol2) {
        out.all = true;
        return out;
      }
      const Vec2 mv = {a.m1, a.m2};
      const Vec2 nv = {a.n1, a.n2};
      out.directions.push_back(CorankDirection::finite(-dot(mv, nv) / dot(nv, nv)));
      out.directions.push_back(CorankDirection::at_infinity());
      return out;
    }
    case ParabolaDegeneracy::Line: {
      if (std::fabs(k.p) <= tol2) {
        out.all = true;
        return out;
      }
      out.directions.push_back(CorankDirection::at_infinity());
      return out;
    }
    case ParabolaDegeneracy::PointLocus:
      out.all = true;
      return out;
  }
  return out;
}

const char* to_string(SingularPointType t) {
  switch (t) {
    case SingularPointType::Elliptic: return "elliptic";
    case SingularPointType::Hyperbolic: return "hyperbolic";
    case SingularPointType::Parabolic: return "parabolic";
    case SingularPointType::Inflection: return "inflection";
  }
  return "?";
}

SingularPointType classify_point_corank(const SecondFundamentalForm& a, double tau) {
  CorankDirectionSet dirs = asymptotic_directions_corank(a, tau);
  if (dirs.all) return SingularPointType::Inflection;
  switch (dirs.directions.size()) {
    case 0: return SingularPointType::Elliptic;
    case 1: return SingularPointType::Parabolic;
    default: return SingularPointType::Hyperbolic;
  }
}

NormalAngleSet binormal_directions_corank(const SecondFundamentalForm& a, double tau) {
  return binormal_directions_r4(a, tau);
}

}  // namespace curvloci
