#include "curvloci/fundforms.hpp"

#include <cmath>

namespace curvloci {

namespace {

double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec4 sub_scaled(Vec4 a, double s, const Vec4& b) {
  for (int i = 0; i < 4; ++i) a[i] -= s * b[i];
  return a;
}

Vec4 scaled(const Vec4& a, double s) { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }

double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }

struct FrameData {
  AdaptedFrame frame;
  Jet2 j1, j2;
};

FrameData build_frame(const MongeSurface4& s, Vec2 p) {
  FrameData out;
  out.j1 = s.f1.jet2_at(p.x, p.y);
  out.j2 = s.f2.jet2_at(p.x, p.y);
  const Jet2& j1 = out.j1;
  const Jet2& j2 = out.j2;

  Vec4 xu = {1.0, 0.0, j1.dx, j2.dx};
  Vec4 xv = {0.0, 1.0, j1.dy, j2.dy};
  double nxu = norm4(xu);
  if (!std::isfinite(nxu) || nxu <= 0.0)
    throw PreconditionError("surface is not an immersion at the point");
  Vec4 e1 = scaled(xu, 1.0 / nxu);
  double proj = dot4(xv, e1);
  Vec4 t2 = sub_scaled(xv, proj, e1);
  double r = norm4(t2);
  if (!std::isfinite(r) || r <= 0.0)
    throw PreconditionError("surface is not an immersion at the point");
  Vec4 e2 = scaled(t2, 1.0 / r);

  Vec4 a3 = {0.0, 0.0, 1.0, 0.0};
  Vec4 a4 = {0.0, 0.0, 0.0, 1.0};
  Vec4 t3 = sub_scaled(sub_scaled(a3, dot4(a3, e1), e1), dot4(a3, e2), e2);
  Vec4 e3 = scaled(t3, 1.0 / norm4(t3));
  Vec4 t4 = sub_scaled(sub_scaled(sub_scaled(a4, dot4(a4, e1), e1), dot4(a4, e2), e2),
                       dot4(a4, e3), e3);
  Vec4 e4 = scaled(t4, 1.0 / norm4(t4));

  out.frame.e = {e1, e2, e3, e4};
  out.frame.reparam[0][0] = 1.0 / nxu;
  out.frame.reparam[0][1] = -proj / (r * nxu);
  out.frame.reparam[1][0] = 0.0;
  out.frame.reparam[1][1] = 1.0 / r;
  return out;
}

// (col_i)^T H col_j for the 2x2 Hessian h and columns of the reparam matrix.
double pullback(const double h[2][2], const double p[2][2], int i, int j) {
  double ci0 = p[0][i], ci1 = p[1][i];
  double cj0 = p[0][j], cj1 = p[1][j];
  return ci0 * (h[0][0] * cj0 + h[0][1] * cj1) + ci1 * (h[1][0] * cj0 + h[1][1] * cj1);
}

}  // namespace

bool monge_at(const MongeSurface4& s, Vec2 p, double tol) {
  Jet2 j1 = s.f1.jet2_at(p.x, p.y);
  Jet2 j2 = s.f2.jet2_at(p.x, p.y);
  return std::fabs(j1.dx) <= tol && std::fabs(j1.dy) <= tol &&
         std::fabs(j2.dx) <= tol && std::fabs(j2.dy) <= tol;
}

AdaptedResult adapted_sff(const MongeSurface4& s, Vec2 p) {
  FrameData fd = build_frame(s, p);
  const double(&P)[2][2] = fd.frame.reparam;
  double h1[2][2] = {{fd.j1.dxx, fd.j1.dxy}, {fd.j1.dxy, fd.j1.dyy}};
  double h2[2][2] = {{fd.j2.dxx, fd.j2.dxy}, {fd.j2.dxy, fd.j2.dyy}};

  // Second derivatives of the reparametrized surface are ambient vectors
  // (0, 0, *, *); only the last two components of e3, e4 contribute.
  auto project_second = [&](int i, int j, const Vec4& normal) {
    return pullback(h1, P, i, j) * normal[2] + pullback(h2, P, i, j) * normal[3];
  };

  AdaptedResult out;
  out.frame = fd.frame;
  const Vec4& e3 = fd.frame.e[2];
  const Vec4& e4 = fd.frame.e[3];
  out.sff.l1 = project_second(0, 0, e3);
  out.sff.m1 = project_second(0, 1, e3);
  out.sff.n1 = project_second(1, 1, e3);
  out.sff.l2 = project_second(0, 0, e4);
  out.sff.m2 = project_second(0, 1, e4);
  out.sff.n2 = project_second(1, 1, e4);
  return out;
}

SecondFundamentalForm coordinate_sff(const MongeSurface4& s, Vec2 p) {
  FrameData fd = build_frame(s, p);
  const Vec4& e3 = fd.frame.e[2];
  const Vec4& e4 = fd.frame.e[3];
  auto project = [&](double a, double b, const Vec4& normal) {
    return a * normal[2] + b * normal[3];
  };
  SecondFundamentalForm sff;
  sff.l1 = project(fd.j1.dxx, fd.j2.dxx, e3);
  sff.m1 = project(fd.j1.dxy, fd.j2.dxy, e3);
  sff.n1 = project(fd.j1.dyy, fd.j2.dyy, e3);
  sff.l2 = project(fd.j1.dxx, fd.j2.dxx, e4);
  sff.m2 = project(fd.j1.dxy, fd.j2.dxy, e4);
  sff.n2 = project(fd.j1.dyy, fd.j2.dyy, e4);
  return sff;
}

SecondFundamentalForm apply_tangent_matrix(const SecondFundamentalForm& a,
                                           double r00, double r01, double r10, double r11) {
  auto row = [&](double l, double m, double n, double& lo, double& mo, double& no) {
    lo = r00 * r00 * l + 2.0 * r00 * r10 * m + r10 * r10 * n;
    mo = r00 * r01 * l + (r00 * r11 + r01 * r10) * m + r10 * r11 * n;
    no = r01 * r01 * l + 2.0 * r01 * r11 * m + r11 * r11 * n;
  };
  SecondFundamentalForm out;
  row(a.l1, a.m1, a.n1, out.l1, out.m1, out.n1);
  row(a.l2, a.m2, a.n2, out.l2, out.m2, out.n2);
  return out;
}

SecondFundamentalForm rotate_tangent(const SecondFundamentalForm& a, double phi) {
  double c = std::cos(phi), s = std::sin(phi);
  return apply_tangent_matrix(a, c, -s, s, c);
}

SecondFundamentalForm rotate_normal(const SecondFundamentalForm& a, double psi) {
  double c = std::cos(psi), s = std::sin(psi);
  SecondFundamentalForm out;
  out.l1 = c * a.l1 + s * a.l2;
  out.m1 = c * a.m1 + s * a.m2;
  out.n1 = c * a.n1 + s * a.n2;
  out.l2 = -s * a.l1 + c * a.l2;
  out.m2 = -s * a.m1 + c * a.m2;
  out.n2 = -s * a.n1 + c * a.n2;
  return out;
}

QuadraticForm2 height_hessian(const SecondFundamentalForm& a, Vec2 nu) {
  if (std::fabs(norm(nu) - 1.0) > 1e-10)
    throw PreconditionError("normal direction must be a unit vector");
  return {a.l1 * nu.x + a.l2 * nu.y, a.m1 * nu.x + a.m2 * nu.y, a.n1 * nu.x + a.n2 * nu.y};
}

QuadraticForm2 height_hessian(const SecondFundamentalForm& a, double phi) {
  return height_hessian(a, Vec2{std::cos(phi), std::sin(phi)});
}

}  // namespace curvloci
