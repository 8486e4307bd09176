#pragma once

#include <array>

#include "curvloci/expr.hpp"
#include "curvloci/geom.hpp"

namespace curvloci {

// Precondition violation of a geometric operation (not in Monge form,
// not corank 1, ...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vec4 = std::array<double, 4>;

// Graph surface X(x,y) = (x, y, f1(x,y), f2(x,y)) in R^4.
struct MongeSurface4 {
  Expr f1;
  Expr f2;
};

// Coefficient matrix (l1 m1 n1; l2 m2 n2) of the second fundamental form in
// an adapted orthonormal frame {e1,e2,e3,e4}. Row i is the quadratic
// l_i x^2 + 2 m_i xy + n_i y^2 paired with normal e_{i+2}.
struct SecondFundamentalForm {
  double l1 = 0.0, m1 = 0.0, n1 = 0.0;
  double l2 = 0.0, m2 = 0.0, n2 = 0.0;
};

inline double sff_scale(const SecondFundamentalForm& a) {
  return std::max({std::fabs(a.l1), std::fabs(a.m1), std::fabs(a.n1),
                   std::fabs(a.l2), std::fabs(a.m2), std::fabs(a.n2)});
}
inline QuadraticForm2 sff_row1(const SecondFundamentalForm& a) { return {a.l1, a.m1, a.n1}; }
inline QuadraticForm2 sff_row2(const SecondFundamentalForm& a) { return {a.l2, a.m2, a.n2}; }

// Orthonormal adapted frame at a point: e1,e2 span the tangent plane,
// e3,e4 the normal plane, and (X_x, X_y) * reparam = (e1, e2).
struct AdaptedFrame {
  std::array<Vec4, 4> e{};
  double reparam[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
};

struct AdaptedResult {
  AdaptedFrame frame;
  SecondFundamentalForm sff;
};

// True when both gradients vanish at p within tol.
bool monge_at(const MongeSurface4& s, Vec2 p, double tol = kTauFrame);

// Gram-Schmidt on (X_x, X_y), deterministic normal completion from the
// ambient axes (0,0,1,0) and (0,0,0,1), second derivatives pulled back by
// the reparametrization and projected on the normal frame. At a Monge point
// this reduces to l_i = f_i_xx, m_i = f_i_xy, n_i = f_i_yy.
AdaptedResult adapted_sff(const MongeSurface4& s, Vec2 p);

// Coefficients w.r.t. the raw coordinate tangent frame (X_x, X_y) and the
// same deterministic orthonormal normal frame. The implicit-quadratic root
// set of the asymptotic-direction equation built from these lives in source
// (dx, dy) coordinates, which is what curve tracing needs.
SecondFundamentalForm coordinate_sff(const MongeSurface4& s, Vec2 p);

// Coefficients of the same second fundamental form after rotating the
// tangent frame by phi. Applying phi then -phi is the identity.
SecondFundamentalForm rotate_tangent(const SecondFundamentalForm& a, double phi);

// Tangent change by an explicit 2x2 matrix R (each row form A -> R^T A R).
SecondFundamentalForm apply_tangent_matrix(const SecondFundamentalForm& a,
                                           double r00, double r01, double r10, double r11);

// Rotating the normal frame by psi mixes the two rows linearly.
SecondFundamentalForm rotate_normal(const SecondFundamentalForm& a, double psi);

// Hessian of the height function along nu = nu.x*e3 + nu.y*e4 (unit within
// 1e-10) at the Monge point. nu is binormal iff the form is degenerate.
QuadraticForm2 height_hessian(const SecondFundamentalForm& a, Vec2 nu);
QuadraticForm2 height_hessian(const SecondFundamentalForm& a, double phi);

}  // namespace curvloci
