#pragma once

#include <vector>

#include "curvloci/fundforms.hpp"
#include "curvloci/geom.hpp"

namespace curvloci {

// Coefficients of the asymptotic-direction equation
//   p dx^2 + q dxdy + r dy^2 = 0,
// the three 2x2 minors of the coefficient matrix.
struct BdeCoefficients {
  double p = 0.0;  // l1 m2 - l2 m1
  double q = 0.0;  // l1 n2 - l2 n1
  double r = 0.0;  // m1 n2 - m2 n1
};

BdeCoefficients bde_coefficients(const SecondFundamentalForm& a);

// Little's resultant. Sign contract: > 0 the point lies inside the
// curvature ellipse (elliptic), < 0 outside (hyperbolic); the discriminant
// of the asymptotic equation equals -4 * resultant.
double resultant(const SecondFundamentalForm& a);

enum class EllipseDegeneracy { Ellipse, Segment, Point };

// Curvature ellipse eta(theta) = center + M * (cos 2theta, sin 2theta) in
// normal-plane coordinates (e3, e4).
struct EllipseLocus {
  Vec2 center;
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  EllipseDegeneracy degeneracy = EllipseDegeneracy::Ellipse;
  std::array<Vec2, 2> endpoints{};  // segment only
  bool near_degenerate = false;

  Vec2 at(double theta) const {
    double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
    return {center.x + m[0][0] * c + m[0][1] * s, center.y + m[1][0] * c + m[1][1] * s};
  }
};

EllipseLocus curvature_ellipse(const SecondFundamentalForm& a, double tau = kTauDeg);

enum class PointType {
  Elliptic,
  Hyperbolic,
  Semiumbilic,
  Parabolic,
  InflectionReal,
  InflectionImaginary,
  InflectionAt,
  UmbilicNonFlat,
  FlatUmbilic,
};

const char* to_string(PointType t);

struct PointClassification {
  PointType type = PointType::FlatUmbilic;
  bool near_degenerate = false;
};

PointClassification classify_point_r4(const SecondFundamentalForm& a, double tau = kTauDeg);

// 0 directions at elliptic points, 1 at parabolic, 2 at hyperbolic or
// semiumbilic, all at inflection-category points.
struct TangentDirectionSet {
  bool all = false;
  bool double_root = false;
  bool near_degenerate = false;
  std::vector<TangentDirection> directions;

  bool contains(const TangentDirection& v, double tol = 1e-9) const {
    if (all) return true;
    for (const auto& d : directions)
      if (d.approx_equal(v, tol)) return true;
    return false;
  }
};

TangentDirectionSet asymptotic_directions_r4(const SecondFundamentalForm& a,
                                             double tau = kTauDeg);

// Angles phi in [0, pi) of normal directions cos(phi) e3 + sin(phi) e4 whose
// height function has a degenerate singularity.
struct NormalAngleSet {
  bool all = false;
  bool near_degenerate = false;
  std::vector<double> angles;
};

NormalAngleSet binormal_directions_r4(const SecondFundamentalForm& a, double tau = kTauDeg);

// Orbit of the pair (Q1, Q2) under linear changes in source and target.
enum class GOrbit {
  HyperbolicPair,            // (x^2, y^2)
  EllipticPair,              // (xy, x^2 - y^2)
  ParabolicPair,             // (x^2, xy)
  InflectionPair,            // (x^2 +- y^2, 0)
  DegenerateInflectionPair,  // (x^2, 0)
  ZeroPair,                  // (0, 0)
};

const char* to_string(GOrbit g);

GOrbit g_orbit(const QuadraticForm2& q1, const QuadraticForm2& q2, double tau = kTauDeg);
inline GOrbit g_orbit(const SecondFundamentalForm& a, double tau = kTauDeg) {
  return g_orbit(sff_row1(a), sff_row2(a), tau);
}

}  // namespace curvloci
