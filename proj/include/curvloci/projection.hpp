#pragma once

#include <vector>

#include "curvloci/fundforms.hpp"
#include "curvloci/geom.hpp"
#include "curvloci/loci.hpp"

namespace curvloci {

// Corank-1 surface f(x,y) = (x, g2(x,y), g3(x,y)) in normalized
// coordinates: the singular point is the origin, the differential there has
// rank 1 with image the first ambient axis, and E = 1, F = G = 0.
struct CorankSurface {
  Expr g2;
  Expr g3;
  double e_coef = 1.0;
  double f_coef = 0.0;
  double g_coef = 0.0;
};

// Orthogonal projection of the surface along the tangent direction v,
// expressed in source coordinates rotated so v becomes the null direction.
// Requires the surface to be in Monge form at p.
CorankSurface project(const MongeSurface4& s, Vec2 p, TangentDirection v,
                      double tol = kTauFrame);

// Coefficients l_i = g_{i+1}_xx etc. at the singular point, w.r.t. the
// orthonormal normal frame completed off the tangent line im(df).
SecondFundamentalForm corank_sff(const CorankSurface& m, double tol = kTauFrame);

enum class ParabolaDegeneracy { Parabola, HalfLine, Line, PointLocus };

const char* to_string(ParabolaDegeneracy d);

// Curvature parabola eta(y) = a + b y + c y^2 in normal-plane coordinates
// (nu1, nu2), where a = (l1,l2), b = 2(m1,m2), c = (n1,n2).
struct ParabolaLocus {
  Vec2 a, b, c;
  ParabolaDegeneracy degeneracy = ParabolaDegeneracy::Parabola;
  Vec2 vertex;     // half-line vertex; a point on the line; the point locus
  Vec2 direction;  // unit ray/line direction for the degenerate cases
  bool near_degenerate = false;

  Vec2 at(double y) const {
    return {a.x + b.x * y + c.x * y * y, a.y + b.y * y + c.y * y * y};
  }
};

ParabolaLocus curvature_parabola(const SecondFundamentalForm& a, double tau = kTauDeg);

// The four 2-jet classes of corank-1 map germs (R^2,0) -> (R^3,0).
enum class MondOrbit { CrossCap, Y2, XY, Zero };

const char* to_string(MondOrbit m);

MondOrbit mond_orbit(const SecondFundamentalForm& a, double tau = kTauDeg);

// Tangent direction of the corank surface: the parameter y of X = d_x + y d_y,
// or the null direction X = d_y.
struct CorankDirection {
  bool infinite = false;
  double y = 0.0;

  static CorankDirection at_infinity() { return {true, 0.0}; }
  static CorankDirection finite(double y) { return {false, y}; }
};

struct CorankDirectionSet {
  bool all = false;
  bool double_root = false;
  std::vector<CorankDirection> directions;

  std::size_t finite_count() const {
    std::size_t n = 0;
    for (const auto& d : directions)
      if (!d.infinite) ++n;
    return n;
  }
};

// Directions where eta(y) and eta'(y) are collinear, resolved per
// degeneracy class of the curvature parabola.
CorankDirectionSet asymptotic_directions_corank(const SecondFundamentalForm& a,
                                                double tau = kTauDeg);

enum class SingularPointType { Elliptic, Hyperbolic, Parabolic, Inflection };

const char* to_string(SingularPointType t);

// Determined solely by the asymptotic-direction count 0 / 2 / 1 / infinity.
SingularPointType classify_point_corank(const SecondFundamentalForm& a,
                                        double tau = kTauDeg);

// Same degeneracy condition as on the regular side, applied to the corank
// coefficients; every normal direction qualifies when the parabola is a point.
NormalAngleSet binormal_directions_corank(const SecondFundamentalForm& a,
                                          double tau = kTauDeg);

}  // namespace curvloci
