#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace curvloci {

// Relative vanishing threshold for all degeneracy tests. Every test scales
// it by the appropriate power of the coefficient magnitude.
inline constexpr double kTauDeg = 1e-9;
// Gradient threshold for Monge / corank-1 normal-form checks.
inline constexpr double kTauFrame = 1e-9;
// Tests landing within kNearFactor of a threshold are decided on the
// generic side and flagged near-degenerate.
inline constexpr double kNearFactor = 10.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0.0 ? Vec2{a.x / n, a.y / n} : Vec2{0.0, 0.0};
}

// Projective direction [a : b] in the tangent plane, normalized so that
// max(|a|,|b|) = 1 and the first non-zero component is positive.
struct TangentDirection {
  double a = 1.0;
  double b = 0.0;

  TangentDirection() = default;
  TangentDirection(double a_, double b_) : a(a_), b(b_) { normalize(); }

  Vec2 unit() const {
    double n = std::hypot(a, b);
    return {a / n, b / n};
  }

  bool approx_equal(const TangentDirection& other, double tol = 1e-9) const {
    return std::fabs(a * other.b - b * other.a) <= tol;
  }

 private:
  void normalize() {
    double m = std::max(std::fabs(a), std::fabs(b));
    if (m > 0.0) {
      a /= m;
      b /= m;
    } else {
      a = 1.0;
      b = 0.0;
    }
    if (a < 0.0 || (a == 0.0 && b < 0.0)) {
      a = -a;
      b = -b;
    }
  }
};

// a*x^2 + 2b*xy + c*y^2.
struct QuadraticForm2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

inline double form_det(const QuadraticForm2& q) { return q.a * q.c - q.b * q.b; }
inline double form_scale(const QuadraticForm2& q) {
  return std::max({std::fabs(q.a), std::fabs(q.b), std::fabs(q.c)});
}
// Rank of the symmetric matrix [[a,b],[b,c]] with relative tolerance tau.
int form_rank(const QuadraticForm2& q, double tau = kTauDeg);
inline bool form_degenerate(const QuadraticForm2& q, double tau = kTauDeg) {
  return form_rank(q, tau) < 2;
}

// Real projective roots of A u^2 + B uv + C v^2 = 0.
struct BinaryQuadraticRoots {
  bool all = false;          // the form vanishes identically
  bool double_root = false;  // count == 1 came from a vanishing discriminant
  bool near_degenerate = false;
  int count = 0;             // distinct real roots, 0..2
  std::array<Vec2, 2> roots{};  // homogeneous [u : v], max-component normalized
};

// coef_tol: absolute threshold under which a coefficient counts as zero.
// disc_tol: absolute threshold for the discriminant B^2 - 4AC.
BinaryQuadraticRoots solve_binary_quadratic(double A, double B, double C,
                                            double coef_tol, double disc_tol);

// Angle folded into [0, pi).
double normalize_angle_mod_pi(double phi);
// Distance between angles mod pi.
double angle_dist_mod_pi(double a, double b);
// Same cardinality and Hausdorff distance below tol (angles mod pi).
bool angle_sets_equal(const std::vector<double>& s1, const std::vector<double>& s2,
                      double tol);

}  // namespace curvloci
