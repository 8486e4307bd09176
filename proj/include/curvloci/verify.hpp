#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvloci/projection.hpp"

namespace curvloci {

enum class PositionTag { Inside, On, Outside, Degenerate };

const char* to_string(PositionTag t);

// Position of the origin relative to the curvature ellipse by winding
// number: the closed curve eta(theta), theta in [0, pi), is sampled at 4096
// points; |winding| = 1 means inside, 0 outside; a refined minimum distance
// below 1e-7 * scale means on; a degenerate ellipse reports Degenerate.
PositionTag ellipse_position_oracle(const SecondFundamentalForm& a, double tau = kTauDeg);

struct OraclePosition {
  PositionTag tag = PositionTag::Degenerate;
  bool agreement = true;   // closed-form and scan agree
  std::string detail;
};

// Position of the origin relative to the curvature parabola, from the root
// count of det(eta, eta'): 0/1/2 roots map to inside/on/outside. Computed
// twice, by the closed-form quadratic and by a sign-change scan over a
// logarithmic grid; a disagreement is reported, never silently resolved.
OraclePosition parabola_position_oracle(const SecondFundamentalForm& a, double tau = kTauDeg);

enum class TheoremRow { I, II, III, IV, V };

const char* to_string(TheoremRow r);

// Joint second-order state of the surface at p and of its projection along
// v at the singular point, matched against the five correspondence rows.
struct CorrespondenceReport {
  SecondFundamentalForm alpha;  // regular side
  SecondFundamentalForm beta;   // corank side (of the projection along v)
  TangentDirection v;
  PointClassification ellipse_class;
  PositionTag ellipse_position = PositionTag::Degenerate;
  ParabolaDegeneracy parabola_class = ParabolaDegeneracy::Parabola;
  PositionTag parabola_position = PositionTag::Degenerate;
  bool parabola_line_through_origin = false;
  bool parabola_point_at_origin = false;
  bool v_asymptotic = false;
  TheoremRow row = TheoremRow::I;
  bool row_match = false;
  bool oracles_agree = true;
  bool count_preserved = false;
  bool binormals_equal = false;
  bool crosscap_criterion = false;  // v non-asymptotic <=> cross-cap 2-jet
  bool pass = false;                // row_match && oracles_agree
  std::vector<std::string> diagnostics;

  bool ok() const { return pass && count_preserved && binormals_equal && crosscap_criterion; }
};

// Computes both sides independently - the regular side from the adapted
// second fundamental form, the corank side from the projected
// parametrization - and matches them against the correspondence rows.
CorrespondenceReport check_correspondence(const MongeSurface4& s, Vec2 p, TangentDirection v,
                                          double tau = kTauDeg);

// Quadratic Monge surface whose adapted coefficients at the origin equal a.
MongeSurface4 quadratic_surface(const SecondFundamentalForm& a);

// Integer-coefficient samples on each classification stratum. Small integer
// entries keep every degeneracy test exact.
SecondFundamentalForm random_integer_sff(std::mt19937_64& rng, int max_abs = 5);
SecondFundamentalForm sample_elliptic(std::mt19937_64& rng);
SecondFundamentalForm sample_hyperbolic(std::mt19937_64& rng);
SecondFundamentalForm sample_semiumbilic(std::mt19937_64& rng);
SecondFundamentalForm sample_parabolic(std::mt19937_64& rng);
SecondFundamentalForm sample_inflection_real(std::mt19937_64& rng);
SecondFundamentalForm sample_inflection_imaginary(std::mt19937_64& rng);
SecondFundamentalForm sample_inflection_at(std::mt19937_64& rng);
SecondFundamentalForm sample_umbilic(std::mt19937_64& rng);

struct FuzzSummary {
  long samples = 0;
  long checks = 0;
  long failures = 0;  // reports with !ok()
  long row_mismatches = 0;
  long oracle_disagreements = 0;
  long count_mismatches = 0;
  long binormal_mismatches = 0;
  long crosscap_mismatches = 0;
  std::uint64_t seed = 0;
  std::vector<CorrespondenceReport> failure_samples;  // capped
};

// Draws n coefficient matrices (random integers mixed with dedicated
// stratum constructors), synthesizes quadratic surfaces and checks the
// correspondence along the axis/diagonal directions, extra random
// directions and each finite asymptotic direction.
FuzzSummary fuzz_correspondence(long n, std::uint64_t seed, double tau = kTauDeg);

std::string report_to_json(const CorrespondenceReport& r, int indent = -1);
std::string summary_to_json(const FuzzSummary& s, int indent = -1);

}  // namespace curvloci
