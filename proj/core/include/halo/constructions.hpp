#pragma once

#include "halo/choi.hpp"
#include "halo/positivity.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace halo {

/// C = (|00>+|11>)(<00|+<11|) + |01><01| + |10><10| + sum_{i>=2 or j>=2} |ij><ij|
/// on C^{d1} (x) C^{d2} (zero-based labels). Requires d1, d2 > 2.
ChoiMatrix mu16_choi(std::size_t d1, std::size_t d2);

/// Decomposition of mu16_choi into psd product terms: phase-averaged product
/// vectors on the {0,1} x {0,1} block plus the remaining basis projectors.
MapDecomposition mu16_separable_witness(std::size_t d1, std::size_t d2);

enum class P1Status { Witnessed, AssertedPPTConsistent, Failed };

struct PPropertiesReport {
  P1Status p1 = P1Status::Failed;
  PsdVerdict ppt;  // psd_check of C^{T_B}

  std::size_t rank = 0;
  bool deficient = false;

  std::vector<EpsVector> kernel;
  bool p3_holds = false;
  std::optional<EpsVector> offending_vector;
  /// False when the product-vector test on a kernel of dimension > 1 was a
  /// candidate enumeration that found nothing (evidence, not a proof).
  bool p3_certified = true;
};

PPropertiesReport verify_P_properties(const ChoiMatrix& c,
                                      const std::optional<MapDecomposition>& witness = std::nullopt);

/// C - eta * 1; eta defaults to the infinitesimal e.
ChoiMatrix perturbed_choi(const ChoiMatrix& c, const EpsRational& eta = EpsRational::eps());

/// psd verdicts of C - e*1 and C^{T_B} - e*1.
std::pair<PsdVerdict, PsdVerdict> statement2_check(const ChoiMatrix& c);

/// Integer matrix together with the rational square of its scalar prefactor,
/// so that (s A)^dagger X (s A) = square_scale * A^dagger X A stays rational.
struct ScaledMatrix {
  EpsMatrix matrix;
  Rational square_scale{1};
};

/// (1/sqrt 2) [[0,1,0],[-1,0,0],[0,0,0]].
ScaledMatrix filter_matrix();
/// square_scale * (A^dagger (x) 1) C (A (x) 1).
EpsMatrix local_filter(const EpsMatrix& c, BipartiteDims dims, const ScaledMatrix& a);

/// <Omega| M |Omega> for the normalized maximally entangled vector on d x d.
EpsComplex omega_expectation(const EpsMatrix& m, std::size_t d);

/// Coefficients of the U-twirl a 1 + b F.
struct TwirlCoefficients {
  EpsComplex a;
  EpsComplex b;
};
TwirlCoefficients u_twirl_coefficients(const EpsMatrix& d_matrix, std::size_t d);
/// a 1 + b F with a = (d tr D - tr DF) / (d(d^2-1)), b = (d tr DF - tr D) / (d(d^2-1)).
EpsMatrix u_twirl(const EpsMatrix& d_matrix, std::size_t d = 3);

/// alpha 1 - beta F on C^3 (x) C^3.
EpsMatrix werner_form(const EpsRational& alpha, const EpsRational& beta);
/// alpha = (1/8)(1 + eta/(6(1-eta))), beta = (1/8)(1/3 + eta/(2(1-eta))).
std::pair<EpsRational, EpsRational> closed_form_coefficients(const EpsRational& eta);
EpsMatrix closed_form_rho(const EpsRational& eta);

struct Interval {
  std::optional<Rational> lo;  // nullopt: unbounded
  std::optional<Rational> hi;
  bool lo_closed = false;
  bool hi_closed = false;
};
std::string to_string(const Interval& i);

/// Where, as a function of real eta, the state alpha(eta) 1 - beta(eta) F is psd / NPT.
struct ThresholdAnalysis {
  std::vector<Interval> psd;
  std::vector<Interval> npt;
  /// All critical points were rational, so the intervals are exact.
  bool complete = true;
};
ThresholdAnalysis analyze_thresholds(const EpsRational& alpha, const EpsRational& beta);

struct RhoPipelineReport {
  EpsRational eta;
  EpsMatrix D;
  EpsComplex omega_value;  // <Omega| D^{T_B} |Omega>
  EpsMatrix twirled;
  EpsComplex scale;        // trace before normalization
  EpsMatrix rho;
  EpsMatrix closed_form;
  EpsRational alpha;       // rho = alpha 1 - beta F
  EpsRational beta;
  EpsRational closed_alpha;
  EpsRational closed_beta;
  bool matches_closed_form = false;
  std::vector<std::pair<std::size_t, std::size_t>> mismatches;
  /// eta' with closed_form_rho(eta') == rho, when one exists.
  std::optional<EpsRational> reparametrization;
  bool trace_one = false;
  PsdVerdict psd;
  PsdVerdict npt;         // on rho^{T_B}; NotPSD means NPT
  PsdVerdict shadow_ppt;  // on shadow(rho)^{T_B}
  std::string failed_stage;  // empty when every stage ran
};

/// mu16_choi(3,3) -> C - eta 1 -> local filter -> U-twirl -> trace normalization,
/// compared against closed_form_rho(eta).
RhoPipelineReport rho_eta_pipeline(const EpsRational& eta = EpsRational::eps());

/// A -> (A + A^T)/2.
MapDecomposition gamma_map(std::size_t d);

struct StarConvexityReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation;
  std::optional<EpsMatrix> violating_input;
};

/// Applies (Q+T)^{(x)n} to seeded rational psd inputs and checks the outputs exactly.
/// Throws NotEBWitnessed unless every term of Q is psd.
StarConvexityReport star_convexity_test(const MapDecomposition& q, const MapDecomposition& t,
                                        std::size_t n, std::size_t samples, std::uint64_t seed,
                                        std::size_t max_dim = kDefaultMaxDim);

/// Seeded random rational psd matrix G G^dagger of size dim.
EpsMatrix random_rational_psd(std::size_t dim, std::uint64_t seed);

/// B - eps Q.
MapDecomposition boundary_form(const MapDecomposition& b, const MapDecomposition& q,
                               const EpsRational& eps);

/// One term: A = 1_{d^2}, B = diag(-1, 0, ..., 0, 2).
MapDecomposition counterexample_map(std::size_t d);

}  // namespace halo
