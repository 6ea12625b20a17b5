#include "halo/constructions.hpp"
#include "halo/errors.hpp"

#include <gtest/gtest.h>

using namespace halo;

namespace {

const EpsRational e = EpsRational::eps();

EpsVector basis(std::size_t dim, std::size_t i) {
  EpsVector v(dim);
  v[i] = 1;
  return v;
}

bool inside(const Interval& i, const Rational& x) {
  if (i.lo && (i.lo_closed ? x < *i.lo : x <= *i.lo)) return false;
  if (i.hi && (i.hi_closed ? x > *i.hi : x >= *i.hi)) return false;
  return true;
}

bool inside(const std::vector<Interval>& set, const Rational& x) {
  for (const auto& i : set)
    if (inside(i, x)) return true;
  return false;
}

}  // namespace

TEST(Mu16, Structure) {
  const ChoiMatrix c = mu16_choi(3, 3);
  EXPECT_EQ(c.matrix(0, 4), EpsComplex(1));  // |00> , |11>
  EXPECT_EQ(trace(c.matrix), EpsComplex(9));
  EXPECT_TRUE(is_hermitian(c.matrix));
  EXPECT_EQ(rank(c.matrix), 8u);
  const auto ker = kernel_basis(c.matrix);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_FALSE(is_product_vector(ker[0], c.dims));
  EXPECT_THROW(mu16_choi(1, 3), DimensionTooSmall);
  EXPECT_THROW(mu16_separable_witness(2, 3), DimensionTooSmall);
}

TEST(Mu16, SeparableWitnessSumsToChoi) {
  for (auto [d1, d2] : {std::pair<std::size_t, std::size_t>{3, 3}, {3, 4}, {4, 3}}) {
    const MapDecomposition w = mu16_separable_witness(d1, d2);
    EXPECT_EQ(choi_from_decomposition(w).matrix, mu16_choi(d1, d2).matrix);
    EXPECT_EQ(eb_witness_check(w), EbStatus::Witnessed);
  }
}

TEST(Properties, Mu16) {
  const ChoiMatrix c = mu16_choi(3, 3);
  const PPropertiesReport r = verify_P_properties(c);
  EXPECT_EQ(r.p1, P1Status::AssertedPPTConsistent);
  EXPECT_TRUE(r.ppt.psd());
  EXPECT_EQ(r.rank, 8u);
  EXPECT_TRUE(r.deficient);
  EXPECT_TRUE(r.p3_holds);
  EXPECT_TRUE(r.p3_certified);
  EXPECT_EQ(verify_P_properties(c, mu16_separable_witness(3, 3)).p1, P1Status::Witnessed);
}

TEST(Properties, ContrastCases) {
  const ChoiMatrix one{EpsMatrix::identity(9), {3, 3}};
  EXPECT_FALSE(verify_P_properties(one).deficient);

  const ChoiMatrix omega{max_ent_projector(3), {3, 3}};
  const PPropertiesReport r = verify_P_properties(omega);
  EXPECT_TRUE(r.deficient);
  EXPECT_FALSE(r.p3_holds);
  ASSERT_TRUE(r.offending_vector);
  EXPECT_TRUE(is_product_vector(*r.offending_vector, {3, 3}));
  EXPECT_TRUE(is_zero_vector(omega.matrix * *r.offending_vector));
}

TEST(Perturbation, EntriesAndVerdicts) {
  const ChoiMatrix c = mu16_choi(3, 3);
  const ChoiMatrix p = perturbed_choi(c);
  EXPECT_EQ(p.matrix(1, 1), EpsComplex(1 - e));  // |01>
  EXPECT_EQ(shadow(p.matrix), c.matrix);
  EXPECT_EQ(trace(p.matrix), EpsComplex(9 - 9 * e));

  const auto [first, second] = statement2_check(c);
  ASSERT_FALSE(first.psd());
  ASSERT_FALSE(second.psd());
  EXPECT_EQ(first.value->sign(), Sign::negative);
  EXPECT_EQ(second.value->sign(), Sign::negative);
  // the kernel vector |00> - |11> gives -2e
  EpsVector k = basis(9, 0);
  k[4] = -1;
  EXPECT_EQ(sandwich(k, p.matrix, k), EpsComplex(-2 * e));

  EXPECT_TRUE(psd_check(EpsMatrix::identity(9) - EpsMatrix::identity(9) * EpsComplex(e)).psd());
}

TEST(Filter, Matrix) {
  const ScaledMatrix a = filter_matrix();
  const EpsMatrix ata = dagger(a.matrix) * a.matrix * EpsComplex(a.square_scale);
  EXPECT_EQ(ata, EpsMatrix::diagonal({EpsComplex(Rational(1, 2)), EpsComplex(Rational(1, 2)), EpsComplex(0)}));
}

TEST(Twirl, FixedPoints) {
  EXPECT_EQ(u_twirl(EpsMatrix::identity(9)), EpsMatrix::identity(9));
  EXPECT_EQ(u_twirl(flip_operator(3)), flip_operator(3));
}

// a 1 + b F is determined by tr(T) and tr(TF); solve the 2x2 trace system
// d^2 a + d b = tr D, d a + d^2 b = tr DF directly.
TEST(Twirl, MatchesTraceSystem) {
  const std::size_t d = 3;
  const EpsComplex dd(Rational(static_cast<long>(d)));
  const ChoiMatrix c = mu16_choi(3, 3);
  const EpsMatrix dm = local_filter(perturbed_choi(c).matrix, c.dims, filter_matrix());
  const EpsComplex t1 = trace(dm), tf = trace(dm * flip_operator(d));
  const EpsComplex det = dd * dd * dd * dd - dd * dd;
  const EpsComplex a = (t1 * dd * dd - tf * dd) / det;
  const EpsComplex b = (tf * dd * dd - t1 * dd) / det;
  const TwirlCoefficients k = u_twirl_coefficients(dm, d);
  EXPECT_EQ(k.a, a);
  EXPECT_EQ(k.b, b);
  EXPECT_EQ(u_twirl(dm), EpsMatrix::identity(9) * a + flip_operator(3) * b);
  EXPECT_EQ(shadow(u_twirl(dm)), u_twirl(shadow(dm)));
}

TEST(Pipeline, Values) {
  const RhoPipelineReport r = rho_eta_pipeline();
  EXPECT_TRUE(r.failed_stage.empty());
  EXPECT_EQ(r.scale, EpsComplex(3 - 3 * e));
  EXPECT_EQ(r.omega_value, EpsComplex(-e / 3));
  EXPECT_TRUE(r.trace_one);
  EXPECT_TRUE(r.psd.psd());
  EXPECT_FALSE(r.npt.psd());
  EXPECT_TRUE(r.shadow_ppt.psd());
  EXPECT_GT(r.alpha - r.beta, 0);
  EXPECT_GT(r.alpha, 0);
  EXPECT_EQ(r.rho, werner_form(r.alpha, r.beta));
  // closed form at 2e/(3-e), derived by hand
  EXPECT_EQ(r.alpha, (9 - 8 * e) / (72 - 72 * e));
  EXPECT_EQ(r.beta, 1 / (24 - 24 * e));
}

TEST(Pipeline, ClosedFormAndReparametrization) {
  const auto [a, b] = closed_form_coefficients(e);
  EXPECT_EQ(to_string(a), "(6-5e)/(48-48e)");
  EXPECT_EQ(to_string(b), "(2+e)/(48-48e)");
  EXPECT_EQ(a.shadow(), Rational(1, 8));
  EXPECT_EQ(b.eval_at(Rational(0)), Rational(1, 24));
  EXPECT_EQ(trace(closed_form_rho(e)), EpsComplex(1));

  const RhoPipelineReport r = rho_eta_pipeline();
  EXPECT_FALSE(r.matches_closed_form);
  ASSERT_TRUE(r.reparametrization);
  EXPECT_EQ(*r.reparametrization, 2 * e / (3 - e));
  EXPECT_EQ(closed_form_rho(*r.reparametrization), r.rho);
}

TEST(Pipeline, RealParameters) {
  const RhoPipelineReport at_tenth = rho_eta_pipeline(EpsRational(Rational(1, 10)));
  EXPECT_TRUE(at_tenth.psd.psd());
  EXPECT_FALSE(at_tenth.npt.psd());
  const RhoPipelineReport at_zero = rho_eta_pipeline(EpsRational());
  EXPECT_TRUE(at_zero.npt.psd());
}

// Threshold intervals against exact psd checks of the state at sampled real parameters.
TEST(Thresholds, AgreeWithSampledPsdChecks) {
  const auto closed = closed_form_coefficients(e);
  const ThresholdAnalysis t = analyze_thresholds(closed.first, closed.second);
  EXPECT_TRUE(t.complete);
  for (int k = -30; k <= 60; ++k) {
    Rational eta(k, 20);
    eta.canonicalize();
    if (eta == 1) continue;
    const EpsMatrix rho = closed_form_rho(EpsRational(eta));
    EXPECT_EQ(psd_check(rho).psd(), inside(t.psd, eta)) << eta.get_str();
    EXPECT_EQ(!psd_check(partial_transpose(rho, {3, 3})).psd(), inside(t.npt, eta)) << eta.get_str();
  }
  EXPECT_TRUE(inside(t.psd, Rational(2, 3)));
  EXPECT_FALSE(inside(t.psd, Rational(7, 10)));
  EXPECT_TRUE(inside(t.npt, Rational(6, 5) - Rational(1, 100)));
  EXPECT_FALSE(inside(t.npt, Rational(6, 5)));
}

TEST(Gamma, Properties) {
  const MapDecomposition g = gamma_map(2);
  EXPECT_FALSE(is_cp(g).psd());
  const EpsMatrix x = EpsMatrix::unit(2, 0, 1) + EpsMatrix::unit(2, 1, 1) * EpsComplex(e);
  EXPECT_EQ(apply_map(g, x), apply_map(g, transpose(x)));
  EXPECT_EQ(apply_map(g, x), (x + transpose(x)) * EpsComplex(Rational(1, 2)));
}

TEST(StarConvexity, Instances) {
  const MapDecomposition q = depolarizing_map(2);
  EXPECT_EQ(star_convexity_test(q, transposition_map(2), 2, 40, 3).violations, 0u);
  EXPECT_EQ(star_convexity_test(q, identity_map(2), 2, 40, 3).violations, 0u);
  EXPECT_THROW(star_convexity_test(identity_map(2), q, 2, 5, 3), NotEBWitnessed);
  EXPECT_TRUE(psd_check(random_rational_psd(4, 9)).psd());
}

TEST(BoundaryForm, Relations) {
  const MapDecomposition b = decomposition_from_choi(mu16_choi(3, 3));
  const MapDecomposition q = depolarizing_map(3);
  // Q has Choi 1/3, so B - e Q has Choi C - (e/3) 1
  EXPECT_EQ(choi_from_decomposition(boundary_form(b, q, e)).matrix,
            perturbed_choi(mu16_choi(3, 3), e / 3).matrix);
  EXPECT_EQ(choi_from_decomposition(boundary_form(b, q, EpsRational())).matrix, mu16_choi(3, 3).matrix);
}

TEST(Counterexample, Values) {
  const MapDecomposition p = counterexample_map(2);
  EXPECT_EQ(apply_map(p, EpsMatrix::unit(4, 0, 0)), EpsMatrix::identity(4) * EpsComplex(-1));
  const ChoiMatrix c = choi_from_decomposition(p);
  EXPECT_EQ(c.matrix, kron(EpsMatrix::identity(4), EpsMatrix::diagonal({EpsComplex(-1), EpsComplex(0), EpsComplex(0), EpsComplex(2)})) * EpsComplex(Rational(1, 4)));
}
