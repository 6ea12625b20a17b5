#include "verify/claims.hpp"

#include "verify/oracles.hpp"

#include "halo/constructions.hpp"
#include "halo/errors.hpp"
#include "halo/layers.hpp"
#include "halo/mamu.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace halo::verify {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Collects named boolean checks; the first failure becomes the report detail.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
  }
  bool ok() const { return first_failure_.empty(); }
  std::size_t count() const { return count_; }

  ClaimReport report(Json witness = nullptr, std::string detail = {}) const {
    ClaimReport r;
    r.verdict = ok() ? Verdict::Pass : Verdict::Fail;
    r.witness = std::move(witness);
    r.detail = ok() ? std::move(detail) : "first failed check: " + first_failure_;
    if (!ok() && r.witness.is_null()) r.witness = {{"failed_check", first_failure_}};
    return r;
  }

 private:
  std::size_t count_ = 0;
  std::string first_failure_;
};

std::string text(const EpsRational& a) { return to_string(a); }

ClaimReport rho_closed_form(const ClaimOptions&) {
  const RhoPipelineReport r = rho_eta_pipeline();
  Checks c;
  c.expect(r.failed_stage.empty(), "pipeline stage " + r.failed_stage);
  c.expect(r.matches_closed_form, "computed state equals alpha 1 - beta F at eta = e");
  Json w = {{"computed_alpha", text(r.alpha)},
            {"computed_beta", text(r.beta)},
            {"closed_alpha", text(r.closed_alpha)},
            {"closed_beta", text(r.closed_beta)},
            {"mismatched_entries", r.mismatches.size()}};
  if (!r.mismatches.empty())
    w["first_mismatch"] = {r.mismatches.front().first, r.mismatches.front().second};
  if (r.reparametrization) w["matches_closed_form_at_eta"] = text(*r.reparametrization);
  ClaimReport rep = c.report(w);
  if (!c.ok() && r.reparametrization)
    rep.detail += "; computed state equals the closed form at eta = " + text(*r.reparametrization);
  return rep;
}

ClaimReport rho_checks(const ClaimOptions&) {
  const RhoPipelineReport r = rho_eta_pipeline();
  Checks c;
  c.expect(r.failed_stage.empty(), "pipeline stage " + r.failed_stage);
  c.expect(trace(r.rho) == EpsComplex(1), "tr(rho) = 1");
  c.expect(r.psd.psd(), "rho psd");
  c.expect(!r.npt.psd() && r.npt.witness.has_value(), "rho^{T_B} not psd");
  Json w;
  if (r.npt.witness) {
    const EpsMatrix pt = partial_transpose(r.rho, {3, 3});
    const EpsComplex v = sandwich(*r.npt.witness, pt, *r.npt.witness);
    c.expect(v.is_real() && v.re().sign() == Sign::negative, "NPT witness re-verified");
    w = {{"npt_witness", to_json(*r.npt.witness)}, {"npt_value", text(v.re())}};
  }
  c.expect(r.shadow_ppt.psd(), "shadow(rho)^{T_B} psd");
  return c.report(w);
}

ClaimReport perturbation_not_psd(const ClaimOptions&) {
  const ChoiMatrix cp = mu16_choi(3, 3);
  const auto [plain, pt] = statement2_check(cp);
  Checks c;
  const EpsMatrix shift = EpsMatrix::identity(9) * EpsComplex(EpsRational::eps());
  const EpsMatrix m1 = cp.matrix - shift;
  const EpsMatrix m2 = partial_transpose(cp.matrix, cp.dims) - shift;
  Json w = Json::object();
  for (const auto& [name, verdict, m] : {std::tuple{"C - e 1", &plain, &m1}, std::tuple{"C^{T_B} - e 1", &pt, &m2}}) {
    c.expect(!verdict->psd() && verdict->witness.has_value(), std::string(name) + " not psd");
    if (verdict->witness) {
      const EpsComplex v = sandwich(*verdict->witness, *m, *verdict->witness);
      c.expect(v.is_real() && v.re().sign() == Sign::negative, std::string(name) + " witness re-verified");
      w[name] = {{"witness", to_json(*verdict->witness)}, {"value", text(v.re())}};
    }
  }
  return c.report(w);
}

ClaimReport choi_properties(const ClaimOptions&) {
  const ChoiMatrix cp = mu16_choi(3, 3);
  const PPropertiesReport r = verify_P_properties(cp, mu16_separable_witness(3, 3));
  Checks c;
  c.expect(r.rank == 8 && r.deficient, "rank 8 (deficient)");
  c.expect(r.kernel.size() == 1, "one-dimensional kernel");
  Json w = {{"rank", r.rank}, {"p1", r.p1 == P1Status::Witnessed ? "witnessed" : "not witnessed"}};
  if (r.kernel.size() == 1) {
    const EpsVector& v = r.kernel.front();
    // |00> - |11> in zero-based labels
    bool shape = !v[0].is_zero() && v[4] == -v[0];
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != 0 && i != 4) shape = shape && v[i].is_zero();
    c.expect(shape, "kernel spanned by |00> - |11>");
    const std::size_t rr = rank(reshape(v, 3, 3));
    c.expect(rr == 2, "kernel vector has Schmidt rank 2");
    w["kernel"] = to_json(v);
    w["kernel_reshape_rank"] = rr;
  }
  c.expect(r.p3_holds && r.p3_certified, "no product vector in the kernel");
  c.expect(r.ppt.psd(), "C^{T_B} psd");
  c.expect(r.p1 == P1Status::Witnessed, "separable decomposition verified");
  return c.report(w);
}

ClaimReport mamu_reduction(const ClaimOptions& o) {
  Checks c;
  const std::size_t n_max = std::clamp<std::size_t>(o.n_max, 1, 3);
  Json w = Json::array();
  for (std::size_t k = 0; k < 5; ++k) {
    const std::uint64_t seed = restart_seed(o.seed, k);
    const MpoTensor t = random_mpo(9, 9, seed);
    const ReductionCheck r = verify_reduction(t, n_max, o.max_dim);
    c.expect(r.holds, "reduction identity for MPO seed " + std::to_string(seed) +
                          (r.failed_n ? " at n = " + std::to_string(*r.failed_n) : "") + " via " + r.failed_path);
    c.expect(r.dense_checked, "dense cross-check ran");
    w.push_back({{"seed", seed}, {"n_checked", r.n_checked}, {"holds", r.holds}, {"dense_checked", r.dense_checked}});
  }
  return c.report(w);
}

ClaimReport reduction_counterexample(const ClaimOptions& o) {
  const MapDecomposition p = counterexample_map(2);
  Checks c;
  const EpsMatrix out = apply_map(p, EpsMatrix::unit(4, 0, 0));
  c.expect(out == EpsMatrix::identity(4) * EpsComplex(-1), "P(|0><0|) = -1");
  c.expect(positive_map_search(p, o.budget).violation(), "positivity search finds the violation");

  const LoopResult loop = bounded_tsp_mamu(p, 6, o.max_dim);
  c.expect(!loop.violation, "no MaMu violation up to n = 6");
  Json diag = Json::array();
  for (std::size_t n = 1; n <= 6; ++n) {
    const MamuPower pw = apply_power_to_mamu(p, n, MamuMethod::Transfer, o.max_dim);
    const Rational expected = (n % 2 == 0 ? 1 : -1) + Rational(Integer(1) << static_cast<unsigned>(n));
    bool all = pw.diagonal_only;
    for (const auto& z : pw.diagonal) all = all && z == EpsComplex(expected);
    c.expect(all, "diagonal equals (-1)^n + 2^n at n = " + std::to_string(n));
    diag.push_back(halo::to_string(expected));
  }
  return c.report({{"witness_input", "|0><0|"}, {"witness_output", "-1"}, {"mamu_diagonal", diag}});
}

ClaimReport gamma_map_claim(const ClaimOptions& o) {
  const MapDecomposition g = gamma_map(2);
  const MapDecomposition tg = compose_with_transpose(g);
  Checks c;
  const PsdVerdict cp = is_cp(g);
  c.expect(!cp.psd(), "Choi matrix of gamma not psd");
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) {
      const EpsMatrix e = EpsMatrix::unit(2, k, l);
      c.expect(apply_map(tg, e) == apply_map(g, e), "theta o gamma = gamma on E_" + std::to_string(k) + std::to_string(l));
    }
  const BlockPositivityVerdict s = n_tsp_search(g, 2, o.budget, o.max_dim);
  c.expect(s.violation() && s.exact, "gamma^{(x)2} violation found and confirmed exactly");
  Json w = {{"search", search_report(s, o.budget)}};
  if (cp.value) w["choi_witness_value"] = text(*cp.value);
  return c.report(w);
}

ClaimReport star_convexity(const ClaimOptions& o) {
  const StarConvexityReport r =
      star_convexity_test(depolarizing_map(2), transposition_map(2), 2, 100, o.seed, o.max_dim);
  Checks c;
  c.expect(r.samples == 100, "100 inputs tested");
  c.expect(r.violations == 0, "all outputs psd");
  Json w = {{"samples", r.samples}, {"violations", r.violations}};
  if (r.violating_input) w["violating_input"] = to_json(*r.violating_input);
  return c.report(w);
}

ClaimReport block_positivity_margin(const ClaimOptions& o) {
  const ChoiMatrix cp = mu16_choi(3, 3);
  SearchBudget b = o.budget;
  b.restarts = std::max<std::size_t>(b.restarts, 1000);
  Checks c;
  Json w = Json::array();
  for (std::size_t n : {1, 2}) {
    const double eps = eps_bound(cp.matrix, cp.dims, n, b);
    c.expect(eps > 0, "positive perturbation bound at n = " + std::to_string(n));
    const EpsMatrix m = cp.matrix - EpsMatrix::identity(9) * EpsComplex(rational_from_double(eps));
    const BlockPositivityVerdict s = block_positive_search(m, cp.dims, b);
    c.expect(!s.violation(), "no violation at n = " + std::to_string(n));
    w.push_back({{"n", n}, {"eps_bound", eps}, {"search", search_report(s, b)}});
  }
  return c.report(w, "one-sided evidence");
}

ClaimReport real_eta(const ClaimOptions&) {
  const RhoPipelineReport inside = rho_eta_pipeline(EpsRational(Rational(1, 10)));
  const RhoPipelineReport zero = rho_eta_pipeline(EpsRational(0));
  Checks c;
  c.expect(inside.failed_stage.empty() && zero.failed_stage.empty(), "pipeline ran");
  c.expect(inside.psd.psd(), "rho(1/10) psd");
  c.expect(!inside.npt.psd(), "rho(1/10) NPT");
  c.expect(zero.npt.psd(), "rho(0) PPT");
  Json w = {{"alpha_1_10", text(inside.alpha)}, {"beta_1_10", text(inside.beta)}};
  if (inside.npt.value) w["npt_value_1_10"] = text(*inside.npt.value);
  return c.report(w);
}

ClaimReport field_order(const ClaimOptions& o) {
  Checks c;
  const EpsRational e = EpsRational::eps();
  std::mt19937_64 rng(o.seed);
  for (std::size_t k = 0; k < 500; ++k) {
    const EpsRational a = random_eps_rational(restart_seed(o.seed, 3 * k));
    const EpsRational b = random_eps_rational(restart_seed(o.seed, 3 * k + 1));
    const EpsRational d = random_eps_rational(restart_seed(o.seed, 3 * k + 2));
    const std::string at = " (sample " + std::to_string(k) + ")";

    c.expect((a + b) + d == a + (b + d), "additive associativity" + at);
    c.expect((a * b) * d == a * (b * d), "multiplicative associativity" + at);
    c.expect(a * (b + d) == a * b + a * d, "distributivity" + at);
    c.expect(a + b == b + a && a * b == b * a, "commutativity" + at);
    if (!a.is_zero()) c.expect(a * a.inverse() == EpsRational(1), "inverse" + at);

    c.expect((a < b) + (a == b) + (a > b) == 1, "trichotomy" + at);
    if (a < b) c.expect(a + d < b + d, "order compatible with addition" + at);
    if (a > 0 && b > 0) c.expect(a * b > 0, "order compatible with multiplication" + at);

    if (a.is_finite() && b.is_finite()) {
      c.expect(shadow(a + b) == shadow(a) + shadow(b), "shadow additive" + at);
      c.expect(shadow(a * b) == shadow(a) * shadow(b), "shadow multiplicative" + at);
    }

    const Rational q(1, std::uniform_int_distribution<long>(1, 1000000000L)(rng));
    const long p = std::uniform_int_distribution<long>(1, 4)(rng);
    EpsRational ep = e;
    for (long i = 1; i < p; ++i) ep *= e;
    c.expect(EpsRational(0) < ep && ep < EpsRational(q), "e^p infinitesimal" + at);

    // coefficients are small, so every positive root or pole lies above 1e-6
    const Rational t(1, 1000000);
    c.expect(sign_of(a.eval_at(t)) == a.sign(), "sign agrees with evaluation near 0" + at);
    c.expect((a.eval_at(1e-6) > 0) == (a.sign() == Sign::positive), "sign agrees with float evaluation" + at);
  }
  ClaimReport r = c.report({{"checks", c.count()}});
  return r;
}

ClaimReport psd_oracle(const ClaimOptions& o) {
  Checks c;
  std::size_t psd = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    const std::size_t dim = 1 + k % 4;
    const EpsMatrix h = random_hermitian(dim, restart_seed(o.seed, k));
    const bool pivot = psd_check(h).psd();
    c.expect(pivot == psd_by_principal_minors(h), "pivoting agrees with principal minors on sample " + std::to_string(k));
    psd += pivot;
  }
  return c.report({{"samples", 200}, {"psd", psd}, {"not_psd", 200 - psd}});
}

ClaimReport layers_suite(const ClaimOptions& o) {
  Checks c;
  const LayeredScalar inv = LayeredScalar::reciprocal(1);
  const ScalarClass ci = classify(inv);
  c.expect(ci.sign == Sign::positive && ci.magnitude == Magnitude::Infinitesimal, "(1/n) positive infinitesimal");
  for (long d : {10L, 1000L, 1000000L})
    c.expect(seq_less(inv, LayeredScalar::constant(Rational(1, d))).status == FilterStatus::HoldsOnCofinite,
             "(1/n) below 1/" + std::to_string(d));
  const LayeredScalar n = LayeredScalar::linear(1, 0);
  const ScalarClass cn = classify(n);
  c.expect(cn.sign == Sign::positive && cn.magnitude == Magnitude::Infinite, "(n) positive infinite");
  c.expect(seq_less(LayeredScalar::constant(1000000), n).status == FilterStatus::HoldsOnCofinite, "(n) above 10^6");

  const RingAxiomsReport ring = ring_order_axioms(200, o.seed);
  c.expect(ring.passed(), ring.passed() ? "" : "ring-order axiom: " + ring.failures.front());

  const InnerProductReport ip = inner_product_counterexample(Rational(1, 10), 10000);
  c.expect(ip.standard_value > Rational(98, 100), "standard value above 0.98");
  c.expect(ip.seq.status == FilterStatus::FailsOnCofinite, "quasi-inner sequence eventually negative");
  c.expect(ip.disagreement, "sign disagreement reported");

  const L2WitnessReport l2 = l2_tsp_witness(2, {2, 5}, o.budget);
  c.expect(l2.essential_all, "every layer neither CP nor coCP");
  c.expect(l2.tsp_evidence_all, "no m-tsp violation for n >= m");

  Json layers = Json::array();
  for (const auto& l : l2.layers) layers.push_back({{"n", l.n}, {"eps", l.eps_bound}, {"essential", l.essential}});
  return c.report({{"ring_checks", ring.checks},
                   {"standard_value", ip.standard_value.get_d()},
                   {"seq_verdict", to_string(ip.seq.status)},
                   {"l2_layers", layers}},
                  "m-tsp evidence is one-sided");
}

}  // namespace

const std::vector<Claim>& claims() {
  static const std::vector<Claim> all = {
      {"rho-closed-form", "twirled filtered state equals alpha 1 - beta F at eta = e", 5000, rho_closed_form},
      {"rho-checks", "rho has unit trace, is psd and NPT, and its shadow is PPT", 5000, rho_checks},
      {"perturbation-not-psd", "C - e 1 and C^{T_B} - e 1 are not psd", 2000, perturbation_not_psd},
      {"choi-properties", "rank-deficient PPT Choi matrix with no product vector in its kernel", 2000,
       choi_properties},
      {"mamu-reduction", "MPO diagonal equals the map power applied to the MaMu tensor", 180000, mamu_reduction},
      {"reduction-counterexample", "non-positive map whose MaMu values are all nonnegative", 60000,
       reduction_counterexample},
      {"gamma-map", "symmetrization map is not CP, theta o gamma = gamma, not 2-tsp", 60000, gamma_map_claim},
      {"star-convexity", "(Q + theta)^{(x)2} maps psd inputs to psd outputs", 120000, star_convexity},
      {"block-positivity-margin", "C - eps' 1 stays block positive for eps' below the level-n bound", 300000,
       block_positivity_margin},
      {"real-eta", "rational eta inside the window gives a PPT-violating state, eta = 0 gives PPT", 5000, real_eta},
      {"field-order", "Q(e) is an ordered field with e a positive infinitesimal", 30000, field_order},
      {"psd-oracle", "pivoting psd test agrees with principal minors", 120000, psd_oracle},
      {"layers", "sequence ordering, quasi-inner product failure and layered tsp witness", 300000, layers_suite},
  };
  return all;
}

ClaimReport run_claim(const Claim& c, const ClaimOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ClaimReport r;
  try {
    r = c.run(opts);
  } catch (const ResourceLimit& e) {
    r.verdict = Verdict::Inconclusive;
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.detail = std::string("error: ") + e.what();
    r.witness = {{"error", e.what()}};
  }
  r.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  r.id = c.id;
  r.anchor = c.anchor;
  r.limit_ms = c.limit_ms;
  if (r.verdict == Verdict::Pass && r.runtime_ms > r.limit_ms) {
    r.verdict = Verdict::Fail;
    r.detail = "took " + std::to_string(r.runtime_ms) + " ms, limit " + std::to_string(r.limit_ms) + " ms";
  }
  return r;
}

Json to_json(const ClaimReport& r) {
  Json j = {{"claim-id", r.id}, {"paper-anchor", r.anchor}, {"verdict", to_string(r.verdict)}};
  if (!r.witness.is_null()) j["witness"] = r.witness;
  j["runtime-ms"] = r.runtime_ms;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace halo::verify
