#include "halo/constructions.hpp"

#include <algorithm>
#include <random>

namespace halo {

namespace {

EpsComplex i_power(std::size_t k) {
  switch (k % 4) {
    case 0: return EpsComplex(1);
    case 1: return EpsComplex::i();
    case 2: return EpsComplex(-1);
    default: return -EpsComplex::i();
  }
}

EpsComplex rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return EpsComplex(r);
}

// Searches for a product vector a (x) b in ker C with a drawn from a fixed
// candidate list and b solved exactly from the linear system C (a (x) b) = 0.
std::optional<EpsVector> find_kernel_product_vector(const EpsMatrix& c, BipartiteDims dims) {
  std::vector<EpsVector> candidates;
  for (std::size_t i = 0; i < dims.dA; ++i) candidates.push_back(basis_vector(dims.dA, i));
  for (std::size_t i = 0; i < dims.dA; ++i)
    for (std::size_t j = i + 1; j < dims.dA; ++j)
      for (const EpsComplex& phase : {EpsComplex(1), EpsComplex(-1), EpsComplex::i(), -EpsComplex::i()}) {
        EpsVector a = basis_vector(dims.dA, i);
        a[j] = phase;
        candidates.push_back(std::move(a));
      }
  for (const auto& a : candidates) {
    // Column l of M is C (a (x) e_l).
    EpsMatrix m(c.rows(), dims.dB);
    for (std::size_t l = 0; l < dims.dB; ++l) {
      const EpsVector col = c * kron(a, basis_vector(dims.dB, l));
      for (std::size_t r = 0; r < c.rows(); ++r) m(r, l) = col[r];
    }
    const auto ker = kernel_basis(m);
    if (ker.empty()) continue;
    EpsVector v = kron(a, ker.front());
    if (is_zero_vector(c * v)) return v;
  }
  return std::nullopt;
}

}  // namespace

ChoiMatrix mu16_choi(std::size_t d1, std::size_t d2) {
  if (d1 <= 2 || d2 <= 2) throw DimensionTooSmall("mu16_choi needs d1, d2 > 2");
  EpsMatrix c(d1 * d2, d1 * d2);
  auto idx = [d2](std::size_t i, std::size_t j) { return i * d2 + j; };
  for (auto r : {idx(0, 0), idx(1, 1)})
    for (auto s : {idx(0, 0), idx(1, 1)}) c(r, s) = EpsComplex(1);
  c(idx(0, 1), idx(0, 1)) = EpsComplex(1);
  c(idx(1, 0), idx(1, 0)) = EpsComplex(1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      if (i >= 2 || j >= 2) c(idx(i, j), idx(i, j)) = EpsComplex(1);
  return {std::move(c), {d1, d2}};
}

MapDecomposition mu16_separable_witness(std::size_t d1, std::size_t d2) {
  if (d1 <= 2 || d2 <= 2) throw DimensionTooSmall("mu16_separable_witness needs d1, d2 > 2");
  MapDecomposition p{d2, d1, {}};
  const EpsComplex quarter_din = rational(static_cast<long>(d2), 4);
  for (std::size_t k = 0; k < 4; ++k) {
    EpsVector a(d1), b(d2);
    a[0] = EpsComplex(1);
    a[1] = i_power(k);
    b[0] = EpsComplex(1);
    b[1] = i_power(3 * k);  // (-i)^k
    p.terms.push_back({EpsMatrix::outer(a, a), EpsMatrix::outer(b, b) * quarter_din});
  }
  const EpsComplex din = rational(static_cast<long>(d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      if (i >= 2 || j >= 2) p.terms.push_back({EpsMatrix::unit(d1, i, i), EpsMatrix::unit(d2, j, j) * din});
  return p;
}

PPropertiesReport verify_P_properties(const ChoiMatrix& c, const std::optional<MapDecomposition>& witness) {
  if (!is_hermitian(c.matrix)) throw NotHermitian("Choi matrix");
  PPropertiesReport r;
  r.rank = rank(c.matrix);
  r.deficient = r.rank < c.dims.total();

  r.kernel = kernel_basis(c.matrix);
  if (r.kernel.empty()) {
    r.p3_holds = true;
  } else if (r.kernel.size() == 1) {
    r.p3_holds = !is_product_vector(r.kernel.front(), c.dims);
    if (!r.p3_holds) r.offending_vector = r.kernel.front();
  } else {
    r.offending_vector = find_kernel_product_vector(c.matrix, c.dims);
    r.p3_holds = !r.offending_vector;
    r.p3_certified = r.offending_vector.has_value();
  }

  r.ppt = psd_check(partial_transpose(c.matrix, c.dims));
  if (!r.ppt.psd()) {
    r.p1 = P1Status::Failed;
  } else if (witness && witness->d_out == c.dims.dA && witness->d_in == c.dims.dB &&
             eb_witness_check(*witness) == EbStatus::Witnessed &&
             choi_from_decomposition(*witness).matrix == c.matrix) {
    r.p1 = P1Status::Witnessed;
  } else {
    r.p1 = P1Status::AssertedPPTConsistent;
  }
  return r;
}

ChoiMatrix perturbed_choi(const ChoiMatrix& c, const EpsRational& eta) {
  ChoiMatrix out = c;
  for (std::size_t i = 0; i < out.matrix.rows(); ++i) out.matrix(i, i) -= EpsComplex(eta);
  return out;
}

std::pair<PsdVerdict, PsdVerdict> statement2_check(const ChoiMatrix& c) {
  const ChoiMatrix pe = perturbed_choi(c);
  const ChoiMatrix pt{partial_transpose(c.matrix, c.dims), c.dims};
  return {psd_check(pe.matrix), psd_check(perturbed_choi(pt).matrix)};
}

ScaledMatrix filter_matrix() {
  return {EpsMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, Rational(1, 2)};
}

EpsMatrix local_filter(const EpsMatrix& c, BipartiteDims dims, const ScaledMatrix& a) {
  if (c.rows() != dims.total() || c.cols() != dims.total() || a.matrix.rows() != dims.dA ||
      a.matrix.cols() != dims.dA)
    throw DimensionMismatch("local filter");
  const EpsMatrix one = EpsMatrix::identity(dims.dB);
  EpsMatrix d = kron(dagger(a.matrix), one) * c * kron(a.matrix, one);
  d *= EpsComplex(a.square_scale);
  return d;
}

EpsComplex omega_expectation(const EpsMatrix& m, std::size_t d) {
  if (m.rows() != d * d || m.cols() != d * d) throw DimensionMismatch("omega expectation");
  EpsComplex acc;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) acc += m(i * d + i, j * d + j);
  return acc * rational(1, static_cast<long>(d));
}

TwirlCoefficients u_twirl_coefficients(const EpsMatrix& dm, std::size_t d) {
  if (dm.rows() != d * d || dm.cols() != d * d) throw DimensionMismatch("U-twirl input");
  const EpsComplex tr = trace(dm);
  const EpsComplex trf = trace(dm * flip_operator(d));
  const long dd = static_cast<long>(d);
  const EpsComplex denom = rational(dd * (dd * dd - 1));
  const EpsComplex dc = rational(dd);
  return {(dc * tr - trf) / denom, (dc * trf - tr) / denom};
}

EpsMatrix u_twirl(const EpsMatrix& dm, std::size_t d) {
  const auto [a, b] = u_twirl_coefficients(dm, d);
  return EpsMatrix::identity(d * d) * a + flip_operator(d) * b;
}

EpsMatrix werner_form(const EpsRational& alpha, const EpsRational& beta) {
  return EpsMatrix::identity(9) * EpsComplex(alpha) - flip_operator(3) * EpsComplex(beta);
}

std::pair<EpsRational, EpsRational> closed_form_coefficients(const EpsRational& eta) {
  const EpsRational one(1);
  const EpsRational x = eta / (one - eta);
  const EpsRational eighth(Rational(1, 8));
  return {eighth * (one + x / EpsRational(6)), eighth * (EpsRational(Rational(1, 3)) + x / EpsRational(2))};
}

EpsMatrix closed_form_rho(const EpsRational& eta) {
  const auto [alpha, beta] = closed_form_coefficients(eta);
  return werner_form(alpha, beta);
}

std::string to_string(const Interval& i) {
  std::string s = i.lo ? (i.lo_closed ? "[" : "(") + to_string(*i.lo) : "(-inf";
  s += ", ";
  s += i.hi ? to_string(*i.hi) + (i.hi_closed ? "]" : ")") : "inf)";
  return s;
}

ThresholdAnalysis analyze_thresholds(const EpsRational& alpha, const EpsRational& beta) {
  ThresholdAnalysis out;
  std::vector<Rational> critical;
  const EpsRational three(3);
  for (const EpsRational& f : {alpha - beta, alpha + beta, alpha, alpha - three * beta})
    for (const EpsPolynomial* p : {&f.num(), &f.den()}) {
      const auto roots = rational_roots(*p);
      out.complete = out.complete && roots.complete;
      critical.insert(critical.end(), roots.roots.begin(), roots.roots.end());
    }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

  struct Atom {
    std::optional<Rational> lo, hi;  // open interval (lo, hi), or a point when lo == hi
    bool point = false;
    bool psd = false;
    bool npt = false;
  };
  std::vector<Atom> atoms;
  auto open_atom = [](std::optional<Rational> lo, std::optional<Rational> hi) {
    return Atom{std::move(lo), std::move(hi), false, false, false};
  };
  if (critical.empty()) {
    atoms.push_back(open_atom(std::nullopt, std::nullopt));
  } else {
    atoms.push_back(open_atom(std::nullopt, critical.front()));
    for (std::size_t k = 0; k < critical.size(); ++k) {
      atoms.push_back(Atom{critical[k], critical[k], true, false, false});
      atoms.push_back(open_atom(critical[k], k + 1 < critical.size()
                                                 ? std::optional<Rational>(critical[k + 1])
                                                 : std::nullopt));
    }
  }
  for (auto& a : atoms) {
    Rational t;
    if (a.point) t = *a.lo;
    else if (a.lo && a.hi) t = (*a.lo + *a.hi) / 2;
    else if (a.lo) t = *a.lo + 1;
    else if (a.hi) t = *a.hi - 1;
    else t = 0;
    if (alpha.den().eval(t) == 0 || beta.den().eval(t) == 0) continue;  // pole
    const EpsMatrix rho = werner_form(EpsRational(alpha.eval_at(t)), EpsRational(beta.eval_at(t)));
    a.psd = psd_check(rho).psd();
    a.npt = !psd_check(partial_transpose(rho, {3, 3})).psd();
  }
  auto collect = [&atoms](bool Atom::*flag) {
    std::vector<Interval> result;
    std::optional<Interval> cur;
    const Atom* last = nullptr;
    auto close = [&]() {
      if (!cur) return;
      cur->hi = last->hi;
      cur->hi_closed = last->point;
      result.push_back(*cur);
      cur.reset();
    };
    for (const auto& a : atoms) {
      if (!(a.*flag)) {
        close();
        continue;
      }
      if (!cur) cur = Interval{a.lo, std::nullopt, a.point, false};
      last = &a;
    }
    close();
    return result;
  };
  out.psd = collect(&Atom::psd);
  out.npt = collect(&Atom::npt);
  return out;
}

RhoPipelineReport rho_eta_pipeline(const EpsRational& eta) {
  RhoPipelineReport r;
  r.eta = eta;
  std::string stage = "construct";
  try {
    const ChoiMatrix c = perturbed_choi(mu16_choi(3, 3), eta);
    stage = "filter";
    r.D = local_filter(c.matrix, c.dims, filter_matrix());
    r.omega_value = omega_expectation(partial_transpose(r.D, {3, 3}), 3);
    stage = "twirl";
    r.twirled = u_twirl(r.D, 3);
    stage = "normalize";
    r.scale = trace(r.twirled);
    r.rho = r.twirled * r.scale.inverse();
    r.trace_one = trace(r.rho) == EpsComplex(1);
    // rho = alpha 1 - beta F: beta from the |01>,|10> entry, alpha - beta on |00>.
    r.beta = -r.rho(1, 3).re();
    r.alpha = r.rho(0, 0).re() + r.beta;

    stage = "closed form";
    std::tie(r.closed_alpha, r.closed_beta) = closed_form_coefficients(eta);
    r.closed_form = werner_form(r.closed_alpha, r.closed_beta);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j)
        if (!(r.rho(i, j) == r.closed_form(i, j))) r.mismatches.emplace_back(i, j);
    r.matches_closed_form = r.mismatches.empty();
    if (!r.alpha.is_zero()) {
      // Solves beta(eta')/alpha(eta') = beta/alpha for the closed form: eta' = (6q-2)/(1+5q).
      const EpsRational q = r.beta / r.alpha;
      const EpsRational den = EpsRational(1) + EpsRational(5) * q;
      if (!den.is_zero()) {
        const EpsRational eta2 = (EpsRational(6) * q - EpsRational(2)) / den;
        if (!(eta2 == EpsRational(1)) && closed_form_rho(eta2) == r.rho) r.reparametrization = eta2;
      }
    }

    stage = "psd";
    r.psd = psd_check(r.rho);
    stage = "partial transpose";
    r.npt = psd_check(partial_transpose(r.rho, {3, 3}));
    stage = "shadow";
    r.shadow_ppt = psd_check(partial_transpose(shadow(r.rho), {3, 3}));
  } catch (const Error& e) {
    r.failed_stage = stage + ": " + e.what();
  }
  return r;
}

MapDecomposition gamma_map(std::size_t d) {
  if (d < 2) throw DimensionTooSmall("gamma_map needs d >= 2");
  MapDecomposition p{d, d, {}};
  const EpsComplex half = rational(1, 2);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      p.terms.push_back({(EpsMatrix::unit(d, k, l) + EpsMatrix::unit(d, l, k)) * half, EpsMatrix::unit(d, k, l)});
  return p;
}

EpsMatrix random_rational_psd(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-3, 3);
  const std::size_t r = 1 + static_cast<std::size_t>(rng() % dim);
  EpsMatrix g(dim, r);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = EpsComplex(EpsRational(entry(rng)), EpsRational(entry(rng)));
  return g * dagger(g);
}

StarConvexityReport star_convexity_test(const MapDecomposition& q, const MapDecomposition& t, std::size_t n,
                                        std::size_t samples, std::uint64_t seed, std::size_t max_dim) {
  if (eb_witness_check(q) != EbStatus::Witnessed) throw NotEBWitnessed();
  const ChoiMatrix cn = choi_tensor_power(add_maps(q, t), n, max_dim);
  StarConvexityReport r;
  r.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    EpsMatrix x = random_rational_psd(cn.dims.dB, restart_seed(seed, k));
    if (psd_check(apply_choi(cn, x)).psd()) continue;
    ++r.violations;
    if (!r.first_violation) {
      r.first_violation = k;
      r.violating_input = std::move(x);
    }
  }
  return r;
}

MapDecomposition boundary_form(const MapDecomposition& b, const MapDecomposition& q, const EpsRational& eps) {
  if (eps.is_zero()) return b;
  return add_maps(b, scale_map(q, EpsComplex(-eps)));
}

MapDecomposition counterexample_map(std::size_t d) {
  if (d < 2) throw DimensionTooSmall("counterexample_map needs d >= 2");
  const std::size_t n = d * d;
  EpsMatrix b(n, n);
  b(0, 0) = EpsComplex(-1);
  b(n - 1, n - 1) = EpsComplex(2);
  return {n, n, {{EpsMatrix::identity(n), std::move(b)}}};
}

}  // namespace halo
