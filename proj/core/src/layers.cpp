#include "halo/layers.hpp"

#include "halo/constructions.hpp"
#include "halo/errors.hpp"

#include <algorithm>
#include <random>

namespace halo {

std::string to_string(TailKind k) {
  switch (k) {
    case TailKind::Constant: return "constant";
    case TailKind::Reciprocal: return "reciprocal";
    case TailKind::Linear: return "linear";
    case TailKind::Polynomial: return "polynomial";
    case TailKind::Rational: return "rational";
    case TailKind::Custom: return "custom";
  }
  return "?";
}

std::string to_string(FilterStatus s) {
  switch (s) {
    case FilterStatus::HoldsOnCofinite: return "HoldsOnCofinite";
    case FilterStatus::FailsOnCofinite: return "FailsOnCofinite";
    case FilterStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string to_string(Magnitude m) {
  switch (m) {
    case Magnitude::Infinitesimal: return "infinitesimal";
    case Magnitude::Finite: return "finite";
    case Magnitude::Infinite: return "infinite";
    case Magnitude::Undetermined: return "undetermined";
  }
  return "?";
}

LayeredScalar LayeredScalar::constant(const Rational& c) {
  LayeredScalar s;
  s.kind_ = TailKind::Constant;
  s.tail_ = EpsRational(c);
  return s;
}

LayeredScalar LayeredScalar::reciprocal(const Rational& c, std::size_t power) {
  LayeredScalar s;
  s.kind_ = TailKind::Reciprocal;
  s.tail_ = EpsRational(EpsPolynomial::monomial(c, power), EpsPolynomial(Rational(1)));
  return s;
}

LayeredScalar LayeredScalar::linear(const Rational& a, const Rational& b) {
  LayeredScalar s;
  s.kind_ = TailKind::Linear;
  s.tail_ = EpsRational(EpsPolynomial{a, b}, EpsPolynomial{Rational(0), Rational(1)});
  return s;
}

LayeredScalar LayeredScalar::polynomial(const std::vector<Rational>& coefficients) {
  // sum c_k n^k = (sum c_k e^{K-k}) / e^K
  const std::size_t top = coefficients.empty() ? 0 : coefficients.size() - 1;
  std::vector<Rational> num(top + 1);
  for (std::size_t k = 0; k < coefficients.size(); ++k) num[top - k] = coefficients[k];
  LayeredScalar s;
  s.kind_ = TailKind::Polynomial;
  s.tail_ = EpsRational(EpsPolynomial(std::move(num)), EpsPolynomial::monomial(Rational(1), top));
  return s;
}

LayeredScalar LayeredScalar::rational(const EpsRational& g) {
  LayeredScalar s;
  s.kind_ = TailKind::Rational;
  s.tail_ = g;
  return s;
}

LayeredScalar LayeredScalar::custom(std::function<Rational(std::size_t)> f,
                                    std::optional<SignCertificate> certificate) {
  LayeredScalar s;
  s.kind_ = TailKind::Custom;
  s.custom_ = std::move(f);
  s.certificate_ = certificate;
  return s;
}

LayeredScalar LayeredScalar::periodic(std::vector<Rational> period,
                                      std::optional<SignCertificate> certificate) {
  if (period.empty()) throw Error("periodic tail needs at least one value");
  return custom([p = std::move(period)](std::size_t n) { return p[(n - 1) % p.size()]; },
                certificate);
}

LayeredScalar LayeredScalar::with_prefix(std::vector<Rational> prefix) const {
  LayeredScalar s = *this;
  s.prefix_ = std::move(prefix);
  return s;
}

Rational LayeredScalar::value(std::size_t n) const {
  if (n == 0) throw Error("layers are indexed from 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  if (tail_) return tail_->eval_at(Rational(1, static_cast<long>(n)));
  return custom_(n);
}

namespace {

enum class Op { add, sub, mul };

Rational apply(Op op, const Rational& a, const Rational& b) {
  switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
  }
  return {};
}

}  // namespace

static LayeredScalar combine(const LayeredScalar& a, const LayeredScalar& b, Op op) {
  const std::size_t len = std::max(a.prefix().size(), b.prefix().size());
  std::vector<Rational> prefix;
  prefix.reserve(len);
  for (std::size_t n = 1; n <= len; ++n) prefix.push_back(apply(op, a.value(n), b.value(n)));

  if (a.tail() && b.tail()) {
    const EpsRational& x = *a.tail();
    const EpsRational& y = *b.tail();
    EpsRational g = op == Op::add ? x + y : (op == Op::sub ? x - y : x * y);
    const bool constant = a.kind() == TailKind::Constant && b.kind() == TailKind::Constant;
    LayeredScalar r = constant ? LayeredScalar::constant(g.to_rational()) : LayeredScalar::rational(g);
    return r.with_prefix(std::move(prefix));
  }
  return LayeredScalar::custom([a, b, op](std::size_t n) { return apply(op, a.value(n), b.value(n)); })
      .with_prefix(std::move(prefix));
}

LayeredScalar LayeredScalar::operator-() const { return combine(constant(0), *this, Op::sub); }
LayeredScalar operator+(const LayeredScalar& a, const LayeredScalar& b) { return combine(a, b, Op::add); }
LayeredScalar operator-(const LayeredScalar& a, const LayeredScalar& b) { return combine(a, b, Op::sub); }
LayeredScalar operator*(const LayeredScalar& a, const LayeredScalar& b) { return combine(a, b, Op::mul); }

namespace {

// Every positive root t of p satisfies t > 1/bound.
std::size_t root_free_index(const EpsPolynomial& p) {
  if (p.is_zero()) return 1;
  const auto coeffs = p.coefficients();
  const auto v = static_cast<std::size_t>(p.valuation());
  std::vector<Rational> rev(coeffs.rbegin(), coeffs.rend() - static_cast<long>(v));
  const EpsPolynomial reversed(std::move(rev));
  if (reversed.is_constant()) return 1;
  const Rational bound = cauchy_root_bound(reversed);
  const Integer fl = bound.get_num() / bound.get_den();
  return static_cast<std::size_t>(fl.get_ui()) + 1;
}

bool holds(Relation r, Sign s) {
  switch (r) {
    case Relation::GreaterEqual: return s != Sign::negative;
    case Relation::Greater: return s == Sign::positive;
    case Relation::LessEqual: return s != Sign::positive;
    case Relation::Less: return s == Sign::negative;
    case Relation::Equal: return s == Sign::zero;
  }
  return false;
}

std::size_t matrix_index(const EpsMatrix& m) {
  std::size_t n0 = 1;
  for (const auto& z : m.entries()) n0 = std::max({n0, eventual_index(z.re()), eventual_index(z.im())});
  return n0;
}

std::size_t vector_index(const EpsVector& v) {
  std::size_t n0 = 1;
  for (const auto& z : v) n0 = std::max({n0, eventual_index(z.re()), eventual_index(z.im())});
  return n0;
}

Rational layer_point(std::size_t n) { return Rational(1, static_cast<long>(n)); }

}  // namespace

std::size_t eventual_index(const EpsRational& g) {
  return std::max(root_free_index(g.num()), root_free_index(g.den()));
}

FilterVerdict seq_relation(const LayeredScalar& x, Relation r, Window w) {
  FilterVerdict v;
  for (std::size_t n = std::max<std::size_t>(w.lo, 1); n <= w.hi; ++n) {
    bool ok = false;
    try {
      ok = holds(r, sign_of(x.value(n)));
    } catch (const PoleAtPoint&) {
      ok = false;
    }
    v.window.emplace_back(n, ok);
  }

  const std::size_t after_prefix = x.prefix().size() + 1;
  if (x.tail()) {
    const EpsRational& g = *x.tail();
    const bool ok = holds(r, g.sign());
    v.status = ok ? FilterStatus::HoldsOnCofinite : FilterStatus::FailsOnCofinite;
    v.n0 = std::max(after_prefix, eventual_index(g));
    v.evidence = "tail " + to_string(g) + " at e = 1/n has sign " +
                 std::to_string(to_int(g.sign())) + " in Q(e)";
    return v;
  }
  if (x.certificate()) {
    const SignCertificate& c = *x.certificate();
    const std::size_t n0 = std::max(after_prefix, c.from);
    for (const auto& [n, ok] : v.window) {
      if (n < n0) continue;
      if (ok != holds(r, c.sign)) {
        v.evidence = "sign certificate contradicted at n = " + std::to_string(n);
        return v;
      }
    }
    v.status = holds(r, c.sign) ? FilterStatus::HoldsOnCofinite : FilterStatus::FailsOnCofinite;
    v.n0 = n0;
    v.evidence = "caller-supplied sign certificate from n = " + std::to_string(c.from);
    return v;
  }
  v.evidence = "custom tail without certificate; window values only";
  return v;
}

FilterVerdict seq_sign(const LayeredScalar& x, Window w) {
  return seq_relation(x, Relation::GreaterEqual, w);
}

FilterVerdict seq_less(const LayeredScalar& x, const LayeredScalar& y, Window w) {
  return seq_relation(x - y, Relation::Less, w);
}

ScalarClass classify(const LayeredScalar& x) {
  ScalarClass c;
  if (x.tail()) {
    const EpsRational& g = *x.tail();
    c.sign = g.sign();
    if (g.is_infinitesimal())
      c.magnitude = Magnitude::Infinitesimal;
    else
      c.magnitude = g.is_finite() ? Magnitude::Finite : Magnitude::Infinite;
  } else if (x.certificate()) {
    c.sign = x.certificate()->sign;
  }
  return c;
}

LayeredScalar quasi_inner(const LayeredVector& a, const LayeredVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("quasi-inner product of different lengths");
  LayeredScalar s = LayeredScalar::constant(0);
  for (std::size_t k = 0; k < a.size(); ++k) s = s + a[k] * b[k];
  return s;
}

EpsMatrix LayeredMatrix::layer(std::size_t n) const {
  if (n == 0) throw Error("layers are indexed from 1");
  if (n <= prefix.size()) return prefix[n - 1];
  if (tail) return eval_at(*tail, layer_point(n));
  if (custom) return custom(n);
  throw Error("layered matrix has no layer " + std::to_string(n));
}

FilterVerdict layered_psd(const LayeredMatrix& a) {
  FilterVerdict v;
  for (std::size_t n = std::max<std::size_t>(a.window.lo, 1); n <= a.window.hi; ++n)
    v.window.emplace_back(n, psd_check(a.layer(n)).psd());
  if (!a.tail) {
    v.evidence = "custom tail; window values only";
    return v;
  }
  const PsdVerdict t = psd_check(*a.tail);
  if (t.psd()) {
    v.status = FilterStatus::HoldsOnCofinite;
    v.evidence = "tail is psd over Q(e)";
  } else {
    v.status = FilterStatus::FailsOnCofinite;
    v.n0 = std::max({a.prefix.size() + 1, matrix_index(*a.tail), vector_index(*t.witness),
                     eventual_index(*t.value)});
    v.evidence = "tail witness with <v, A v> = " + to_string(*t.value);
  }
  return v;
}

MapDecomposition LayeredMap::layer(std::size_t n) const {
  if (n == 0) throw Error("layers are indexed from 1");
  if (n <= prefix.size()) return prefix[n - 1];
  if (tail) {
    MapDecomposition p{tail->d_in, tail->d_out, {}};
    for (const auto& t : tail->terms)
      p.terms.push_back({eval_at(t.A, layer_point(n)), eval_at(t.B, layer_point(n))});
    return p;
  }
  if (custom) return custom(n);
  throw Error("layered map has no layer " + std::to_string(n));
}

namespace {

// vec(P(X)) = N vec(X) with N = sum_i vec(A_i) vec(B_i)^T (row-major vec).
EpsMatrix natural_representation(const MapDecomposition& p) {
  p.validate();
  EpsMatrix n(p.d_out * p.d_out, p.d_in * p.d_in);
  for (const auto& t : p.terms) {
    const auto a = t.A.entries();
    const auto b = t.B.entries();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!b[j].is_zero()) n(i, j) += a[i] * b[j];
    }
  }
  return n;
}

void check_bounded(const LayeredMap& p) {
  for (std::size_t n = std::max<std::size_t>(p.window.lo, 1); n <= p.window.hi; ++n) {
    const double norm = map_norm(p.layer(n));
    if (norm > p.norm_bound)
      throw UnboundedWindow("layer " + std::to_string(n) + " has norm " + std::to_string(norm) +
                            " above the declared bound " + std::to_string(p.norm_bound));
  }
  if (p.tail) {
    const EpsMatrix n = natural_representation(*p.tail);
    if (!is_finite(n)) throw UnboundedWindow("tail norms grow without bound");
    const double limit = operator_norm(n);
    if (limit > p.norm_bound)
      throw UnboundedWindow("tail norm tends to " + std::to_string(limit) +
                            ", above the declared bound");
  }
}

FilterVerdict map_predicate(const LayeredMap& p, PsdVerdict (*check)(const MapDecomposition&),
                            const char* name) {
  FilterVerdict v;
  check_bounded(p);
  for (std::size_t n = std::max<std::size_t>(p.window.lo, 1); n <= p.window.hi; ++n)
    v.window.emplace_back(n, check(p.layer(n)).psd());
  if (!p.tail) {
    v.evidence = "custom tail; window values only";
    return v;
  }
  const PsdVerdict t = check(*p.tail);
  if (t.psd()) {
    v.status = FilterStatus::HoldsOnCofinite;
    v.evidence = std::string("tail is ") + name + " over Q(e)";
  } else {
    v.status = FilterStatus::FailsOnCofinite;
    const ChoiMatrix c = choi_from_decomposition(*p.tail);
    v.n0 = std::max({p.prefix.size() + 1, matrix_index(c.matrix), vector_index(*t.witness),
                     eventual_index(*t.value)});
    v.evidence = std::string("tail is not ") + name + "; witness value " + to_string(*t.value);
  }
  return v;
}

PsdVerdict cp_of(const MapDecomposition& p) { return is_cp(p); }
PsdVerdict cocp_of(const MapDecomposition& p) { return is_cocp(p); }

}  // namespace

double map_norm(const MapDecomposition& p) {
  return operator_norm(natural_representation(p));
}

FilterVerdict layered_cp(const LayeredMap& p) { return map_predicate(p, cp_of, "CP"); }
FilterVerdict layered_cocp(const LayeredMap& p) { return map_predicate(p, cocp_of, "coCP"); }

FilterVerdict layered_map_positive(const LayeredMap& p, const SearchBudget& budget) {
  FilterVerdict v;
  check_bounded(p);
  for (std::size_t n = std::max<std::size_t>(p.window.lo, 1); n <= p.window.hi; ++n)
    v.window.emplace_back(n, !positive_map_search(p.layer(n), budget).violation());
  if (!p.tail) {
    v.evidence = "custom tail; window search only";
    return v;
  }
  if (is_cp(*p.tail).psd() || is_cocp(*p.tail).psd()) {
    v.status = FilterStatus::HoldsOnCofinite;
    v.evidence = "tail is CP or coCP over Q(e)";
    return v;
  }
  const ChoiMatrix c = choi_from_decomposition(*p.tail);
  const BlockPositivityVerdict s = block_positive_search(c.matrix, c.dims, budget);
  if (s.violation() && s.exact) {
    const EpsRational value = exact_product_value(c.matrix, s.witness_a, s.witness_b);
    v.status = FilterStatus::FailsOnCofinite;
    v.n0 = std::max({p.prefix.size() + 1, matrix_index(c.matrix), eventual_index(value)});
    v.evidence = "exact product violation over Q(e) with value " + to_string(value);
    return v;
  }
  v.evidence = "tail neither CP nor coCP and no violation found; one-sided search only";
  return v;
}

L2WitnessReport l2_tsp_witness(std::size_t m_max, Window window, const SearchBudget& budget) {
  const ChoiMatrix c = mu16_choi(3, 3);
  L2WitnessReport r;
  r.mu = product_min(c.matrix, c.dims, budget).value;
  r.norm = operator_norm(c.matrix);
  r.essential_all = true;
  r.tsp_evidence_all = true;

  for (std::size_t n = std::max<std::size_t>(window.lo, 1); n <= window.hi; ++n) {
    L2Layer layer;
    layer.n = n;
    layer.eps_bound = eps_bound_from(r.norm, r.mu, n);
    layer.eps_exact = rational_from_double(layer.eps_bound);
    EpsMatrix k = c.matrix - EpsMatrix::identity(c.matrix.rows()) * EpsComplex(layer.eps_exact);
    layer.scale = 1 / rational_from_double(operator_norm(k));
    const ChoiMatrix lc{k * EpsComplex(layer.scale), c.dims};

    layer.cp = is_cp(lc);
    layer.cocp = is_cocp(lc);
    layer.essential = layer.eps_exact > 0 && !layer.cp.psd() && !layer.cocp.psd();
    r.essential_all = r.essential_all && layer.essential;

    for (std::size_t m = 1; m <= std::min(n, m_max); ++m) {
      BlockPositivityVerdict s = n_tsp_search(lc, m, budget);
      r.tsp_evidence_all = r.tsp_evidence_all && !s.violation();
      layer.tsp.emplace_back(m, std::move(s));
    }
    r.layers.push_back(std::move(layer));
  }
  return r;
}

namespace {

// sum_{k=lo}^{hi} 1/k^2 by binary splitting.
Rational inverse_square_sum(std::size_t lo, std::size_t hi) {
  if (lo > hi) return 0;
  if (hi - lo < 16) {
    Rational s = 0;
    for (std::size_t k = lo; k <= hi; ++k) {
      const Integer kk(static_cast<unsigned long>(k));
      s += Rational(Integer(1), kk * kk);
    }
    s.canonicalize();
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  Rational s = inverse_square_sum(lo, mid) + inverse_square_sum(mid + 1, hi);
  return s;
}

}  // namespace

InnerProductReport inner_product_counterexample(const Rational& eps, std::size_t cutoff) {
  InnerProductReport r;
  r.eps = eps;
  r.cutoff = cutoff;
  r.standard_value = 1 - eps * eps * inverse_square_sum(1, cutoff);

  const LayeredScalar x = LayeredScalar::constant(0).with_prefix({Rational(1)});
  // y_n = 1/(n-1) for n >= 2
  const LayeredScalar y = LayeredScalar::rational(parse_eps_rational("e/(1-e)")).with_prefix({Rational(0)});
  const LayeredScalar e = LayeredScalar::constant(eps);
  r.seq = seq_sign((x + e * y) * (x - e * y));
  r.disagreement = (r.standard_value >= 0) != (r.seq.status == FilterStatus::HoldsOnCofinite);
  return r;
}

LayeredScalar random_layered_scalar(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto small = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto q = [&] {
    Rational r(small(-3, 3), small(1, 3));
    r.canonicalize();
    return r;
  };
  auto nonzero = [&] {
    Rational v = q();
    while (v == 0) v = q();
    return v;
  };

  LayeredScalar s = LayeredScalar::constant(0);
  switch (small(0, 9)) {
    case 0: break;  // eventually zero
    case 1:
    case 2: s = LayeredScalar::constant(nonzero()); break;
    case 3:
    case 4: s = LayeredScalar::reciprocal(nonzero(), static_cast<std::size_t>(small(1, 2))); break;
    case 5:
    case 6: s = LayeredScalar::linear(nonzero(), q()); break;
    case 7: s = LayeredScalar::polynomial({q(), q(), nonzero()}); break;
    default: {
      EpsPolynomial num{q(), q()};
      // no pole at any 1/n
      const Rational c = abs(nonzero());
      EpsPolynomial den{c, Rational(small(0, 3), small(1, 3))};
      s = LayeredScalar::rational(EpsRational(std::move(num), std::move(den)));
    }
  }
  std::vector<Rational> prefix(static_cast<std::size_t>(small(0, 3)));
  for (auto& p : prefix) p = q();
  return s.with_prefix(std::move(prefix));
}

RingAxiomsReport ring_order_axioms(std::size_t samples, std::uint64_t seed) {
  RingAxiomsReport r;
  r.samples = samples;
  std::vector<LayeredScalar> xs;
  xs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) xs.push_back(random_layered_scalar(restart_seed(seed, i)));

  const Window none{1, 0};
  auto nonneg = [&](const LayeredScalar& x) {
    return seq_sign(x, none).status == FilterStatus::HoldsOnCofinite;
  };
  auto zero = [&](const LayeredScalar& x) {
    return seq_relation(x, Relation::Equal, none).status == FilterStatus::HoldsOnCofinite;
  };
  auto check = [&](bool ok, const std::string& what, std::size_t i) {
    ++r.checks;
    if (!ok) r.failures.push_back(what + " (sample " + std::to_string(i) + ")");
  };

  for (std::size_t i = 0; i < samples; ++i) {
    const LayeredScalar& x = xs[i];
    const LayeredScalar& y = xs[(i + 1) % samples];
    const bool px = nonneg(x);
    const bool py = nonneg(y);

    check(px || nonneg(-x), "totality", i);
    check(nonneg(x * x), "squares", i);
    if (px && py) {
      check(nonneg(x + y), "closed under addition", i);
      check(nonneg(x * y), "closed under multiplication", i);
    }
    if (zero(x)) check(zero(x * y), "support is an ideal", i);
    if (zero(x) && zero(y)) check(zero(x + y), "support is additive", i);
    if (zero(x * y)) check(zero(x) || zero(y), "support is prime", i);

    // the tail verdict must match exact values from n0 on
    const FilterVerdict v = seq_sign(x, none);
    for (std::size_t n : {*v.n0, *v.n0 + 1, *v.n0 + 97})
      check((x.value(n) >= 0) == px, "verdict matches values beyond n0", i);
  }
  return r;
}

}  // namespace halo
