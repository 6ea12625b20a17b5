#include "halo/eps_complex.hpp"
#include "halo/eps_polynomial.hpp"
#include "halo/eps_rational.hpp"
#include "halo/errors.hpp"
#include "halo/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace halo {

// ---------------------------------------------------------------------------
// Rational helpers

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && part.front() == '-') ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational q{Integer(num, 10), Integer(den, 10)};
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error("cannot convert non-finite double to rational");
  return Rational(x);
}

// ---------------------------------------------------------------------------
// EpsPolynomial

EpsPolynomial::EpsPolynomial(std::initializer_list<Rational> coefficients)
    : coeffs_(coefficients) {
  trim();
}

EpsPolynomial::EpsPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

EpsPolynomial::EpsPolynomial(const Rational& constant) {
  if (constant != 0) {
    coeffs_.push_back(constant);
    coeffs_.back().canonicalize();
  }
}

EpsPolynomial EpsPolynomial::monomial(const Rational& c, std::size_t power) {
  if (c == 0) return {};
  std::vector<Rational> v(power + 1, Rational(0));
  v[power] = c;
  return EpsPolynomial(std::move(v));
}

// Also brings every coefficient to lowest terms; mpq_class(p, q) does not.
void EpsPolynomial::trim() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long EpsPolynomial::valuation() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return static_cast<long>(k);
  return -1;
}

const Rational& EpsPolynomial::coefficient(std::size_t k) const {
  static const Rational zero(0);
  return k < coeffs_.size() ? coeffs_[k] : zero;
}

Rational EpsPolynomial::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double EpsPolynomial::eval(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

EpsPolynomial EpsPolynomial::operator-() const {
  EpsPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

EpsPolynomial& EpsPolynomial::operator+=(const EpsPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

EpsPolynomial& EpsPolynomial::operator-=(const EpsPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

EpsPolynomial& EpsPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

EpsPolynomial operator*(const EpsPolynomial& a, const EpsPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return EpsPolynomial(std::move(out));
}

std::pair<EpsPolynomial, EpsPolynomial> EpsPolynomial::divmod(const EpsPolynomial& a,
                                                              const EpsPolynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return {EpsPolynomial{}, a};
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const Rational& lead = b.leading();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + db] / lead;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
  }
  return {EpsPolynomial(std::move(quot)), EpsPolynomial(std::move(rem))};
}

EpsPolynomial EpsPolynomial::monic() const {
  if (is_zero()) return {};
  EpsPolynomial r = *this;
  const Rational inv = 1 / leading();
  r *= inv;
  return r;
}

EpsPolynomial EpsPolynomial::gcd(EpsPolynomial a, EpsPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k * k != n) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

RationalRoots rational_roots(const EpsPolynomial& p) {
  RationalRoots out;
  if (p.is_zero() || p.is_constant()) return out;
  std::vector<Rational> found;
  if (p.valuation() > 0) found.push_back(Rational(0));
  // Integer coefficients of p / e^valuation.
  Integer lcm_den(1);
  for (const auto& c : p.coefficients())
    if (c != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  const auto cs = p.coefficients();
  std::vector<Integer> ints;
  for (std::size_t k = static_cast<std::size_t>(p.valuation()); k < cs.size(); ++k)
    ints.push_back(cs[k].get_num() * (lcm_den / cs[k].get_den()));
  EpsPolynomial rest(std::vector<Rational>(ints.begin(), ints.end()));
  const Integer limit("1000000000000");
  if (abs(ints.front()) > limit || abs(ints.back()) > limit) {
    out.complete = false;
    out.roots = found;
    return out;
  }
  for (const auto& q : divisors(ints.back()))
    for (const auto& num : divisors(ints.front()))
      for (int s : {-1, 1}) {
        if (rest.degree() < 1) break;
        Rational t(s * num, q);
        t.canonicalize();
        if (rest.eval(t) != 0) continue;
        found.push_back(t);
        while (rest.degree() >= 1 && rest.eval(t) == 0)
          rest = EpsPolynomial::divmod(rest, EpsPolynomial{-t, 1}).first;
      }
  // A remaining factor of odd degree has a real root, which is irrational; even
  // degree may or may not, so report incompleteness for any leftover degree >= 1.
  out.complete = rest.degree() < 1;
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  out.roots = std::move(found);
  return out;
}

Rational cauchy_root_bound(const EpsPolynomial& p) {
  if (p.is_zero()) throw Error("root bound of the zero polynomial");
  Rational m(0);
  const Rational& lead = p.leading();
  for (long k = 0; k < p.degree(); ++k) {
    const Rational r = abs(p.coefficient(static_cast<std::size_t>(k)) / lead);
    if (r > m) m = r;
  }
  return m + 1;
}

namespace {

void append_term(std::ostringstream& os, const Rational& c, std::size_t power, bool first) {
  const int s = sgn(c);
  if (s < 0) os << '-';
  else if (!first) os << '+';
  const Rational mag = abs(c);
  const bool unit = mag == 1;
  if (power == 0 || !unit) os << to_string(mag);
  if (power >= 1) os << 'e';
  if (power >= 2) os << '^' << power;
}

}  // namespace

std::string to_string(const EpsPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto cs = p.coefficients();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k] == 0) continue;
    append_term(os, cs[k], k, first);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// EpsRational

EpsRational::EpsRational(const Rational& q) { set_rational(q); }

EpsRational::EpsRational(EpsPolynomial num, EpsPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

EpsRational EpsRational::eps() { return {EpsPolynomial{0, 1}, EpsPolynomial{1}, Canonical{}}; }

void EpsRational::set_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  num_ = EpsPolynomial(Rational(c.get_num()));
  den_ = EpsPolynomial(Rational(c.get_den()));
}

void EpsRational::canonicalize() {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = EpsPolynomial(Rational(1));
    return;
  }
  if (num_.is_constant() && den_.is_constant()) {
    set_rational(num_.coefficient(0) / den_.coefficient(0));
    return;
  }
  if (!den_.is_constant()) {
    const EpsPolynomial g = EpsPolynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = EpsPolynomial::divmod(num_, g).first;
      den_ = EpsPolynomial::divmod(den_, g).first;
    }
  }
  // Clear denominators, then strip the joint integer content.
  Integer lcm_den(1);
  Integer content(0);
  for (const auto* p : {&num_, &den_})
    for (const auto& c : p->coefficients()) {
      if (c == 0) continue;
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    }
  for (const auto* p : {&num_, &den_})
    for (const auto& c : p->coefficients()) {
      if (c == 0) continue;
      const Integer v = c.get_num() * (lcm_den / c.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
  Rational scale(lcm_den, content);
  scale.canonicalize();
  if (sgn(den_.lowest()) < 0) scale = -scale;
  if (scale != 1) {
    num_ *= scale;
    den_ *= scale;
  }
}

Rational EpsRational::to_rational() const {
  if (!is_rational()) throw Error("value depends on e: " + to_string(*this));
  if (num_.is_zero()) return Rational(0);
  Rational q = num_.coefficient(0) / den_.coefficient(0);
  return q;
}

long EpsRational::valuation() const {
  if (is_zero()) throw Error("valuation of zero is undefined");
  return num_.valuation() - den_.valuation();
}

Sign EpsRational::sign() const {
  if (num_.is_zero()) return Sign::zero;
  return sign_of(num_.lowest());
}

Rational EpsRational::shadow() const {
  if (num_.is_zero()) return Rational(0);
  const long v = valuation();
  if (v < 0) throw InfiniteElement();
  if (v > 0) return Rational(0);
  return num_.lowest() / den_.lowest();
}

Rational EpsRational::eval_at(const Rational& t) const {
  const Rational d = den_.eval(t);
  if (d == 0) throw PoleAtPoint("e = " + halo::to_string(t));
  return num_.eval(t) / d;
}

double EpsRational::eval_at(double t) const { return num_.eval(t) / den_.eval(t); }

EpsRational EpsRational::operator-() const { return {-num_, den_, Canonical{}}; }

EpsRational& EpsRational::operator+=(const EpsRational& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (is_rational() && rhs.is_rational()) {
    set_rational(to_rational() + rhs.to_rational());
    return *this;
  }
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  canonicalize();
  return *this;
}

EpsRational& EpsRational::operator-=(const EpsRational& rhs) { return *this += -rhs; }

EpsRational& EpsRational::operator*=(const EpsRational& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = EpsRational();
  if (is_rational() && rhs.is_rational()) {
    set_rational(to_rational() * rhs.to_rational());
    return *this;
  }
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  canonicalize();
  return *this;
}

EpsRational EpsRational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return {den_, num_};
}

EpsRational& EpsRational::operator/=(const EpsRational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  return *this *= rhs.inverse();
}

std::strong_ordering operator<=>(const EpsRational& a, const EpsRational& b) {
  switch ((a - b).sign()) {
    case Sign::negative: return std::strong_ordering::less;
    case Sign::positive: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

std::strong_ordering compare(const EpsRational& a, const EpsRational& b) { return a <=> b; }

EpsRational arith(const EpsRational& a, const EpsRational& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw Error("unknown arithmetic operation");
}

std::string to_string(const EpsRational& a) {
  auto terms = [](const EpsPolynomial& p) {
    return std::count_if(p.coefficients().begin(), p.coefficients().end(),
                         [](const Rational& c) { return c != 0; });
  };
  if (a.den() == EpsPolynomial{1}) return to_string(a.num());
  if (a.is_rational()) return to_string(a.to_rational());
  const std::string num = terms(a.num()) > 1 ? "(" + to_string(a.num()) + ")" : to_string(a.num());
  // a denominator like "2e" must be grouped too, or it would parse as (num/2)*e
  const std::string den = a.den().is_constant() ? to_string(a.den()) : "(" + to_string(a.den()) + ")";
  return num + "/" + den;
}

// ---------------------------------------------------------------------------
// EpsComplex

EpsComplex& EpsComplex::operator+=(const EpsComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

EpsComplex& EpsComplex::operator-=(const EpsComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

EpsComplex& EpsComplex::operator*=(const EpsComplex& rhs) {
  if (im_.is_zero() && rhs.im_.is_zero()) {
    re_ *= rhs.re_;
    return *this;
  }
  EpsRational re = re_ * rhs.re_ - im_ * rhs.im_;
  EpsRational im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

EpsComplex EpsComplex::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (im_.is_zero()) return {re_.inverse()};
  const EpsRational n = norm2();
  return {re_ / n, -im_ / n};
}

EpsComplex& EpsComplex::operator/=(const EpsComplex& rhs) { return *this *= rhs.inverse(); }

RationalComplex shadow(const EpsComplex& z) { return {z.re().shadow(), z.im().shadow()}; }

EpsComplex eval_at(const EpsComplex& z, const Rational& t) {
  return {EpsRational(z.re().eval_at(t)), EpsRational(z.im().eval_at(t))};
}

std::string to_string(const EpsComplex& z) {
  if (z.im().is_zero()) return to_string(z.re());
  const std::string im = to_string(z.im());
  if (z.re().is_zero()) return "(" + im + ")i";
  return to_string(z.re()) + "+(" + im + ")i";
}

}  // namespace halo
