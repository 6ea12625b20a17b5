#include "halo/io.hpp"

#include "halo/errors.hpp"

#include <fstream>
#include <sstream>

namespace halo {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("parse error"); p != std::string::npos) {
      if (auto colon = what.find(": ", p); colon != std::string::npos) what = what.substr(colon + 2);
    }
    throw ParseError(what, line, column);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()), 10);
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer \"" + j.get<std::string>() + "\"");
    return z;
  }
  throw ParseError("expected an integer");
}

Rational rational_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("rational must be [num, den]");
    const Integer d = integer_from_json(j[1]);
    if (d == 0) throw ParseError("zero denominator");
    Rational q(integer_from_json(j[0]), d);
    q.canonicalize();
    return q;
  }
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational");
}

Json polynomial_json(const EpsPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(Json::array({integer_json(c.get_num()), integer_json(c.get_den())}));
  return a;
}

EpsPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return EpsPolynomial(std::move(c));
}

EpsComplex complex_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2)
    return {eps_from_json(j[0]), eps_from_json(j[1])};
  return EpsComplex(eps_from_json(j));
}

Json complex_json(const EpsComplex& z) { return Json::array({to_json(z.re()), to_json(z.im())}); }

Window window_from_json(const Json& j) {
  if (!j.contains("window")) return {};
  const Json& w = j.at("window");
  if (!w.is_array() || w.size() != 2) throw ParseError("window must be [lo, hi]");
  Window r{w[0].get<std::size_t>(), w[1].get<std::size_t>()};
  if (r.lo == 0 || r.lo > r.hi) throw ParseError("window needs 1 <= lo <= hi");
  return r;
}

Sign sign_from_json(const Json& j) {
  if (j.is_number_integer()) {
    const auto s = j.get<long long>();
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
  }
  const std::string s = j.get<std::string>();
  if (s == "positive" || s == "+") return Sign::positive;
  if (s == "negative" || s == "-") return Sign::negative;
  if (s == "zero" || s == "0") return Sign::zero;
  throw ParseError("bad sign \"" + s + "\"");
}

}  // namespace

Json to_json(const EpsRational& a) { return {{"num", polynomial_json(a.num())}, {"den", polynomial_json(a.den())}}; }

EpsRational eps_from_json(const Json& j) {
  return guarded("scalar", [&]() -> EpsRational {
    if (j.is_object()) {
      const EpsPolynomial den = j.contains("den") ? polynomial_from_json(j.at("den")) : EpsPolynomial(Rational(1));
      if (den.is_zero()) throw ParseError("zero denominator");
      return EpsRational(polynomial_from_json(field(j, "num")), den);
    }
    if (j.is_string()) return parse_eps_rational(j.get<std::string>());
    return EpsRational(rational_from_json(j));
  });
}

Json to_json(const EpsMatrix& m) {
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back(complex_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

EpsMatrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const std::size_t r = size_field(j, "rows");
    const std::size_t c = size_field(j, "cols");
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != r * c)
      throw ParseError("matrix needs rows*cols = " + std::to_string(r * c) + " entries");
    EpsMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < c; ++k) m(i, k) = complex_from_json(e[i * c + k]);
    return m;
  });
}

Json to_json(const EpsVector& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

EpsVector vector_from_json(const Json& j) {
  return guarded("vector", [&] {
    if (!j.is_array()) throw ParseError("vector must be an array");
    EpsVector v;
    for (const auto& x : j) v.push_back(complex_from_json(x));
    return v;
  });
}

Json to_json(const MapDecomposition& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms) terms.push_back({{"A", to_json(t.A)}, {"B", to_json(t.B)}});
  return {{"d_in", p.d_in}, {"d_out", p.d_out}, {"terms", terms}};
}

MapDecomposition map_from_json(const Json& j) {
  return guarded("map", [&] {
    MapDecomposition p{size_field(j, "d_in"), size_field(j, "d_out"), {}};
    for (const auto& t : field(j, "terms")) p.terms.push_back({matrix_from_json(field(t, "A")), matrix_from_json(field(t, "B"))});
    try {
      p.validate();
    } catch (const DimensionMismatch& e) {
      throw ParseError(e.what());
    }
    return p;
  });
}

Json to_json(const ChoiMatrix& c) {
  return {{"matrix", to_json(c.matrix)}, {"d_out", c.dims.dA}, {"d_in", c.dims.dB}};
}

ChoiMatrix choi_from_json(const Json& j, std::optional<BipartiteDims> fallback) {
  return guarded("choi", [&] {
    if (j.is_object() && j.contains("matrix")) {
      ChoiMatrix c{matrix_from_json(j.at("matrix")), {size_field(j, "d_out"), size_field(j, "d_in")}};
      if (c.matrix.rows() != c.dims.total() || c.matrix.cols() != c.dims.total())
        throw ParseError("Choi matrix size does not match d_out * d_in");
      return c;
    }
    EpsMatrix m = matrix_from_json(j);
    BipartiteDims dims;
    if (fallback) {
      dims = *fallback;
    } else {
      std::size_t d = 1;
      while (d * d < m.rows()) ++d;
      if (d * d != m.rows()) throw ParseError("cannot infer bipartite dims; pass them explicitly");
      dims = {d, d};
    }
    if (m.rows() != dims.total() || m.cols() != dims.total()) throw ParseError("matrix size does not match dims");
    return ChoiMatrix{std::move(m), dims};
  });
}

Json to_json(const MpoTensor& c) {
  Json ms = Json::array();
  for (const auto& m : c.matrices) {
    Json entries = Json::array();
    for (const auto& q : m.entries()) entries.push_back(q.get_str());
    ms.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}});
  }
  return {{"s", c.s}, {"t", c.t}, {"matrices", ms}};
}

MpoTensor mpo_from_json(const Json& j) {
  return guarded("mpo", [&] {
    MpoTensor c{size_field(j, "s"), size_field(j, "t"), {}};
    for (const auto& mj : field(j, "matrices")) {
      const EpsMatrix m = matrix_from_json(mj);
      RationalMatrix r(m.rows(), m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) {
          const EpsComplex& z = m(i, k);
          if (!z.is_real() || !z.re().is_rational()) throw ParseError("MPO entries must be rational");
          r(i, k) = z.re().to_rational();
        }
      c.matrices.push_back(std::move(r));
    }
    try {
      c.validate();
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
    return c;
  });
}

Json to_json(const PsdVerdict& v) {
  Json j = {{"status", v.psd() ? "PSD" : "NotPSD"}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.value) {
    j["value"] = to_json(*v.value);
    j["value_text"] = to_string(*v.value);
  }
  return j;
}

Json to_json(const SearchBudget& b) {
  return {{"restarts", b.restarts}, {"iterations", b.iterations}, {"seed", b.seed}, {"tolerance", b.tolerance}};
}

Json to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(Json::array({z.real(), z.imag()}));
  return a;
}

Json search_report(const BlockPositivityVerdict& v, const SearchBudget& b) {
  return {{"status", v.violation() ? "ViolationFound" : "NoViolationFound"},
          {"witness_a", to_json(v.witness_a)},
          {"witness_b", to_json(v.witness_b)},
          {"value", v.value},
          {"exact", v.exact},
          {"budget", to_json(b)}};
}

LayeredScalarFile layered_scalar_from_json(const Json& j) {
  return guarded("layered scalar", [&] {
    const Json& tail = field(j, "tail");
    const std::string kind = field(tail, "kind").get<std::string>();
    const Json params = tail.contains("params") ? tail.at("params") : Json::object();

    auto s = [&]() -> LayeredScalar {
      if (kind == "constant") return LayeredScalar::constant(rational_from_json(field(params, "value")));
      if (kind == "reciprocal")
        return LayeredScalar::reciprocal(rational_from_json(field(params, "coefficient")),
                                         params.value("power", std::size_t{1}));
      if (kind == "linear")
        return LayeredScalar::linear(rational_from_json(field(params, "a")), rational_from_json(field(params, "b")));
      if (kind == "polynomial") {
        std::vector<Rational> c;
        for (const auto& x : field(params, "coefficients")) c.push_back(rational_from_json(x));
        return LayeredScalar::polynomial(c);
      }
      if (kind == "rational") return LayeredScalar::rational(eps_from_json(field(params, "value")));
      if (kind == "custom") {
        std::vector<Rational> period;
        for (const auto& x : field(params, "period")) period.push_back(rational_from_json(x));
        if (period.empty()) throw ParseError("custom tail needs a nonempty period");
        std::optional<SignCertificate> cert;
        if (params.contains("certificate")) {
          const Json& c = params.at("certificate");
          cert = SignCertificate{sign_from_json(field(c, "sign")), c.value("from", std::size_t{1})};
        }
        return LayeredScalar::periodic(std::move(period), cert);
      }
      throw ParseError("unknown tail kind \"" + kind + "\"");
    }();

    std::vector<Rational> prefix;
    if (j.contains("prefix"))
      for (const auto& x : j.at("prefix")) prefix.push_back(rational_from_json(x));
    return LayeredScalarFile{s.with_prefix(std::move(prefix)), window_from_json(j)};
  });
}

LayeredMatrix layered_matrix_from_json(const Json& j) {
  return guarded("layered matrix", [&] {
    LayeredMatrix a;
    if (j.contains("prefix"))
      for (const auto& x : j.at("prefix")) a.prefix.push_back(matrix_from_json(x));
    const Json& tail = field(j, "tail");
    if (tail.value("kind", std::string()) != "matrix") throw ParseError("layered matrix tail kind must be \"matrix\"");
    a.tail = matrix_from_json(field(field(tail, "params"), "matrix"));
    a.window = window_from_json(j);
    return a;
  });
}

LayeredMap layered_map_from_json(const Json& j) {
  return guarded("layered map", [&] {
    LayeredMap p;
    if (j.contains("prefix"))
      for (const auto& x : j.at("prefix")) p.prefix.push_back(map_from_json(x));
    const Json& tail = field(j, "tail");
    if (tail.value("kind", std::string()) != "map") throw ParseError("layered map tail kind must be \"map\"");
    p.tail = map_from_json(field(field(tail, "params"), "map"));
    p.window = window_from_json(j);
    if (j.contains("norm_bound")) p.norm_bound = j.at("norm_bound").get<double>();
    return p;
  });
}

Json to_json(const FilterVerdict& v) {
  Json w = Json::array();
  for (const auto& [n, ok] : v.window) w.push_back(Json::array({n, ok}));
  Json j = {{"status", to_string(v.status)}, {"window", w}, {"evidence", v.evidence}};
  if (v.n0) j["n0"] = *v.n0;
  return j;
}

}  // namespace halo
