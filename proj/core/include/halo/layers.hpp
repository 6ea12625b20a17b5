#pragma once

#include "halo/choi.hpp"
#include "halo/positivity.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace halo {

// Sequences indexed by n = 1, 2, 3, ... ordered through the cofinite filter: a
// predicate holds when it holds for all but finitely many n. Analyzable tails
// are rational functions of 1/n, stored as elements g of Q(e) with value(n) = g(1/n),
// so the eventual behaviour of a tail is its behaviour in the ordered field Q(e).

enum class TailKind { Constant, Reciprocal, Linear, Polynomial, Rational, Custom };

std::string to_string(TailKind k);

/// Eventual sign of a custom tail, asserted by the caller: sign(value(n)) = sign for n >= from.
struct SignCertificate {
  Sign sign = Sign::zero;
  std::size_t from = 1;
};

class LayeredScalar {
 public:
  /// c for every n.
  static LayeredScalar constant(const Rational& c);
  /// c / n^power.
  static LayeredScalar reciprocal(const Rational& c, std::size_t power = 1);
  /// a n + b.
  static LayeredScalar linear(const Rational& a, const Rational& b);
  /// sum_k c_k n^k.
  static LayeredScalar polynomial(const std::vector<Rational>& coefficients);
  /// g(1/n) for an arbitrary element g of Q(e).
  static LayeredScalar rational(const EpsRational& g);
  static LayeredScalar custom(std::function<Rational(std::size_t)> f,
                              std::optional<SignCertificate> certificate = std::nullopt);
  /// Repeats `period` forever: value(n) = period[(n-1) mod |period|].
  static LayeredScalar periodic(std::vector<Rational> period,
                                std::optional<SignCertificate> certificate = std::nullopt);

  /// Replaces the first values by an explicit prefix.
  LayeredScalar with_prefix(std::vector<Rational> prefix) const;

  Rational value(std::size_t n) const;
  TailKind kind() const noexcept { return kind_; }
  const std::vector<Rational>& prefix() const noexcept { return prefix_; }
  /// The tail as an element of Q(e); empty for custom tails.
  const std::optional<EpsRational>& tail() const noexcept { return tail_; }
  const std::optional<SignCertificate>& certificate() const noexcept { return certificate_; }

  LayeredScalar operator-() const;
  friend LayeredScalar operator+(const LayeredScalar& a, const LayeredScalar& b);
  friend LayeredScalar operator-(const LayeredScalar& a, const LayeredScalar& b);
  friend LayeredScalar operator*(const LayeredScalar& a, const LayeredScalar& b);

 private:
  LayeredScalar() = default;

  std::vector<Rational> prefix_;
  TailKind kind_ = TailKind::Constant;
  std::optional<EpsRational> tail_;
  std::function<Rational(std::size_t)> custom_;
  std::optional<SignCertificate> certificate_;
};

enum class FilterStatus { HoldsOnCofinite, FailsOnCofinite, Undetermined };
std::string to_string(FilterStatus s);

struct Window {
  std::size_t lo = 1;
  std::size_t hi = 20;
};

struct FilterVerdict {
  FilterStatus status = FilterStatus::Undetermined;
  /// Predicate value at each window point.
  std::vector<std::pair<std::size_t, bool>> window;
  /// The tail verdict applies to every n >= n0, when known.
  std::optional<std::size_t> n0;
  std::string evidence;
};

enum class Relation { GreaterEqual, Greater, LessEqual, Less, Equal };

/// Decides x R 0 on a cofinite set.
FilterVerdict seq_relation(const LayeredScalar& x, Relation r, Window w = {});
/// Decides x >= 0 on a cofinite set.
FilterVerdict seq_sign(const LayeredScalar& x, Window w = {});
/// Decides x < y on a cofinite set.
FilterVerdict seq_less(const LayeredScalar& x, const LayeredScalar& y, Window w = {});

enum class Magnitude { Infinitesimal, Finite, Infinite, Undetermined };
std::string to_string(Magnitude m);

/// Eventual sign and size class of a sequence.
struct ScalarClass {
  std::optional<Sign> sign;
  Magnitude magnitude = Magnitude::Undetermined;
};
ScalarClass classify(const LayeredScalar& x);

/// Index of the first n beyond which every root and pole of g lies above 1/n.
std::size_t eventual_index(const EpsRational& g);

/// Tuple of layered scalars, i.e. a sequence of vectors.
using LayeredVector = std::vector<LayeredScalar>;
/// (<a_n, b_n>)_n, real entries.
LayeredScalar quasi_inner(const LayeredVector& a, const LayeredVector& b);

/// Sequence of matrices: explicit prefix, then a tail over Q(e) read at e = 1/n or a
/// custom generator (which cannot be decided).
struct LayeredMatrix {
  std::vector<EpsMatrix> prefix;
  std::optional<EpsMatrix> tail;
  std::function<EpsMatrix(std::size_t)> custom;
  Window window;

  EpsMatrix layer(std::size_t n) const;
};

FilterVerdict layered_psd(const LayeredMatrix& a);

/// Sequence of maps, same shape conventions as LayeredMatrix.
struct LayeredMap {
  std::vector<MapDecomposition> prefix;
  std::optional<MapDecomposition> tail;
  std::function<MapDecomposition(std::size_t)> custom;
  Window window;
  /// Declared uniform bound on the layer norms.
  double norm_bound = 1e6;

  MapDecomposition layer(std::size_t n) const;
};

/// Operator norm of X -> P(X) on the Hilbert-Schmidt space.
double map_norm(const MapDecomposition& p);

/// Throw UnboundedWindow when a window layer exceeds the declared norm bound.
FilterVerdict layered_cp(const LayeredMap& p);
FilterVerdict layered_cocp(const LayeredMap& p);
/// Window layers are searched one-sidedly; the tail is certified through CP/coCP
/// or refuted by an exact violation over Q(e), else Undetermined.
FilterVerdict layered_map_positive(const LayeredMap& p, const SearchBudget& budget);

struct L2Layer {
  std::size_t n = 0;
  double eps_bound = 0.0;
  Rational eps_exact;
  Rational scale;  // layer Choi = scale * (C - eps_exact 1)
  PsdVerdict cp;   // expected NotPSD
  PsdVerdict cocp; // expected NotPSD
  bool essential = false;
  /// (m, search verdict) for m <= min(n, m_max).
  std::vector<std::pair<std::size_t, BlockPositivityVerdict>> tsp;
};

struct L2WitnessReport {
  double mu = 0.0;
  double norm = 0.0;
  std::vector<L2Layer> layers;
  bool essential_all = false;   // exact
  bool tsp_evidence_all = false; // one-sided search
  bool passed() const noexcept { return essential_all && tsp_evidence_all; }
};

/// Layer n has Choi matrix mu16_choi(3,3) - eps_n 1 with eps_n the level-n bound,
/// rescaled to unit operator norm.
L2WitnessReport l2_tsp_witness(std::size_t m_max, Window window, const SearchBudget& budget);

struct InnerProductReport {
  Rational eps;
  std::size_t cutoff = 0;
  Rational standard_value;  // 1 - eps^2 sum_{k<=cutoff} 1/k^2
  FilterVerdict seq;        // <x+eps y, x-eps y>_seq >= 0
  bool disagreement = false;
};

/// x = (1,0,0,...), y = (0,1,1/2,1/3,...).
InnerProductReport inner_product_counterexample(const Rational& eps, std::size_t cutoff);

struct RingAxiomsReport {
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool passed() const noexcept { return failures.empty(); }
};

/// Ordering axioms of the nonnegative cone on seeded eventually sign-definite samples.
RingAxiomsReport ring_order_axioms(std::size_t samples, std::uint64_t seed);

/// Seeded sample with an analyzable tail (about one in ten eventually zero).
LayeredScalar random_layered_scalar(std::uint64_t seed);

}  // namespace halo
