#pragma once

#include "halo/layers.hpp"
#include "halo/mamu.hpp"
#include "halo/positivity.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace halo {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with a 1-based line and column.
Json parse_json(std::string_view text);
/// Reads and parses a file; throws ParseError (line 0) when it cannot be opened.
Json read_json_file(const std::string& path);

// Every *_from_json function throws ParseError on malformed input.

/// {"num": [[c0_num, c0_den], ...], "den": [...]}.
Json to_json(const EpsRational& a);
/// Also accepts numbers and expression strings such as "(6-5e)/(48-48e)".
EpsRational eps_from_json(const Json& j);

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
Json to_json(const EpsMatrix& m);
EpsMatrix matrix_from_json(const Json& j);

/// [[re, im], ...].
Json to_json(const EpsVector& v);
EpsVector vector_from_json(const Json& j);

/// {"d_in", "d_out", "terms": [{"A": matrix, "B": matrix}, ...]}.
Json to_json(const MapDecomposition& p);
MapDecomposition map_from_json(const Json& j);

/// {"matrix": matrix, "d_out", "d_in"}.
Json to_json(const ChoiMatrix& c);
/// Accepts that object or a bare matrix with dims given by `fallback`.
ChoiMatrix choi_from_json(const Json& j, std::optional<BipartiteDims> fallback = std::nullopt);

/// {"s", "t", "matrices": [matrix, ...]} with rational entries.
Json to_json(const MpoTensor& c);
MpoTensor mpo_from_json(const Json& j);

Json to_json(const PsdVerdict& v);
Json to_json(const SearchBudget& b);
/// {"status", "witness_a", "witness_b", "value", "exact", "budget"}.
Json search_report(const BlockPositivityVerdict& v, const SearchBudget& b);
Json to_json(const ComplexVector& v);

/// {"prefix": [...], "tail": {"kind", "params"}, "window": [lo, hi]}.
/// Tail kinds: constant {value}, reciprocal {coefficient, power}, linear {a, b},
/// polynomial {coefficients}, rational {value: expression in e with e = 1/n},
/// custom {period, certificate?: {sign, from}}.
struct LayeredScalarFile {
  LayeredScalar scalar;
  Window window;
};
LayeredScalarFile layered_scalar_from_json(const Json& j);

/// Prefix of matrices, tail {"kind": "matrix", "params": {"matrix": ...}} read at e = 1/n.
LayeredMatrix layered_matrix_from_json(const Json& j);
/// Prefix of maps, tail {"kind": "map", "params": {"map": ...}}, optional "norm_bound".
LayeredMap layered_map_from_json(const Json& j);

Json to_json(const FilterVerdict& v);

}  // namespace halo
