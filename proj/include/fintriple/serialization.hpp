#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "fintriple/standard_model.hpp"
#include "fintriple/triple.hpp"

namespace fintriple {

// Insertion-ordered so writers control the field layout byte for byte.
using Json = nlohmann::ordered_json;

/// A document failed to parse or broke a format invariant. The message names
/// the offending field, or the byte position for malformed JSON.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Complex entries as [re, im] pairs; a matrix is a list of rows.
Json matrix_to_json(const ComplexMatrix& m);

/// Strict inverse of matrix_to_json. `field` labels error messages; when
/// `expected_dim` is nonnegative the matrix must be square of that size.
ComplexMatrix matrix_from_json(const Json& j, const std::string& field, int expected_dim = -1);

/// Coupling-block reader: accepts a bare number or one [re, im] pair as that
/// scalar times the n x n identity, or a full n x n matrix.
ComplexMatrix block_from_json(const Json& j, const std::string& field, int n);

/// Triple document: schema_version, dim_h, algebra_generators, dirac,
/// optional gamma, j_linear_part (C of v -> C conj(v)), signs. Writing is
/// canonical, so write . read . write is byte-identical.
std::string write_triple(const RealSpectralTriple& t);
RealSpectralTriple read_triple(const std::string& text);

/// Dirac-parameter document: generations, alpha and beta as 2 x 2 arrays of
/// blocks, delta as a named map of seven blocks, upsilon_r.
std::string write_sm_params(const SMDiracParams& p);
SMDiracParams read_sm_params(const std::string& text);

/// The same parameter document as a JSON value, for embedding in reports.
Json params_to_json(const SMDiracParams& p);

/// File helpers; read failures surface as ParseError naming the path.
std::string load_text(const std::string& path);
void save_text(const std::string& path, const std::string& text);
RealSpectralTriple load_triple(const std::string& path);
SMDiracParams load_sm_params(const std::string& path);

}  // namespace fintriple
