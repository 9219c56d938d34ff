#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "tanaka/lie_algebra.hpp"
#include "tanaka/spencer.hpp"

// Internal JSON document layer shared by the command-line front end: parsers
// with precise diagnostics, canonical re-serializations used for content
// hashing, and report-side encoders.
namespace tanaka::docs {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Entry of a vector or matrix: a bare integer or a {"num": p, "den": q} pair.
Rational rational_entry(const json& j, const std::string& where);

// {"dim", "degrees", "basis_names"?, "brackets": [{"i","j","terms":[{"k","num","den"}]}]},
// indices 1-based with i < j.
GradedLieAlgebra algebra_from_json(const json& j);

// {"ambient_dim", "vectors": [[entry, ...], ...]}.
Subspace subspace_from_json(const json& j);

// {"dim_v", "dim_w", "maps": [[[entry x dim_v] x dim_w], ...]}, each map a
// dim_w x dim_v matrix given by rows.
HomSubspace hom_from_json(const json& j);

// Canonical forms: fully reduced rationals as strings, subspaces by their
// echelon bases, brackets sorted by index pair.  Equal content hashes equal.
ojson canonical_algebra(const GradedLieAlgebra& g);
ojson canonical_subspace(const Subspace& s);
ojson canonical_hom(const HomSubspace& h);

// Report-side encoders.
ojson vec_strings(const Vec& v);                  // ["p/q", ...]
ojson basis_strings(const std::vector<Vec>& b);   // [["p/q", ...], ...]
ojson matrix_strings(const Matrix& m);            // rows of ["p/q", ...]
// Algebra in the input document shape, so reports can be fed back in.
ojson algebra_document(const GradedLieAlgebra& g);

std::string sha256_hex(const std::string& data);

}  // namespace tanaka::docs
