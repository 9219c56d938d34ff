#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tanaka/matrix.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

// Subspace of Hom(V, W), stored as row-major flattened dim_w x dim_v matrices.
struct HomSubspace {
  std::size_t dim_v = 0;
  std::size_t dim_w = 0;
  Subspace space = Subspace(0);
};

// Degree-by-degree prolongation A_k = (S^{k+1} V* (x) W) cap (V* (x) A_{k-1}).
// Elements are stored by their values on sorted multi-indices in lexicographic
// order, dim_w coordinates per multi-index.  A_k = 0 forces all later spaces
// to vanish, so the first zero degree terminates the computation.
struct SpencerResult {
  std::vector<std::size_t> dims;     // dims[k] = dim A_k, k = 0..last computed
  std::vector<Subspace> components;  // A_k in value coordinates
  enum class Status { Terminated, Capped } status = Status::Capped;
  int terminated_at = -1;  // first degree with A_k = 0 when Terminated
  int max_k = 0;
};

SpencerResult spencer_prolong(const HomSubspace& a, int max_k);

// Rank-one element w (x) xi of the complexified subspace, stored by rational
// real and imaginary parts (imaginary parts zero for a real witness).
struct RankOneWitness {
  Vec w_re, w_im;                                   // image direction in W
  Vec xi_re, xi_im;                                 // covector on V
  Matrix m_re = Matrix(0, 0), m_im = Matrix(0, 0);  // the element w xi^T
};

struct RankOneSearchResult {
  enum class Outcome { Found, NoneFound } outcome = Outcome::NoneFound;
  std::optional<RankOneWitness> witness;
  std::size_t trials_used = 0;  // random image-line probes attempted
};

// One-sided exact search for a rank-one element of the complexified subspace:
// a canonical-basis scan, two-matrix pencils resolved through minor
// polynomial gcds with exact rational and Gaussian-rational roots, then
// seeded random image-line probes.  Every reported witness is re-verified
// exactly; NoneFound is not a proof of absence.
RankOneSearchResult rank_one_search(const HomSubspace& a, std::size_t trials, std::uint64_t seed);

// Exact check: both parts lie in the subspace, the matrix is nonzero, all
// complex 2x2 minors vanish, and the matrix equals w xi^T.
bool verify_rank_one(const HomSubspace& a, const RankOneWitness& w);

enum class FiniteTypeVerdict {
  FiniteType,             // prolongation terminated
  RankOneWitness,         // verified rank-one direction: prolongs forever
  Inconclusive,           // degree cap hit, no witness found
  InternalInconsistency,  // both certificates at once: impossible
};

FiniteTypeVerdict finite_type_verdict(const SpencerResult& s, const RankOneSearchResult& r);

}  // namespace tanaka
