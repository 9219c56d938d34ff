#pragma once

#include <optional>
#include <vector>

#include "tanaka/lie_algebra.hpp"
#include "tanaka/prolongation.hpp"

namespace tanaka {

// A graded nilpotent algebra together with a list of graded subalgebras,
// usually a complementary pair.  Construction validates that every member is
// graded and bracket closed; a pair must intersect trivially.  Whether the
// members jointly bracket-generate the algebra is recorded, not enforced.
struct SymbolTriple {
  GradedLieAlgebra m;
  std::vector<Subspace> subalgebras;
  bool trivial_intersections = false;
  bool generating = false;
};

SymbolTriple make_symbol(const GradedLieAlgebra& m, std::vector<Subspace> subalgebras);

// Kernels of the bracket pairing between the two distinguished subalgebras:
// left = {x in e : [x, f] = 0}, right = {y in f : [e, y] = 0}.  The pairing
// is nondegenerate exactly when both vanish.
struct LeviKernels {
  GradedSubspace left;
  GradedSubspace right;
  bool nondegenerate = false;
};

LeviKernels levi_kernels(const SymbolTriple& t);

// Right-hand side used for the descending refinement of F: brackets may be
// absorbed back modulo the bottom term of the source filtration only, or
// modulo its full top term.
enum class FTermConvention { BottomE, FullE };

// Descending refinements of a filtered subalgebra E and a complement F:
//   E^0 = {X in E^{-1} : [X, F] c E^{-1} + F},   E^i from E^{i-1} likewise,
//   F^0 = {Y in F : [Y, E^{-1}] c F + E^{-1}},   F^i from F^{i-1} likewise,
// each chain stored up to and including its first stabilized term.
struct FreemanState {
  GradedLieAlgebra g;
  std::vector<Subspace> e_filtration;  // E^{-1} c E^{-2} c ..., bottom first
  Subspace f;
  FTermConvention convention = FTermConvention::BottomE;
  std::vector<Subspace> e_down;  // E^0, E^1, ...
  std::vector<Subspace> f_down;  // F^0, F^1, ...
  std::size_t e_stable_at = 0;   // index of the first repeated E term
  std::size_t f_stable_at = 0;
  bool e0_zero = false;
  std::optional<std::size_t> nu;  // first i with F^i = 0, when it exists
};

// Requires: consecutive filtration terms satisfy
// E^{-i-1} = [E^{-1}, E^{-i}] + E^{-i}, the top term is closed under brackets
// with the bottom term, and the top term meets F trivially.
FreemanState freeman(const GradedLieAlgebra& g, const std::vector<Subspace>& e_filtration,
                     const Subspace& f,
                     FTermConvention convention = FTermConvention::BottomE);

// Increasing filtration osculating the pair: term -i is E^{-i} + F^{nu-i}
// (with E^{-i} = E_top once the source filtration is exhausted and F^j = F
// for j < 0), continued by bracket generation to the whole algebra, together
// with its graded symbol and the graded images of the pair.
struct OsculationResult {
  std::size_t nu = 0;
  Filtration filtration;
  SymbolConstruction construction;
  Subspace graded_e;
  Subspace graded_f;
  SymbolTriple symbol;
};

// Requires: E^0 = 0 and the F chain vanishes (state.nu has a value).
OsculationResult osculation_filtration(const FreemanState& state);

// Outcome of the termination check for a pair symbol.  When the pairing is
// nondegenerate and the pair generates, termination of the constrained
// prolongation is guaranteed, so the verdict is a certificate; observing the
// cap in that situation is an internal error, not a verdict.
struct FinitenessCertificate {
  enum class Verdict { FiniteCertified, FiniteObserved, Unknown };
  Verdict verdict = Verdict::Unknown;
  bool generating = false;
  LeviKernels kernels;
  ProlongationResult prolongation;
};

FinitenessCertificate finiteness_certificate(const SymbolTriple& t, int max_degree = 24);

// Quotient of the ambient algebra by the stabilized term of the F chain.
// Supported only when that term is a graded ideal; otherwise an error with
// code PreconditionViolated is raised.
GradedLieAlgebra stabilized_f_quotient(const FreemanState& state);

}  // namespace tanaka
