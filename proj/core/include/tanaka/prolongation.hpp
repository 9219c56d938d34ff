#pragma once

#include <map>

#include "tanaka/lie_algebra.hpp"

namespace tanaka {

struct ProlongConstraints {
  enum class Mode { Universal, PrescribedG0, SubalgebraList };
  Mode mode = Mode::Universal;
  std::vector<Matrix> g0;             // PrescribedG0: spanning set of degree preserving derivations
  std::vector<Subspace> subalgebras;  // SubalgebraList: graded subalgebras of m

  static ProlongConstraints universal() { return {}; }
  static ProlongConstraints prescribed_g0(std::vector<Matrix> basis) {
    return {Mode::PrescribedG0, std::move(basis), {}};
  }
  static ProlongConstraints subalgebra_list(std::vector<Subspace> subs) {
    return {Mode::SubalgebraList, {}, std::move(subs)};
  }
};

// Element of g_k as an action map: column a holds the coefficients of u(e_a)
// over the basis of the degree deg(a)+k layer (a slice of m for negative
// degrees, a computed component otherwise).
struct ActionMap {
  int degree = 0;
  std::vector<Vec> columns;
};

struct DegreeComponent {
  int degree = 0;
  std::vector<ActionMap> basis;
  std::size_t dim() const { return basis.size(); }
};

struct ProlongationResult {
  GradedLieAlgebra algebra;
  ProlongConstraints constraints;
  std::vector<DegreeComponent> components;  // degrees 0, 1, ..., last computed
  enum class Status { Terminated, Capped } status = Status::Capped;
  int terminated_at = -1;  // last degree of the vanishing window when Terminated
  int max_degree = 0;
  std::size_t generation_depth = 0;  // window length used for termination
  bool g0_bracket_closed = true;     // PrescribedG0 warning flag

  std::map<int, std::size_t> dims() const;
  std::size_t total_dim() const;  // dim m + sum of computed component dims
};

// Degree zero part under the given constraints.  For PrescribedG0 the input
// spanning set is validated and canonicalized rather than solved for.
DegreeComponent der0(const GradedLieAlgebra& m, const ProlongConstraints& c);

ProlongationResult prolong(const GradedLieAlgebra& m, const ProlongConstraints& c, int max_degree,
                           bool stop_at_termination = true);

// Slices of H(g) = Z_g([m,m]): for k >= 0 the kernel of the action on [m,m]
// inside g_k (bases given by coefficients over components[k]), for k < 0 the
// degree slices of the centralizer of [m,m] in m.
struct HSlices {
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<Vec>> coefficient_bases;
  Subspace negative_centralizer = Subspace(0);
};
HSlices h_slices(const ProlongationResult& r);

// Span of the maps V -> V, V = m/[m,m], induced by H(g) elements: values are
// taken modulo the non-negative part and modulo [m,m].
struct ASubspace {
  std::vector<std::size_t> v_indices;  // coordinates of m spanning the complement of [m,m]
  Subspace maps = Subspace(0);         // subspace of End(V), row major flattening
};
ASubspace a_subspace(const ProlongationResult& r);

}  // namespace tanaka
