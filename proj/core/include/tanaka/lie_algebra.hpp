#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tanaka/subspace.hpp"

namespace tanaka {

struct ValidationIssue {
  enum class Kind { NonNegativeDegree, GradingViolation, JacobiViolation };
  Kind kind;
  // Basis indices involved: (i) for degree issues, (i, j) for grading, (i, j, k) for Jacobi.
  std::size_t i = 0, j = 0, k = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Finite dimensional Lie algebra over Q given by structure constants on a
// fixed basis.  Brackets are stored for i < j only; antisymmetry is
// synthesized on access.
class LieAlgebra {
public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }

  void set_bracket(std::size_t i, std::size_t j, Vec value);
  const std::map<std::pair<std::size_t, std::size_t>, Vec>& stored_brackets() const {
    return brackets_;
  }

  Vec bracket_basis(std::size_t i, std::size_t j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec ad_basis_applied(std::size_t i, const Vec& y) const;  // [e_i, y]

  ValidationReport validate_jacobi() const;

  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);
  std::string name_of(std::size_t i) const;

  // Smallest subalgebra containing the given subspace.
  Subspace bracket_closure(const Subspace& seed) const;
  bool generates(const Subspace& seed) const;

  bool is_subalgebra(const Subspace& s) const;

  // {x : [x, v] = 0 for all v in s}.
  Subspace centralizer_of(const Subspace& s) const;

protected:
  std::size_t dim_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Vec> brackets_;
  std::vector<std::string> names_;
};

class GradedLieAlgebra;

struct GradedSubspace {
  const GradedLieAlgebra* algebra = nullptr;
  Subspace space;
  bool graded = false;

  GradedSubspace(const GradedLieAlgebra& g, Subspace s, bool graded_flag)
      : algebra(&g), space(std::move(s)), graded(graded_flag) {}
};

struct Filtration {
  enum class Direction { Increasing, Decreasing };
  Direction direction = Direction::Increasing;
  std::vector<Subspace> terms;
};

struct DerivedQuotient;

class GradedLieAlgebra : public LieAlgebra {
public:
  GradedLieAlgebra() = default;
  GradedLieAlgebra(std::size_t dim, std::vector<int> degrees);

  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }
  int depth() const;  // mu: largest i such that m_{-i} != 0

  const std::vector<std::size_t>& indices_of_degree(int d) const;
  std::size_t dim_of_degree(int d) const;
  std::map<int, std::size_t> dims_by_degree() const;

  // Component of x in degree d (coordinates of other degrees zeroed).
  Vec project_to_degree(const Vec& x, int d) const;
  bool is_graded_subspace(const Subspace& s) const;
  // Homogeneous slice s_d of a graded subspace, as vectors in the ambient.
  Subspace degree_slice(const Subspace& s, int d) const;

  ValidationReport validate() const;

  DerivedQuotient derived_and_quotient() const;
  // m / h for a graded ideal given by its subspace; basis = complement coordinates.
  GradedLieAlgebra quotient_by_graded_ideal(const Subspace& ideal,
                                            std::vector<std::size_t>* complement_out = nullptr) const;

  // Smallest nu such that m_{-1} + ... + m_{-nu} generates m.
  std::size_t generation_depth() const;
  bool is_fundamental() const { return generation_depth() == 1; }

private:
  std::vector<int> degrees_;
  std::map<int, std::vector<std::size_t>> by_degree_;
};

struct DerivedQuotient {
  GradedSubspace derived;   // h = [m, m]
  GradedLieAlgebra quotient;  // m / h, abelian
  std::size_t nu = 0;       // largest i with h_{-i} != 0 (0 when h = 0)
  std::vector<std::size_t> complement_indices;  // basis indices spanning the m/h coordinates
};

GradedSubspace make_graded_subspace(const GradedLieAlgebra& g, const Subspace& s);
GradedSubspace centralizer(const GradedLieAlgebra& g, const GradedSubspace& s);

// Adapted basis of an increasing bracket compatible filtration
// T^{-1} c T^{-2} c ... c T^{-depth} = g, with contiguous index blocks per level.
struct AdaptedBasis {
  std::vector<Vec> vectors;        // adapted basis of the ambient algebra
  std::vector<std::size_t> level;  // level[i] = i-th vector sits in T^{-level} \ T^{-level+1}
  Matrix p;                        // columns are the adapted vectors
  Vec coordinates(const Vec& x) const;
};

struct SymbolConstruction {
  GradedLieAlgebra symbol;
  AdaptedBasis basis;
  // Graded image of an ambient subspace in symbol coordinates.
  Subspace graded_image(const Subspace& s, const Filtration& filtration) const;
};

// Associated graded algebra of an increasing filtration of the full algebra.
SymbolConstruction graded_symbol(const LieAlgebra& g, const Filtration& filtration);

struct WeakDerivedFlag {
  Filtration filtration;
  SymbolConstruction construction;
};

// T^{-1} = d, T^{-i-1} = T^{-i} + [d, T^{-i}] until the full algebra is reached.
WeakDerivedFlag weak_derived_flag(const LieAlgebra& g, const Subspace& d);

// Completes a partial increasing filtration F^{-1} c ... c F^{-nu} = D by
// T^{-i-1} = T^{-i} + sum_{r+s=i+1} [T^{-r}, T^{-s}] starting at i = nu.
Filtration extend_filtration(const LieAlgebra& g, const Filtration& partial);

}  // namespace tanaka
