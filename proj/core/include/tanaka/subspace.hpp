#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tanaka/matrix.hpp"

namespace tanaka {

// Linear subspace of Q^n, stored as the reduced row echelon basis of its
// span.  Two Subspace values are equal iff they are the same subspace, so
// structural equality is semantic equality.
class Subspace {
public:
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  // Residual of v after eliminating against the basis; zero iff v is a member.
  Vec reduce(const Vec& v) const;

  // Coefficients of v over basis(), if v is a member.
  std::optional<Vec> coordinates(const Vec& v) const;

  // Row space of the matrices R with R v = 0 iff v is a member; used to turn
  // membership conditions into equation rows.
  Matrix annihilator() const;

  bool operator==(const Subspace& rhs) const = default;

private:
  std::size_t ambient_;
  std::vector<Vec> basis_;
};

Subspace kernel(const Matrix& m);

// (sum, intersection); checks dim(a) + dim(b) == dim(sum) + dim(intersection).
std::pair<Subspace, Subspace> sum_and_intersect(const Subspace& a, const Subspace& b);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

// Solves A x = b; nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

}  // namespace tanaka
