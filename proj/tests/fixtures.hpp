#pragma once

#include <vector>

#include "tanaka/lie_algebra.hpp"

namespace fixtures {

using tanaka::GradedLieAlgebra;
using tanaka::Rational;
using tanaka::Subspace;
using tanaka::Vec;

inline Vec vec(std::vector<long> entries) {
  Vec v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

inline Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, Rational(0));
  v[i] = 1;
  return v;
}

inline Subspace span_of(std::size_t n, std::vector<std::vector<long>> rows) {
  std::vector<Vec> vs;
  for (auto& r : rows) vs.push_back(vec(r));
  return Subspace::span(n, vs);
}

// Heisenberg algebra: [e1, e2] = e3.
inline GradedLieAlgebra h3() {
  GradedLieAlgebra g(3, {-1, -1, -2});
  g.set_bracket(0, 1, vec({0, 0, 1}));
  return g;
}

// [e1, e2] = e3, [e1, e3] = e4.
inline GradedLieAlgebra m4() {
  GradedLieAlgebra g(4, {-1, -1, -2, -3});
  g.set_bracket(0, 1, vec({0, 0, 1, 0}));
  g.set_bracket(0, 2, vec({0, 0, 0, 1}));
  return g;
}

// [e1, e2] = e5 = [e3, e4].
inline GradedLieAlgebra h5() {
  GradedLieAlgebra g(5, {-1, -1, -1, -1, -2});
  g.set_bracket(0, 1, vec({0, 0, 0, 0, 1}));
  g.set_bracket(2, 3, vec({0, 0, 0, 0, 1}));
  return g;
}

// Free nilpotent on two generators, depth 3: x3 = [x1,x2], x4 = [x1,x3], x5 = [x2,x3].
inline GradedLieAlgebra free_2_3() {
  GradedLieAlgebra g(5, {-1, -1, -2, -3, -3});
  g.set_bracket(0, 1, vec({0, 0, 1, 0, 0}));
  g.set_bracket(0, 2, vec({0, 0, 0, 1, 0}));
  g.set_bracket(1, 2, vec({0, 0, 0, 0, 1}));
  return g;
}

// Free nilpotent on three generators, depth 2.
inline GradedLieAlgebra free_3_2() {
  GradedLieAlgebra g(6, {-1, -1, -1, -2, -2, -2});
  g.set_bracket(0, 1, vec({0, 0, 0, 1, 0, 0}));
  g.set_bracket(0, 2, vec({0, 0, 0, 0, 1, 0}));
  g.set_bracket(1, 2, vec({0, 0, 0, 0, 0, 1}));
  return g;
}

// Free nilpotent on two generators, depth 4, Hall basis
// x1, x2 | x3 = [x1,x2] | x4 = [x1,x3], x5 = [x2,x3] |
// x6 = [x1,x4], x7 = [x2,x4] = [x1,x5], x8 = [x2,x5].
inline GradedLieAlgebra free_2_4() {
  GradedLieAlgebra g(8, {-1, -1, -2, -3, -3, -4, -4, -4});
  g.set_bracket(0, 1, vec({0, 0, 1, 0, 0, 0, 0, 0}));
  g.set_bracket(0, 2, vec({0, 0, 0, 1, 0, 0, 0, 0}));
  g.set_bracket(1, 2, vec({0, 0, 0, 0, 1, 0, 0, 0}));
  g.set_bracket(0, 3, vec({0, 0, 0, 0, 0, 1, 0, 0}));
  g.set_bracket(1, 3, vec({0, 0, 0, 0, 0, 0, 1, 0}));
  g.set_bracket(0, 4, vec({0, 0, 0, 0, 0, 0, 1, 0}));
  g.set_bracket(1, 4, vec({0, 0, 0, 0, 0, 0, 0, 1}));
  return g;
}

// Jacobi violation on (e1, e2, e3): the cyclic sum equals e5.
inline GradedLieAlgebra broken_jacobi5() {
  GradedLieAlgebra g(5, {-1, -1, -2, -3, -4});
  g.set_bracket(0, 1, vec({0, 0, 1, 0, 0}));
  g.set_bracket(0, 2, vec({0, 0, 0, 1, 0}));
  g.set_bracket(1, 3, vec({0, 0, 0, 0, 1}));
  return g;
}

}  // namespace fixtures
