#include <doctest.h>

#include <map>
#include <vector>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "tanaka/prolongation.hpp"

using namespace tanaka;

namespace {

// Flatten an action map into the engine's unknown layout: columns
// concatenated in basis order, each over its layer basis.
Vec flatten_map(const ActionMap& u) {
  Vec flat;
  for (const Vec& col : u.columns) flat.insert(flat.end(), col.begin(), col.end());
  return flat;
}

Subspace component_span(const DegreeComponent& c) {
  std::vector<Vec> rows;
  for (const ActionMap& u : c.basis) rows.push_back(flatten_map(u));
  if (rows.empty()) return Subspace(0);
  return Subspace::span(rows[0].size(), rows);
}

// The two solvers express degree >= 1 columns over their own lower-degree
// bases, so flattened coordinates are not directly comparable.  Instead,
// rewrite each brute-force element in the engine's coordinates degree by
// degree; containment in the engine's span plus equal dimensions proves the
// solution spaces equal at every degree.
void compare_with_brute(const GradedLieAlgebra& m, const ProlongConstraints& c,
                        const std::vector<Subspace>& subs, int kmax) {
  ProlongationResult r = prolong(m, c, kmax, /*stop_at_termination=*/false);
  brute::Prolongation b = brute::prolong(m, subs, kmax);
  REQUIRE(r.components.size() == static_cast<std::size_t>(kmax) + 1);

  // engine_coords[j][w]: coefficients of the w-th brute basis element of
  // layer j over the engine's degree-j basis.
  std::vector<std::vector<Vec>> engine_coords(static_cast<std::size_t>(kmax) + 1);

  for (int k = 0; k <= kmax; ++k) {
    CAPTURE(k);
    const DegreeComponent& comp = r.components[static_cast<std::size_t>(k)];
    const auto& layer = b.layers[static_cast<std::size_t>(k)];
    REQUIRE(comp.dim() == layer.size());

    Subspace engine_span = comp.dim() > 0 ? component_span(comp) : Subspace(0);
    for (const brute::Element& el : layer) {
      Vec flat;
      for (std::size_t a = 0; a < m.dim(); ++a) {
        int target = m.degree(a) + k;
        const brute::Row& col = el.columns[a];
        if (target < 0) {
          for (std::size_t idx : m.indices_of_degree(target)) flat.push_back(Rational(col[idx]));
        } else {
          Vec v(r.components[static_cast<std::size_t>(target)].dim(), Rational(0));
          for (std::size_t w = 0; w < col.size(); ++w)
            add_scaled(v, Rational(col[w]), engine_coords[static_cast<std::size_t>(target)][w]);
          flat.insert(flat.end(), v.begin(), v.end());
        }
      }
      auto coords = engine_span.coordinates(flat);
      REQUIRE(coords.has_value());
      engine_coords[static_cast<std::size_t>(k)].push_back(*coords);
    }
  }
}

GradedLieAlgebra abelian(std::size_t n, std::vector<int> degrees) {
  return GradedLieAlgebra(n, std::move(degrees));
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("degree zero derivations of the 3-dimensional Heisenberg algebra") {
  // By hand: u(e1), u(e2) free in the degree -1 slice (4 unknowns), u(e3)
  // forced to (a11 + a22) e3 by the single bracket: dimension 4.
  GradedLieAlgebra m = fixtures::h3();
  DegreeComponent d = der0(m, ProlongConstraints::universal());
  CHECK(d.dim() == 4);
  compare_with_brute(m, ProlongConstraints::universal(), {}, 0);
}

TEST_CASE("Heisenberg prolongation constrained by the two coordinate lines") {
  // Expected by hand: degree dims 2, 2, 1, then zero forever; together with
  // the 3-dimensional base this is the 8-dimensional split simple algebra of
  // traceless 3x3 matrices.
  GradedLieAlgebra m = fixtures::h3();
  std::vector<Subspace> subs = {fixtures::span_of(3, {{1, 0, 0}}),
                                fixtures::span_of(3, {{0, 1, 0}})};
  ProlongationResult r = prolong(m, ProlongConstraints::subalgebra_list(subs), 24);

  CHECK(r.status == ProlongationResult::Status::Terminated);
  CHECK(r.terminated_at == 3);
  CHECK(r.generation_depth == 1);
  CHECK(r.total_dim() == 8);

  std::map<int, std::size_t> expected = {{-2, 1}, {-1, 2}, {0, 2}, {1, 2}, {2, 1}, {3, 0}};
  CHECK(r.dims() == expected);

  compare_with_brute(m, ProlongConstraints::subalgebra_list(subs), subs, 4);
}

TEST_CASE("degree one solve for the coordinate-line pair, by hand") {
  // Unknowns: u(e1), u(e2) over the 2-dimensional degree-0 component and
  // u(e3) over the degree -1 slice: 6 unknowns, 4 independent equations.
  GradedLieAlgebra m = fixtures::h3();
  std::vector<Subspace> subs = {fixtures::span_of(3, {{1, 0, 0}}),
                                fixtures::span_of(3, {{0, 1, 0}})};
  ProlongationResult r = prolong(m, ProlongConstraints::subalgebra_list(subs), 1);
  REQUIRE(r.components.size() >= 2);
  CHECK(r.components[1].dim() == 2);
}

TEST_CASE("Heisenberg prolongation constrained by a line and a plane") {
  // Expected by hand: degree dims 2, 1, 0 -> total 6 (a parabolic of the
  // traceless 3x3 matrices).  u(e3) in <e2> kills one degree-1 parameter.
  GradedLieAlgebra m = fixtures::h3();
  std::vector<Subspace> subs = {
      fixtures::span_of(3, {{1, 0, 0}}),
      fixtures::span_of(3, {{0, 1, 0}, {0, 0, 1}})};
  ProlongationResult r = prolong(m, ProlongConstraints::subalgebra_list(subs), 24);

  CHECK(r.status == ProlongationResult::Status::Terminated);
  CHECK(r.terminated_at == 2);
  CHECK(r.total_dim() == 6);
  std::map<int, std::size_t> expected = {{-2, 1}, {-1, 2}, {0, 2}, {1, 1}, {2, 0}};
  CHECK(r.dims() == expected);

  compare_with_brute(m, ProlongConstraints::subalgebra_list(subs), subs, 3);
}

TEST_CASE("universal prolongation of the line never terminates") {
  GradedLieAlgebra m = abelian(1, {-1});
  ProlongationResult r = prolong(m, ProlongConstraints::universal(), 5);
  CHECK(r.status == ProlongationResult::Status::Capped);
  CHECK(r.terminated_at == -1);
  for (const DegreeComponent& c : r.components) CHECK(c.dim() == 1);
  CHECK(r.components.size() == 6);
}

TEST_CASE("universal prolongation of abelian space matches polynomial fields") {
  // Formal vector fields with polynomial coefficients: the degree-k component
  // has dimension n * C(n + k, k + 1).
  for (std::size_t n : {2u, 3u}) {
    CAPTURE(n);
    GradedLieAlgebra m = abelian(n, std::vector<int>(n, -1));
    ProlongationResult r = prolong(m, ProlongConstraints::universal(), 3, false);
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(k);
      CHECK(r.components[static_cast<std::size_t>(k)].dim() ==
            n * binom(n + static_cast<std::size_t>(k), static_cast<std::size_t>(k) + 1));
    }
    CHECK(r.status == ProlongationResult::Status::Capped);
  }
}

TEST_CASE("universal Heisenberg prolongation is the contact algebra") {
  GradedLieAlgebra m = fixtures::h3();
  ProlongationResult r = prolong(m, ProlongConstraints::universal(), 10);
  CHECK(r.status == ProlongationResult::Status::Capped);
  REQUIRE(r.components.size() == 11);
  for (const DegreeComponent& c : r.components) CHECK(c.dim() > 0);
  CHECK(r.components[0].dim() == 4);
  CHECK(r.components[1].dim() == 6);

  compare_with_brute(m, ProlongConstraints::universal(), {}, 3);
}

TEST_CASE("brute-force cross-check over the fixture corpus") {
  SUBCASE("m4 universal") { compare_with_brute(fixtures::m4(), ProlongConstraints::universal(), {}, 3); }
  SUBCASE("h5 universal") { compare_with_brute(fixtures::h5(), ProlongConstraints::universal(), {}, 2); }
  SUBCASE("free two-generator depth-3 universal") {
    compare_with_brute(fixtures::free_2_3(), ProlongConstraints::universal(), {}, 2);
  }
  SUBCASE("free three-generator depth-2 universal") {
    compare_with_brute(fixtures::free_3_2(), ProlongConstraints::universal(), {}, 2);
  }
  SUBCASE("free two-generator depth-4 universal") {
    compare_with_brute(fixtures::free_2_4(), ProlongConstraints::universal(), {}, 2);
  }
  SUBCASE("m4 with a line pair") {
    GradedLieAlgebra m = fixtures::m4();
    std::vector<Subspace> subs = {fixtures::span_of(4, {{1, 0, 0, 0}}),
                                  fixtures::span_of(4, {{0, 1, 0, 0}})};
    compare_with_brute(m, ProlongConstraints::subalgebra_list(subs), subs, 3);
  }
  SUBCASE("h5 with a plane pair") {
    GradedLieAlgebra m = fixtures::h5();
    std::vector<Subspace> subs = {
        fixtures::span_of(5, {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}}),
        fixtures::span_of(5, {{0, 1, 0, 0, 0}, {0, 0, 0, 1, 0}})};
    compare_with_brute(m, ProlongConstraints::subalgebra_list(subs), subs, 3);
  }
}

TEST_CASE("termination reports the first vanishing window only") {
  GradedLieAlgebra m = fixtures::h3();
  std::vector<Subspace> subs = {fixtures::span_of(3, {{1, 0, 0}}),
                                fixtures::span_of(3, {{0, 1, 0}})};
  ProlongationResult r = prolong(m, ProlongConstraints::subalgebra_list(subs), 8, false);
  CHECK(r.status == ProlongationResult::Status::Terminated);
  CHECK(r.terminated_at == 3);
  REQUIRE(r.components.size() == 9);
  for (int k = 3; k <= 8; ++k) CHECK(r.components[static_cast<std::size_t>(k)].dim() == 0);
}

TEST_CASE("termination window length follows the generation depth") {
  // Degrees -1, -2 with no brackets: m is not fundamental, the -2 slice is a
  // separate generator level, so two consecutive zero degrees are required.
  GradedLieAlgebra m = abelian(2, {-1, -2});
  CHECK(m.generation_depth() == 2);
  ProlongationResult r = prolong(m, ProlongConstraints::universal(), 24);
  CHECK(r.generation_depth == 2);
}

TEST_CASE("prescribed degree-zero part: canonicalization and prolongation") {
  GradedLieAlgebra m = fixtures::h3();

  // Stabilizer of the coordinate-line pair, spanned redundantly.
  Matrix d1 = Matrix::identity(3);              // diag(1,1) acting as 2 on e3
  d1.at(2, 2) = 2;
  Matrix d2(3, 3);                              // diag(1,0) acting as 1 on e3
  d2.at(0, 0) = 1;
  d2.at(2, 2) = 1;
  Matrix d3 = d1;                               // redundant sum d1 = d2 + (diag(0,1)+e3)
  ProlongationResult r =
      prolong(m, ProlongConstraints::prescribed_g0({d1, d2, d3}), 24);
  CHECK(r.components[0].dim() == 2);
  CHECK(r.g0_bracket_closed);

  // Same degrees as the subalgebra-list run for the coordinate-line pair.
  std::vector<Subspace> subs = {fixtures::span_of(3, {{1, 0, 0}}),
                                fixtures::span_of(3, {{0, 1, 0}})};
  ProlongationResult rs = prolong(m, ProlongConstraints::subalgebra_list(subs), 24);
  CHECK(r.dims() == rs.dims());
  CHECK(r.status == rs.status);
  CHECK(r.terminated_at == rs.terminated_at);
  REQUIRE(r.components.size() == rs.components.size());
  for (std::size_t k = 0; k < r.components.size(); ++k) {
    CAPTURE(k);
    CHECK(component_span(r.components[k]) == component_span(rs.components[k]));
  }
}

TEST_CASE("prescribed degree-zero part: validation") {
  GradedLieAlgebra m = fixtures::h3();

  SUBCASE("wrong shape") {
    CHECK_THROWS_AS(der0(m, ProlongConstraints::prescribed_g0({Matrix(2, 2)})), Error);
  }
  SUBCASE("not degree preserving") {
    Matrix u(3, 3);
    u.at(0, 2) = 1;  // e3 -> e1 raises the degree
    try {
      der0(m, ProlongConstraints::prescribed_g0({u}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotADerivation);
    }
  }
  SUBCASE("not a derivation") {
    Matrix u(3, 3);
    u.at(0, 0) = 1;  // e1 -> e1, e3 -> 0 violates the single bracket
    CHECK_THROWS_AS(der0(m, ProlongConstraints::prescribed_g0({u})), Error);
    try {
      der0(m, ProlongConstraints::prescribed_g0({u}));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotADerivation);
    }
  }
  SUBCASE("span not closed under commutators sets the warning flag") {
    Matrix n1(3, 3);
    n1.at(1, 0) = 1;  // e1 -> e2
    Matrix n2(3, 3);
    n2.at(0, 1) = 1;  // e2 -> e1
    ProlongationResult r = prolong(m, ProlongConstraints::prescribed_g0({n1, n2}), 2);
    CHECK(r.components[0].dim() == 2);
    CHECK_FALSE(r.g0_bracket_closed);
  }
}

TEST_CASE("subalgebra-list validation") {
  GradedLieAlgebra m = fixtures::m4();
  SUBCASE("non-graded subspace is rejected") {
    std::vector<Subspace> subs = {
        fixtures::span_of(4, {{1, 0, 1, 0}})};  // mixes degrees -1 and -2
    CHECK_THROWS_AS(der0(m, ProlongConstraints::subalgebra_list(subs)), Error);
  }
  SUBCASE("graded subspace that is not a subalgebra is rejected") {
    std::vector<Subspace> subs = {
        fixtures::span_of(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})};  // [e1,e2]=e3 escapes
    try {
      der0(m, ProlongConstraints::subalgebra_list(subs));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotGradedSubalgebra);
    }
  }
  SUBCASE("ambient mismatch is rejected") {
    std::vector<Subspace> subs = {fixtures::span_of(3, {{1, 0, 0}})};
    CHECK_THROWS_AS(der0(m, ProlongConstraints::subalgebra_list(subs)), Error);
  }
}

TEST_CASE("centralizer slices and induced endomorphisms for the line pair") {
  GradedLieAlgebra m = fixtures::h3();
  std::vector<Subspace> subs = {fixtures::span_of(3, {{1, 0, 0}}),
                                fixtures::span_of(3, {{0, 1, 0}})};
  ProlongationResult r = prolong(m, ProlongConstraints::subalgebra_list(subs), 24);

  HSlices h = h_slices(r);
  // [m,m] = <e3> is central, so the negative part is all of m; in degree 0
  // only the traceless diagonal kills e3; higher degrees act nontrivially.
  std::map<int, std::size_t> expected = {{-2, 1}, {-1, 2}, {0, 1}, {1, 0}, {2, 0}, {3, 0}};
  CHECK(h.dims == expected);
  CHECK(h.negative_centralizer == Subspace::full(3));
  REQUIRE(h.coefficient_bases.at(0).size() == 1);

  ASubspace a = a_subspace(r);
  CHECK(a.v_indices == std::vector<std::size_t>{0, 1});
  CHECK(a.maps.dim() == 1);
  // The induced map on m/[m,m] is diag(1,-1), row-major (1, 0, 0, -1).
  CHECK(a.maps == fixtures::span_of(4, {{1, 0, 0, -1}}));
}

TEST_CASE("centralizer slices for the universal Heisenberg prolongation") {
  GradedLieAlgebra m = fixtures::h3();
  ProlongationResult r = prolong(m, ProlongConstraints::universal(), 4);
  HSlices h = h_slices(r);
  // Degree 0: derivations killing e3 are the traceless maps on the -1 slice.
  CHECK(h.dims.at(0) == 3);
  ASubspace a = a_subspace(r);
  CHECK(a.maps.dim() == 3);
  // All induced maps are traceless.
  for (const Vec& f : a.maps.basis()) CHECK(f[0] + f[3] == 0);
}

TEST_CASE("prolongation rejects a negative degree cap") {
  GradedLieAlgebra m = fixtures::h3();
  CHECK_THROWS_AS(prolong(m, ProlongConstraints::universal(), -1), Error);
}
