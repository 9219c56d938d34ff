#include "tanaka/pseudo_product.hpp"

#include <string>
#include <utility>

namespace tanaka {

namespace {

// {x in a : [x, b_j] in c for every basis vector b_j of b}.
Subspace ad_transporter(const LieAlgebra& g, const Subspace& a, const Subspace& b,
                        const Subspace& c) {
  const std::size_t n = g.dim();
  const std::size_t k = a.dim();
  if (k == 0) return Subspace(n);
  Matrix ann = c.annihilator();
  std::vector<Vec> rows;
  for (const Vec& bv : b.basis()) {
    std::vector<Vec> images;
    images.reserve(k);
    for (const Vec& av : a.basis()) images.push_back(g.bracket(av, bv));
    for (std::size_t r = 0; r < ann.rows(); ++r) {
      Vec row = zero_vec(k);
      for (std::size_t i = 0; i < k; ++i) {
        Rational entry(0);
        for (std::size_t col = 0; col < n; ++col) entry += ann.at(r, col) * images[i][col];
        row[i] = entry;
      }
      rows.push_back(std::move(row));
    }
  }
  Subspace coeff = kernel(Matrix::from_rows(rows, k));
  std::vector<Vec> vectors;
  vectors.reserve(coeff.dim());
  for (const Vec& cv : coeff.basis()) {
    Vec v = zero_vec(n);
    for (std::size_t i = 0; i < k; ++i) add_scaled(v, cv[i], a.basis()[i]);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(n, vectors);
}

bool brackets_into(const LieAlgebra& g, const Subspace& a, const Subspace& b,
                   const Subspace& target) {
  for (const Vec& x : a.basis())
    for (const Vec& y : b.basis())
      if (!target.contains(g.bracket(x, y))) return false;
  return true;
}

}  // namespace

SymbolTriple make_symbol(const GradedLieAlgebra& m, std::vector<Subspace> subalgebras) {
  for (std::size_t l = 0; l < subalgebras.size(); ++l) {
    const Subspace& s = subalgebras[l];
    if (s.ambient_dim() != m.dim())
      fail(Errc::AmbientMismatch, "subalgebra " + std::to_string(l + 1) + " lives in dimension " +
                                      std::to_string(s.ambient_dim()) + ", the algebra in " +
                                      std::to_string(m.dim()));
    if (!m.is_graded_subspace(s))
      fail(Errc::NotGradedSubalgebra,
           "subalgebra " + std::to_string(l + 1) + " is not spanned by homogeneous vectors");
    if (!m.is_subalgebra(s))
      fail(Errc::NotGradedSubalgebra,
           "subalgebra " + std::to_string(l + 1) + " is not closed under the bracket");
  }

  bool trivial = true;
  for (std::size_t i = 0; i < subalgebras.size(); ++i)
    for (std::size_t j = i + 1; j < subalgebras.size(); ++j)
      if (intersect(subalgebras[i], subalgebras[j]).dim() != 0) trivial = false;
  if (subalgebras.size() == 2 && !trivial)
    fail(Errc::NontrivialIntersection, "the two subalgebras meet in a nonzero subspace");

  Subspace joint(m.dim());
  for (const Subspace& s : subalgebras) joint = sum(joint, s);
  bool generating = m.generates(joint);

  return SymbolTriple{m, std::move(subalgebras), trivial, generating};
}

LeviKernels levi_kernels(const SymbolTriple& t) {
  if (t.subalgebras.size() != 2)
    fail(Errc::InvalidArgument, "the bracket pairing kernels need exactly two subalgebras, got " +
                                    std::to_string(t.subalgebras.size()));
  const Subspace& e = t.subalgebras[0];
  const Subspace& f = t.subalgebras[1];
  Subspace left = intersect(e, t.m.centralizer_of(f));
  Subspace right = intersect(f, t.m.centralizer_of(e));
  bool nondegenerate = left.dim() == 0 && right.dim() == 0;
  return LeviKernels{make_graded_subspace(t.m, left), make_graded_subspace(t.m, right),
                     nondegenerate};
}

FreemanState freeman(const GradedLieAlgebra& g, const std::vector<Subspace>& e_filtration,
                     const Subspace& f, FTermConvention convention) {
  if (e_filtration.empty())
    fail(Errc::InvalidArgument, "the source filtration needs at least one term");
  for (const Subspace& s : e_filtration)
    if (s.ambient_dim() != g.dim())
      fail(Errc::AmbientMismatch, "filtration term ambient dimension mismatch");
  if (f.ambient_dim() != g.dim())
    fail(Errc::AmbientMismatch, "complement ambient dimension mismatch");

  const Subspace& bottom = e_filtration.front();
  const Subspace& top = e_filtration.back();

  for (std::size_t i = 0; i + 1 < e_filtration.size(); ++i) {
    Subspace expected = e_filtration[i];
    for (const Vec& x : bottom.basis())
      for (const Vec& y : e_filtration[i].basis())
        expected = sum(expected, Subspace::span(g.dim(), {g.bracket(x, y)}));
    if (!(expected == e_filtration[i + 1]))
      fail(Errc::PrerequisiteViolated,
           "filtration term " + std::to_string(i + 2) +
               " is not the previous term plus its brackets with the bottom term");
  }
  if (!brackets_into(g, bottom, top, top))
    fail(Errc::PrerequisiteViolated,
         "the top filtration term is not closed under brackets with the bottom term");
  if (intersect(top, f).dim() != 0)
    fail(Errc::NontrivialIntersection, "the filtered subalgebra meets the complement");

  FreemanState st{g,  e_filtration, f, convention, {}, {},
                  0,  0,            false,         std::nullopt};

  Subspace cur = ad_transporter(g, bottom, f, sum(bottom, f));
  st.e_down.push_back(cur);
  while (true) {
    Subspace next = ad_transporter(g, st.e_down.back(), f, sum(st.e_down.back(), f));
    if (next == st.e_down.back()) {
      st.e_stable_at = st.e_down.size() - 1;
      break;
    }
    st.e_down.push_back(std::move(next));
  }

  const Subspace& absorb = convention == FTermConvention::BottomE ? bottom : top;
  st.f_down.push_back(ad_transporter(g, f, bottom, sum(f, absorb)));
  while (true) {
    Subspace next =
        ad_transporter(g, st.f_down.back(), bottom, sum(st.f_down.back(), absorb));
    if (next == st.f_down.back()) {
      st.f_stable_at = st.f_down.size() - 1;
      break;
    }
    st.f_down.push_back(std::move(next));
  }

  st.e0_zero = st.e_down.front().dim() == 0;
  for (std::size_t i = 0; i < st.f_down.size(); ++i)
    if (st.f_down[i].dim() == 0) {
      st.nu = i;
      break;
    }
  return st;
}

OsculationResult osculation_filtration(const FreemanState& state) {
  if (state.e_down.empty() || state.e_down.front().dim() != 0)
    fail(Errc::PreconditionViolated,
         "the refined chain of the filtered subalgebra must vanish at step zero");
  if (!state.nu.has_value())
    fail(Errc::PreconditionViolated,
         "the refined chain of the complement stabilizes without vanishing");

  const GradedLieAlgebra& g = state.g;
  const std::size_t nu = *state.nu;
  const std::size_t mu = state.e_filtration.size();
  const Subspace& top = state.e_filtration.back();
  Subspace joint = sum(top, state.f);

  auto e_term = [&](std::size_t i) -> const Subspace& {
    return i >= mu ? top : state.e_filtration[i - 1];
  };
  auto f_term = [&](std::size_t i) -> const Subspace& {
    return i > nu ? state.f : state.f_down[nu - i];
  };

  Filtration partial;
  partial.direction = Filtration::Direction::Increasing;
  for (std::size_t i = 1;; ++i) {
    Subspace term = sum(e_term(i), f_term(i));
    partial.terms.push_back(term);
    if (term == joint) break;
    if (i > mu + nu + 2)
      fail(Errc::InternalInconsistency, "the osculating chain failed to exhaust the union");
  }

  Filtration filtration = extend_filtration(g, partial);
  SymbolConstruction construction = graded_symbol(g, filtration);
  Subspace graded_e = construction.graded_image(top, filtration);
  Subspace graded_f = construction.graded_image(state.f, filtration);
  SymbolTriple symbol = make_symbol(construction.symbol, {graded_e, graded_f});

  return OsculationResult{nu,
                          std::move(filtration),
                          std::move(construction),
                          std::move(graded_e),
                          std::move(graded_f),
                          std::move(symbol)};
}

FinitenessCertificate finiteness_certificate(const SymbolTriple& t, int max_degree) {
  LeviKernels kernels = levi_kernels(t);
  ProlongationResult pr =
      prolong(t.m, ProlongConstraints::subalgebra_list(t.subalgebras), max_degree);

  using Verdict = FinitenessCertificate::Verdict;
  Verdict verdict;
  if (kernels.nondegenerate && t.generating) {
    if (pr.status != ProlongationResult::Status::Terminated)
      fail(Errc::InternalInconsistency,
           "a nondegenerate generating pair must have a terminating prolongation, but the "
           "computation was capped at degree " +
               std::to_string(pr.max_degree));
    verdict = Verdict::FiniteCertified;
  } else if (pr.status == ProlongationResult::Status::Terminated) {
    verdict = Verdict::FiniteObserved;
  } else {
    verdict = Verdict::Unknown;
  }
  return FinitenessCertificate{verdict, t.generating, std::move(kernels), std::move(pr)};
}

GradedLieAlgebra stabilized_f_quotient(const FreemanState& state) {
  const Subspace& stable = state.f_down[state.f_stable_at];
  if (!state.g.is_graded_subspace(stable))
    fail(Errc::PreconditionViolated,
         "the stabilized term is not graded, so the quotient is unsupported");
  for (std::size_t i = 0; i < state.g.dim(); ++i)
    for (const Vec& v : stable.basis())
      if (!stable.contains(state.g.ad_basis_applied(i, v)))
        fail(Errc::PreconditionViolated,
             "the stabilized term is not an ideal, so the quotient is unsupported");
  return state.g.quotient_by_graded_ideal(stable);
}

}  // namespace tanaka
