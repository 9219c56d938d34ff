#include "tanaka/prolongation.hpp"

#include <algorithm>

namespace tanaka {

namespace {

// Degree indexed tower over m: layer j is the degree j slice of m for j < 0
// and the computed component g_j for j >= 0.
class Tower {
public:
  Tower(const GradedLieAlgebra& m, const ProlongConstraints& c) : m_(m), c_(c) {
    if (c.mode == ProlongConstraints::Mode::SubalgebraList) {
      for (const Subspace& s : c.subalgebras) {
        if (s.ambient_dim() != m.dim())
          fail(Errc::AmbientMismatch, "constraint subspace not in the algebra");
        if (!m.is_graded_subspace(s))
          fail(Errc::NotGradedSubalgebra, "constraint subspace is not graded");
        if (!m.is_subalgebra(s))
          fail(Errc::NotGradedSubalgebra, "constraint subspace is not a subalgebra");
      }
    }
  }

  std::size_t layer_dim(int j) const {
    if (j < 0) return m_.dim_of_degree(j);
    return j < static_cast<int>(comps_.size()) ? comps_[j].dim() : 0;
  }

  // [w, e_b] for the w-th basis element of layer j, as coefficients over
  // layer j + deg(b).  For j >= 0 this is the action map evaluated at e_b.
  Vec action(int j, std::size_t w, std::size_t b) const {
    if (j < 0) {
      std::size_t idx = m_.indices_of_degree(j)[w];
      Vec z = m_.bracket_basis(idx, b);
      return slice_coords(z, j + m_.degree(b));
    }
    return comps_[j].basis[w].columns[b];
  }

  Vec slice_coords(const Vec& full, int degree) const {
    const auto& idx = m_.indices_of_degree(degree);
    Vec out(idx.size(), Rational(0));
    for (std::size_t t = 0; t < idx.size(); ++t) out[t] = full[idx[t]];
    return out;
  }

  Vec expand_slice(const Vec& coeffs, int degree) const {
    const auto& idx = m_.indices_of_degree(degree);
    Vec out = zero_vec(m_.dim());
    for (std::size_t t = 0; t < idx.size(); ++t) out[idx[t]] = coeffs[t];
    return out;
  }

  DegreeComponent solve_degree(int k) const {
    std::size_t n = m_.dim();
    std::vector<std::size_t> offset(n, 0), size(n, 0);
    std::size_t total = 0;
    for (std::size_t a = 0; a < n; ++a) {
      offset[a] = total;
      size[a] = layer_dim(m_.degree(a) + k);
      total += size[a];
    }

    DegreeComponent comp;
    comp.degree = k;
    if (total == 0) return comp;

    std::vector<Vec> rows;

    // Leibniz rows: u([e_a, e_b]) = [u(e_a), e_b] + [e_a, u(e_b)].
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        int target = m_.degree(a) + m_.degree(b) + k;
        std::size_t rows_here = layer_dim(target);
        if (rows_here == 0) continue;
        std::vector<Vec> block(rows_here, zero_vec(total));
        Vec lie = m_.bracket_basis(a, b);
        for (std::size_t q = 0; q < n; ++q) {
          if (sgn(lie[q]) == 0) continue;
          // u(e_q) lives in the same layer as the target.
          for (std::size_t t = 0; t < rows_here; ++t) block[t][offset[q] + t] += lie[q];
        }
        for (std::size_t w = 0; w < size[a]; ++w) {
          Vec v = action(m_.degree(a) + k, w, b);
          for (std::size_t t = 0; t < rows_here; ++t)
            if (sgn(v[t]) != 0) block[t][offset[a] + w] -= v[t];
        }
        for (std::size_t w = 0; w < size[b]; ++w) {
          Vec v = action(m_.degree(b) + k, w, a);
          for (std::size_t t = 0; t < rows_here; ++t)
            if (sgn(v[t]) != 0) block[t][offset[b] + w] += v[t];
        }
        for (Vec& r : block)
          if (!is_zero(r)) rows.push_back(std::move(r));
      }

    // [u, e_l] c e_l + non-negative part: u((e_l)_i) c (e_l)_{i+k} when i + k < 0.
    if (c_.mode == ProlongConstraints::Mode::SubalgebraList) {
      for (const Subspace& s : c_.subalgebras)
        for (const auto& [i, sdim] : m_.dims_by_degree()) {
          (void)sdim;
          if (i + k >= 0) continue;
          Subspace source = m_.degree_slice(s, i);
          if (source.dim() == 0) continue;
          Subspace target = m_.degree_slice(s, i + k);
          std::vector<Vec> target_slice;
          for (const Vec& t : target.basis()) target_slice.push_back(slice_coords(t, i + k));
          Matrix ann = Subspace::span(m_.dim_of_degree(i + k), target_slice).annihilator();
          const auto& src_idx = m_.indices_of_degree(i);
          for (const Vec& v : source.basis())
            for (std::size_t r = 0; r < ann.rows(); ++r) {
              Vec row = zero_vec(total);
              bool nonzero = false;
              for (std::size_t p = 0; p < src_idx.size(); ++p) {
                std::size_t a = src_idx[p];
                if (sgn(v[a]) == 0) continue;
                for (std::size_t w = 0; w < size[a]; ++w)
                  if (sgn(ann.at(r, w)) != 0) {
                    row[offset[a] + w] += v[a] * ann.at(r, w);
                    nonzero = true;
                  }
              }
              if (nonzero) rows.push_back(std::move(row));
            }
        }
    }

    Subspace solutions = kernel(Matrix::from_rows(rows, total));
    for (const Vec& sol : solutions.basis()) {
      ActionMap u;
      u.degree = k;
      u.columns.resize(n);
      for (std::size_t a = 0; a < n; ++a) {
        Vec col(size[a], Rational(0));
        for (std::size_t w = 0; w < size[a]; ++w) col[w] = sol[offset[a] + w];
        u.columns[a] = std::move(col);
      }
      comp.basis.push_back(std::move(u));
    }
    return comp;
  }

  DegreeComponent prescribed_g0_component(bool* closed) const {
    std::size_t n = m_.dim();
    for (const Matrix& g : c_.g0) {
      if (g.rows() != n || g.cols() != n)
        fail(Errc::AmbientMismatch, "prescribed map has the wrong shape");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (sgn(g.at(i, j)) != 0 && m_.degree(i) != m_.degree(j))
            fail(Errc::NotADerivation, "prescribed map is not degree preserving");
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          Vec lhs = g.apply(m_.bracket_basis(a, b));
          Vec rhs = m_.bracket(g.col(a), unit(n, b));
          add_scaled(rhs, Rational(1), m_.bracket(unit(n, a), g.col(b)));
          add_scaled(lhs, Rational(-1), rhs);
          if (!is_zero(lhs)) fail(Errc::NotADerivation, "prescribed map violates the Leibniz rule");
        }
    }

    std::vector<Vec> flat;
    for (const Matrix& g : c_.g0) flat.push_back(g.flattened());
    Subspace span = Subspace::span(n * n, flat);

    *closed = true;
    std::vector<Matrix> canonical;
    for (const Vec& v : span.basis()) canonical.push_back(Matrix::from_flat(v, n, n));
    for (std::size_t i = 0; i < canonical.size() && *closed; ++i)
      for (std::size_t j = i + 1; j < canonical.size(); ++j) {
        Matrix comm = canonical[i] * canonical[j] - canonical[j] * canonical[i];
        if (!span.contains(comm.flattened())) {
          *closed = false;
          break;
        }
      }

    DegreeComponent comp;
    comp.degree = 0;
    for (const Matrix& g : canonical) {
      ActionMap u;
      u.degree = 0;
      u.columns.resize(n);
      for (std::size_t a = 0; a < n; ++a) u.columns[a] = slice_coords(g.col(a), m_.degree(a));
      comp.basis.push_back(std::move(u));
    }
    return comp;
  }

  void push(DegreeComponent comp) { comps_.push_back(std::move(comp)); }
  const std::vector<DegreeComponent>& components() const { return comps_; }

private:
  static Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, Rational(0));
    v[i] = 1;
    return v;
  }

  const GradedLieAlgebra& m_;
  const ProlongConstraints& c_;
  std::vector<DegreeComponent> comps_;
};

}  // namespace

DegreeComponent der0(const GradedLieAlgebra& m, const ProlongConstraints& c) {
  Tower tower(m, c);
  if (c.mode == ProlongConstraints::Mode::PrescribedG0) {
    bool closed = true;
    return tower.prescribed_g0_component(&closed);
  }
  return tower.solve_degree(0);
}

ProlongationResult prolong(const GradedLieAlgebra& m, const ProlongConstraints& c, int max_degree,
                           bool stop_at_termination) {
  if (max_degree < 0) fail(Errc::InvalidArgument, "negative degree cap");
  ProlongationResult result;
  result.algebra = m;
  result.constraints = c;
  result.max_degree = max_degree;
  result.generation_depth = std::max<std::size_t>(m.generation_depth(), 1);

  Tower tower(m, c);
  std::size_t zero_run = 0;
  for (int k = 0; k <= max_degree; ++k) {
    DegreeComponent comp;
    if (k == 0 && c.mode == ProlongConstraints::Mode::PrescribedG0)
      comp = tower.prescribed_g0_component(&result.g0_bracket_closed);
    else
      comp = tower.solve_degree(k);
    zero_run = comp.dim() == 0 ? zero_run + 1 : 0;
    tower.push(std::move(comp));
    if (zero_run >= result.generation_depth && result.terminated_at < 0) {
      result.status = ProlongationResult::Status::Terminated;
      result.terminated_at = k;
      if (stop_at_termination) break;
    }
  }
  result.components = tower.components();
  if (result.terminated_at < 0) result.status = ProlongationResult::Status::Capped;
  return result;
}

std::map<int, std::size_t> ProlongationResult::dims() const {
  std::map<int, std::size_t> d = algebra.dims_by_degree();
  for (const DegreeComponent& c : components) d[c.degree] = c.dim();
  return d;
}

std::size_t ProlongationResult::total_dim() const {
  std::size_t total = algebra.dim();
  for (const DegreeComponent& c : components) total += c.dim();
  return total;
}

HSlices h_slices(const ProlongationResult& r) {
  const GradedLieAlgebra& m = r.algebra;
  std::size_t n = m.dim();
  std::vector<Vec> spanning;
  for (const auto& [ij, value] : m.stored_brackets()) spanning.push_back(value);
  Subspace h = Subspace::span(n, spanning);

  HSlices out;
  out.negative_centralizer = m.centralizer_of(h);
  for (const auto& [d, cnt] : m.dims_by_degree()) {
    (void)cnt;
    out.dims[d] = m.degree_slice(out.negative_centralizer, d).dim();
  }

  // Homogeneous basis of h per degree, in slice coordinates.
  for (const DegreeComponent& comp : r.components) {
    int k = comp.degree;
    std::size_t d_k = comp.dim();
    if (d_k == 0) {
      out.dims[k] = 0;
      out.coefficient_bases[k] = {};
      continue;
    }
    std::vector<Vec> rows;
    for (const auto& [deg, cnt] : m.dims_by_degree()) {
      (void)cnt;
      Subspace slice = m.degree_slice(h, deg);
      const auto& idx = m.indices_of_degree(deg);
      std::size_t target_dim;
      if (deg + k >= 0)
        target_dim = deg + k < static_cast<int>(r.components.size())
                         ? r.components[deg + k].dim()
                         : 0;
      else
        target_dim = m.dim_of_degree(deg + k);
      if (target_dim == 0) continue;
      for (const Vec& w : slice.basis()) {
        std::vector<Vec> cols(d_k);
        for (std::size_t c = 0; c < d_k; ++c) {
          Vec val(target_dim, Rational(0));
          for (std::size_t p = 0; p < idx.size(); ++p) {
            std::size_t a = idx[p];
            if (sgn(w[a]) == 0) continue;
            add_scaled(val, w[a], comp.basis[c].columns[a]);
          }
          cols[c] = std::move(val);
        }
        for (std::size_t t = 0; t < target_dim; ++t) {
          Vec row(d_k, Rational(0));
          bool nonzero = false;
          for (std::size_t c = 0; c < d_k; ++c)
            if (sgn(cols[c][t]) != 0) {
              row[c] = cols[c][t];
              nonzero = true;
            }
          if (nonzero) rows.push_back(std::move(row));
        }
      }
    }
    Subspace sol = kernel(Matrix::from_rows(rows, d_k));
    out.dims[k] = sol.dim();
    out.coefficient_bases[k] = sol.basis();
  }
  return out;
}

ASubspace a_subspace(const ProlongationResult& r) {
  const GradedLieAlgebra& m = r.algebra;
  std::size_t n = m.dim();
  std::vector<Vec> spanning;
  for (const auto& [ij, value] : m.stored_brackets()) spanning.push_back(value);
  Subspace h = Subspace::span(n, spanning);

  std::vector<bool> is_pivot(n, false);
  for (const Vec& b : h.basis()) {
    std::size_t p = 0;
    while (p < n && sgn(b[p]) == 0) ++p;
    is_pivot[p] = true;
  }
  ASubspace out;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) out.v_indices.push_back(i);
  std::size_t dim_v = out.v_indices.size();
  std::vector<std::size_t> v_pos(n, 0);
  for (std::size_t p = 0; p < dim_v; ++p) v_pos[out.v_indices[p]] = p;

  HSlices hs = h_slices(r);
  std::vector<Vec> flats;
  for (const auto& [k, coeff_basis] : hs.coefficient_bases) {
    const DegreeComponent& comp = r.components[k];
    for (const Vec& coeffs : coeff_basis) {
      Vec flat(dim_v * dim_v, Rational(0));
      for (std::size_t cpos = 0; cpos < dim_v; ++cpos) {
        std::size_t a = out.v_indices[cpos];
        int target = m.degree(a) + k;
        if (target >= 0) continue;
        std::size_t layer = m.dim_of_degree(target);
        Vec val(layer, Rational(0));
        for (std::size_t c = 0; c < comp.dim(); ++c)
          if (sgn(coeffs[c]) != 0) add_scaled(val, coeffs[c], comp.basis[c].columns[a]);
        // Expand to m, project modulo h, read off the complement coordinates.
        const auto& idx = m.indices_of_degree(target);
        Vec full = zero_vec(n);
        for (std::size_t t = 0; t < layer; ++t) full[idx[t]] = val[t];
        Vec residue = h.reduce(full);
        for (std::size_t i = 0; i < n; ++i)
          if (sgn(residue[i]) != 0) flat[v_pos[i] * dim_v + cpos] = residue[i];
      }
      flats.push_back(std::move(flat));
    }
  }
  out.maps = Subspace::span(dim_v * dim_v, flats);
  return out;
}

}  // namespace tanaka
