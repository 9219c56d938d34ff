#include "tanaka/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace tanaka {

namespace {

// Forward elimination state with rows kept in increasing pivot order.
class Echelon {
public:
  Vec reduce(Vec v) const {
    for (const auto& [pivot, row] : rows_) {
      if (sgn(v[pivot]) == 0) continue;
      Rational f = v[pivot] / row[pivot];
      add_scaled(v, -f, row);
    }
    return v;
  }

  // Returns the reduced residual if independent, empty Vec otherwise.
  Vec insert(const Vec& v) {
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < r.size() && sgn(r[p]) == 0) ++p;
    if (p == r.size()) return {};
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), p,
                                [](const auto& a, std::size_t q) { return a.first < q; });
    rows_.insert(pos, {p, r});
    return r;
  }

  std::size_t dim() const { return rows_.size(); }

private:
  std::vector<std::pair<std::size_t, Vec>> rows_;
};

}  // namespace

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, Vec value) {
  if (i >= j) fail(Errc::InvalidArgument, "brackets are stored for i < j only");
  if (j >= dim_) fail(Errc::InvalidArgument, "bracket index out of range");
  if (value.size() != dim_) fail(Errc::AmbientMismatch, "bracket value of wrong length");
  if (is_zero(value))
    brackets_.erase({i, j});
  else
    brackets_[{i, j}] = std::move(value);
}

Vec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  if (i == j) return zero_vec(dim_);
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = brackets_.find({i, j});
  if (it == brackets_.end()) return zero_vec(dim_);
  return flip ? scaled(it->second, Rational(-1)) : it->second;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    fail(Errc::AmbientMismatch, "bracket operand of wrong length");
  Vec z = zero_vec(dim_);
  for (const auto& [ij, value] : brackets_) {
    auto [i, j] = ij;
    Rational c = x[i] * y[j] - x[j] * y[i];
    if (sgn(c) != 0) add_scaled(z, c, value);
  }
  return z;
}

Vec LieAlgebra::ad_basis_applied(std::size_t i, const Vec& y) const {
  Vec z = zero_vec(dim_);
  for (const auto& [jk, value] : brackets_) {
    auto [j, k] = jk;
    if (j == i && sgn(y[k]) != 0) add_scaled(z, y[k], value);
    if (k == i && sgn(y[j]) != 0) add_scaled(z, -y[j], value);
  }
  return z;
}

ValidationReport LieAlgebra::validate_jacobi() const {
  ValidationReport report;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = j + 1; k < dim_; ++k) {
        // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], using [v, e_a] = -[e_a, v].
        Vec r = zero_vec(dim_);
        add_scaled(r, Rational(-1), ad_basis_applied(k, bracket_basis(i, j)));
        add_scaled(r, Rational(-1), ad_basis_applied(i, bracket_basis(j, k)));
        add_scaled(r, Rational(-1), ad_basis_applied(j, bracket_basis(k, i)));
        if (!is_zero(r)) {
          std::ostringstream msg;
          msg << "Jacobi identity fails on (" << name_of(i) << ", " << name_of(j) << ", "
              << name_of(k) << ")";
          report.issues.push_back(
              {ValidationIssue::Kind::JacobiViolation, i, j, k, msg.str()});
        }
      }
  return report;
}

void LieAlgebra::set_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != dim_)
    fail(Errc::InvalidArgument, "name list length does not match dimension");
  names_ = std::move(names);
}

std::string LieAlgebra::name_of(std::size_t i) const {
  if (i < names_.size()) return names_[i];
  return "e" + std::to_string(i + 1);
}

Subspace LieAlgebra::bracket_closure(const Subspace& seed) const {
  if (seed.ambient_dim() != dim_) fail(Errc::AmbientMismatch, "seed not in the algebra");
  Subspace current = seed;
  for (;;) {
    std::vector<Vec> vectors = current.basis();
    for (std::size_t a = 0; a < current.basis().size(); ++a)
      for (std::size_t b = a + 1; b < current.basis().size(); ++b)
        vectors.push_back(bracket(current.basis()[a], current.basis()[b]));
    Subspace next = Subspace::span(dim_, vectors);
    if (next.dim() == current.dim()) return next;
    current = next;
  }
}

bool LieAlgebra::generates(const Subspace& seed) const {
  return bracket_closure(seed).dim() == dim_;
}

bool LieAlgebra::is_subalgebra(const Subspace& s) const {
  for (std::size_t a = 0; a < s.basis().size(); ++a)
    for (std::size_t b = a + 1; b < s.basis().size(); ++b)
      if (!s.contains(bracket(s.basis()[a], s.basis()[b]))) return false;
  return true;
}

Subspace LieAlgebra::centralizer_of(const Subspace& s) const {
  if (s.ambient_dim() != dim_) fail(Errc::AmbientMismatch, "subspace not in the algebra");
  std::vector<Vec> rows;
  for (const Vec& v : s.basis()) {
    // Row block expressing [x, v] = 0 coordinatewise.
    std::vector<Vec> columns;
    for (std::size_t a = 0; a < dim_; ++a) columns.push_back(ad_basis_applied(a, v));
    for (std::size_t coord = 0; coord < dim_; ++coord) {
      Vec row(dim_, Rational(0));
      bool nonzero = false;
      for (std::size_t a = 0; a < dim_; ++a) {
        row[a] = columns[a][coord];
        if (sgn(row[a]) != 0) nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return kernel(Matrix::from_rows(rows, dim_));
}

GradedLieAlgebra::GradedLieAlgebra(std::size_t dim, std::vector<int> degrees)
    : LieAlgebra(dim), degrees_(std::move(degrees)) {
  if (degrees_.size() != dim) fail(Errc::InvalidArgument, "degree list length mismatch");
  for (std::size_t i = 0; i < dim; ++i) by_degree_[degrees_[i]].push_back(i);
}

int GradedLieAlgebra::depth() const {
  int mu = 0;
  for (int d : degrees_) mu = std::max(mu, -d);
  return mu;
}

const std::vector<std::size_t>& GradedLieAlgebra::indices_of_degree(int d) const {
  static const std::vector<std::size_t> empty;
  auto it = by_degree_.find(d);
  return it == by_degree_.end() ? empty : it->second;
}

std::size_t GradedLieAlgebra::dim_of_degree(int d) const { return indices_of_degree(d).size(); }

std::map<int, std::size_t> GradedLieAlgebra::dims_by_degree() const {
  std::map<int, std::size_t> dims;
  for (const auto& [d, idx] : by_degree_) dims[d] = idx.size();
  return dims;
}

Vec GradedLieAlgebra::project_to_degree(const Vec& x, int d) const {
  if (x.size() != dim_) fail(Errc::AmbientMismatch, "vector not in the algebra");
  Vec out = zero_vec(dim_);
  for (std::size_t i : indices_of_degree(d)) out[i] = x[i];
  return out;
}

bool GradedLieAlgebra::is_graded_subspace(const Subspace& s) const {
  for (const Vec& b : s.basis())
    for (const auto& [d, idx] : by_degree_)
      if (!s.contains(project_to_degree(b, d))) return false;
  return true;
}

Subspace GradedLieAlgebra::degree_slice(const Subspace& s, int d) const {
  std::vector<Vec> vectors;
  for (const Vec& b : s.basis()) vectors.push_back(project_to_degree(b, d));
  Subspace slice = Subspace::span(dim_, vectors);
  // Valid only for graded subspaces; callers check the flag.
  return slice;
}

ValidationReport GradedLieAlgebra::validate() const {
  ValidationReport report;
  for (std::size_t i = 0; i < dim_; ++i)
    if (degrees_[i] >= 0) {
      std::ostringstream msg;
      msg << "basis element " << name_of(i) << " has non-negative degree " << degrees_[i];
      report.issues.push_back({ValidationIssue::Kind::NonNegativeDegree, i, 0, 0, msg.str()});
    }
  for (const auto& [ij, value] : brackets_) {
    auto [i, j] = ij;
    int expected = degrees_[i] + degrees_[j];
    for (std::size_t k = 0; k < dim_; ++k)
      if (sgn(value[k]) != 0 && degrees_[k] != expected) {
        std::ostringstream msg;
        msg << "[" << name_of(i) << ", " << name_of(j) << "] has a component on " << name_of(k)
            << " of degree " << degrees_[k] << ", expected " << expected;
        report.issues.push_back({ValidationIssue::Kind::GradingViolation, i, j, k, msg.str()});
      }
  }
  ValidationReport jacobi = validate_jacobi();
  report.issues.insert(report.issues.end(), jacobi.issues.begin(), jacobi.issues.end());
  return report;
}

DerivedQuotient GradedLieAlgebra::derived_and_quotient() const {
  std::vector<Vec> spanning;
  for (const auto& [ij, value] : brackets_) spanning.push_back(value);
  Subspace h = Subspace::span(dim_, spanning);

  std::size_t nu = 0;
  for (const auto& [d, idx] : by_degree_)
    if (degree_slice(h, d).dim() > 0) nu = std::max(nu, static_cast<std::size_t>(-d));

  std::vector<std::size_t> complement;
  GradedLieAlgebra quotient = quotient_by_graded_ideal(h, &complement);
  return DerivedQuotient{make_graded_subspace(*this, h), std::move(quotient), nu,
                         std::move(complement)};
}

GradedLieAlgebra GradedLieAlgebra::quotient_by_graded_ideal(
    const Subspace& ideal, std::vector<std::size_t>* complement_out) const {
  if (ideal.ambient_dim() != dim_) fail(Errc::AmbientMismatch, "ideal not in the algebra");
  if (!is_graded_subspace(ideal)) fail(Errc::NotGradedSubalgebra, "ideal is not graded");
  for (std::size_t a = 0; a < dim_; ++a)
    for (const Vec& v : ideal.basis())
      if (!ideal.contains(ad_basis_applied(a, v)))
        fail(Errc::InvalidArgument, "subspace is not an ideal");

  std::vector<bool> is_pivot(dim_, false);
  for (const Vec& b : ideal.basis()) {
    std::size_t p = 0;
    while (p < dim_ && sgn(b[p]) == 0) ++p;
    is_pivot[p] = true;
  }
  std::vector<std::size_t> complement;
  for (std::size_t i = 0; i < dim_; ++i)
    if (!is_pivot[i]) complement.push_back(i);

  std::vector<int> degrees;
  std::vector<std::string> names;
  for (std::size_t i : complement) {
    degrees.push_back(degrees_[i]);
    names.push_back(name_of(i));
  }
  GradedLieAlgebra q(complement.size(), degrees);
  q.set_names(names);
  for (std::size_t a = 0; a < complement.size(); ++a)
    for (std::size_t b = a + 1; b < complement.size(); ++b) {
      Vec z = ideal.reduce(bracket_basis(complement[a], complement[b]));
      Vec coeff(complement.size(), Rational(0));
      for (std::size_t t = 0; t < complement.size(); ++t) coeff[t] = z[complement[t]];
      if (!is_zero(coeff)) q.set_bracket(a, b, coeff);
    }
  if (complement_out) *complement_out = complement;
  return q;
}

std::size_t GradedLieAlgebra::generation_depth() const {
  int mu = depth();
  for (int nu = 1; nu <= mu; ++nu) {
    std::vector<Vec> seed;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (degrees_[i] >= -nu) {
        Vec v = zero_vec(dim_);
        v[i] = 1;
        seed.push_back(std::move(v));
      }
    }
    if (generates(Subspace::span(dim_, seed))) return nu;
  }
  return mu;
}

GradedSubspace make_graded_subspace(const GradedLieAlgebra& g, const Subspace& s) {
  if (s.ambient_dim() != g.dim()) fail(Errc::AmbientMismatch, "subspace not in the algebra");
  return GradedSubspace(g, s, g.is_graded_subspace(s));
}

GradedSubspace centralizer(const GradedLieAlgebra& g, const GradedSubspace& s) {
  if (s.algebra != &g) fail(Errc::AmbientMismatch, "subspace attached to a different algebra");
  return make_graded_subspace(g, g.centralizer_of(s.space));
}

Vec AdaptedBasis::coordinates(const Vec& x) const {
  std::optional<Vec> c = solve(p, x);
  if (!c) fail(Errc::InternalInconsistency, "adapted basis does not span the algebra");
  return *c;
}

Subspace SymbolConstruction::graded_image(const Subspace& s, const Filtration& filtration) const {
  std::size_t n = basis.vectors.empty() ? 0 : basis.vectors[0].size();
  std::vector<Vec> image;
  for (std::size_t lvl = 1; lvl <= filtration.terms.size(); ++lvl) {
    Subspace w = intersect(s, filtration.terms[lvl - 1]);
    for (const Vec& v : w.basis()) {
      Vec c = basis.coordinates(v);
      Vec g = zero_vec(n);
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i)
        if (basis.level[i] == lvl && sgn(c[i]) != 0) {
          g[i] = c[i];
          nonzero = true;
        }
      if (nonzero) image.push_back(std::move(g));
    }
  }
  return Subspace::span(n, image);
}

SymbolConstruction graded_symbol(const LieAlgebra& g, const Filtration& filtration) {
  if (filtration.direction != Filtration::Direction::Increasing)
    fail(Errc::InvalidArgument, "graded symbol needs an increasing filtration");
  if (filtration.terms.empty()) fail(Errc::InvalidArgument, "empty filtration");
  std::size_t n = g.dim();
  std::size_t depth = filtration.terms.size();
  for (const Subspace& t : filtration.terms)
    if (t.ambient_dim() != n) fail(Errc::AmbientMismatch, "filtration term not in the algebra");
  for (std::size_t i = 0; i + 1 < depth; ++i)
    if (!filtration.terms[i + 1].contains(filtration.terms[i]))
      fail(Errc::PreconditionViolated, "filtration terms are not nested");
  if (filtration.terms.back().dim() != n)
    fail(Errc::PreconditionViolated, "filtration does not exhaust the algebra");

  auto term = [&](std::size_t lvl) -> const Subspace& {
    return filtration.terms[std::min(lvl, depth) - 1];
  };
  for (std::size_t i = 1; i <= depth; ++i)
    for (std::size_t j = i; j <= depth; ++j)
      for (const Vec& x : term(i).basis())
        for (const Vec& y : term(j).basis())
          if (!term(i + j).contains(g.bracket(x, y)))
            fail(Errc::IncompatibleBrackets, "filtration is not bracket compatible");

  AdaptedBasis adapted;
  Echelon ech;
  for (std::size_t lvl = 1; lvl <= depth; ++lvl)
    for (const Vec& v : filtration.terms[lvl - 1].basis()) {
      Vec r = ech.insert(v);
      if (!r.empty()) {
        adapted.vectors.push_back(r);
        adapted.level.push_back(lvl);
      }
    }
  if (adapted.vectors.size() != n)
    fail(Errc::InternalInconsistency, "adapted basis has wrong size");
  adapted.p = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) adapted.p.at(r, c) = adapted.vectors[c][r];

  std::vector<int> degrees;
  for (std::size_t i = 0; i < n; ++i) degrees.push_back(-static_cast<int>(adapted.level[i]));
  GradedLieAlgebra symbol(n, degrees);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t target = adapted.level[a] + adapted.level[b];
      if (target > depth) continue;
      Vec c = adapted.coordinates(g.bracket(adapted.vectors[a], adapted.vectors[b]));
      Vec value = zero_vec(n);
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i)
        if (adapted.level[i] == target && sgn(c[i]) != 0) {
          value[i] = c[i];
          nonzero = true;
        }
      if (nonzero) symbol.set_bracket(a, b, value);
    }
  return SymbolConstruction{std::move(symbol), std::move(adapted)};
}

WeakDerivedFlag weak_derived_flag(const LieAlgebra& g, const Subspace& d) {
  if (d.ambient_dim() != g.dim()) fail(Errc::AmbientMismatch, "seed not in the algebra");
  Filtration filtration{Filtration::Direction::Increasing, {d}};
  Subspace current = d;
  for (;;) {
    std::vector<Vec> vectors = current.basis();
    for (const Vec& x : d.basis())
      for (const Vec& y : current.basis()) vectors.push_back(g.bracket(x, y));
    Subspace next = Subspace::span(g.dim(), vectors);
    if (next.dim() == current.dim()) break;
    filtration.terms.push_back(next);
    current = next;
  }
  if (current.dim() != g.dim())
    fail(Errc::NotBracketGenerating, "subspace does not bracket generate the algebra");
  return WeakDerivedFlag{filtration, graded_symbol(g, filtration)};
}

Filtration extend_filtration(const LieAlgebra& g, const Filtration& partial) {
  if (partial.direction != Filtration::Direction::Increasing)
    fail(Errc::InvalidArgument, "extension needs an increasing filtration");
  if (partial.terms.empty()) fail(Errc::InvalidArgument, "empty filtration");
  std::size_t nu = partial.terms.size();
  for (const Subspace& t : partial.terms)
    if (t.ambient_dim() != g.dim()) fail(Errc::AmbientMismatch, "filtration term not in the algebra");
  for (std::size_t i = 0; i + 1 < nu; ++i)
    if (!partial.terms[i + 1].contains(partial.terms[i]))
      fail(Errc::PreconditionViolated, "filtration terms are not nested");
  for (std::size_t i = 1; i <= nu; ++i)
    for (std::size_t j = i; i + j <= nu; ++j)
      for (const Vec& x : partial.terms[i - 1].basis())
        for (const Vec& y : partial.terms[j - 1].basis())
          if (!partial.terms[i + j - 1].contains(g.bracket(x, y)))
            fail(Errc::IncompatibleBrackets, "partial filtration is not bracket compatible");

  if (!g.generates(partial.terms.back()))
    fail(Errc::NotBracketGenerating, "filtration subspace does not bracket generate the algebra");

  Filtration full = partial;
  std::size_t cap = 4 * (g.dim() + nu) + 8;
  while (full.terms.back().dim() != g.dim()) {
    if (full.terms.size() > cap)
      fail(Errc::InternalInconsistency, "filtration extension failed to exhaust the algebra");
    std::size_t i = full.terms.size();
    std::vector<Vec> vectors = full.terms.back().basis();
    for (std::size_t r = 1; r + r <= i + 1; ++r) {
      std::size_t s = i + 1 - r;
      for (const Vec& x : full.terms[r - 1].basis())
        for (const Vec& y : full.terms[s - 1].basis()) vectors.push_back(g.bracket(x, y));
    }
    full.terms.push_back(Subspace::span(g.dim(), vectors));
  }
  return full;
}

}  // namespace tanaka
