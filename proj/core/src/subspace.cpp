#include "tanaka/subspace.hpp"

#include <algorithm>

namespace tanaka {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

void add_scaled(Vec& dst, const Rational& c, const Vec& src) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (sgn(src[i]) != 0) dst[i] += c * src[i];
}

Vec scaled(const Vec& v, const Rational& c) {
  Vec out(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out[i] = c * v[i];
  return out;
}

Vec vec_sum(const Vec& a, const Vec& b) {
  Vec out = a;
  add_scaled(out, Rational(1), b);
  return out;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vec Matrix::row(std::size_t r) const {
  Vec v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

Vec Matrix::col(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

void Matrix::set_row(std::size_t r, const Vec& v) {
  if (v.size() != cols_) fail(Errc::AmbientMismatch, "row length does not match column count");
  for (std::size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Vec Matrix::apply(const Vec& x) const {
  if (x.size() != cols_) fail(Errc::AmbientMismatch, "vector length does not match column count");
  Vec y(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(at(r, c)) != 0 && sgn(x[c]) != 0) y[r] += at(r, c) * x[c];
  return y;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) fail(Errc::AmbientMismatch, "matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (sgn(at(r, k)) == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c)
        if (sgn(rhs.at(k, c)) != 0) out.at(r, c) += at(r, k) * rhs.at(k, c);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(Errc::AmbientMismatch, "matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  return *this + rhs.scaled_by(Rational(-1));
}

Matrix Matrix::scaled_by(const Rational& c) const {
  Matrix out = *this;
  for (auto& q : out.a_) q *= c;
  return out;
}

bool Matrix::is_zero_matrix() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
    std::size_t p = lead;
    while (p < rows_ && sgn(at(p, col)) == 0) ++p;
    if (p == rows_) continue;
    if (p != lead)
      for (std::size_t c = 0; c < cols_; ++c) std::swap(at(p, c), at(lead, c));
    Rational inv = 1 / at(lead, col);
    for (std::size_t c = col; c < cols_; ++c)
      if (sgn(at(lead, c)) != 0) at(lead, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead || sgn(at(r, col)) == 0) continue;
      Rational f = at(r, col);
      for (std::size_t c = col; c < cols_; ++c)
        if (sgn(at(lead, c)) != 0) at(r, c) -= f * at(lead, c);
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.rref().size();
}

Matrix Matrix::from_flat(const Vec& data, std::size_t rows, std::size_t cols) {
  if (data.size() != rows * cols) fail(Errc::AmbientMismatch, "flat data size mismatch");
  Matrix m(rows, cols);
  m.a_ = data;
  return m;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
  for (const Vec& v : vectors)
    if (v.size() != ambient_dim) fail(Errc::AmbientMismatch, "spanning vector of wrong length");
  Matrix m = Matrix::from_rows(vectors, ambient_dim);
  std::size_t r = m.rref().size();
  Subspace s(ambient_dim);
  s.basis_.reserve(r);
  for (std::size_t i = 0; i < r; ++i) s.basis_.push_back(m.row(i));
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<Vec> rows;
  rows.reserve(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vec v = zero_vec(ambient_dim);
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  return span(ambient_dim, rows);
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) fail(Errc::AmbientMismatch, "vector not in ambient space");
  Vec r = v;
  for (const Vec& b : basis_) {
    std::size_t pivot = 0;
    while (pivot < ambient_ && sgn(b[pivot]) == 0) ++pivot;
    if (pivot < ambient_ && sgn(r[pivot]) != 0) {
      Rational f = r[pivot] / b[pivot];
      add_scaled(r, -f, b);
    }
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) fail(Errc::AmbientMismatch, "subspaces in different ambient spaces");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vec& v) { return contains(v); });
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_) fail(Errc::AmbientMismatch, "vector not in ambient space");
  Vec r = v;
  Vec coeff(basis_.size(), Rational(0));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Vec& b = basis_[i];
    std::size_t pivot = 0;
    while (pivot < ambient_ && sgn(b[pivot]) == 0) ++pivot;
    if (pivot < ambient_ && sgn(r[pivot]) != 0) {
      Rational f = r[pivot] / b[pivot];
      coeff[i] = f;
      add_scaled(r, -f, b);
    }
  }
  if (!is_zero(r)) return std::nullopt;
  return coeff;
}

Matrix Subspace::annihilator() const {
  Matrix rows = Matrix::from_rows(basis_, ambient_);
  Subspace k = kernel(rows);
  return Matrix::from_rows(k.basis(), ambient_);
}

Subspace kernel(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots = r.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vec(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis);
}

std::pair<Subspace, Subspace> sum_and_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    fail(Errc::AmbientMismatch, "subspaces in different ambient spaces");
  std::size_t n = a.ambient_dim();

  std::vector<Vec> stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  Subspace s = Subspace::span(n, stacked);

  // x A - y B = 0 row-wise: columns of the system are the basis vectors of a
  // and b, and a kernel element (x, y) gives the intersection vector x A.
  std::size_t da = a.dim(), db = b.dim();
  Matrix sys(n, da + db);
  for (std::size_t j = 0; j < da; ++j)
    for (std::size_t i = 0; i < n; ++i) sys.at(i, j) = a.basis()[j][i];
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t i = 0; i < n; ++i) sys.at(i, da + j) = -b.basis()[j][i];
  Subspace rel = kernel(sys);
  std::vector<Vec> inter;
  for (const Vec& xy : rel.basis()) {
    Vec v = zero_vec(n);
    for (std::size_t j = 0; j < da; ++j)
      if (sgn(xy[j]) != 0) add_scaled(v, xy[j], a.basis()[j]);
    inter.push_back(std::move(v));
  }
  Subspace i = Subspace::span(n, inter);

  if (a.dim() + b.dim() != s.dim() + i.dim())
    fail(Errc::InternalInconsistency, "sum/intersection dimension identity failed");
  return {s, i};
}

Subspace sum(const Subspace& a, const Subspace& b) { return sum_and_intersect(a, b).first; }

Subspace intersect(const Subspace& a, const Subspace& b) { return sum_and_intersect(a, b).second; }

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) fail(Errc::AmbientMismatch, "right hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  std::vector<std::size_t> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec x = zero_vec(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
  return x;
}

}  // namespace tanaka
