#include "tanaka/spencer.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

// Sorted multisets of the given length over {0, ..., p-1}, lexicographic.
std::vector<std::vector<std::size_t>> multisets(std::size_t p, std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  if (p == 0) return out;
  std::vector<std::size_t> cur(len, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = len;
    while (i > 0 && cur[i - 1] == p - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < len; ++j) cur[j] = cur[i - 1];
  }
  return out;
}

// ---- exact complex scalars ------------------------------------------------

struct Cq {
  Rational re, im;
};

Cq operator+(const Cq& a, const Cq& b) { return {a.re + b.re, a.im + b.im}; }
Cq operator-(const Cq& a, const Cq& b) { return {a.re - b.re, a.im - b.im}; }
Cq operator*(const Cq& a, const Cq& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
bool is_zero(const Cq& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }
Cq divide(const Cq& a, const Cq& b) {
  Rational n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

struct ComplexMatrix {
  Matrix re, im;
  ComplexMatrix(std::size_t r, std::size_t c) : re(r, c), im(r, c) {}
  ComplexMatrix(Matrix real, Matrix imag) : re(std::move(real)), im(std::move(imag)) {}
  std::size_t rows() const { return re.rows(); }
  std::size_t cols() const { return re.cols(); }
  Cq at(std::size_t r, std::size_t c) const { return {re.at(r, c), im.at(r, c)}; }
};

bool minors_vanish(const ComplexMatrix& m) {
  for (std::size_t r1 = 0; r1 < m.rows(); ++r1)
    for (std::size_t r2 = r1 + 1; r2 < m.rows(); ++r2)
      for (std::size_t c1 = 0; c1 < m.cols(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < m.cols(); ++c2) {
          Cq d = m.at(r1, c1) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c1);
          if (!is_zero(d)) return false;
        }
  return true;
}

bool is_zero_matrix(const ComplexMatrix& m) {
  return m.re.is_zero_matrix() && m.im.is_zero_matrix();
}

// ---- witness assembly -----------------------------------------------------

std::optional<RankOneWitness> make_witness(const HomSubspace& a, ComplexMatrix m) {
  RankOneWitness w;
  w.m_re = m.re;
  w.m_im = m.im;
  std::size_t pc = m.cols(), pr = m.rows();
  std::size_t col = pc, row = pr;
  for (std::size_t c = 0; c < pc && col == pc; ++c)
    for (std::size_t r = 0; r < pr; ++r)
      if (!is_zero(m.at(r, c))) {
        col = c;
        row = r;
        break;
      }
  if (col == pc) return std::nullopt;  // zero matrix
  w.w_re = Vec(pr, Rational(0));
  w.w_im = Vec(pr, Rational(0));
  for (std::size_t r = 0; r < pr; ++r) {
    w.w_re[r] = m.at(r, col).re;
    w.w_im[r] = m.at(r, col).im;
  }
  Cq pivot = m.at(row, col);
  w.xi_re = Vec(pc, Rational(0));
  w.xi_im = Vec(pc, Rational(0));
  for (std::size_t c = 0; c < pc; ++c) {
    Cq x = divide(m.at(row, c), pivot);
    w.xi_re[c] = x.re;
    w.xi_im[c] = x.im;
  }
  if (!verify_rank_one(a, w)) return std::nullopt;
  return w;
}

// ---- polynomials over Q, degree <= 2 in practice ---------------------------

using Poly = std::vector<Rational>;  // coefficients, low degree first

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (Rational& c : a) c /= lead;
  }
  return a;
}

// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  Integer num = x.get_num(), den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
    return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn) / Rational(sd);
}

// Roots of a nonzero polynomial of degree <= 2 over the Gaussian rationals,
// restricted to roots with exact rational real and imaginary parts.
std::vector<Cq> exact_roots(const Poly& p) {
  std::vector<Cq> roots;
  if (p.size() == 2) {
    roots.push_back({-p[0] / p[1], Rational(0)});
  } else if (p.size() == 3) {
    Rational disc = p[1] * p[1] - 4 * p[2] * p[0];
    if (sgn(disc) >= 0) {
      if (auto s = rational_sqrt(disc)) {
        roots.push_back({(-p[1] + *s) / (2 * p[2]), Rational(0)});
        roots.push_back({(-p[1] - *s) / (2 * p[2]), Rational(0)});
      }
    } else {
      if (auto s = rational_sqrt(-disc)) {
        roots.push_back({-p[1] / (2 * p[2]), *s / (2 * p[2])});
        roots.push_back({-p[1] / (2 * p[2]), -*s / (2 * p[2])});
      }
    }
  }
  return roots;
}

}  // namespace

// ---- Spencer prolongation ---------------------------------------------------

SpencerResult spencer_prolong(const HomSubspace& a, int max_k) {
  if (max_k < 0) fail(Errc::InvalidArgument, "negative degree cap");
  std::size_t p = a.dim_v, w = a.dim_w;
  if (a.space.ambient_dim() != p * w)
    fail(Errc::AmbientMismatch, "subspace does not match the map dimensions");

  SpencerResult out;
  out.max_k = max_k;

  // A_0 in value coordinates: value of phi(e_i) is column i of the matrix.
  std::vector<Vec> a0;
  for (const Vec& f : a.space.basis()) {
    Vec v(p * w, Rational(0));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t t = 0; t < w; ++t) v[i * w + t] = f[t * p + i];
    a0.push_back(std::move(v));
  }
  Subspace prev = Subspace::span(p * w, a0);
  out.components.push_back(prev);
  out.dims.push_back(prev.dim());
  if (prev.dim() == 0) {
    out.status = SpencerResult::Status::Terminated;
    out.terminated_at = 0;
    return out;
  }

  auto prev_multis = multisets(p, 1);
  for (int k = 1; k <= max_k; ++k) {
    auto multis = multisets(p, static_cast<std::size_t>(k) + 1);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t g = 0; g < multis.size(); ++g) index[multis[g]] = g;

    Matrix ann = prev.annihilator();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t r = 0; r < ann.rows(); ++r) {
        Vec row(multis.size() * w, Rational(0));
        bool nonzero = false;
        for (std::size_t gd = 0; gd < prev_multis.size(); ++gd) {
          std::vector<std::size_t> gamma = prev_multis[gd];
          gamma.insert(std::upper_bound(gamma.begin(), gamma.end(), i), i);
          std::size_t g = index.at(gamma);
          for (std::size_t t = 0; t < w; ++t)
            if (sgn(ann.at(r, gd * w + t)) != 0) {
              row[g * w + t] += ann.at(r, gd * w + t);
              nonzero = true;
            }
        }
        if (nonzero) rows.push_back(std::move(row));
      }

    Subspace next = kernel(Matrix::from_rows(rows, multis.size() * w));
    out.components.push_back(next);
    out.dims.push_back(next.dim());
    prev = next;
    prev_multis = std::move(multis);
    if (prev.dim() == 0) {
      out.status = SpencerResult::Status::Terminated;
      out.terminated_at = k;
      break;
    }
  }
  if (out.terminated_at < 0) out.status = SpencerResult::Status::Capped;
  return out;
}

// ---- rank-one search --------------------------------------------------------

RankOneSearchResult rank_one_search(const HomSubspace& a, std::size_t trials,
                                    std::uint64_t seed) {
  RankOneSearchResult out;
  std::size_t p = a.dim_v, w = a.dim_w;
  if (a.space.ambient_dim() != p * w)
    fail(Errc::AmbientMismatch, "subspace does not match the map dimensions");
  if (a.space.dim() == 0 || p == 0 || w == 0) return out;

  std::vector<Matrix> basis;
  for (const Vec& f : a.space.basis()) basis.push_back(Matrix::from_flat(f, w, p));

  auto accept = [&](std::optional<RankOneWitness> cand) -> bool {
    if (!cand) return false;
    out.outcome = RankOneSearchResult::Outcome::Found;
    out.witness = std::move(*cand);
    return true;
  };

  // Canonical basis scan.
  for (const Matrix& m : basis)
    if (m.rank() <= 1 && accept(make_witness(a, ComplexMatrix(m, Matrix(w, p))))) return out;

  // Two-matrix pencils: common roots of all 2x2 minors of M_i + t M_j.
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      const Matrix &mi = basis[i], &mj = basis[j];
      Poly g;  // gcd of the minor polynomials
      bool any = false;
      for (std::size_t r1 = 0; r1 < w; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < w; ++r2)
          for (std::size_t c1 = 0; c1 < p; ++c1)
            for (std::size_t c2 = c1 + 1; c2 < p; ++c2) {
              // det of the 2x2 block of M_i + t M_j: quadratic in t.
              Rational a0 = mi.at(r1, c1) * mi.at(r2, c2) - mi.at(r1, c2) * mi.at(r2, c1);
              Rational a2 = mj.at(r1, c1) * mj.at(r2, c2) - mj.at(r1, c2) * mj.at(r2, c1);
              Rational a1 = mi.at(r1, c1) * mj.at(r2, c2) + mj.at(r1, c1) * mi.at(r2, c2) -
                            mi.at(r1, c2) * mj.at(r2, c1) - mj.at(r1, c2) * mi.at(r2, c1);
              Poly minor = {a0, a1, a2};
              trim(minor);
              if (minor.empty()) continue;  // identically zero minor
              g = any ? poly_gcd(g, minor) : minor;
              any = true;
            }
      if (!any) continue;  // every minor vanishes identically: basis scan covers t = 0
      if (g.empty() || g.size() > 3) continue;
      for (const Cq& t0 : exact_roots(g)) {
        Matrix re = mi + mj.scaled_by(t0.re);
        Matrix im = mj.scaled_by(t0.im);
        ComplexMatrix cand(std::move(re), std::move(im));
        if (!minors_vanish(cand) || is_zero_matrix(cand)) continue;
        if (accept(make_witness(a, std::move(cand)))) return out;
      }
    }

  // Random image-line probes: fix a (complex) image direction and solve for
  // the covector part exactly.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  Matrix ann = a.space.annihilator();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++out.trials_used;
    Vec pr(w, Rational(0)), qi(w, Rational(0));
    bool nonzero = false;
    for (std::size_t t = 0; t < w; ++t) {
      pr[t] = entry(rng);
      qi[t] = trial % 2 == 0 ? Rational(0) : Rational(entry(rng));  // real and complex probes
      if (sgn(pr[t]) != 0 || sgn(qi[t]) != 0) nonzero = true;
    }
    if (!nonzero) continue;

    // Unknowns (x, y) with xi = x + i y: both parts of (p + i q)(x + i y)^T
    // must lie in the subspace.
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < ann.rows(); ++r) {
      Vec row_re(2 * p, Rational(0)), row_im(2 * p, Rational(0));
      for (std::size_t c = 0; c < p; ++c) {
        Rational cp(0), cq(0);
        for (std::size_t t = 0; t < w; ++t) {
          cp += ann.at(r, t * p + c) * pr[t];
          cq += ann.at(r, t * p + c) * qi[t];
        }
        row_re[c] = cp;
        row_re[p + c] = -cq;
        row_im[c] = cq;
        row_im[p + c] = cp;
      }
      if (!is_zero(row_re)) rows.push_back(std::move(row_re));
      if (!is_zero(row_im)) rows.push_back(std::move(row_im));
    }
    Subspace sols = kernel(Matrix::from_rows(rows, 2 * p));
    for (const Vec& sol : sols.basis()) {
      Matrix re(w, p), im(w, p);
      for (std::size_t t = 0; t < w; ++t)
        for (std::size_t c = 0; c < p; ++c) {
          re.at(t, c) = pr[t] * sol[c] - qi[t] * sol[p + c];
          im.at(t, c) = qi[t] * sol[c] + pr[t] * sol[p + c];
        }
      ComplexMatrix cand(std::move(re), std::move(im));
      if (is_zero_matrix(cand)) continue;
      if (accept(make_witness(a, std::move(cand)))) return out;
    }
  }
  return out;
}

bool verify_rank_one(const HomSubspace& a, const RankOneWitness& wit) {
  std::size_t p = a.dim_v, w = a.dim_w;
  if (wit.m_re.rows() != w || wit.m_re.cols() != p) return false;
  if (wit.m_im.rows() != w || wit.m_im.cols() != p) return false;
  if (wit.w_re.size() != w || wit.w_im.size() != w) return false;
  if (wit.xi_re.size() != p || wit.xi_im.size() != p) return false;
  if (!a.space.contains(wit.m_re.flattened())) return false;
  if (!a.space.contains(wit.m_im.flattened())) return false;
  ComplexMatrix m(wit.m_re, wit.m_im);
  if (is_zero_matrix(m)) return false;
  if (!minors_vanish(m)) return false;
  // m == w xi^T, exactly.
  for (std::size_t t = 0; t < w; ++t)
    for (std::size_t c = 0; c < p; ++c) {
      Cq prod = Cq{wit.w_re[t], wit.w_im[t]} * Cq{wit.xi_re[c], wit.xi_im[c]};
      if (!is_zero(prod - m.at(t, c))) return false;
    }
  return true;
}

FiniteTypeVerdict finite_type_verdict(const SpencerResult& s, const RankOneSearchResult& r) {
  bool terminated = s.status == SpencerResult::Status::Terminated;
  bool found = r.outcome == RankOneSearchResult::Outcome::Found;
  if (terminated && found) return FiniteTypeVerdict::InternalInconsistency;
  if (terminated) return FiniteTypeVerdict::FiniteType;
  if (found) return FiniteTypeVerdict::RankOneWitness;
  return FiniteTypeVerdict::Inconclusive;
}

}  // namespace tanaka
