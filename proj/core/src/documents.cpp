#include "documents.hpp"

#include <openssl/evp.h>

#include <set>
#include <utility>

namespace tanaka::docs {

namespace {

[[noreturn]] void bad(const std::string& message) { fail(Errc::InvalidDocument, message); }

const json& member(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) bad(where + " must be a JSON object");
  auto it = j.find(name);
  if (it == j.end()) bad(where + " is missing the field '" + name + "'");
  return *it;
}

long long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + " must be an integer");
  return j.get<long long>();
}

std::size_t positive_size(const json& j, const std::string& where, long long limit) {
  long long v = integer(j, where);
  if (v < 1 || v > limit)
    bad(where + " must be between 1 and " + std::to_string(limit) + ", got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

const json& array_of(const json& j, const char* name, const std::string& where) {
  const json& a = member(j, name, where);
  if (!a.is_array()) bad(where + ".'" + name + "' must be an array");
  return a;
}

Vec vector_entries(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n)
    bad(where + " must be an array of " + std::to_string(n) + " entries");
  Vec v;
  v.reserve(n);
  for (std::size_t c = 0; c < n; ++c)
    v.push_back(rational_entry(j[c], where + "[" + std::to_string(c) + "]"));
  return v;
}

// Integer as a JSON number when it fits, decimal string otherwise.
ojson integer_json(const Integer& z) {
  if (z.fits_slong_p()) return ojson(static_cast<long long>(z.get_si()));
  return ojson(z.get_str());
}

}  // namespace

Rational rational_entry(const json& j, const std::string& where) {
  if (j.is_number_integer())
    return make_rational(Integer(static_cast<long>(j.get<long long>())), Integer(1));
  if (j.is_object()) {
    long long num = integer(member(j, "num", where), where + ".num");
    long long den = integer(member(j, "den", where), where + ".den");
    if (den == 0) bad(where + " has a zero denominator");
    return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  }
  bad(where + " must be an integer or a {num, den} object");
}

GradedLieAlgebra algebra_from_json(const json& j) {
  const std::string where = "algebra document";
  std::size_t dim = positive_size(member(j, "dim", where), where + ".dim", 4096);

  const json& degs = array_of(j, "degrees", where);
  if (degs.size() != dim) bad(where + ".degrees must list exactly 'dim' integers");
  std::vector<int> degrees;
  degrees.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    long long d = integer(degs[i], where + ".degrees[" + std::to_string(i) + "]");
    if (d < -1000000 || d > 1000000) bad(where + ".degrees[" + std::to_string(i) + "] out of range");
    degrees.push_back(static_cast<int>(d));
  }

  GradedLieAlgebra g(dim, std::move(degrees));

  if (j.contains("basis_names")) {
    const json& names_json = array_of(j, "basis_names", where);
    if (names_json.size() != dim) bad(where + ".basis_names must list exactly 'dim' strings");
    std::vector<std::string> names;
    names.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!names_json[i].is_string())
        bad(where + ".basis_names[" + std::to_string(i) + "] must be a string");
      names.push_back(names_json[i].get<std::string>());
    }
    g.set_names(std::move(names));
  }

  if (j.contains("brackets")) {
    const json& brackets = array_of(j, "brackets", where);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t b = 0; b < brackets.size(); ++b) {
      const std::string bwhere = where + ".brackets[" + std::to_string(b) + "]";
      std::size_t i = positive_size(member(brackets[b], "i", bwhere), bwhere + ".i", dim);
      std::size_t jj = positive_size(member(brackets[b], "j", bwhere), bwhere + ".j", dim);
      if (i >= jj) bad(bwhere + " must have i < j (1-based)");
      if (!seen.insert({i, jj}).second)
        bad(bwhere + " repeats the pair (" + std::to_string(i) + ", " + std::to_string(jj) + ")");
      const json& terms = array_of(brackets[b], "terms", bwhere);
      Vec value = zero_vec(dim);
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string twhere = bwhere + ".terms[" + std::to_string(t) + "]";
        std::size_t k = positive_size(member(terms[t], "k", twhere), twhere + ".k", dim);
        long long num = integer(member(terms[t], "num", twhere), twhere + ".num");
        long long den = integer(member(terms[t], "den", twhere), twhere + ".den");
        if (den == 0) bad(twhere + " has a zero denominator");
        value[k - 1] += make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
      }
      g.set_bracket(i - 1, jj - 1, std::move(value));
    }
  }
  return g;
}

Subspace subspace_from_json(const json& j) {
  const std::string where = "subspace document";
  std::size_t n = positive_size(member(j, "ambient_dim", where), where + ".ambient_dim", 1 << 20);
  const json& vectors = array_of(j, "vectors", where);
  std::vector<Vec> rows;
  rows.reserve(vectors.size());
  for (std::size_t r = 0; r < vectors.size(); ++r)
    rows.push_back(vector_entries(vectors[r], n, where + ".vectors[" + std::to_string(r) + "]"));
  return Subspace::span(n, rows);
}

HomSubspace hom_from_json(const json& j) {
  const std::string where = "hom document";
  std::size_t dim_v = positive_size(member(j, "dim_v", where), where + ".dim_v", 4096);
  std::size_t dim_w = positive_size(member(j, "dim_w", where), where + ".dim_w", 4096);
  const json& maps = array_of(j, "maps", where);
  std::vector<Vec> flats;
  flats.reserve(maps.size());
  for (std::size_t t = 0; t < maps.size(); ++t) {
    const std::string mwhere = where + ".maps[" + std::to_string(t) + "]";
    const json& rows = maps[t];
    if (!rows.is_array() || rows.size() != dim_w)
      bad(mwhere + " must be an array of " + std::to_string(dim_w) + " rows");
    Vec flat;
    flat.reserve(dim_v * dim_w);
    for (std::size_t r = 0; r < dim_w; ++r) {
      Vec row = vector_entries(rows[r], dim_v, mwhere + "[" + std::to_string(r) + "]");
      for (Rational& q : row) flat.push_back(std::move(q));
    }
    flats.push_back(std::move(flat));
  }
  return HomSubspace{dim_v, dim_w, Subspace::span(dim_v * dim_w, flats)};
}

ojson vec_strings(const Vec& v) {
  ojson out = ojson::array();
  for (const Rational& q : v) out.push_back(to_string(q));
  return out;
}

ojson basis_strings(const std::vector<Vec>& b) {
  ojson out = ojson::array();
  for (const Vec& v : b) out.push_back(vec_strings(v));
  return out;
}

ojson matrix_strings(const Matrix& m) {
  ojson out = ojson::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_strings(m.row(r)));
  return out;
}

ojson canonical_algebra(const GradedLieAlgebra& g) {
  ojson names = ojson::array();
  for (std::size_t i = 0; i < g.dim(); ++i) names.push_back(g.name_of(i));
  ojson brackets = ojson::array();
  for (const auto& [pair, value] : g.stored_brackets()) {
    ojson terms = ojson::array();
    for (std::size_t k = 0; k < value.size(); ++k)
      if (!is_zero(value[k])) terms.push_back(ojson{{"k", k + 1}, {"value", to_string(value[k])}});
    if (terms.empty()) continue;
    brackets.push_back(
        ojson{{"i", pair.first + 1}, {"j", pair.second + 1}, {"terms", std::move(terms)}});
  }
  return ojson{{"dim", g.dim()},
               {"degrees", g.degrees()},
               {"basis_names", std::move(names)},
               {"brackets", std::move(brackets)}};
}

ojson canonical_subspace(const Subspace& s) {
  return ojson{{"ambient_dim", s.ambient_dim()}, {"vectors", basis_strings(s.basis())}};
}

ojson canonical_hom(const HomSubspace& h) {
  return ojson{{"dim_v", h.dim_v}, {"dim_w", h.dim_w},
               {"maps", basis_strings(h.space.basis())}};
}

ojson algebra_document(const GradedLieAlgebra& g) {
  ojson names = ojson::array();
  for (std::size_t i = 0; i < g.dim(); ++i) names.push_back(g.name_of(i));
  ojson brackets = ojson::array();
  for (const auto& [pair, value] : g.stored_brackets()) {
    ojson terms = ojson::array();
    for (std::size_t k = 0; k < value.size(); ++k)
      if (!is_zero(value[k]))
        terms.push_back(ojson{{"k", k + 1},
                              {"num", integer_json(Integer(value[k].get_num()))},
                              {"den", integer_json(Integer(value[k].get_den()))}});
    if (terms.empty()) continue;
    brackets.push_back(
        ojson{{"i", pair.first + 1}, {"j", pair.second + 1}, {"terms", std::move(terms)}});
  }
  return ojson{{"dim", g.dim()},
               {"degrees", g.degrees()},
               {"basis_names", std::move(names)},
               {"brackets", std::move(brackets)}};
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    fail(Errc::InternalInconsistency, "content hashing failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

}  // namespace tanaka::docs
