#include "tanaka/ode_symbols.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>

namespace tanaka {

namespace {

void check_shapes(const MultiIndex& kappa, const MultiIndex& lambda) {
  if (kappa.entries.empty() || kappa.entries.size() != lambda.entries.size())
    fail(Errc::InvalidArgument,
         "the order and projection multi-indexes must be non-empty and of equal length");
  for (std::size_t i = 0; i < kappa.entries.size(); ++i)
    if (lambda.entries[i] < 2 || lambda.entries[i] > kappa.entries[i])
      fail(Errc::LambdaOutOfRange,
           "component " + std::to_string(i + 1) + " must satisfy 2 <= lambda_i <= kappa_i, got " +
               std::to_string(lambda.entries[i]) + " against order " +
               std::to_string(kappa.entries[i]));
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = Rational(1);
  return v;
}

}  // namespace

SkewTableau tableau(const MultiIndex& kappa, const MultiIndex& lambda) {
  check_shapes(kappa, lambda);
  const int lmax = *std::max_element(lambda.entries.begin(), lambda.entries.end());
  SkewTableau t{kappa, lambda, {}, 0, kappa.entries.size() == 1};
  t.offsets.reserve(kappa.entries.size());
  for (int l : lambda.entries) t.offsets.push_back(lmax - l);
  t.c_star = *std::max_element(t.offsets.begin(), t.offsets.end()) + 1;
  for (std::size_t i = 0; i < kappa.entries.size(); ++i)
    if (t.c_star > t.offsets[i] + kappa.entries[i])
      fail(Errc::InternalInconsistency, "no complete column despite admissible orders");
  return t;
}

MultiIndex normalize_lambda(const MultiIndex& kappa, const MultiIndex& lambda) {
  check_shapes(kappa, lambda);
  const int shift = *std::min_element(lambda.entries.begin(), lambda.entries.end()) - 2;
  MultiIndex out = lambda;
  for (int& l : out.entries) l -= shift;
  return out;
}

OdeSymbol symbol_from_tableau(const SkewTableau& t) {
  const std::size_t n = t.kappa.entries.size();
  std::size_t dim = 1;
  for (int k : t.kappa.entries) dim += static_cast<std::size_t>(k);

  std::vector<int> degrees(dim);
  degrees[0] = -1;
  std::vector<std::string> names(dim);
  names[0] = "X";
  std::vector<std::vector<std::size_t>> box(n);
  std::size_t next = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < t.kappa.entries[i]; ++j) {
      box[i].push_back(next);
      degrees[next] = -(t.offsets[i] + 1 + j);
      names[next] = "e_{" + std::to_string(i + 1) + "," + std::to_string(j) + "}";
      ++next;
    }
  }

  GradedLieAlgebra m(dim, std::move(degrees));
  m.set_names(std::move(names));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < box[i].size(); ++j)
      m.set_bracket(0, box[i][j], unit(dim, box[i][j + 1]));

  Subspace e = Subspace::span(dim, {unit(dim, 0)});
  std::vector<Vec> f_vectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < box[i].size(); ++j)
      if (t.offsets[i] + 1 + static_cast<int>(j) <= t.c_star)
        f_vectors.push_back(unit(dim, box[i][j]));
  Subspace f = Subspace::span(dim, f_vectors);

  SymbolTriple triple = make_symbol(m, {std::move(e), std::move(f)});
  return OdeSymbol{std::move(triple), t, 0, std::move(box)};
}

std::vector<VanishingCondition> vanishing_conditions(const MultiIndex& kappa,
                                                     const MultiIndex& lambda) {
  SkewTableau t = tableau(kappa, lambda);
  const std::size_t n = kappa.entries.size();
  std::vector<VanishingCondition> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 1; c <= t.offsets[i]; ++c) {
      for (std::size_t r = 0; r < n; ++r) {
        if (t.offsets[r] + 1 <= c && c <= t.offsets[r] + kappa.entries[r]) {
          int p = c - t.offsets[r];
          out.push_back(VanishingCondition{i + 1, r + 1, kappa.entries[r] - p});
        }
      }
    }
  }
  return out;
}

std::vector<MultiIndex> enumerate_lambdas(const MultiIndex& kappa) {
  if (kappa.entries.empty())
    fail(Errc::InvalidArgument, "the order multi-index must be non-empty");
  for (int k : kappa.entries)
    if (k < 2)
      fail(Errc::KappaTooSmall, "every order must be at least 2, got " + std::to_string(k));

  const std::size_t n = kappa.entries.size();
  std::set<std::vector<int>> canonical;
  std::vector<int> cur(n, 2);
  while (true) {
    canonical.insert(normalize_lambda(kappa, MultiIndex{cur}).entries);
    std::size_t pos = 0;
    while (pos < n && cur[pos] == kappa.entries[pos]) {
      cur[pos] = 2;
      ++pos;
    }
    if (pos == n) break;
    ++cur[pos];
  }

  std::vector<MultiIndex> out;
  out.reserve(canonical.size());
  for (const std::vector<int>& entries : canonical) out.push_back(MultiIndex{entries});
  return out;
}

TableReport dimension_table(const MultiIndex& kappa, int max_degree, unsigned jobs) {
  std::vector<MultiIndex> lambdas = enumerate_lambdas(kappa);
  const std::size_t count = lambdas.size();
  std::vector<std::optional<TableRow>> slots(count);
  std::vector<std::exception_ptr> errors(count);

  auto work = [&](std::size_t r) {
    try {
      OdeSymbol symbol = symbol_from_tableau(tableau(kappa, lambdas[r]));
      FinitenessCertificate certificate = finiteness_certificate(symbol.triple, max_degree);
      std::vector<int> target(kappa.entries.size());
      for (std::size_t i = 0; i < target.size(); ++i)
        target[i] = kappa.entries[i] - lambdas[r].entries[i];
      slots[r].emplace(TableRow{lambdas[r], std::move(symbol), std::move(target),
                                std::move(certificate)});
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  if (jobs <= 1 || count <= 1) {
    for (std::size_t r = 0; r < count; ++r) work(r);
  } else {
    std::atomic<std::size_t> cursor{0};
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          std::size_t r = cursor.fetch_add(1);
          if (r >= count) return;
          work(r);
        }
      });
    for (std::thread& th : pool) th.join();
  }

  for (std::size_t r = 0; r < count; ++r)
    if (errors[r]) std::rethrow_exception(errors[r]);

  TableReport report{kappa, max_degree, {}};
  report.rows.reserve(count);
  for (std::size_t r = 0; r < count; ++r) report.rows.push_back(std::move(*slots[r]));
  return report;
}

}  // namespace tanaka
