#include "tanaka/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "documents.hpp"
#include "tanaka/ode_symbols.hpp"
#include "tanaka/prolongation.hpp"
#include "tanaka/pseudo_product.hpp"
#include "tanaka/spencer.hpp"

namespace tanaka {

namespace {

using docs::json;
using docs::ojson;

constexpr const char* kSchemaVersion = "1";
constexpr const char* kToolVersion = "1.0.0";

struct GlobalOpts {
  std::string format = "text";
  std::string cache_dir;  // empty disables the cache
  unsigned jobs = 1;
  bool definite = false;
  bool no_validate = false;
  bool timing = false;
};

struct CommandResult {
  ojson body;
  int exit_code = 0;
};

// A fully prepared invocation: inputs parsed and hashed, heavy work deferred
// to `compute`, and a text renderer for the non-JSON format.
struct Prepared {
  std::string command;
  ojson flags = ojson::object();
  std::vector<std::pair<std::string, std::string>> inputs;  // (role, content hash)
  std::function<CommandResult()> compute;
  std::function<void(const ojson& envelope, std::ostream&)> text;
};

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::InvalidArgument, "cannot open input file '" + path + "'");
  return json::parse(in);
}

GradedLieAlgebra load_algebra(const std::string& path, bool no_validate, std::string* hash_out) {
  GradedLieAlgebra g = docs::algebra_from_json(read_json(path));
  if (!no_validate) {
    ValidationReport rep = g.validate();
    if (!rep.ok()) {
      std::string msg = "algebra file '" + path + "' fails validation: " + rep.issues[0].message;
      if (rep.issues.size() > 1)
        msg += " (and " + std::to_string(rep.issues.size() - 1) +
               " more; run the validate command for the full list)";
      fail(Errc::InvalidDocument, msg);
    }
  }
  *hash_out = docs::sha256_hex(docs::canonical_algebra(g).dump());
  return g;
}

Subspace load_subspace(const std::string& path, std::size_t ambient, const std::string& role,
                       std::string* hash_out) {
  Subspace s = docs::subspace_from_json(read_json(path));
  if (s.ambient_dim() != ambient)
    fail(Errc::InvalidDocument, role + " file '" + path + "' has ambient dimension " +
                                    std::to_string(s.ambient_dim()) + ", the algebra has " +
                                    std::to_string(ambient));
  *hash_out = docs::sha256_hex(docs::canonical_subspace(s).dump());
  return s;
}

// --- shared encoders -------------------------------------------------------

ojson dims_json(const std::map<int, std::size_t>& dims) {
  ojson out = ojson::object();
  for (const auto& [degree, n] : dims) out[std::to_string(degree)] = n;
  return out;
}

ojson prolongation_json(const ProlongationResult& r) {
  const bool terminated = r.status == ProlongationResult::Status::Terminated;
  ojson out{{"status", terminated ? "terminated" : "capped"},
            {"terminated_at", terminated ? ojson(r.terminated_at) : ojson(nullptr)},
            {"max_degree", r.max_degree},
            {"generation_depth", r.generation_depth},
            {"dims", dims_json(r.dims())},
            {"total_dim", r.total_dim()}};
  return out;
}

const char* verdict_name(FinitenessCertificate::Verdict v) {
  switch (v) {
    case FinitenessCertificate::Verdict::FiniteCertified: return "finite-certified";
    case FinitenessCertificate::Verdict::FiniteObserved: return "finite-observed";
    default: return "unknown";
  }
}

ojson certificate_json(const FinitenessCertificate& c) {
  return ojson{{"verdict", verdict_name(c.verdict)},
               {"generating", c.generating},
               {"nondegenerate", c.kernels.nondegenerate},
               {"left_kernel", ojson{{"dim", c.kernels.left.space.dim()},
                                     {"basis", docs::basis_strings(c.kernels.left.space.basis())}}},
               {"right_kernel",
                ojson{{"dim", c.kernels.right.space.dim()},
                      {"basis", docs::basis_strings(c.kernels.right.space.basis())}}},
               {"prolongation", prolongation_json(c.prolongation)}};
}

// --- text rendering --------------------------------------------------------

void text_header(const ojson& env, std::ostream& os) {
  os << "tanaka " << env["command"].get<std::string>() << " (schema "
     << env["schema_version"].get<std::string>() << ", tool "
     << env["tool_version"].get<std::string>() << ")\n";
  for (const auto& rec : env["inputs"])
    os << "input " << rec["role"].get<std::string>() << ": sha256 "
       << rec["sha256"].get<std::string>() << "\n";
}

void text_dims_line(const ojson& dims, std::ostream& os) {
  os << "dims:";
  for (auto it = dims.begin(); it != dims.end(); ++it)
    os << "  " << it.key() << ": " << it.value().get<std::size_t>();
  os << "\n";
}

void text_prolongation(const ojson& p, std::ostream& os) {
  os << "status: " << p["status"].get<std::string>();
  if (!p["terminated_at"].is_null())
    os << " (vanishing window ending at degree " << p["terminated_at"].get<int>() << ")";
  else
    os << " (cap " << p["max_degree"].get<int>() << ")";
  os << "\n";
  text_dims_line(p["dims"], os);
  os << "total dimension: " << p["total_dim"].get<std::size_t>() << "\n";
}

void text_certificate(const ojson& c, std::ostream& os) {
  os << "generating: " << (c["generating"].get<bool>() ? "yes" : "no") << "\n";
  os << "nondegenerate: " << (c["nondegenerate"].get<bool>() ? "yes" : "no")
     << " (left kernel dim " << c["left_kernel"]["dim"].get<std::size_t>()
     << ", right kernel dim " << c["right_kernel"]["dim"].get<std::size_t>() << ")\n";
  text_prolongation(c["prolongation"], os);
  os << "verdict: " << c["verdict"].get<std::string>() << "\n";
}

std::string tuple_string(const ojson& entries) {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries[i].get<long long>());
  }
  return s + ")";
}

// --- subcommand preparation ------------------------------------------------

Prepared prepare_validate(const std::string& path) {
  GradedLieAlgebra g = docs::algebra_from_json(read_json(path));
  Prepared p;
  p.command = "validate";
  p.inputs = {{"algebra", docs::sha256_hex(docs::canonical_algebra(g).dump())}};
  p.compute = [g]() {
    ValidationReport rep = g.validate();
    ojson issues = ojson::array();
    for (const ValidationIssue& issue : rep.issues) {
      const char* kind = "jacobi";
      ojson indices = ojson::array();
      switch (issue.kind) {
        case ValidationIssue::Kind::NonNegativeDegree:
          kind = "non-negative-degree";
          indices = {issue.i + 1};
          break;
        case ValidationIssue::Kind::GradingViolation:
          kind = "grading";
          indices = {issue.i + 1, issue.j + 1};
          break;
        case ValidationIssue::Kind::JacobiViolation:
          kind = "jacobi";
          indices = {issue.i + 1, issue.j + 1, issue.k + 1};
          break;
      }
      issues.push_back(
          ojson{{"kind", kind}, {"basis_indices", indices}, {"message", issue.message}});
    }
    ojson body{{"dim", g.dim()}, {"valid", rep.ok()}, {"issues", issues}};
    return CommandResult{std::move(body), rep.ok() ? 0 : 1};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "dim: " << r["dim"].get<std::size_t>() << "\n";
    os << "valid: " << (r["valid"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& issue : r["issues"])
      os << "issue [" << issue["kind"].get<std::string>() << "] "
         << issue["message"].get<std::string>() << "\n";
  };
  return p;
}

Prepared prepare_prolong(const std::string& path, const std::vector<std::string>& sub_files,
                         const std::string& g0_file, int max_degree, const GlobalOpts& opt) {
  Prepared p;
  p.command = "prolong";
  std::string algebra_hash;
  GradedLieAlgebra m = load_algebra(path, opt.no_validate, &algebra_hash);
  p.inputs.emplace_back("algebra", algebra_hash);

  std::string mode = "universal";
  ProlongConstraints constraints = ProlongConstraints::universal();
  if (!sub_files.empty()) {
    mode = "subalgebras";
    std::vector<Subspace> subs;
    for (std::size_t l = 0; l < sub_files.size(); ++l) {
      std::string hash;
      const std::string role = "subalgebra-" + std::to_string(l + 1);
      subs.push_back(load_subspace(sub_files[l], m.dim(), role, &hash));
      p.inputs.emplace_back(role, hash);
    }
    constraints = ProlongConstraints::subalgebra_list(std::move(subs));
  } else if (!g0_file.empty()) {
    mode = "prescribed-g0";
    HomSubspace h = docs::hom_from_json(read_json(g0_file));
    if (h.dim_v != m.dim() || h.dim_w != m.dim())
      fail(Errc::InvalidDocument, "degree-zero file '" + g0_file + "' must hold " +
                                      std::to_string(m.dim()) + "x" + std::to_string(m.dim()) +
                                      " matrices");
    std::vector<Matrix> maps;
    for (const Vec& flat : h.space.basis())
      maps.push_back(Matrix::from_flat(flat, m.dim(), m.dim()));
    p.inputs.emplace_back("g0", docs::sha256_hex(docs::canonical_hom(h).dump()));
    constraints = ProlongConstraints::prescribed_g0(std::move(maps));
  }

  p.flags = ojson{{"mode", mode}, {"max_degree", max_degree}, {"no_validate", opt.no_validate}};
  const bool definite = opt.definite;
  p.compute = [m, constraints, mode, max_degree, definite]() {
    ProlongationResult r = prolong(m, constraints, max_degree);
    ojson body{{"dim", m.dim()}, {"mode", mode}};
    const ojson details = prolongation_json(r);
    for (const auto& [key, value] : details.items()) body[key] = value;
    if (constraints.mode == ProlongConstraints::Mode::PrescribedG0)
      body["g0_bracket_closed"] = r.g0_bracket_closed;
    const bool capped = r.status == ProlongationResult::Status::Capped;
    return CommandResult{std::move(body), capped && definite ? 2 : 0};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "dim: " << r["dim"].get<std::size_t>() << "\n";
    os << "mode: " << r["mode"].get<std::string>() << "\n";
    os << "generation depth: " << r["generation_depth"].get<std::size_t>() << "\n";
    if (r.contains("g0_bracket_closed"))
      os << "degree-zero space bracket-closed: "
         << (r["g0_bracket_closed"].get<bool>() ? "yes" : "no") << "\n";
    text_prolongation(r, os);
  };
  return p;
}

Prepared prepare_spencer(const std::string& path, int max_k, std::size_t trials,
                         std::uint64_t seed, const GlobalOpts& opt) {
  Prepared p;
  p.command = "spencer";
  HomSubspace h = docs::hom_from_json(read_json(path));
  p.inputs = {{"hom", docs::sha256_hex(docs::canonical_hom(h).dump())}};
  p.flags = ojson{{"max_k", max_k}, {"rank1_trials", trials}, {"seed", seed}};
  const bool definite = opt.definite;
  p.compute = [h, max_k, trials, seed, definite]() {
    SpencerResult s = spencer_prolong(h, max_k);
    RankOneSearchResult search = rank_one_search(h, trials, seed);
    FiniteTypeVerdict verdict = finite_type_verdict(s, search);

    ojson dims = ojson::array();
    for (std::size_t d : s.dims) dims.push_back(d);
    ojson rank_one{{"outcome",
                    search.outcome == RankOneSearchResult::Outcome::Found ? "found" : "none-found"},
                   {"probes_used", search.trials_used}};
    if (search.witness.has_value()) {
      const RankOneWitness& w = *search.witness;
      rank_one["witness"] = ojson{{"w_re", docs::vec_strings(w.w_re)},
                                  {"w_im", docs::vec_strings(w.w_im)},
                                  {"xi_re", docs::vec_strings(w.xi_re)},
                                  {"xi_im", docs::vec_strings(w.xi_im)},
                                  {"matrix_re", docs::matrix_strings(w.m_re)},
                                  {"matrix_im", docs::matrix_strings(w.m_im)}};
    } else {
      rank_one["witness"] = nullptr;
    }

    const char* verdict_text = "inconclusive";
    int code = 0;
    switch (verdict) {
      case FiniteTypeVerdict::FiniteType: verdict_text = "finite-type"; break;
      case FiniteTypeVerdict::RankOneWitness: verdict_text = "rank-one-witness"; break;
      case FiniteTypeVerdict::Inconclusive:
        verdict_text = "inconclusive";
        if (definite) code = 2;
        break;
      case FiniteTypeVerdict::InternalInconsistency:
        verdict_text = "internal-inconsistency";
        code = 3;
        break;
    }

    const bool terminated = s.status == SpencerResult::Status::Terminated;
    ojson body{{"dim_v", h.dim_v},
               {"dim_w", h.dim_w},
               {"dim_a0", h.space.dim()},
               {"status", terminated ? "terminated" : "capped"},
               {"terminated_at", terminated ? ojson(s.terminated_at) : ojson(nullptr)},
               {"max_k", s.max_k},
               {"dims", dims},
               {"rank_one_search", rank_one},
               {"verdict", verdict_text}};
    return CommandResult{std::move(body), code};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "subspace of Hom(R^" << r["dim_v"].get<std::size_t>() << ", R^"
       << r["dim_w"].get<std::size_t>() << "), dim " << r["dim_a0"].get<std::size_t>() << "\n";
    os << "status: " << r["status"].get<std::string>();
    if (!r["terminated_at"].is_null())
      os << " (first zero space at degree " << r["terminated_at"].get<int>() << ")";
    os << "\ndims by degree:";
    for (const auto& d : r["dims"]) os << " " << d.get<std::size_t>();
    os << "\nrank-one search: " << r["rank_one_search"]["outcome"].get<std::string>() << "\n";
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
  };
  return p;
}

Prepared prepare_nondegen(const std::string& path, const std::string& e_file,
                          const std::string& f_file, int max_degree, const GlobalOpts& opt) {
  Prepared p;
  p.command = "nondegen";
  std::string algebra_hash, e_hash, f_hash;
  GradedLieAlgebra m = load_algebra(path, opt.no_validate, &algebra_hash);
  Subspace e = load_subspace(e_file, m.dim(), "e", &e_hash);
  Subspace f = load_subspace(f_file, m.dim(), "f", &f_hash);
  p.inputs = {{"algebra", algebra_hash}, {"e", e_hash}, {"f", f_hash}};
  p.flags = ojson{{"max_degree", max_degree}, {"no_validate", opt.no_validate}};
  const bool definite = opt.definite;
  p.compute = [m, e, f, max_degree, definite]() {
    SymbolTriple t = make_symbol(m, {e, f});
    FinitenessCertificate cert = finiteness_certificate(t, max_degree);
    ojson body{{"dim", m.dim()}, {"trivial_intersections", t.trivial_intersections}};
    const ojson details = certificate_json(cert);
    for (const auto& [key, value] : details.items()) body[key] = value;
    const bool unknown = cert.verdict == FinitenessCertificate::Verdict::Unknown;
    return CommandResult{std::move(body), unknown && definite ? 2 : 0};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "dim: " << r["dim"].get<std::size_t>() << "\n";
    text_certificate(r, os);
  };
  return p;
}

Prepared prepare_freeman(const std::string& path, const std::vector<std::string>& e_files,
                         const std::string& f_file, const std::string& f_term, bool osculate,
                         int max_degree, const GlobalOpts& opt) {
  Prepared p;
  p.command = "freeman";
  std::string algebra_hash, f_hash;
  GradedLieAlgebra m = load_algebra(path, opt.no_validate, &algebra_hash);
  p.inputs.emplace_back("algebra", algebra_hash);
  std::vector<Subspace> e_filtration;
  for (std::size_t i = 0; i < e_files.size(); ++i) {
    std::string hash;
    const std::string role = "e-filtration-" + std::to_string(i + 1);
    e_filtration.push_back(load_subspace(e_files[i], m.dim(), role, &hash));
    p.inputs.emplace_back(role, hash);
  }
  Subspace f = load_subspace(f_file, m.dim(), "f", &f_hash);
  p.inputs.emplace_back("f", f_hash);

  const FTermConvention convention =
      f_term == "full" ? FTermConvention::FullE : FTermConvention::BottomE;
  p.flags = ojson{{"f_term", f_term},
                  {"osculate", osculate},
                  {"max_degree", max_degree},
                  {"no_validate", opt.no_validate}};
  const bool definite = opt.definite;
  p.compute = [m, e_filtration, f, convention, osculate, max_degree, definite]() {
    FreemanState st = freeman(m, e_filtration, f, convention);
    ojson e_filt_dims = ojson::array();
    for (const Subspace& s : st.e_filtration) e_filt_dims.push_back(s.dim());
    ojson e_dims = ojson::array();
    for (const Subspace& s : st.e_down) e_dims.push_back(s.dim());
    ojson f_dims = ojson::array();
    for (const Subspace& s : st.f_down) f_dims.push_back(s.dim());
    ojson body{{"dim", m.dim()},
               {"convention", convention == FTermConvention::FullE ? "full" : "bottom"},
               {"e_filtration_dims", e_filt_dims},
               {"f_dim", f.dim()},
               {"e_chain_dims", e_dims},
               {"f_chain_dims", f_dims},
               {"e_stable_at", st.e_stable_at},
               {"f_stable_at", st.f_stable_at},
               {"e0_zero", st.e0_zero},
               {"nu", st.nu.has_value() ? ojson(*st.nu) : ojson(nullptr)}};
    int code = 0;
    if (osculate) {
      OsculationResult os_res = osculation_filtration(st);
      FinitenessCertificate cert = finiteness_certificate(os_res.symbol, max_degree);
      ojson filt_dims = ojson::array();
      for (const Subspace& s : os_res.filtration.terms) filt_dims.push_back(s.dim());
      body["osculation"] =
          ojson{{"nu", os_res.nu},
                {"filtration_dims", filt_dims},
                {"symbol", docs::algebra_document(os_res.symbol.m)},
                {"graded_e", docs::basis_strings(os_res.graded_e.basis())},
                {"graded_f", docs::basis_strings(os_res.graded_f.basis())},
                {"certificate", certificate_json(cert)}};
      if (cert.verdict == FinitenessCertificate::Verdict::Unknown && definite) code = 2;
    }
    return CommandResult{std::move(body), code};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "dim: " << r["dim"].get<std::size_t>() << "\n";
    os << "refinement convention: " << r["convention"].get<std::string>() << "\n";
    auto dims_line = [&os](const char* label, const ojson& dims) {
      os << label << ":";
      for (const auto& d : dims) os << " " << d.get<std::size_t>();
      os << "\n";
    };
    dims_line("source filtration dims", r["e_filtration_dims"]);
    dims_line("E chain dims", r["e_chain_dims"]);
    dims_line("F chain dims", r["f_chain_dims"]);
    os << "E^0 = 0: " << (r["e0_zero"].get<bool>() ? "yes" : "no") << "\n";
    if (r["nu"].is_null())
      os << "nu: none (F chain stabilizes without vanishing)\n";
    else
      os << "nu: " << r["nu"].get<std::size_t>() << "\n";
    if (r.contains("osculation")) {
      const ojson& o = r["osculation"];
      dims_line("osculating filtration dims", o["filtration_dims"]);
      os << "symbol dim: " << o["symbol"]["dim"].get<std::size_t>() << "\n";
      text_certificate(o["certificate"], os);
    }
  };
  return p;
}

Prepared prepare_ode(const std::vector<int>& kappa, const std::vector<int>& lambda,
                     int max_degree, const GlobalOpts& opt) {
  Prepared p;
  p.command = "ode";
  p.flags = ojson{{"kappa", kappa}, {"lambda", lambda}, {"max_degree", max_degree}};
  const bool definite = opt.definite;
  p.compute = [kappa, lambda, max_degree, definite]() {
    const MultiIndex mk{kappa}, ml{lambda};
    SkewTableau t = tableau(mk, ml);
    OdeSymbol s = symbol_from_tableau(t);
    std::vector<VanishingCondition> conditions = vanishing_conditions(mk, ml);
    FinitenessCertificate cert = finiteness_certificate(s.triple, max_degree);

    const GradedLieAlgebra& m = s.triple.m;
    ojson names = ojson::array();
    for (std::size_t i = 0; i < m.dim(); ++i) names.push_back(m.name_of(i));
    ojson f_basis = ojson::array();
    for (std::size_t i = 0; i < s.box_index.size(); ++i)
      for (std::size_t j = 0; j < s.box_index[i].size(); ++j)
        if (t.offsets[i] + 1 + static_cast<int>(j) <= t.c_star)
          f_basis.push_back(m.name_of(s.box_index[i][j]));
    ojson conds = ojson::array();
    for (const VanishingCondition& c : conditions)
      conds.push_back(ojson{{"equation", c.equation}, {"row", c.row}, {"order", c.order}});

    ojson body{{"kappa", kappa},
               {"lambda", lambda},
               {"canonical_lambda", normalize_lambda(mk, ml).entries},
               {"offsets", t.offsets},
               {"c_star", t.c_star},
               {"single_row", t.single_row},
               {"dim", m.dim()},
               {"degrees", m.degrees()},
               {"basis_names", names},
               {"e_basis", ojson::array({"X"})},
               {"f_basis", f_basis},
               {"vanishing_conditions", conds},
               {"certificate", certificate_json(cert)}};
    const bool unknown = cert.verdict == FinitenessCertificate::Verdict::Unknown;
    return CommandResult{std::move(body), unknown && definite ? 2 : 0};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "kappa: " << tuple_string(r["kappa"]) << ", lambda: " << tuple_string(r["lambda"])
       << " (canonical " << tuple_string(r["canonical_lambda"]) << ")\n";
    const ojson& offsets = r["offsets"];
    const ojson& kappa = r["kappa"];
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      int off = offsets[i].get<int>();
      int len = kappa[i].get<int>();
      os << "row " << (i + 1) << ": offset " << off << ", boxes in columns " << (off + 1) << ".."
         << (off + len) << " (degrees -" << (off + 1) << "..-" << (off + len) << ")\n";
    }
    os << "leftmost complete column: " << r["c_star"].get<int>() << "\n";
    if (r["single_row"].get<bool>())
      os << "note: single-row input, outside the standing assumptions\n";
    os << "symbol dim: " << r["dim"].get<std::size_t>() << "\n";
    os << "f basis:";
    for (const auto& n : r["f_basis"]) os << " " << n.get<std::string>();
    os << "\n";
    for (const auto& c : r["vanishing_conditions"])
      os << "condition: dF^" << c["equation"].get<std::size_t>() << "/dy^"
         << c["row"].get<std::size_t>() << "_" << c["order"].get<int>() << " = 0\n";
    text_certificate(r["certificate"], os);
  };
  return p;
}

Prepared prepare_ode_table(const std::vector<int>& kappa, int max_degree, const GlobalOpts& opt) {
  Prepared p;
  p.command = "ode-table";
  p.flags = ojson{{"kappa", kappa}, {"max_degree", max_degree}};
  const unsigned jobs = opt.jobs;
  p.compute = [kappa, max_degree, jobs]() {
    TableReport rep = dimension_table(MultiIndex{kappa}, max_degree, jobs);
    ojson rows = ojson::array();
    for (const TableRow& row : rep.rows) {
      if (row.certificate.verdict != FinitenessCertificate::Verdict::FiniteCertified)
        fail(Errc::InternalInconsistency,
             "a tableau symbol failed to certify finite type; its hypotheses should always hold");
      rows.push_back(ojson{{"lambda", row.lambda.entries},
                           {"projection_target", row.projection_target},
                           {"dim_m", row.symbol.triple.m.dim()},
                           {"total_dim", row.certificate.prolongation.total_dim()},
                           {"verdict", verdict_name(row.certificate.verdict)},
                           {"dims", dims_json(row.certificate.prolongation.dims())}});
    }
    ojson body{{"kappa", kappa}, {"max_degree", max_degree}, {"rows", rows}};
    return CommandResult{std::move(body), 0};
  };
  p.text = [](const ojson& env, std::ostream& os) {
    text_header(env, os);
    const ojson& r = env["result"];
    os << "dimension table for kappa = " << tuple_string(r["kappa"]) << " (cap "
       << r["max_degree"].get<int>() << ")\n";
    os << std::left << std::setw(12) << "lambda" << std::setw(12) << "projection" << std::setw(8)
       << "total" << "verdict\n";
    for (const auto& row : r["rows"])
      os << std::left << std::setw(12) << tuple_string(row["lambda"]) << std::setw(12)
         << tuple_string(row["projection_target"]) << std::setw(8)
         << row["total_dim"].get<std::size_t>() << row["verdict"].get<std::string>() << "\n";
  };
  return p;
}

// --- driver ----------------------------------------------------------------

int drive(const Prepared& p, const GlobalOpts& opt, std::ostream& out, std::ostream& err) {
  ojson flags = p.flags;
  flags["definite"] = opt.definite;
  ojson inputs = ojson::array();
  for (const auto& [role, hash] : p.inputs)
    inputs.push_back(ojson{{"role", role}, {"sha256", hash}});

  const ojson key_doc{
      {"command", p.command}, {"flags", flags}, {"format", opt.format}, {"inputs", inputs}};
  const std::string key = docs::sha256_hex(key_doc.dump());

  namespace fs = std::filesystem;
  const bool caching = !opt.cache_dir.empty();
  const fs::path body_path = fs::path(opt.cache_dir) / (key + ".out");
  const fs::path code_path = fs::path(opt.cache_dir) / (key + ".code");

  if (caching) {
    std::error_code ec;
    if (fs::exists(body_path, ec) && fs::exists(code_path, ec)) {
      std::ifstream body(body_path, std::ios::binary);
      std::ifstream code_file(code_path);
      int code = 0;
      if (body && code_file >> code) {
        std::ostringstream buffer;
        buffer << body.rdbuf();
        out << buffer.str();
        if (opt.timing) err << "cache hit " << key << "\n";
        return code;
      }
    }
  }

  const auto start = std::chrono::steady_clock::now();
  CommandResult result = p.compute();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ojson envelope{{"schema_version", kSchemaVersion},
                 {"tool_version", kToolVersion},
                 {"command", p.command},
                 {"flags", flags},
                 {"inputs", inputs},
                 {"result", result.body}};
  std::string bytes;
  if (opt.format == "json") {
    bytes = envelope.dump(2);
    bytes.push_back('\n');
  } else {
    std::ostringstream text;
    p.text(envelope, text);
    bytes = text.str();
  }

  if (opt.timing) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << seconds;
    err << "computed in " << t.str() << " s\n";
  }

  if (caching && (result.exit_code == 0 || result.exit_code == 2)) {
    std::error_code ec;
    fs::create_directories(opt.cache_dir, ec);
    if (!ec) {
      std::ofstream body(body_path, std::ios::binary | std::ios::trunc);
      body << bytes;
      std::ofstream code_file(code_path, std::ios::trunc);
      code_file << result.exit_code << "\n";
    }
  }

  out << bytes;
  return result.exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact prolongations of graded nilpotent Lie algebras"};
  app.set_version_flag("--version", std::string("tanaka ") + kToolVersion + " (report schema " +
                                        kSchemaVersion + ")");
  app.require_subcommand(1);

  GlobalOpts opt;
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir,
                 "directory for cached reports (default: $TANAKA_CACHE_DIR)")
      ->envname("TANAKA_CACHE_DIR");
  app.add_option("--jobs", opt.jobs, "worker threads for independent rows")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_flag("--definite", opt.definite,
               "exit with code 2 when the computation ends without a definite verdict");
  app.add_flag("--no-validate", opt.no_validate, "skip Jacobi/grading validation of inputs");
  app.add_flag("--timing", opt.timing, "print wall-clock timing to stderr");

  std::string validate_file;
  CLI::App* cmd_validate = app.add_subcommand("validate", "check a graded algebra document");
  cmd_validate->fallthrough();
  cmd_validate->add_option("algebra", validate_file, "algebra JSON file")->required();

  std::string prolong_file, prolong_g0;
  std::vector<std::string> prolong_subs;
  int prolong_max = 24;
  CLI::App* cmd_prolong =
      app.add_subcommand("prolong", "maximal graded extension of a negatively graded algebra");
  cmd_prolong->fallthrough();
  cmd_prolong->add_option("algebra", prolong_file, "algebra JSON file")->required();
  CLI::Option* sub_opt =
      cmd_prolong->add_option("--sub", prolong_subs, "graded subalgebra file (repeatable)");
  cmd_prolong->add_option("--g0", prolong_g0, "prescribed degree-zero subspace file")
      ->excludes(sub_opt);
  cmd_prolong->add_option("--max-degree", prolong_max, "degree cap")->capture_default_str();

  std::string spencer_file;
  int spencer_max = 10;
  std::size_t spencer_trials = 200;
  std::uint64_t spencer_seed = 0;
  CLI::App* cmd_spencer =
      app.add_subcommand("spencer", "symmetric prolongation of a subspace of Hom(V, W)");
  cmd_spencer->fallthrough();
  cmd_spencer->add_option("hom", spencer_file, "hom-subspace JSON file")->required();
  cmd_spencer->add_option("--max-k", spencer_max, "degree cap")->capture_default_str();
  cmd_spencer->add_option("--rank1-trials", spencer_trials, "random probes in the rank-one search")
      ->capture_default_str();
  cmd_spencer->add_option("--seed", spencer_seed, "seed for the random probes")
      ->capture_default_str();

  std::string nd_file, nd_e, nd_f;
  int nd_max = 24;
  CLI::App* cmd_nondegen =
      app.add_subcommand("nondegen", "bracket-pairing kernels and finiteness certificate");
  cmd_nondegen->fallthrough();
  cmd_nondegen->add_option("algebra", nd_file, "algebra JSON file")->required();
  cmd_nondegen->add_option("--e", nd_e, "first subalgebra file")->required();
  cmd_nondegen->add_option("--f", nd_f, "second subalgebra file")->required();
  cmd_nondegen->add_option("--max-degree", nd_max, "degree cap")->capture_default_str();

  std::string fr_file, fr_f;
  std::vector<std::string> fr_e;
  std::string fr_term = "bottom";
  bool fr_osculate = false;
  int fr_max = 24;
  CLI::App* cmd_freeman =
      app.add_subcommand("freeman", "descending refinements of a filtered pair");
  cmd_freeman->fallthrough();
  cmd_freeman->add_option("algebra", fr_file, "algebra JSON file")->required();
  cmd_freeman->add_option("--e-filtration", fr_e, "filtration term files, bottom first")
      ->required();
  cmd_freeman->add_option("--f", fr_f, "complement subspace file")->required();
  cmd_freeman->add_option("--f-term", fr_term, "absorption term for the F chain")
      ->check(CLI::IsMember({"bottom", "full"}))
      ->capture_default_str();
  cmd_freeman->add_flag("--osculate", fr_osculate,
                        "build the osculating filtration and its graded symbol");
  cmd_freeman->add_option("--max-degree", fr_max, "degree cap for the symbol certificate")
      ->capture_default_str();

  std::vector<int> ode_kappa, ode_lambda;
  int ode_max = 24;
  CLI::App* cmd_ode = app.add_subcommand("ode", "mixed-order symbol from a skew tableau");
  cmd_ode->fallthrough();
  cmd_ode->add_option("--kappa", ode_kappa, "equation orders, e.g. 4,3,2")
      ->required()
      ->delimiter(',');
  cmd_ode->add_option("--lambda", ode_lambda, "projection orders, e.g. 4,2,2")
      ->required()
      ->delimiter(',');
  cmd_ode->add_option("--max-degree", ode_max, "degree cap")->capture_default_str();

  std::vector<int> table_kappa;
  int table_max = 24;
  CLI::App* cmd_table =
      app.add_subcommand("ode-table", "dimension table over all canonical projection orders");
  cmd_table->fallthrough();
  cmd_table->add_option("--kappa", table_kappa, "equation orders, e.g. 4,3,2")
      ->required()
      ->delimiter(',');
  cmd_table->add_option("--max-degree", table_max, "degree cap")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tanaka");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Prepared prepared;
    if (*cmd_validate) {
      prepared = prepare_validate(validate_file);
    } else if (*cmd_prolong) {
      prepared = prepare_prolong(prolong_file, prolong_subs, prolong_g0, prolong_max, opt);
    } else if (*cmd_spencer) {
      prepared = prepare_spencer(spencer_file, spencer_max, spencer_trials, spencer_seed, opt);
    } else if (*cmd_nondegen) {
      prepared = prepare_nondegen(nd_file, nd_e, nd_f, nd_max, opt);
    } else if (*cmd_freeman) {
      prepared = prepare_freeman(fr_file, fr_e, fr_f, fr_term, fr_osculate, fr_max, opt);
    } else if (*cmd_ode) {
      prepared = prepare_ode(ode_kappa, ode_lambda, ode_max, opt);
    } else if (*cmd_table) {
      prepared = prepare_ode_table(table_kappa, table_max, opt);
    } else {
      err << "no subcommand given\n";
      return 1;
    }
    return drive(prepared, opt, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InternalInconsistency ? 3 : 1;
  } catch (const json::exception& e) {
    err << "error: invalid JSON input: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tanaka
