// Batch command-line driver for the mock-Lie toolkit.  Every command reads a
// RunConfig from flags, computes, and emits one deterministic structured
// report (text by default, --json for JSON); identical configurations produce
// byte-identical reports apart from the timestamp line.  Exit codes: 0
// success, 1 mathematical negative (axiom failure in `check`, or a violated
// --expect), 2 usage or input error, 3 budget exhausted.
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mocklie/catalog.hpp"
#include "mocklie/groebner.hpp"
#include "mocklie/identity.hpp"
#include "mocklie/representation.hpp"

using ojson = nlohmann::ordered_json;
using namespace mocklie;

namespace {

// ---------------------------------------------------------------- plumbing

std::string data_root() {
  if (const char* env = std::getenv("MOCKLIE_DATA")) return env;
#ifdef MOCKLIE_REPO_ROOT
  return MOCKLIE_REPO_ROOT;
#else
  return ".";
#endif
}

std::string iso_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// ------------------------------------------------------------- report tree

std::string scalar_text(const ojson& v) {
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_text(std::ostream& os, const ojson& j, int indent) {
  const std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const ojson& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render_text(os, v, indent + 2);
    } else if (v.is_array()) {
      bool block = false;
      for (const auto& e : v)
        if (e.is_string() && e.get<std::string>().find(' ') != std::string::npos) block = true;
      if (v.empty()) {
        os << pad << it.key() << ": (none)\n";
      } else if (block) {
        os << pad << it.key() << ":\n";
        for (const auto& e : v) os << pad << "  - " << scalar_text(e) << "\n";
      } else {
        os << pad << it.key() << ":";
        for (const auto& e : v) os << " " << scalar_text(e);
        os << "\n";
      }
    } else {
      os << pad << it.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

// Expectation lookup: a dotted path walks the tree from the root; a bare key
// is searched depth-first.
const ojson* find_key(const ojson& j, const std::string& key) {
  if (j.contains(key)) return &j.at(key);
  for (const auto& [k, v] : j.items())
    if (v.is_object())
      if (const ojson* hit = find_key(v, key)) return hit;
  return nullptr;
}

const ojson* find_path(const ojson& root, const std::string& path) {
  if (path.find('.') == std::string::npos) {
    // Bare keys look in the result block first so `--expect dim=44` measures
    // the computation, not the input echo; dotted paths disambiguate.
    if (root.contains("result"))
      if (const ojson* hit = find_key(root.at("result"), path)) return hit;
    return find_key(root, path);
  }
  const ojson* cur = &root;
  for (const std::string& seg : split(path, '.')) {
    if (!cur->is_object() || !cur->contains(seg)) return nullptr;
    cur = &cur->at(seg);
  }
  return cur;
}

std::string expect_text(const ojson& v) {
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += " ";
      out += scalar_text(e);
    }
    return out;
  }
  return scalar_text(v);
}

struct Common {
  std::string field = "q";
  bool json = false;
  bool no_timestamp = false;
  int jobs = 1;
  std::vector<std::string> expects;
};

// Renders the report, then applies --expect comparisons.  Returns the final
// exit code given the computation's own code.
int finalize(ojson& report, const Common& c, int code) {
  if (!c.no_timestamp) report["timestamp"] = iso_timestamp();
  if (c.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    render_text(std::cout, report, 0);
  }
  bool violated = false;
  for (const std::string& e : c.expects) {
    auto eq = e.find('=');
    if (eq == std::string::npos) throw UsageError("--expect needs key=value, got '" + e + "'");
    std::string key = e.substr(0, eq);
    std::string want = e.substr(eq + 1);
    const ojson* hit = find_path(report, key);
    if (!hit) {
      std::cerr << "expect: key '" << key << "' not present in the report\n";
      violated = true;
      continue;
    }
    std::string got = expect_text(*hit);
    if (got != want) {
      std::cerr << "expect: " << key << " = " << got << ", wanted " << want << "\n";
      violated = true;
    }
  }
  if (code != 0) return code;
  return violated ? 1 : 0;
}

// -------------------------------------------------------- algebra sources

// catalog name | file path | trunc:N | free:g1,g2:c1,c2 — `generators` is the
// number of designated generators when the source has them (free quotients
// and truncated algebras), else 0.
template <class F>
struct Source {
  AlgebraTable<F> algebra;
  int generators = 0;
};

template <class F>
Source<F> resolve_algebra(const std::string& arg) {
  try {
    if (arg.rfind("trunc:", 0) == 0 || arg.rfind("trunc-poly:", 0) == 0) {
      int n = std::stoi(arg.substr(arg.find(':') + 1));
      return {truncated_poly_algebra<F>(n), 1};
    }
    if (arg.rfind("free:", 0) == 0) {
      std::vector<std::string> parts = split(arg.substr(5), ':');
      std::vector<std::string> gens;
      std::vector<int> caps;
      const std::string& cap_part = parts.back();
      for (const std::string& c : split(cap_part, ',')) caps.push_back(std::stoi(c));
      if (parts.size() == 2) {
        gens = split(parts[0], ',');
      } else if (parts.size() == 1) {
        for (std::size_t g = 0; g < caps.size(); ++g) gens.push_back(std::string(1, char('a' + g)));
      } else {
        throw UsageError("free arg is free:g1,g2,...:c1,c2,... or free:c1,c2,...");
      }
      if (gens.size() != caps.size())
        throw UsageError("free arg needs one cap per generator");
      return {build_free_quotient<F>(gens, caps).algebra, static_cast<int>(gens.size())};
    }
    if (arg.find('/') != std::string::npos || arg.size() > 4 && arg.substr(arg.size() - 4) == ".alg" ||
        std::filesystem::exists(arg))
      return {read_algebra_file<F>(arg), 0};
    if (arg == "M44") return {catalog_algebra<F>(arg), 3};
    return {catalog_algebra<F>(arg), 0};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("cannot resolve algebra '" + arg + "': " + e.what());
  }
}

template <class F>
ojson input_block(const std::string& arg, const AlgebraTable<F>& A) {
  ojson in;
  in["algebra"] = arg;
  in["dim"] = A.dim();
  in["field"] = F::characteristic() == 0 ? std::string("Q")
                                         : "F" + std::to_string(F::characteristic());
  return in;
}

template <class F>
std::vector<std::string> element_strings(const AlgebraTable<F>& A, const std::vector<Vec<F>>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(A.format_element(v));
  return out;
}

template <class F>
std::vector<std::string> subspace_strings(const AlgebraTable<F>& A, const Subspace<F>& S) {
  std::vector<Vec<F>> vs;
  for (int r = 0; r < S.dim(); ++r) vs.push_back(S.basis_vec(r));
  return element_strings(A, vs);
}

// ------------------------------------------------------------ identities

std::string identity_path(const std::string& id) {
  if (id.find('/') != std::string::npos ||
      (id.size() > 3 && id.substr(id.size() - 3) == ".id"))
    return id;
  std::string path = data_root() + "/identities/" + id + ".id";
  if (!std::filesystem::exists(path)) {
    std::string known;
    std::error_code ec;
    std::vector<std::string> names;
    for (const auto& ent : std::filesystem::directory_iterator(data_root() + "/identities", ec))
      if (ent.path().extension() == ".id") names.push_back(ent.path().stem().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown identity '" + id + "' (known: " + known + ")");
  }
  return path;
}

// ----------------------------------------------------------------- check

template <class F>
int cmd_check(const std::string& arg, const Common& c) {
  Source<F> src = resolve_algebra<F>(arg);
  const AlgebraTable<F>& A = src.algebra;
  ojson rep;
  rep["report"] = "check";
  rep["input"] = input_block(arg, A);
  ojson res;

  auto cw = commutativity_witness(A);
  res["commutative"] = !cw.has_value();
  if (cw)
    res["commutative_witness"] = A.labels()[(*cw)[0]] + " o " + A.labels()[(*cw)[1]] +
                                 " != " + A.labels()[(*cw)[1]] + " o " + A.labels()[(*cw)[0]];
  bool mock_lie = false;
  if (!cw) {
    auto jw = jacobi_witness(A);
    res["jacobi"] = !jw.has_value();
    if (jw)
      res["jacobi_witness"] = "J(" + A.labels()[(*jw)[0]] + ", " + A.labels()[(*jw)[1]] + ", " +
                              A.labels()[(*jw)[2]] + ") != 0";
    mock_lie = !jw.has_value();
    res["mock_lie"] = mock_lie;
    res["jordan"] = is_jordan(A, c.jobs);
    res["engel3"] = engel3_holds(A, c.jobs);
    IdentityPoly nil3 = parse_identity_file(identity_path("nil3"));
    res["nil3"] = holds_identically(A, nil3, c.jobs).holds;
    res["nil_index"] = nil_index(A);
    Subspace<F> Z = center(A);
    res["center_dim"] = Z.dim();
    res["center"] = subspace_strings(A, Z);
    std::vector<int> dims;
    for (const auto& term : lower_central_series(A)) dims.push_back(term.dim());
    res["lower_central_dims"] = dims;
  } else {
    res["mock_lie"] = false;
  }
  rep["result"] = std::move(res);
  return finalize(rep, c, mock_lie ? 0 : 1);
}

// ------------------------------------------------------------------ free

template <class F>
int cmd_free(const std::vector<std::string>& gens_in, const std::vector<int>& caps,
             const std::string& table_out, const Common& c) {
  if (caps.empty()) throw UsageError("free: --caps is required");
  std::vector<std::string> gens = gens_in;
  if (gens.empty()) {
    if (caps.size() > 26) throw UsageError("free: give explicit --gens for more than 26 generators");
    for (std::size_t g = 0; g < caps.size(); ++g) gens.push_back(std::string(1, char('a' + g)));
  }
  if (gens.size() != caps.size()) throw UsageError("free: need one cap per generator");
  for (int cap : caps)
    if (cap < 1) throw UsageError("free: caps must be positive");

  FreeQuotientResult<F> R = build_free_quotient<F>(gens, caps);
  ojson rep;
  rep["report"] = "free";
  ojson in;
  in["generators"] = gens;
  in["caps"] = caps;
  in["field"] = F::characteristic() == 0 ? std::string("Q")
                                         : "F" + std::to_string(F::characteristic());
  rep["input"] = std::move(in);
  ojson res;
  res["dim"] = R.algebra.dim();
  res["dims_by_degree"] = R.dims_by_degree;
  res["mock_lie"] = is_mock_lie(R.algebra);
  res["nil_index"] = nil_index(R.algebra);
  res["center_dim"] = center(R.algebra).dim();
  res["basis_words"] = R.algebra.labels();
  if (!table_out.empty()) {
    write_algebra_file(table_out, R.algebra, "free quotient, caps per generator as documented");
    res["table_file"] = table_out;
  } else {
    std::ostringstream os;
    write_algebra(os, R.algebra);
    std::vector<std::string> lines;
    for (const std::string& line : split(os.str(), '\n'))
      if (!line.empty()) lines.push_back(line);
    res["table"] = lines;
  }
  rep["result"] = std::move(res);
  return finalize(rep, c, 0);
}

// -------------------------------------------------------------- envelope

template <class F>
int cmd_envelope(const std::string& arg, int maxdeg, const std::string& checkpoint, bool emit_gb,
                 const Common& c) {
  Source<F> src = resolve_algebra<F>(arg);
  const AlgebraTable<F>& A = src.algebra;
  ojson rep;
  rep["report"] = "envelope";
  rep["input"] = input_block(arg, A);
  ojson opts;
  opts["maxdeg"] = maxdeg > 0 ? ojson(maxdeg) : ojson("auto");
  opts["jobs"] = c.jobs;
  if (!checkpoint.empty()) opts["checkpoint"] = checkpoint;
  rep["options"] = std::move(opts);

  EnvelopeOptions eo;
  eo.maxdeg = maxdeg;
  eo.jobs = c.jobs;
  eo.checkpoint = checkpoint;
  EnvelopeResult<F> R = envelope(A, eo);

  ojson res;
  res["complete"] = !R.budget_exhausted;
  res["processed_degree"] = R.gb.processed_degree;
  if (R.budget_exhausted) {
    res["pending_degree"] = R.gb.pending_degree;
    res["gens_so_far"] = static_cast<int>(R.gb.gens.size());
    rep["result"] = std::move(res);
    return finalize(rep, c, 3);
  }
  res["dim_u"] = R.dim_u;
  std::vector<int> by_degree;
  for (const auto& level : R.normal_by_degree) by_degree.push_back(static_cast<int>(level.size()));
  res["normal_words_by_degree"] = by_degree;
  res["gb_size"] = static_cast<int>(R.gb.gens.size());
  int max_lead = 0;
  for (const auto& g : R.gb.gens) max_lead = std::max(max_lead, static_cast<int>(g.lead().size()));
  res["gb_max_lead_length"] = max_lead;
  res["special"] = R.special;
  res["kernel_dim"] = static_cast<int>(R.kernel_basis.size());
  res["kernel"] = element_strings(A, R.kernel_basis);
  if (emit_gb) {
    std::vector<std::string> gens;
    for (const auto& g : R.gb.gens) gens.push_back(g.str());
    res["groebner_basis"] = gens;
  }
  rep["result"] = std::move(res);
  return finalize(rep, c, 0);
}

// -------------------------------------------------------------- identity

template <class F>
int cmd_identity(const std::string& arg, const std::string& id, const std::string& at,
                 const Common& c) {
  Source<F> src = resolve_algebra<F>(arg);
  const AlgebraTable<F>& A = src.algebra;
  IdentityPoly p = parse_identity_file(identity_path(id));
  ojson rep;
  rep["report"] = "identity";
  rep["input"] = input_block(arg, A);
  rep["input"]["identity"] = p.name;
  rep["input"]["variables"] = p.variables;
  rep["input"]["degree"] = p.total_degree;

  ojson res;
  if (!at.empty()) {
    std::vector<Vec<F>> args;
    if (at == "generators") {
      if (src.generators == 0)
        throw UsageError("--at generators needs a free-quotient or truncated algebra source");
      if (src.generators < static_cast<int>(p.variables.size()))
        throw UsageError("identity has " + std::to_string(p.variables.size()) +
                         " variables but the source has " + std::to_string(src.generators) +
                         " generators");
      for (std::size_t v = 0; v < p.variables.size(); ++v) args.push_back(A.basis_vec(static_cast<int>(v)));
    } else {
      for (const std::string& tok : split(at, ',')) {
        int idx = -1;
        for (int i = 0; i < A.dim(); ++i)
          if (A.labels()[i] == tok) idx = i;
        if (idx < 0 && !tok.empty() && tok[0] == 'e') {
          try {
            idx = std::stoi(tok.substr(1)) - 1;
          } catch (...) {
          }
        }
        if (idx < 0 || idx >= A.dim())
          throw UsageError("--at: unknown basis element '" + tok + "'");
        args.push_back(A.basis_vec(idx));
      }
      if (args.size() != p.variables.size())
        throw UsageError("--at needs " + std::to_string(p.variables.size()) +
                         " comma-separated elements");
    }
    std::map<std::string, Vec<F>> assign;
    ojson echo;
    for (std::size_t v = 0; v < p.variables.size(); ++v) {
      assign[p.variables[v]] = args[v];
      echo[p.variables[v]] = A.format_element(args[v]);
    }
    rep["input"]["at"] = std::move(echo);
    Vec<F> value = eval_identity(A, p, assign);
    bool zero = true;
    for (const auto& x : value)
      if (!x.is_zero()) zero = false;
    res["value"] = A.format_element(value);
    res["zero"] = zero;
    if (!zero) res["in_center"] = center(A).contains(value);
  } else {
    IdentityCheck<F> chk;
    try {
      chk = holds_identically(A, p, c.jobs);
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    } catch (const std::runtime_error& e) {
      rep["result"] = ojson{{"holds", "unknown"}, {"note", e.what()}};
      return finalize(rep, c, 3);
    }
    res["holds"] = chk.holds;
    if (!chk.holds) {
      std::vector<std::string> witness;
      for (const auto& [var, idx] : chk.witness) witness.push_back(var + "=" + A.labels()[idx]);
      res["witness"] = witness;
      res["value"] = A.format_element(chk.value);
      res["note"] = chk.note;
    }
  }
  rep["result"] = std::move(res);
  return finalize(rep, c, 0);
}

// --------------------------------------------------------------- antider

template <class F>
ModuleRep<F> read_module_file(const std::string& path, const AlgebraTable<F>& A) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open module file " + path);
  std::string line;
  int dimv = -1;
  ModuleRep<F> M{A, 0, {}};
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "dimv") {
      if (!(ls >> dimv) || dimv < 0)
        throw UsageError(path + ":" + std::to_string(lineno) + ": bad dimv line");
      M.dim_v = dimv;
      M.rho.assign(A.dim(), Mat<F>(dimv, dimv));
      continue;
    }
    if (dimv < 0) throw UsageError(path + ":" + std::to_string(lineno) + ": dimv must come first");
    int i = 0, r = 0, col = 0;
    std::string q;
    try {
      i = std::stoi(first);
    } catch (...) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'i r c q'");
    }
    if (!(ls >> r >> col >> q)) throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'i r c q'");
    if (i < 1 || i > A.dim() || r < 1 || r > dimv || col < 1 || col > dimv)
      throw UsageError(path + ":" + std::to_string(lineno) + ": index out of range");
    M.rho[i - 1](r - 1, col - 1) = F::from_mpq(parse_rational(q));
  }
  if (dimv < 0) throw UsageError(path + ": missing dimv line");
  return M;
}

template <class F>
std::string map_string(const AlgebraTable<F>& A, int dim_v, const Mat<F>& D,
                       const std::vector<std::string>& value_labels) {
  std::string out;
  for (int i = 0; i < A.dim(); ++i) {
    Vec<F> col(dim_v);
    bool nonzero = false;
    for (int r = 0; r < dim_v; ++r) {
      col[r] = D(r, i);
      if (!col[r].is_zero()) nonzero = true;
    }
    if (!nonzero) continue;
    std::string img;
    {
      // format in the value space's labels
      bool first = true;
      for (int r = 0; r < dim_v; ++r) {
        if (col[r].is_zero()) continue;
        std::string cs = col[r].to_string();
        if (!first) img += " + ";
        if (cs == "1")
          img += value_labels[r];
        else if (cs == "-1")
          img += "-" + value_labels[r];
        else
          img += cs + "*" + value_labels[r];
        first = false;
      }
    }
    if (!out.empty()) out += ", ";
    out += A.labels()[i] + " -> " + img;
  }
  return out.empty() ? "0" : out;
}

template <class F>
int cmd_antider(const std::string& arg, const std::string& module, const Common& c) {
  Source<F> src = resolve_algebra<F>(arg);
  const AlgebraTable<F>& A = src.algebra;
  ModuleRep<F> M{A, 0, {}};
  std::vector<std::string> value_labels;
  if (module == "self" || module == "adjoint") {
    if (module == "adjoint") {
      try {
        M = adjoint_module(A);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    } else {
      M = left_mult_module(A);
    }
    value_labels = A.labels();
  } else if (module == "trivial" || module.rfind("trivial:", 0) == 0) {
    int k = 1;
    if (module.size() > 8) k = std::stoi(module.substr(8));
    if (k < 1) throw UsageError("--module trivial:K needs K >= 1");
    M = trivial_module(A, k);
    for (int r = 0; r < k; ++r) value_labels.push_back("v" + std::to_string(r + 1));
  } else {
    M = read_module_file<F>(module, A);
    for (int r = 0; r < M.dim_v; ++r) value_labels.push_back("v" + std::to_string(r + 1));
  }

  ojson rep;
  rep["report"] = "antider";
  rep["input"] = input_block(arg, A);
  rep["input"]["module"] = module;
  rep["input"]["dim_v"] = M.dim_v;
  rep["input"]["module_valid"] = is_module_rep(M);

  AntiderivationSpace<F> ders = antiderivations(M);
  ojson res;
  res["dim"] = ders.dim();
  res["inner_dim"] = ders.inner_dim();
  res["outer_dim"] = ders.outer_dim();
  std::vector<std::string> basis;
  for (const auto& D : ders.basis) basis.push_back(map_string(A, M.dim_v, D, value_labels));
  res["basis"] = basis;
  std::vector<bool> inner;
  for (const auto& D : ders.basis) inner.push_back(ders.is_inner(D));
  res["inner_flags"] = inner;
  if (M.dim_v == A.dim()) {
    std::vector<bool> cubes;
    for (const auto& D : ders.basis)
      cubes.push_back(D * D * D == Mat<F>(M.dim_v, M.dim_v));
    res["cube_zero_flags"] = cubes;
  }
  rep["result"] = std::move(res);
  return finalize(rep, c, 0);
}

// ------------------------------------------------------------ trunc-poly

template <class F>
int cmd_trunc_poly(int n, const std::string& out) {
  AlgebraTable<F> A = truncated_poly_algebra<F>(n);
  std::string comment = "t K[t]/(t^" + std::to_string(n) + ")";
  if (!out.empty()) {
    write_algebra_file(out, A, comment);
    std::cout << out << "\n";
  } else {
    write_algebra(std::cout, A, comment);
  }
  return 0;
}

// ------------------------------------------------------------- dispatch

template <class Fn>
int with_field(const std::string& field, Fn&& fn) {
  if (field == "q" || field == "Q") return fn.template operator()<Rat>();
  if (field.rfind("p=", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(field.substr(2));
    } catch (...) {
      throw UsageError("--field p=N needs an integer N");
    }
    if (p == 2 || p == 3) throw UsageError("--field: characteristic 2 and 3 are unsupported");
    if (!is_prime(p)) throw UsageError("--field p=" + std::to_string(p) + ": not a prime");
    FpScope scope(p);
    return fn.template operator()<Fp>();
  }
  throw UsageError("--field must be 'q' or 'p=N', got '" + field + "'");
}

void add_common(CLI::App* sub, Common& c, bool with_jobs = true) {
  sub->add_option("--field", c.field, "coefficient field: q (rationals) or p=N (prime N, not 2 or 3)");
  sub->add_flag("--json", c.json, "emit the report as JSON instead of text");
  sub->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp line (byte-stable output)");
  sub->add_option("--expect", c.expects,
                  "key=value assertion on the report (repeatable); violation exits 1");
  if (with_jobs) sub->add_option("--jobs", c.jobs, "worker threads for parallel stages")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mock-Lie algebra toolkit: axioms, free quotients, enveloping algebras,\n"
               "polynomial identities, and antiderivation spaces"};
  app.require_subcommand(1);

  std::string arg, at, id, module = "self", checkpoint, table_out;
  std::vector<std::string> gens;
  std::vector<int> caps;
  int maxdeg = 0, trunc_n = 0;
  bool emit_gb = false;
  Common c_check, c_free, c_env, c_id, c_ant;

  CLI::App* chk = app.add_subcommand("check", "axiom suite and structure invariants");
  chk->add_option("algebra", arg, "catalog name | file | trunc:N | free:gens:caps")->required();
  add_common(chk, c_check);

  CLI::App* fre = app.add_subcommand("free", "build a degree-capped free quotient");
  fre->add_option("--gens", gens, "generator names (default a,b,c,...)")->delimiter(',');
  fre->add_option("--caps", caps, "degree cap per generator")->delimiter(',')->required();
  fre->add_option("-o,--output", table_out, "write the table to this file instead of the report");
  add_common(fre, c_free);

  CLI::App* env = app.add_subcommand("envelope", "enveloping-algebra basis, dimension, speciality");
  env->add_option("algebra", arg, "catalog name | file | trunc:N | free:gens:caps")->required();
  env->add_option("--maxdeg", maxdeg, "degree budget (single attempt; exit 3 when exhausted)");
  env->add_option("--checkpoint", checkpoint, "save/resume file for long completions");
  env->add_flag("--gb", emit_gb, "include the reduced basis elements in the report");
  add_common(env, c_env);

  CLI::App* idc = app.add_subcommand("identity", "evaluate an identity or decide if it holds");
  idc->add_option("algebra", arg, "catalog name | file | trunc:N | free:gens:caps")->required();
  idc->add_option("--id", id, "identity name (file stem under identities/) or path")->required();
  idc->add_option("--at", at, "comma list of basis labels/eN indices, or 'generators'");
  add_common(idc, c_id);

  CLI::App* ant = app.add_subcommand("antider", "antiderivation space of a module");
  ant->add_option("algebra", arg, "catalog name | file | trunc:N | free:gens:caps")->required();
  ant->add_option("--module", module, "self (default) | adjoint | trivial[:K] | module file");
  add_common(ant, c_ant);

  CLI::App* tpo = app.add_subcommand("trunc-poly", "emit the algebra t K[t]/(t^n) as a table file");
  tpo->add_option("n", trunc_n, "truncation exponent, at least 2")->required();
  tpo->add_option("-o,--output", table_out, "write to this file and print its path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (chk->parsed())
      return with_field(c_check.field, [&]<class F>() { return cmd_check<F>(arg, c_check); });
    if (fre->parsed())
      return with_field(c_free.field,
                        [&]<class F>() { return cmd_free<F>(gens, caps, table_out, c_free); });
    if (env->parsed())
      return with_field(c_env.field, [&]<class F>() {
        return cmd_envelope<F>(arg, maxdeg, checkpoint, emit_gb, c_env);
      });
    if (idc->parsed())
      return with_field(c_id.field, [&]<class F>() { return cmd_identity<F>(arg, id, at, c_id); });
    if (ant->parsed())
      return with_field(c_ant.field, [&]<class F>() { return cmd_antider<F>(arg, module, c_ant); });
    if (tpo->parsed()) return cmd_trunc_poly<Rat>(trunc_n, table_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
