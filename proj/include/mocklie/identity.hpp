#pragma once

// Polynomial identities for commutative nonassociative algebras: a small
// expression DSL with macros, a canonical polynomial form over the rationals,
// full multilinearization, and an exhaustive identity checker.
//
// DSL, one identity per file:
//   # comment to end of line
//   name: jacobi
//   triple(a,b,c) := (a*b)*c + (b*c)*a - (a*c)*b       <- macro definition
//   (x*y)*z + (z*x)*y + (y*z)*x                        <- the identity
//
// Expressions: variables [a-z][a-z0-9]*, rational constants `n` or `n/m`,
// `*` (the algebra product, left-associative), `+`, `-`, parentheses, and
// calls of previously defined macros.  Scalars may multiply elements but a
// bare scalar cannot be added to one.  The identity expression may span
// several lines; macro definitions are single lines and precede it.

#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mocklie/algebra.hpp"
#include "mocklie/field.hpp"
#include "mocklie/parallel.hpp"
#include "mocklie/words.hpp"

namespace mocklie {

// ---------------------------------------------------------------- polynomial

// Canonical form: terms sorted by the global word order, like terms merged,
// zero coefficients dropped.  Coefficients are exact rationals; evaluation
// maps them into the target field.
struct IdentityPoly {
  std::string name;
  std::vector<std::string> variables;  // order of first appearance
  // Variables with the same tag are interchangeable (the polynomial is
  // symmetric under permuting them); produced by linearize, where the fresh
  // copies of one original variable share its tag.
  std::vector<int> sym_group;
  WordPool pool;  // generators exactly = variables
  std::vector<std::pair<Rat, int>> terms;
  bool multihomogeneous = false;
  std::vector<int> multidegree;  // per variable, valid when multihomogeneous
  int total_degree = 0;

  IdentityPoly(std::string nm, std::vector<std::string> vars, std::vector<int> groups = {})
      : name(std::move(nm)), variables(std::move(vars)), pool(variables) {
    if (groups.empty()) {
      sym_group.resize(variables.size());
      for (std::size_t i = 0; i < variables.size(); ++i) sym_group[i] = static_cast<int>(i);
    } else {
      sym_group = std::move(groups);
    }
  }

  bool multilinear() const {
    if (!multihomogeneous) return false;
    for (int d : multidegree)
      if (d > 1) return false;
    return true;
  }

  // Merge raw (coefficient, word) pairs into canonical form and recompute
  // the degree data.
  void set_terms(const std::vector<std::pair<Rat, int>>& raw) {
    std::map<int, Rat> merged;
    for (const auto& [c, w] : raw) {
      auto [it, fresh] = merged.emplace(w, c);
      if (!fresh) it->second = it->second + c;
    }
    terms.clear();
    for (const auto& [w, c] : merged)
      if (!c.is_zero()) terms.emplace_back(c, w);
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return pool.less(a.second, b.second); });
    total_degree = 0;
    multihomogeneous = !terms.empty();
    multidegree.assign(variables.size(), 0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      int w = terms[t].second;
      total_degree = std::max(total_degree, pool.degree(w));
      if (t == 0)
        multidegree = pool.multidegree(w);
      else if (pool.multidegree(w) != multidegree)
        multihomogeneous = false;
    }
    if (!multihomogeneous) multidegree.clear();
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      Rat c = terms[t].first;
      bool neg = c.mpq() < 0;
      if (t == 0)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (neg) c = -c;
      std::string w = pool.str(terms[t].second);
      if (c == Rat(1))
        out += w;
      else
        out += c.to_string() + "*" + (pool.is_generator(terms[t].second) ? w : "(" + w + ")");
    }
    return out;
  }
};

// ------------------------------------------------------------------- parsing

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg) {}
};

namespace detail_id {

struct Token {
  enum Kind { Name, Number, Star, Plus, Minus, LParen, RParen, Comma, End } kind;
  std::string text;
  int line = 0, col = 0;
};

inline bool name_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool name_char(char c) { return name_start(c) || (c >= '0' && c <= '9'); }
inline bool digit(char c) { return c >= '0' && c <= '9'; }

// Tokenize one physical line (comments already stripped).
inline void lex_line(const std::string& s, int line, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (name_start(c)) {
      std::size_t j = i;
      while (j < s.size() && name_char(s[j])) ++j;
      out.push_back({Token::Name, s.substr(i, j - i), line, col});
      i = j;
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < s.size() && digit(s[j])) ++j;
      if (j < s.size() && s[j] == '/') {
        std::size_t k = j + 1;
        while (k < s.size() && digit(s[k])) ++k;
        if (k == j + 1) throw ParseError(line, static_cast<int>(j) + 1, "expected digits after '/'");
        j = k;
      }
      out.push_back({Token::Number, s.substr(i, j - i), line, col});
      i = j;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '*': k = Token::Star; break;
      case '+': k = Token::Plus; break;
      case '-': k = Token::Minus; break;
      case '(': k = Token::LParen; break;
      case ')': k = Token::RParen; break;
      case ',': k = Token::Comma; break;
      default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), line, col});
    ++i;
  }
}

struct Expr {
  enum Kind { Num, Var, Call, Mul, Add, Sub, Neg } kind;
  Rat num;
  std::string name;        // Var, Call
  std::vector<Expr> kids;  // Call args; Mul/Add/Sub two; Neg one
  int line = 0, col = 0;
};

struct Macro {
  std::string name;
  std::vector<std::string> params;
  Expr body;
  int line = 0;
};

class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> toks) : toks_(std::move(toks)) {
    toks_.push_back({Token::End, "", toks_.empty() ? 1 : toks_.back().line, toks_.empty() ? 1 : toks_.back().col + 1});
  }

  Expr parse() {
    Expr e = expr();
    if (cur().kind != Token::End) throw ParseError(cur().line, cur().col, "unexpected '" + cur().text + "'");
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  Expr expr() {
    Expr lhs;
    if (cur().kind == Token::Minus) {
      Token m = take();
      lhs = Expr{Expr::Neg, Rat(0), "", {term()}, m.line, m.col};
    } else {
      lhs = term();
    }
    while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
      Token op = take();
      Expr rhs = term();
      lhs = Expr{op.kind == Token::Plus ? Expr::Add : Expr::Sub, Rat(0), "",
                 {std::move(lhs), std::move(rhs)}, op.line, op.col};
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (cur().kind == Token::Star) {
      Token op = take();
      Expr rhs = factor();
      lhs = Expr{Expr::Mul, Rat(0), "", {std::move(lhs), std::move(rhs)}, op.line, op.col};
    }
    return lhs;
  }

  Expr factor() {
    const Token& t = cur();
    switch (t.kind) {
      case Token::Number: {
        Token n = take();
        return Expr{Expr::Num, Rat::from_mpq(parse_rational(n.text)), "", {}, n.line, n.col};
      }
      case Token::Name: {
        Token n = take();
        if (cur().kind == Token::LParen) {
          take();
          std::vector<Expr> args;
          args.push_back(expr());
          while (cur().kind == Token::Comma) {
            take();
            args.push_back(expr());
          }
          expect(Token::RParen, "')'");
          return Expr{Expr::Call, Rat(0), n.text, std::move(args), n.line, n.col};
        }
        return Expr{Expr::Var, Rat(0), n.text, {}, n.line, n.col};
      }
      case Token::LParen: {
        take();
        Expr e = expr();
        expect(Token::RParen, "')'");
        return e;
      }
      default:
        throw ParseError(t.line, t.col,
                         t.kind == Token::End ? "unexpected end of expression"
                                              : "expected a variable, number, or '(', got '" + t.text + "'");
    }
  }

  void expect(Token::Kind k, const std::string& what) {
    if (cur().kind != k)
      throw ParseError(cur().line, cur().col, "expected " + what + ", got '" +
                                                  (cur().kind == Token::End ? "end of expression" : cur().text) + "'");
    take();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Free variables in appearance order; names bound in `bound` are skipped.
// Call arguments contribute their own free variables; macro bodies are closed
// over their parameters and contribute nothing here.
inline void collect_free_vars(const Expr& e, const std::vector<std::string>& bound,
                              std::vector<std::string>& out) {
  switch (e.kind) {
    case Expr::Var: {
      for (const auto& b : bound)
        if (b == e.name) return;
      for (const auto& v : out)
        if (v == e.name) return;
      out.push_back(e.name);
      return;
    }
    case Expr::Num:
      return;
    default:
      for (const Expr& k : e.kids) collect_free_vars(k, bound, out);
  }
}

// A value during symbolic evaluation: either a pure scalar or an element-
// valued polynomial (map word -> coefficient).
struct SymVal {
  bool scalar_kind = false;
  Rat scalar;
  std::map<int, Rat> terms;
};

inline SymVal eval_expr(const Expr& e, const std::map<std::string, SymVal>& env,
                        const std::vector<Macro>& macros, WordPool& pool) {
  switch (e.kind) {
    case Expr::Num:
      return SymVal{true, e.num, {}};
    case Expr::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw ParseError(e.line, e.col, "unknown variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Call: {
      const Macro* m = nullptr;
      for (const Macro& cand : macros)
        if (cand.name == e.name) m = &cand;
      if (!m) throw ParseError(e.line, e.col, "unknown macro '" + e.name + "'");
      if (m->params.size() != e.kids.size())
        throw ParseError(e.line, e.col, "macro '" + e.name + "' takes " + std::to_string(m->params.size()) +
                                            " argument(s), got " + std::to_string(e.kids.size()));
      std::map<std::string, SymVal> inner;
      for (std::size_t i = 0; i < e.kids.size(); ++i)
        inner[m->params[i]] = eval_expr(e.kids[i], env, macros, pool);
      return eval_expr(m->body, inner, macros, pool);
    }
    case Expr::Neg: {
      SymVal v = eval_expr(e.kids[0], env, macros, pool);
      if (v.scalar_kind)
        v.scalar = -v.scalar;
      else
        for (auto& [w, c] : v.terms) c = -c;
      return v;
    }
    case Expr::Add:
    case Expr::Sub: {
      SymVal a = eval_expr(e.kids[0], env, macros, pool);
      SymVal b = eval_expr(e.kids[1], env, macros, pool);
      if (a.scalar_kind != b.scalar_kind)
        throw ParseError(e.line, e.col, "cannot add a scalar constant to an algebra element");
      bool sub = e.kind == Expr::Sub;
      if (a.scalar_kind) {
        a.scalar = sub ? a.scalar - b.scalar : a.scalar + b.scalar;
        return a;
      }
      for (const auto& [w, c] : b.terms) {
        Rat d = sub ? -c : c;
        auto [it, fresh] = a.terms.emplace(w, d);
        if (!fresh) {
          it->second = it->second + d;
          if (it->second.is_zero()) a.terms.erase(it);
        }
      }
      return a;
    }
    case Expr::Mul: {
      SymVal a = eval_expr(e.kids[0], env, macros, pool);
      SymVal b = eval_expr(e.kids[1], env, macros, pool);
      if (a.scalar_kind && b.scalar_kind) return SymVal{true, a.scalar * b.scalar, {}};
      if (a.scalar_kind || b.scalar_kind) {
        const Rat& s = a.scalar_kind ? a.scalar : b.scalar;
        SymVal& p = a.scalar_kind ? b : a;
        if (s.is_zero()) return SymVal{false, Rat(0), {}};
        for (auto& [w, c] : p.terms) c = c * s;
        return std::move(p);
      }
      SymVal out{false, Rat(0), {}};
      for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms) {
          Rat c = cu * cv;
          int w = pool.product(u, v);
          auto [it, fresh] = out.terms.emplace(w, c);
          if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) out.terms.erase(it);
          }
        }
      return out;
    }
  }
  throw std::logic_error("eval_expr: unreachable");
}

inline std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

inline std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline bool lowercase_name(const std::string& s) { return !s.empty() && s[0] >= 'a' && s[0] <= 'z'; }

}  // namespace detail_id

// Parse a complete identity file: a `name:` header, macro definitions, then
// one identity expression (possibly spanning several lines).
inline IdentityPoly parse_identity(const std::string& text) {
  using namespace detail_id;
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }

  std::string name;
  bool have_name = false;
  std::vector<Macro> macros;
  std::vector<Token> expr_tokens;
  bool expr_started = false;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    int line_no = static_cast<int>(li) + 1;
    std::string body = trimmed(strip_comment(lines[li]));
    if (body.empty()) continue;

    if (!have_name) {
      auto colon = body.find(':');
      if (colon == std::string::npos || trimmed(body.substr(0, colon)) != "name")
        throw ParseError(line_no, 1, "expected a 'name:' header as the first content line");
      name = trimmed(body.substr(colon + 1));
      if (name.empty()) throw ParseError(line_no, static_cast<int>(colon) + 2, "empty identity name");
      have_name = true;
      continue;
    }

    auto def = body.find(":=");
    if (def != std::string::npos) {
      if (expr_started)
        throw ParseError(line_no, 1, "macro definition after the identity expression");
      std::vector<Token> head;
      lex_line(lines[li].substr(0, lines[li].find(":=")), line_no, head);
      // head must be: Name ( p1 , p2 , ... )
      if (head.size() < 3 || head[0].kind != Token::Name || head[1].kind != Token::LParen ||
          head.back().kind != Token::RParen)
        throw ParseError(line_no, 1, "malformed macro header; expected name(p1,p2,...) := ...");
      Macro m;
      m.name = head[0].text;
      m.line = line_no;
      for (std::size_t i = 2; i + 1 < head.size(); ++i) {
        if (i % 2 == 0) {
          if (head[i].kind != Token::Name || !lowercase_name(head[i].text))
            throw ParseError(head[i].line, head[i].col, "macro parameter must be a lowercase name");
          for (const auto& p : m.params)
            if (p == head[i].text)
              throw ParseError(head[i].line, head[i].col, "duplicate macro parameter '" + head[i].text + "'");
          m.params.push_back(head[i].text);
        } else if (head[i].kind != Token::Comma) {
          throw ParseError(head[i].line, head[i].col, "expected ',' in macro parameter list");
        }
      }
      if (m.params.empty()) throw ParseError(line_no, 1, "macro must take at least one parameter");
      for (const Macro& prev : macros)
        if (prev.name == m.name) throw ParseError(line_no, 1, "duplicate macro '" + m.name + "'");
      std::string rhs_src = strip_comment(lines[li]);
      rhs_src = rhs_src.substr(rhs_src.find(":=") + 2);
      std::vector<Token> rhs;
      lex_line(rhs_src, line_no, rhs);
      // column offsets inside rhs are relative to the substring; shift them
      int shift = static_cast<int>(lines[li].find(":=")) + 2;
      for (Token& t : rhs) t.col += shift;
      m.body = ExprParser(std::move(rhs)).parse();
      // the body may only use its parameters and earlier macros
      std::vector<std::string> stray;
      collect_free_vars(m.body, m.params, stray);
      if (!stray.empty())
        throw ParseError(line_no, 1, "unknown variable '" + stray.front() + "' in macro '" + m.name + "'");
      macros.push_back(std::move(m));
      continue;
    }

    expr_started = true;
    lex_line(strip_comment(lines[li]), line_no, expr_tokens);
  }

  if (!have_name) throw ParseError(1, 1, "expected a 'name:' header");
  if (!expr_started) throw ParseError(static_cast<int>(lines.size()), 1, "missing identity expression");

  Expr root = ExprParser(std::move(expr_tokens)).parse();
  std::vector<std::string> vars;
  collect_free_vars(root, {}, vars);
  if (vars.empty()) throw ParseError(root.line, root.col, "identity has no variables");
  for (const auto& v : vars)
    if (!lowercase_name(v))
      throw ParseError(root.line, root.col, "'" + v + "' is not a macro call; variables must start lowercase");

  IdentityPoly p(name, vars);
  std::map<std::string, SymVal> env;
  for (std::size_t g = 0; g < vars.size(); ++g) {
    SymVal unit{false, Rat(0), {}};
    unit.terms.emplace(p.pool.generator(static_cast<int>(g)), Rat(1));
    env[vars[g]] = std::move(unit);
  }
  SymVal v = detail_id::eval_expr(root, env, macros, p.pool);
  if (v.scalar_kind) throw ParseError(root.line, root.col, "identity must be an algebra element, not a scalar");
  std::vector<std::pair<Rat, int>> raw;
  for (const auto& [w, c] : v.terms) raw.emplace_back(c, w);
  p.set_terms(raw);
  return p;
}

inline IdentityPoly parse_identity_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_identity(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// -------------------------------------------------------------- linearization

// Full multilinearization: every variable of degree d is replaced by d fresh
// variables (named v.1 ... v.d) summed over all d! placements.  The result is
// multilinear and symmetric under permuting the fresh copies of one original
// variable; the copies share a symmetry-group tag.  Requires a
// multihomogeneous input (split a mixed polynomial into components first).
inline IdentityPoly linearize(const IdentityPoly& p) {
  if (p.terms.empty()) return p;
  if (!p.multihomogeneous)
    throw std::invalid_argument(
        "linearize: polynomial is not multihomogeneous; split it into components first");
  // already multilinear with every variable present: nothing to do
  if (std::all_of(p.multidegree.begin(), p.multidegree.end(), [](int d) { return d == 1; })) return p;

  std::vector<std::string> fresh_names;
  std::vector<int> fresh_group;
  // first fresh generator id per original variable
  std::vector<int> base(p.variables.size(), -1);
  for (std::size_t g = 0; g < p.variables.size(); ++g) {
    int d = p.multidegree[g];
    if (d == 0) continue;
    base[g] = static_cast<int>(fresh_names.size());
    for (int k = 1; k <= d; ++k) {
      fresh_names.push_back(d == 1 ? p.variables[g] : p.variables[g] + "." + std::to_string(k));
      fresh_group.push_back(p.sym_group[g]);
    }
  }

  IdentityPoly out(p.name, fresh_names, fresh_group);

  // all permutations of {0..d-1} per original variable
  std::vector<std::vector<std::vector<int>>> perms(p.variables.size());
  for (std::size_t g = 0; g < p.variables.size(); ++g) {
    int d = p.multidegree[g];
    std::vector<int> idx(d);
    for (int k = 0; k < d; ++k) idx[k] = k;
    do {
      perms[g].push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
  }

  std::map<int, Rat> acc;
  std::vector<int> choice(p.variables.size(), 0);
  std::vector<int> counter(p.variables.size(), 0);

  // rebuild the term's word with the leaves of variable g replaced, in
  // left-to-right order, by the fresh copies selected by perms[g][choice[g]]
  auto build = [&](auto&& self, int w) -> int {
    if (p.pool.is_generator(w)) {
      int g = p.pool.generator_index(w);
      int slot = perms[g][choice[g]][counter[g]++];
      return out.pool.generator(base[g] + slot);
    }
    int l = self(self, p.pool.left(w));
    int r = self(self, p.pool.right(w));
    return out.pool.product(l, r);
  };

  for (const auto& [c, w] : p.terms) {
    std::fill(choice.begin(), choice.end(), 0);
    for (;;) {
      std::fill(counter.begin(), counter.end(), 0);
      int nw = build(build, w);
      auto [it, fresh] = acc.emplace(nw, c);
      if (!fresh) it->second = it->second + c;
      // odometer over placement choices
      std::size_t g = 0;
      while (g < choice.size() && ++choice[g] == static_cast<int>(perms[g].size())) {
        choice[g] = 0;
        ++g;
      }
      if (g == choice.size()) break;
    }
  }

  std::vector<std::pair<Rat, int>> raw;
  for (const auto& [w, c] : acc) raw.emplace_back(c, w);
  out.set_terms(raw);
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace detail_id {

// Per-thread evaluation workspace: one memo slot per pool word, validity
// tracked with a stamp so a new assignment costs no clearing.
template <class F>
struct EvalScratch {
  std::vector<SparseRow<F>> val;
  std::vector<std::int64_t> stamp;
  std::int64_t cur = 0;
  DenseAcc<F> mul_acc;
  DenseAcc<F> sum_acc;
  std::vector<SparseRow<F>> leaf;
  std::vector<int> tuple_buf;

  void reset(std::size_t words, int dim, std::size_t vars) {
    val.assign(words, {});
    stamp.assign(words, 0);
    cur = 0;
    mul_acc.reset(dim);
    sum_acc.reset(dim);
    leaf.assign(vars, {});
  }
};

template <class F>
const SparseRow<F>& eval_word(const AlgebraTable<F>& A, const WordPool& pool, int w, EvalScratch<F>& s) {
  if (s.stamp[w] == s.cur) return s.val[w];
  SparseRow<F> r;
  if (pool.is_generator(w)) {
    r = s.leaf[pool.generator_index(w)];
  } else {
    const SparseRow<F>& a = eval_word(A, pool, pool.left(w), s);
    const SparseRow<F>& b = eval_word(A, pool, pool.right(w), s);
    r = mul_rows(A, a, b, s.mul_acc);
  }
  s.stamp[w] = s.cur;
  s.val[w] = std::move(r);
  return s.val[w];
}

// Value of the polynomial under the leaves already loaded in the scratch.
template <class F>
SparseRow<F> eval_terms(const AlgebraTable<F>& A, const IdentityPoly& p, EvalScratch<F>& s) {
  ++s.cur;
  s.sum_acc.clear();
  for (const auto& [c, w] : p.terms) {
    F fc = F::from_mpq(c.mpq());
    for (const auto& [k, v] : eval_word(A, p.pool, w, s)) s.sum_acc.add(k, fc * v);
  }
  return s.sum_acc.take_sorted();
}

inline std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// rank -> non-decreasing tuple of `size` basis indices drawn from {0..n-1},
// in lexicographic order of tuples
inline void unrank_multiset(std::int64_t rank, int n, int size, std::vector<int>& out) {
  int lo = 0;
  for (int pos = 0; pos < size; ++pos) {
    for (int v = lo;; ++v) {
      std::int64_t cnt = binom(n - v + size - pos - 2, size - pos - 1);
      if (rank < cnt) {
        out.push_back(v);
        lo = v;
        break;
      }
      rank -= cnt;
    }
  }
}

}  // namespace detail_id

// Evaluate p at the given assignment (all variables must be covered; vectors
// must match the algebra dimension).
template <class F>
Vec<F> eval_identity(const AlgebraTable<F>& A, const IdentityPoly& p,
                     const std::map<std::string, Vec<F>>& assign) {
  detail_id::EvalScratch<F> s;
  s.reset(p.pool.size(), A.dim(), p.variables.size());
  for (std::size_t g = 0; g < p.variables.size(); ++g) {
    auto it = assign.find(p.variables[g]);
    if (it == assign.end())
      throw std::invalid_argument("eval_identity: missing assignment for variable '" + p.variables[g] + "'");
    if (static_cast<int>(it->second.size()) != A.dim())
      throw std::invalid_argument("eval_identity: assignment dimension mismatch for '" + p.variables[g] + "'");
    SparseRow<F> row;
    for (int k = 0; k < A.dim(); ++k)
      if (!it->second[k].is_zero()) row.emplace_back(k, it->second[k]);
    s.leaf[g] = std::move(row);
  }
  SparseRow<F> r = detail_id::eval_terms(A, p, s);
  Vec<F> out(A.dim());
  for (const auto& [k, v] : r) out[k] = v;
  return out;
}

// Outcome of an exhaustive identity check; when the identity fails, `witness`
// gives one basis assignment with a nonzero value.
template <class F>
struct IdentityCheck {
  bool holds = true;
  std::vector<std::pair<std::string, int>> witness;  // variable -> basis index
  Vec<F> value;
  std::string note;
};

// Decide whether p vanishes under every substitution of elements of A.  The
// procedure is exact for characteristic 0 and for primes exceeding the total
// degree: it first scans the original polynomial over basis tuples (a fast
// falsifier), then splits into multihomogeneous components, linearizes each,
// and sweeps basis tuples of the multilinear forms, where basis substitution
// is conclusive.  Within a symmetry group only sorted tuples are visited.
template <class F>
IdentityCheck<F> holds_identically(const AlgebraTable<F>& A, const IdentityPoly& p, int jobs = 1) {
  if (F::characteristic() != 0 && F::characteristic() <= static_cast<unsigned long>(p.total_degree))
    throw std::domain_error("holds_identically: field characteristic " + std::to_string(F::characteristic()) +
                            " does not exceed the identity degree " + std::to_string(p.total_degree) +
                            "; basis substitution is inconclusive");
  IdentityCheck<F> out;
  const int n = A.dim();
  if (n == 0 || p.terms.empty()) return out;
  const int nvars = static_cast<int>(p.variables.size());

  int threads = std::max(jobs, 1);
  std::vector<detail_id::EvalScratch<F>> scratch(threads);

  // ---- stage 1: the original polynomial on all basis tuples (falsifier)
  std::int64_t total = 1;
  bool overflow = false;
  for (int v = 0; v < nvars && !overflow; ++v) {
    total *= n;
    if (total > (std::int64_t(1) << 34)) overflow = true;
  }
  if (!overflow) {
    for (auto& s : scratch) s.reset(p.pool.size(), n, p.variables.size());
    auto pred = [&](std::int64_t idx, int tid) {
      auto& s = scratch[tid];
      for (int v = nvars - 1; v >= 0; --v) {
        s.leaf[v] = {{static_cast<int>(idx % n), F(1)}};
        idx /= n;
      }
      return !detail_id::eval_terms(A, p, s).empty();
    };
    std::int64_t hit = par::first_hit(total, jobs, pred);
    if (hit >= 0) {
      out.holds = false;
      out.note = "nonzero on a basis substitution";
      std::map<std::string, Vec<F>> assign;
      std::int64_t idx = hit;
      std::vector<int> tuple(nvars);
      for (int v = nvars - 1; v >= 0; --v) {
        tuple[v] = static_cast<int>(idx % n);
        idx /= n;
      }
      for (int v = 0; v < nvars; ++v) {
        out.witness.emplace_back(p.variables[v], tuple[v]);
        assign[p.variables[v]] = A.basis_vec(tuple[v]);
      }
      out.value = eval_identity(A, p, assign);
      return out;
    }
  }

  // ---- stage 2: linearized components on sorted basis tuples (conclusive)
  std::map<std::vector<int>, std::vector<std::pair<Rat, int>>> split;
  for (const auto& t : p.terms) split[p.pool.multidegree(t.second)].push_back(t);

  for (const auto& [md, terms] : split) {
    IdentityPoly comp(p.name, p.variables, p.sym_group);
    comp.pool = p.pool;
    comp.set_terms(terms);
    IdentityPoly lin = linearize(comp);

    // symmetry groups, in order of first appearance
    std::vector<int> group_tag;
    std::vector<std::vector<int>> group_vars;
    for (std::size_t v = 0; v < lin.variables.size(); ++v) {
      int tag = lin.sym_group[v];
      std::size_t g = 0;
      while (g < group_tag.size() && group_tag[g] != tag) ++g;
      if (g == group_tag.size()) {
        group_tag.push_back(tag);
        group_vars.push_back({});
      }
      group_vars[g].push_back(static_cast<int>(v));
    }

    std::vector<std::int64_t> radix(group_vars.size());
    std::int64_t sweep = 1;
    for (std::size_t g = 0; g < group_vars.size(); ++g) {
      radix[g] = detail_id::binom(n + static_cast<int>(group_vars[g].size()) - 1,
                                  static_cast<int>(group_vars[g].size()));
      if (sweep > (std::int64_t(1) << 40) / std::max<std::int64_t>(radix[g], 1))
        throw std::runtime_error("holds_identically: tuple space too large for an exhaustive check");
      sweep *= radix[g];
    }

    for (auto& s : scratch) s.reset(lin.pool.size(), n, lin.variables.size());
    auto load = [&](std::int64_t idx, detail_id::EvalScratch<F>& s, std::vector<int>* record) {
      std::vector<int>& tuple = s.tuple_buf;
      for (std::size_t g = group_vars.size(); g-- > 0;) {
        std::int64_t r = idx % radix[g];
        idx /= radix[g];
        tuple.clear();
        detail_id::unrank_multiset(r, n, static_cast<int>(group_vars[g].size()), tuple);
        for (std::size_t k = 0; k < group_vars[g].size(); ++k) {
          s.leaf[group_vars[g][k]] = {{tuple[k], F(1)}};
          if (record) (*record)[group_vars[g][k]] = tuple[k];
        }
      }
    };
    auto pred = [&](std::int64_t idx, int tid) {
      auto& s = scratch[tid];
      load(idx, s, nullptr);
      return !detail_id::eval_terms(A, lin, s).empty();
    };
    std::int64_t hit = par::first_hit(sweep, jobs, pred);
    if (hit >= 0) {
      out.holds = false;
      out.note = "nonzero linearized component";
      std::vector<int> tuple(lin.variables.size());
      load(hit, scratch[0], &tuple);
      std::map<std::string, Vec<F>> assign;
      for (std::size_t v = 0; v < lin.variables.size(); ++v) {
        out.witness.emplace_back(lin.variables[v], tuple[v]);
        assign[lin.variables[v]] = A.basis_vec(tuple[v]);
      }
      out.value = eval_identity(A, lin, assign);
      return out;
    }
  }
  return out;
}

}  // namespace mocklie
