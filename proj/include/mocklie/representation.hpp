#pragma once

// Modules over commutative tables: the defining operator identity here is
//   rho(x o y) = -rho(x) rho(y) - rho(y) rho(x),
// the sign-twisted counterpart of a Lie-module structure.  On top of it:
// antiderivation spaces Der_{-1}(L, V) (maps D with D(x o y) =
// -rho(y) D(x) - rho(x) D(y)) with their inner subspaces, truncated
// polynomial algebras t K[t]/(t^n), tensor extensions L (x) t K[t]/(t^n)
// with graded embeddings, the faithful-module construction from a
// nondegenerate antiderivation, and the low-degree coboundary maps on
// symmetric cochains.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mocklie/algebra.hpp"
#include "mocklie/matrix.hpp"

namespace mocklie {

template <class F>
struct ModuleRep {
  AlgebraTable<F> algebra;
  int dim_v = 0;
  std::vector<Mat<F>> rho;  // one dim_v x dim_v matrix per basis element

  // action of a general element
  Mat<F> act(const Vec<F>& x) const {
    Mat<F> m(dim_v, dim_v);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (int r = 0; r < dim_v; ++r)
        for (int c = 0; c < dim_v; ++c) m(r, c) += x[i] * rho[i](r, c);
    }
    return m;
  }
};

// first basis pair (i <= j) violating the module identity
template <class F>
std::optional<std::array<int, 2>> module_rep_witness(const ModuleRep<F>& M) {
  const int n = M.algebra.dim();
  if (static_cast<int>(M.rho.size()) != n)
    throw std::invalid_argument("module_rep_witness: one action matrix per basis element required");
  for (const auto& m : M.rho)
    if (m.rows() != M.dim_v || m.cols() != M.dim_v)
      throw std::invalid_argument("module_rep_witness: action matrix shape mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat<F> lhs(M.dim_v, M.dim_v);
      for (const auto& [k, c] : M.algebra.product(i, j))
        for (int r = 0; r < M.dim_v; ++r)
          for (int s = 0; s < M.dim_v; ++s) lhs(r, s) += c * M.rho[k](r, s);
      Mat<F> rhs = (M.rho[i] * M.rho[j]).scaled(F(-1));
      Mat<F> rhs2 = (M.rho[j] * M.rho[i]).scaled(F(-1));
      for (int r = 0; r < M.dim_v; ++r)
        for (int s = 0; s < M.dim_v; ++s) rhs(r, s) += rhs2(r, s);
      if (!(lhs == rhs)) return std::array<int, 2>{i, j};
    }
  return std::nullopt;
}

template <class F>
bool is_module_rep(const ModuleRep<F>& M) {
  return !module_rep_witness(M).has_value();
}

// Left multiplication as raw action data, no validity check: antiderivation
// spaces are meaningful for any commutative table (the equation D(x o y) =
// -rho(y) D(x) - rho(x) D(y) with left multiplication reads D(x o y) =
// -D(x) o y - x o D(y)), even when the module identity itself fails.
template <class F>
ModuleRep<F> left_mult_module(const AlgebraTable<F>& A) {
  ModuleRep<F> M{A, A.dim(), {}};
  for (int i = 0; i < A.dim(); ++i) M.rho.push_back(A.left_mult_matrix(i));
  return M;
}

// Left multiplication as a module over the table itself.  Valid exactly when
// the table satisfies commutativity + Jacobi, so that is enforced.
template <class F>
ModuleRep<F> adjoint_module(const AlgebraTable<F>& A) {
  if (auto w = commutativity_witness(A))
    throw std::invalid_argument("adjoint_module: table is not commutative at basis pair (" +
                                std::to_string((*w)[0] + 1) + "," + std::to_string((*w)[1] + 1) + ")");
  if (auto w = jacobi_witness(A))
    throw std::invalid_argument("adjoint_module: Jacobi fails at basis triple (" +
                                std::to_string((*w)[0] + 1) + "," + std::to_string((*w)[1] + 1) +
                                "," + std::to_string((*w)[2] + 1) + ")");
  return left_mult_module(A);
}

// zero action on a k-dimensional space (a module over any table)
template <class F>
ModuleRep<F> trivial_module(const AlgebraTable<F>& A, int k = 1) {
  if (k < 0) throw std::invalid_argument("trivial_module: negative dimension");
  ModuleRep<F> M{A, k, {}};
  M.rho.assign(A.dim(), Mat<F>(k, k));
  return M;
}

// ------------------------------------------------------------ antiderivations

namespace detail_rep {

template <class F>
Vec<F> flatten(const Mat<F>& m) {
  Vec<F> v(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) v[static_cast<std::size_t>(r) * m.cols() + c] = m(r, c);
  return v;
}

template <class F>
Mat<F> unflatten(const Vec<F>& v, int rows, int cols) {
  Mat<F> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = v[static_cast<std::size_t>(r) * cols + c];
  return m;
}

}  // namespace detail_rep

// first basis pair (i <= j) where D(e_i o e_j) + rho(e_j) D(e_i)
// + rho(e_i) D(e_j) fails to vanish; D maps the algebra into the module
template <class F>
std::optional<std::array<int, 2>> antiderivation_witness(const ModuleRep<F>& M, const Mat<F>& D) {
  const int n = M.algebra.dim();
  if (D.rows() != M.dim_v || D.cols() != n)
    throw std::invalid_argument("antiderivation_witness: map shape must be dim V x dim L");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec<F> lhs(M.dim_v);
      for (const auto& [k, c] : M.algebra.product(i, j))
        for (int r = 0; r < M.dim_v; ++r) lhs[r] += c * D(r, k);
      for (int r = 0; r < M.dim_v; ++r)
        for (int s = 0; s < M.dim_v; ++s) {
          lhs[r] += M.rho[j](r, s) * D(s, i);
          lhs[r] += M.rho[i](r, s) * D(s, j);
        }
      if (!is_zero_vec(lhs)) return std::array<int, 2>{i, j};
    }
  return std::nullopt;
}

template <class F>
bool is_antiderivation(const ModuleRep<F>& M, const Mat<F>& D) {
  return !antiderivation_witness(M, D).has_value();
}

template <class F>
struct AntiderivationSpace {
  ModuleRep<F> module;
  std::vector<Mat<F>> basis;        // maps dim V x dim L, echelonized
  std::vector<Mat<F>> inner_basis;  // basis of { x -> rho(x) v }, echelonized
  Subspace<F> span;                 // flattened full space
  Subspace<F> inner_span;           // flattened inner subspace

  int dim() const { return static_cast<int>(basis.size()); }
  int inner_dim() const { return static_cast<int>(inner_basis.size()); }
  int outer_dim() const { return dim() - inner_dim(); }
  bool contains(const Mat<F>& D) const { return span.contains(detail_rep::flatten(D)); }
  bool is_inner(const Mat<F>& D) const { return inner_span.contains(detail_rep::flatten(D)); }
};

// Solve the antiderivation equations as one linear system over the map
// entries (row-major unknowns d[r][c] for the value coordinate r of basis
// argument c).  Works on any action data; the module identity is not needed
// for the system to make sense.  The inner span is the span of the maps
// x -> rho(x) v, which all solve the equations exactly when the module
// identity holds (so inner_span <= span for genuine modules).
template <class F>
AntiderivationSpace<F> antiderivations(const ModuleRep<F>& M) {
  const int n = M.algebra.dim();
  const int dv = M.dim_v;
  const int unknowns = dv * n;
  Mat<F> sys(((n * (n + 1)) / 2) * dv, unknowns);
  int row = 0;
  auto at = [&](int r, int c) { return r * n + c; };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int r = 0; r < dv; ++r, ++row) {
        for (const auto& [k, c] : M.algebra.product(i, j)) sys(row, at(r, k)) += c;
        for (int s = 0; s < dv; ++s) {
          sys(row, at(s, i)) += M.rho[j](r, s);
          sys(row, at(s, j)) += M.rho[i](r, s);
        }
      }
    }
  AntiderivationSpace<F> out{M, {}, {}, Subspace<F>::zero(unknowns), Subspace<F>::zero(unknowns)};
  std::vector<Vec<F>> sol = sys.nullspace();
  out.span = Subspace<F>::span(unknowns, sol);
  for (int r = 0; r < out.span.dim(); ++r)
    out.basis.push_back(detail_rep::unflatten(out.span.basis_vec(r), dv, n));
  // inner maps x -> rho(x) v, one candidate per module basis vector
  std::vector<Vec<F>> inner;
  for (int s = 0; s < dv; ++s) {
    Mat<F> D(dv, n);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < dv; ++r) D(r, i) = M.rho[i](r, s);
    inner.push_back(detail_rep::flatten(D));
  }
  out.inner_span = Subspace<F>::span(unknowns, inner);
  for (int r = 0; r < out.inner_span.dim(); ++r)
    out.inner_basis.push_back(detail_rep::unflatten(out.inner_span.basis_vec(r), dv, n));
  return out;
}

// ------------------------------------------------- small standard algebras

// t K[t]/(t^n): basis t, t^2, ..., t^{n-1}; t^i o t^j = t^{i+j} when it fits
template <class F>
AlgebraTable<F> truncated_poly_algebra(int n) {
  if (n < 2) throw std::invalid_argument("truncated_poly_algebra: n must be at least 2");
  std::vector<std::string> labels;
  for (int d = 1; d < n; ++d) labels.push_back(d == 1 ? "t" : "t^" + std::to_string(d));
  AlgebraTable<F> A(n - 1, labels);
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (i + j <= n - 1) A.set_product(i - 1, j - 1, SparseRow<F>{{i + j - 1, F(1)}});
  return A;
}

// L (x) t K[t]/(t^n): basis x_a (x) t^d ordered by t-degree, then by the basis
// of L; products multiply both factors.
template <class F>
AlgebraTable<F> tensor_extension(const AlgebraTable<F>& L, int n) {
  if (n < 2) throw std::invalid_argument("tensor_extension: n must be at least 2");
  if (!is_mock_lie(L))
    throw std::invalid_argument("tensor_extension: input fails commutativity or Jacobi");
  const int nl = L.dim();
  std::vector<std::string> labels;
  for (int d = 1; d < n; ++d)
    for (int a = 0; a < nl; ++a)
      labels.push_back(L.labels()[a] + (d == 1 ? "@t" : "@t^" + std::to_string(d)));
  AlgebraTable<F> T((n - 1) * nl, labels);
  auto idx = [nl](int d, int a) { return (d - 1) * nl + a; };
  for (int d = 1; d < n; ++d)
    for (int e = d; e < n; ++e) {
      if (d + e > n - 1) continue;
      for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) {
          if (idx(d, a) > idx(e, b)) continue;
          SparseRow<F> row = L.product(a, b);
          for (auto& [k, c] : row) k = idx(d + e, k);
          T.set_product(idx(d, a), idx(e, b), std::move(row));
        }
    }
  return T;
}

// The degree map x -> sum_d x_d (x) t^d for a grading L = (+)_d L_d supplied
// as subspaces for degrees 1 .. n-1.  Verifies that the components form a
// direct sum, that products respect the grading (with everything above
// degree n-1 equal to zero), and that the assembled map is an injective
// homomorphism into tensor_extension(L, n); returns its matrix.
template <class F>
Mat<F> graded_embedding(const AlgebraTable<F>& L, int n, const std::vector<Subspace<F>>& grading) {
  const int nl = L.dim();
  if (static_cast<int>(grading.size()) != n - 1)
    throw std::invalid_argument("graded_embedding: need one component per degree 1 .. n-1");
  int total = 0;
  for (const auto& G : grading) {
    if (G.ambient() != nl) throw std::invalid_argument("graded_embedding: component ambient mismatch");
    total += G.dim();
  }
  Mat<F> stack(0, nl);
  for (const auto& G : grading)
    for (int r = 0; r < G.dim(); ++r) stack.append_row(G.basis_vec(r));
  if (total != nl || stack.rank() != nl)
    throw std::invalid_argument("graded_embedding: components do not form a direct sum decomposition");
  // products must respect degrees, vanishing beyond n-1
  for (int d = 1; d < n; ++d)
    for (int e = d; e < n; ++e) {
      Subspace<F> prod = subspace_product(L, grading[d - 1], grading[e - 1]);
      if (d + e <= n - 1) {
        if (!grading[d + e - 1].contains(prod))
          throw std::invalid_argument("graded_embedding: products leave their graded component");
      } else if (prod.dim() != 0) {
        throw std::invalid_argument("graded_embedding: nonzero product above the degree cap");
      }
    }
  // decompose each basis vector of L into graded components by solving
  // against the stacked component bases (columns of sysm)
  Mat<F> cols = Mat<F>::identity(nl);
  Mat<F> sysm(nl, nl);
  for (int r = 0; r < nl; ++r)
    for (int c = 0; c < nl; ++c) sysm(c, r) = stack(r, c);
  Mat<F> embed((n - 1) * nl, nl);
  for (int j = 0; j < nl; ++j) {
    auto coords = sysm.solve(cols.row(j));
    if (!coords) throw std::invalid_argument("graded_embedding: decomposition failed");
    int offset = 0;
    for (int d = 1; d < n; ++d) {
      const Subspace<F>& G = grading[d - 1];
      for (int r = 0; r < G.dim(); ++r) {
        const F& c = (*coords)[offset + r];
        if (c.is_zero()) continue;
        Vec<F> comp = G.basis_vec(r);
        for (int a = 0; a < nl; ++a) embed((d - 1) * nl + a, j) += c * comp[a];
      }
      offset += G.dim();
    }
  }
  // verify: injective homomorphism into the extension
  if (embed.rank() != nl) throw std::invalid_argument("graded_embedding: map is not injective");
  AlgebraTable<F> T = tensor_extension(L, n);
  for (int i = 0; i < nl; ++i)
    for (int j = i; j < nl; ++j) {
      Vec<F> img(nl);
      for (const auto& [k, c] : L.product(i, j)) img[k] = c;
      Vec<F> lhs = embed.apply(img);
      Vec<F> rhs = T.multiply(embed.apply(cols.row(i)), embed.apply(cols.row(j)));
      for (std::size_t t = 0; t < lhs.size(); ++t)
        if (lhs[t] != rhs[t])
          throw std::invalid_argument("graded_embedding: map fails to preserve products");
    }
  return embed;
}

// ----------------------------------------- faithful module from a nondegenerate D

// kernel of the map x -> rho(x) (zero exactly when the module is faithful)
template <class F>
Subspace<F> rep_kernel(const ModuleRep<F>& M) {
  const int n = M.algebra.dim();
  Mat<F> sys(M.dim_v * M.dim_v, n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < M.dim_v; ++r)
      for (int c = 0; c < M.dim_v; ++c) sys(r * M.dim_v + c, i) = M.rho[i](r, c);
  return Subspace<F>::span(n, sys.nullspace());
}

template <class F>
bool is_faithful(const ModuleRep<F>& M) {
  return rep_kernel(M).dim() == 0;
}

// Given an antiderivation D: L -> V with trivial kernel, the space
// V (+) Der_{-1}(L, V) carries a module structure: on V the original action,
// and a map d acts by rho(x)(d) = d(x).  The result is faithful because
// rho(x) = 0 forces D(x) = 0, hence x = 0.
template <class F>
ModuleRep<F> faithful_from_nondegenerate(const ModuleRep<F>& M, const Mat<F>& D) {
  if (auto w = antiderivation_witness(M, D))
    throw std::invalid_argument("faithful_from_nondegenerate: D is not an antiderivation (fails at "
                                "basis pair (" +
                                std::to_string((*w)[0] + 1) + "," + std::to_string((*w)[1] + 1) + "))");
  if (!D.nullspace().empty()) throw std::runtime_error("faithful_from_nondegenerate: D degenerate");
  AntiderivationSpace<F> ders = antiderivations(M);
  const int n = M.algebra.dim();
  const int dv = M.dim_v;
  const int dw = dv + ders.dim();
  ModuleRep<F> W{M.algebra, dw, {}};
  for (int i = 0; i < n; ++i) {
    Mat<F> m(dw, dw);
    for (int r = 0; r < dv; ++r)
      for (int c = 0; c < dv; ++c) m(r, c) = M.rho[i](r, c);
    for (int k = 0; k < ders.dim(); ++k)
      for (int r = 0; r < dv; ++r) m(r, dv + k) = ders.basis[k](r, i);
    W.rho.push_back(std::move(m));
  }
  return W;
}

// --------------------------------------------------- symmetric coboundaries

// Symmetric cochains store one value column per sorted argument tuple.
inline int sym2_count(int n) { return n * (n + 1) / 2; }
inline int sym3_count(int n) { return n * (n + 1) * (n + 2) / 6; }

inline int sym2_rank(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

inline int sym3_rank(int n, int i, int j, int k) {
  std::array<int, 3> t{i, j, k};
  std::sort(t.begin(), t.end());
  int rank = 0;
  for (int s = 0; s < t[0]; ++s) rank += sym2_count(n - s);
  return rank + sym2_rank(n - t[0], t[1] - t[0], t[2] - t[0]);
}

// delta phi(x, y) = phi(xy) + rho(x) phi(y) + rho(y) phi(x)
// (the module-extension variant: its kernel is exactly Der_{-1}(L, V))
template <class F>
Mat<F> coboundary1_h1(const ModuleRep<F>& M, const Mat<F>& phi) {
  const int n = M.algebra.dim();
  if (phi.rows() != M.dim_v || phi.cols() != n)
    throw std::invalid_argument("coboundary1: cochain shape must be dim V x dim L");
  Mat<F> out(M.dim_v, sym2_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int col = sym2_rank(n, i, j);
      for (const auto& [k, c] : M.algebra.product(i, j))
        for (int r = 0; r < M.dim_v; ++r) out(r, col) += c * phi(r, k);
      for (int r = 0; r < M.dim_v; ++r)
        for (int s = 0; s < M.dim_v; ++s)
          out(r, col) += M.rho[i](r, s) * phi(s, j) + M.rho[j](r, s) * phi(s, i);
    }
  return out;
}

// delta phi(x, y) = phi(xy) - rho(x) phi(y) - rho(y) phi(x)
// (the deformation-complex variant; differs from the other one in sign)
template <class F>
Mat<F> coboundary1_h2(const ModuleRep<F>& M, const Mat<F>& phi) {
  const int n = M.algebra.dim();
  if (phi.rows() != M.dim_v || phi.cols() != n)
    throw std::invalid_argument("coboundary1: cochain shape must be dim V x dim L");
  Mat<F> out(M.dim_v, sym2_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int col = sym2_rank(n, i, j);
      for (const auto& [k, c] : M.algebra.product(i, j))
        for (int r = 0; r < M.dim_v; ++r) out(r, col) += c * phi(r, k);
      for (int r = 0; r < M.dim_v; ++r)
        for (int s = 0; s < M.dim_v; ++s)
          out(r, col) -= M.rho[i](r, s) * phi(s, j) + M.rho[j](r, s) * phi(s, i);
    }
  return out;
}

// delta phi(x, y, z) = phi(xy, z) + phi(zy, x) + phi(xz, y)
//                    + rho(z) phi(x, y) + rho(x) phi(z, y) + rho(y) phi(x, z)
template <class F>
Mat<F> coboundary2(const ModuleRep<F>& M, const Mat<F>& phi) {
  const int n = M.algebra.dim();
  if (phi.rows() != M.dim_v || phi.cols() != sym2_count(n))
    throw std::invalid_argument("coboundary2: cochain shape must be dim V x C(dim L + 1, 2)");
  Mat<F> out(M.dim_v, sym3_count(n));
  auto add_prod_term = [&](int col, int a, int b, int other) {
    // phi(e_a e_b, e_other)
    for (const auto& [k, c] : M.algebra.product(a, b)) {
      const int pc = sym2_rank(n, k, other);
      for (int r = 0; r < M.dim_v; ++r) out(r, col) += c * phi(r, pc);
    }
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const int col = sym3_rank(n, i, j, k);
        add_prod_term(col, i, j, k);
        add_prod_term(col, k, j, i);
        add_prod_term(col, i, k, j);
        for (int r = 0; r < M.dim_v; ++r)
          for (int s = 0; s < M.dim_v; ++s)
            out(r, col) += M.rho[k](r, s) * phi(s, sym2_rank(n, i, j)) +
                           M.rho[i](r, s) * phi(s, sym2_rank(n, k, j)) +
                           M.rho[j](r, s) * phi(s, sym2_rank(n, i, k));
      }
  return out;
}

// With a zero action every rho term drops out, both degree-1 variants
// coincide, and the two differentials compose to zero by the Jacobi
// identity; the complex then reports cohomology through degree 3.
template <class F>
struct TrivialCohomology {
  Mat<F> d1;  // maps S^1 -> S^2 (per value coordinate)
  Mat<F> d2;  // maps S^2 -> S^3
  int dim_v = 1;
  int dim_s1 = 0, dim_s2 = 0, dim_s3 = 0;
  int ker_d1 = 0, im_d1 = 0, ker_d2 = 0, im_d2 = 0;
  int h1 = 0, h2 = 0;
};

template <class F>
TrivialCohomology<F> trivial_cohomology_dims(const AlgebraTable<F>& A, int dim_v = 1) {
  if (dim_v < 1) throw std::invalid_argument("trivial_cohomology_dims: dim V must be positive");
  const int n = A.dim();
  TrivialCohomology<F> out;
  out.dim_v = dim_v;
  out.d1 = Mat<F>(sym2_count(n), n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (const auto& [k, c] : A.product(i, j)) out.d1(sym2_rank(n, i, j), k) += c;
  out.d2 = Mat<F>(sym3_count(n), sym2_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const int row = sym3_rank(n, i, j, k);
        auto add = [&](int a, int b, int other) {
          for (const auto& [m, c] : A.product(a, b)) out.d2(row, sym2_rank(n, m, other)) += c;
        };
        add(i, j, k);
        add(k, j, i);
        add(i, k, j);
      }
  const int r1 = out.d1.rank();
  const int r2 = out.d2.rank();
  out.dim_s1 = n * dim_v;
  out.dim_s2 = sym2_count(n) * dim_v;
  out.dim_s3 = sym3_count(n) * dim_v;
  out.ker_d1 = (n - r1) * dim_v;
  out.im_d1 = r1 * dim_v;
  out.ker_d2 = (sym2_count(n) - r2) * dim_v;
  out.im_d2 = r2 * dim_v;
  out.h1 = out.ker_d1;            // nothing maps in with a zero action
  out.h2 = out.ker_d2 - out.im_d1;
  return out;
}

}  // namespace mocklie
