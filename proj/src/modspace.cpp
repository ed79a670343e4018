#include "reflekt/modspace.hpp"

#include <algorithm>
#include <sstream>

namespace reflekt {

int GradedSpace::total_dim() const {
  int n = 0;
  for (auto const &p : pieces) n += p.space.dim();
  return n;
}

std::vector<int> GradedSpace::grading() const {
  std::vector<int> g;
  for (auto const &p : pieces)
    for (int k = 0; k < p.space.dim(); ++k) g.push_back(p.degree);
  return g;
}

namespace {

CycMatrix block_diag(std::vector<CycMatrix const *> const &blocks) {
  int n = 0;
  for (auto const *b : blocks) n += b->rows();
  CycMatrix m(n);
  int off = 0;
  for (auto const *b : blocks) {
    for (int i = 0; i < b->rows(); ++i)
      for (int j = 0; j < b->cols(); ++j) m(off + i, off + j) = (*b)(i, j);
    off += b->rows();
  }
  return m;
}

} // namespace

CycMatrix GradedSpace::coset_matrix(int coset) const {
  std::vector<CycMatrix const *> b;
  for (auto const &p : pieces) b.push_back(&p.coset_action.at(coset));
  return block_diag(b);
}

CycMatrix GradedSpace::generator_matrix(int k) const {
  std::vector<CycMatrix const *> b;
  for (auto const &p : pieces) b.push_back(&p.generator_action.at(k));
  return block_diag(b);
}

std::vector<std::string> GradedSpace::render() const {
  std::vector<std::string> out;
  for (auto const &p : pieces) {
    for (auto const &v : p.space.basis()) {
      if (!tensor) {
        out.push_back(render_poly(v, rank, p.degree));
        continue;
      }
      int n = monomial_basis(rank, p.degree).size();
      std::string s;
      for (int j = 0; j < rank; ++j) {
        CycVector f(n);
        bool any = false;
        for (int a = 0; a < n; ++a) {
          f[a] = v[std::size_t(a) * rank + j];
          any = any || !f[a].is_zero();
        }
        if (!any) continue;
        if (!s.empty()) s += " + ";
        s += "(" + render_poly(f, rank, p.degree) + ")*" + variable_name(rank, j) + "^s";
      }
      out.push_back(s.empty() ? "0" : s);
    }
  }
  return out;
}

Subspace invariant_subspace(std::vector<CycMatrix> const &gens, int d) {
  int r = gens.empty() ? 0 : gens[0].rows();
  if (gens.empty()) throw std::invalid_argument("invariant_subspace needs generators");
  int n = monomial_basis(r, d).size();
  std::vector<CycVector> basis;
  for (int a = 0; a < n; ++a) {
    CycVector e(n);
    e[a] = Cyclotomic(1);
    basis.push_back(std::move(e));
  }
  // cut the space down one generator at a time
  for (auto const &g : gens) {
    if (basis.empty()) break;
    SymImages img(g, d);
    CycMatrix m(n, int(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      CycVector w = img.apply(basis[k]);
      for (int i = 0; i < n; ++i) m(i, int(k)) = w[i] - basis[k][i];
    }
    std::vector<CycVector> next;
    for (auto const &c : kernel(m)) {
      CycVector v(n);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (!c[k].is_zero())
          for (int i = 0; i < n; ++i)
            if (!basis[k][i].is_zero()) v[i] += c[k] * basis[k][i];
      next.push_back(std::move(v));
    }
    basis = Subspace(n, next).basis();
  }
  return Subspace(n, basis);
}

namespace {

std::vector<CycMatrix> generator_matrices(ReflectionGroup const &G, NormalSubgroupHandle const &N) {
  std::vector<CycMatrix> gens;
  for (int g : N.generators) gens.push_back(G.element(g));
  if (gens.empty()) gens.push_back(CycMatrix::identity(G.rank()));
  return gens;
}

} // namespace

Subspace invariant_subspace(ReflectionGroup const &G, NormalSubgroupHandle const &N, int d) {
  return invariant_subspace(generator_matrices(G, N), d);
}

InvariantCache::InvariantCache(ReflectionGroup const &G, NormalSubgroupHandle const &N)
    : G_(G), gens_(generator_matrices(G, N)) {}

Subspace const &InvariantCache::at(int d) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return *it->second;
  }
  auto s = std::make_unique<Subspace>(invariant_subspace(gens_, d));
  std::lock_guard<std::mutex> lock(mu_);
  auto &slot = cache_[d];
  if (!slot) slot = std::move(s);
  return *slot;
}

Cyclotomic fischer_form(CycVector const &f, CycVector const &g, int r, int d) {
  auto const &b = monomial_basis(r, d);
  Cyclotomic acc;
  for (int a = 0; a < b.size(); ++a)
    if (!f[a].is_zero() && !g[a].is_zero()) acc += f[a] * g[a].conj() * Cyclotomic(monomial_weight(b.exps[a]));
  return acc;
}

Subspace fischer_complement(Subspace const &W, std::vector<CycVector> const &D, int r, int d) {
  int n = W.ambient();
  if (D.empty() || W.dim() == 0) return W;
  auto const &b = monomial_basis(r, d);
  std::vector<Cyclotomic> weight(n);
  for (int a = 0; a < n; ++a) weight[a] = Cyclotomic(monomial_weight(b.exps[a]));
  CycMatrix gram(int(D.size()), W.dim());
  for (std::size_t l = 0; l < D.size(); ++l) {
    CycVector row(n);
    for (int a = 0; a < n; ++a)
      if (!D[l][a].is_zero()) row[a] = D[l][a].conj() * weight[a];
    for (int k = 0; k < W.dim(); ++k) {
      Cyclotomic acc;
      auto const &w = W.basis()[k];
      for (int a = 0; a < n; ++a)
        if (!row[a].is_zero() && !w[a].is_zero()) acc += w[a] * row[a];
      gram(int(l), k) = acc;
    }
  }
  std::vector<CycVector> out;
  for (auto const &c : kernel(gram)) out.push_back(W.combine(c));
  return Subspace(n, out);
}

CycVector mul_monomial(CycVector const &f, int df, std::vector<int> const &m, int r) {
  int dm = 0;
  for (int v : m) dm += v;
  auto const &bf = monomial_basis(r, df);
  auto const &bh = monomial_basis(r, df + dm);
  CycVector h(bh.size());
  std::vector<int> e(r);
  for (int a = 0; a < bf.size(); ++a) {
    if (f[a].is_zero()) continue;
    for (int k = 0; k < r; ++k) e[k] = bf.exps[a][k] + m[k];
    h[bh.index_of(e)] = f[a];
  }
  return h;
}

CycMatrix piece_action(GradedPiece const &piece, CycMatrix const &P, bool tensor, std::int64_t s) {
  Subspace const &S = piece.space;
  int r = P.rows();
  SymImages img(P, piece.degree, kernels::Exec::serial);
  CycMatrix out(S.dim());
  if (!tensor) {
    for (int k = 0; k < S.dim(); ++k) {
      CycVector c = S.coordinates(img.apply(S.basis()[k]));
      for (int i = 0; i < S.dim(); ++i) out(i, k) = c[i];
    }
    return out;
  }
  CycMatrix Ps = P.galois(s);
  int n = monomial_basis(r, piece.degree).size();
  for (int k = 0; k < S.dim(); ++k) {
    auto const &v = S.basis()[k];
    CycVector w(std::size_t(n) * r);
    for (int j = 0; j < r; ++j) {
      CycVector f(n);
      bool any = false;
      for (int a = 0; a < n; ++a) {
        f[a] = v[std::size_t(a) * r + j];
        any = any || !f[a].is_zero();
      }
      if (!any) continue;
      CycVector gf = img.apply(f);
      for (int i = 0; i < r; ++i) {
        if (Ps(i, j).is_zero()) continue;
        for (int a = 0; a < n; ++a)
          if (!gf[a].is_zero()) w[std::size_t(a) * r + i] += Ps(i, j) * gf[a];
      }
    }
    CycVector c = S.coordinates(w);
    for (int i = 0; i < S.dim(); ++i) out(i, k) = c[i];
  }
  return out;
}

void attach_actions(GradedSpace &space, ReflectionGroup const &G, NormalSubgroupHandle const &N) {
  for (auto &piece : space.pieces) {
    piece.coset_action = kernels::map<CycMatrix>(
        N.coset_reps.size(),
        [&](std::size_t c) { return piece_action(piece, G.element(N.coset_reps[c]), space.tensor, space.twist); },
        kernels::Exec::parallel);
    piece.generator_action.clear();
    for (int g : G.generators()) piece.generator_action.push_back(piece_action(piece, G.element(g), space.tensor, space.twist));
  }
}

QuotientModule build_E(ReflectionGroup const &G, NormalSubgroupHandle const &N, DegreeMultiset const &dN,
                       InvariantCache &inv) {
  int r = G.rank();
  QuotientModule E;
  E.degrees = dN;
  E.space.label = "E*";
  E.space.rank = r;
  std::map<int, int> mult;
  for (int d : dN) mult[d] += 1;
  for (auto const &[d, mu] : mult) {
    Subspace const &W = inv.at(d);
    // decomposables: lower basic invariants times positive-degree invariants
    std::vector<CycVector> D;
    for (auto const &lower : E.space.pieces)
      for (auto const &f : lower.space.basis()) {
        Subspace const &rest = inv.at(d - lower.degree);
        for (auto const &h : rest.basis()) D.push_back(poly_mul(f, lower.degree, h, d - lower.degree, r));
      }
    GradedPiece piece;
    piece.degree = d;
    piece.space = fischer_complement(W, D, r, d);
    if (piece.space.dim() != mu)
      throw ArithmeticInvariantError("E*_" + std::to_string(d) + " has dimension " + std::to_string(piece.space.dim()) +
                                     ", expected " + std::to_string(mu));
    E.space.pieces.push_back(std::move(piece));
  }
  attach_actions(E.space, G, N);
  return E;
}

std::int64_t coinvariant_dimension(DegreeMultiset const &d, int e) {
  // prod (1 + q + ... + q^{d_i - 1})
  std::vector<std::int64_t> p{1};
  for (int di : d) {
    std::vector<std::int64_t> q(p.size() + di - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int k = 0; k < di; ++k) q[i + k] += p[i];
    p = std::move(q);
  }
  return e < int(p.size()) ? p[e] : 0;
}

Subspace coinvariant_piece(QuotientModule const &E, int r, int e) {
  auto const &b = monomial_basis(r, e);
  int n = b.size();
  std::vector<CycVector> ideal;
  for (auto const &piece : E.space.pieces) {
    if (piece.degree > e) continue;
    auto const &rest = monomial_basis(r, e - piece.degree);
    for (auto const &f : piece.space.basis())
      for (auto const &m : rest.exps) ideal.push_back(mul_monomial(f, piece.degree, m, r));
  }
  std::vector<CycVector> full;
  for (int a = 0; a < n; ++a) {
    CycVector v(n);
    v[a] = Cyclotomic(1);
    full.push_back(std::move(v));
  }
  Subspace C = fischer_complement(Subspace(n, full), ideal, r, e);
  if (C.dim() != coinvariant_dimension(E.degrees, e))
    throw ArithmeticInvariantError("coinvariant piece of degree " + std::to_string(e) + " has dimension " +
                                   std::to_string(C.dim()) + ", expected " +
                                   std::to_string(coinvariant_dimension(E.degrees, e)));
  return C;
}

Subspace const &CoinvariantCache::at(int e) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(e);
    if (it != cache_.end()) return *it->second;
  }
  auto s = std::make_unique<Subspace>(coinvariant_piece(E_, r_, e));
  std::lock_guard<std::mutex> lock(mu_);
  auto &slot = cache_[e];
  if (!slot) slot = std::move(s);
  return *slot;
}

OSSpace build_UNsigma(ReflectionGroup const &G, NormalSubgroupHandle const &N, QuotientModule const &E,
                      GaloisAuto const &sigma, CoinvariantCache &coinv) {
  int r = G.rank();
  std::int64_t s = sigma.exponent;
  OSSpace U;
  U.sigma = sigma;
  U.space.label = "U*";
  U.space.rank = r;
  U.space.tensor = true;
  U.space.twist = s;
  std::vector<CycMatrix> gens;
  for (int g : N.generators) gens.push_back(G.element(g));
  int bound = 0;
  for (int d : E.degrees) bound += d - 1;
  int found = 0;
  for (int e = 0; e <= bound && found < r; ++e) {
    Subspace const &C = coinv.at(e);
    if (C.dim() == 0) continue;
    int c = C.dim();
    int n = C.ambient();
    // N acts on C_e (x) (V^sigma)* with coordinates (coinvariant basis index, j)
    std::vector<CycVector> fixed;
    if (gens.empty()) {
      for (int i = 0; i < c * r; ++i) {
        CycVector v(std::size_t(c) * r);
        v[i] = Cyclotomic(1);
        fixed.push_back(std::move(v));
      }
    } else {
      CycMatrix stacked(int(gens.size()) * c * r, c * r);
      for (std::size_t k = 0; k < gens.size(); ++k) {
        SymImages img(gens[k], e, kernels::Exec::serial);
        CycMatrix A(c);
        for (int q = 0; q < c; ++q) {
          CycVector co = C.coordinates(img.apply(C.basis()[q]));
          for (int i = 0; i < c; ++i) A(i, q) = co[i];
        }
        CycMatrix B = kron(A, gens[k].galois(s)) - CycMatrix::identity(c * r);
        for (int i = 0; i < c * r; ++i)
          for (int j = 0; j < c * r; ++j) stacked(int(k) * c * r + i, j) = B(i, j);
      }
      fixed = kernel(stacked);
    }
    if (fixed.empty()) continue;
    std::vector<CycVector> ambient;
    for (auto const &w : fixed) {
      CycVector v(std::size_t(n) * r);
      for (int q = 0; q < c; ++q)
        for (int j = 0; j < r; ++j) {
          Cyclotomic const &coef = w[std::size_t(q) * r + j];
          if (coef.is_zero()) continue;
          for (int a = 0; a < n; ++a)
            if (!C.basis()[q][a].is_zero()) v[std::size_t(a) * r + j] += coef * C.basis()[q][a];
        }
      ambient.push_back(std::move(v));
    }
    GradedPiece piece;
    piece.degree = e;
    piece.space = Subspace(n * r, ambient);
    found += piece.space.dim();
    U.space.pieces.push_back(std::move(piece));
  }
  if (found != r)
    throw ArithmeticInvariantError("U^N_sigma has dimension " + std::to_string(found) + " within degree bound, expected " +
                                   std::to_string(r));
  attach_actions(U.space, G, N);
  U.exponents = U.space.grading();
  return U;
}

} // namespace reflekt
