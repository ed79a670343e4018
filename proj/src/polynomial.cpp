#include "reflekt/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "reflekt/series.hpp"

namespace reflekt {

std::uint64_t MonomialBasis::pack(std::vector<int> const &e) {
  std::uint64_t key = 0;
  for (int v : e) key = key * 1024 + std::uint64_t(v);
  return key;
}

int MonomialBasis::index_of(std::vector<int> const &e) const {
  auto it = index.find(pack(e));
  if (it == index.end()) throw std::out_of_range("monomial not in basis");
  return it->second;
}

namespace {

void gen_exps(int r, int d, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  int pos = int(cur.size());
  if (pos == r - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = d; a >= 0; --a) {
    cur.push_back(a);
    gen_exps(r, d - a, cur, out);
    cur.pop_back();
  }
}

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> g_bases;

} // namespace

MonomialBasis const &monomial_basis(int r, int d) {
  if (r < 1 || r > 6 || d < 0 || d >= 1024) throw std::invalid_argument("monomial basis out of range");
  std::lock_guard<std::mutex> lock(g_basis_mutex);
  auto &slot = g_bases[{r, d}];
  if (!slot) {
    auto b = std::make_unique<MonomialBasis>();
    b->r = r;
    b->d = d;
    std::vector<int> cur;
    gen_exps(r, d, cur, b->exps);
    for (int i = 0; i < b->size(); ++i) b->index[MonomialBasis::pack(b->exps[i])] = i;
    slot = std::move(b);
  }
  return *slot;
}

CycVector poly_mul(CycVector const &f, int df, CycVector const &g, int dg, int r) {
  auto const &bf = monomial_basis(r, df);
  auto const &bg = monomial_basis(r, dg);
  auto const &bh = monomial_basis(r, df + dg);
  CycVector h(bh.size());
  std::vector<int> e(r);
  for (int i = 0; i < bf.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (int j = 0; j < bg.size(); ++j) {
      if (g[j].is_zero()) continue;
      for (int k = 0; k < r; ++k) e[k] = bf.exps[i][k] + bg.exps[j][k];
      h[bh.index_of(e)] += f[i] * g[j];
    }
  }
  return h;
}

CycVector monomial_vector(int r, std::vector<int> const &e) {
  int d = 0;
  for (int v : e) d += v;
  auto const &b = monomial_basis(r, d);
  CycVector v(b.size());
  v[b.index_of(e)] = Cyclotomic(1);
  return v;
}

SymImages::SymImages(CycMatrix const &P, int d, kernels::Exec exec) : r_(P.rows()), d_(d) {
  // degree 0
  img_.assign(1, SparseVec{{0, Cyclotomic(1)}});
  for (int k = 1; k <= d; ++k) {
    auto const &prev = monomial_basis(r_, k - 1);
    auto const &cur = monomial_basis(r_, k);
    auto next = kernels::map<SparseVec>(
        std::size_t(cur.size()),
        [&](std::size_t a) {
          std::vector<int> e = cur.exps[a];
          int j = 0;
          while (e[j] == 0) ++j;
          e[j] -= 1;
          SparseVec const &base = img_[prev.index_of(e)];
          std::map<int, Cyclotomic> acc;
          std::vector<int> f(r_);
          for (auto const &[mi, c] : base) {
            for (int i = 0; i < r_; ++i) {
              Cyclotomic const &p = P(i, j);
              if (p.is_zero()) continue;
              f = prev.exps[mi];
              f[i] += 1;
              acc[cur.index_of(f)] += c * p;
            }
          }
          SparseVec out;
          for (auto &[idx, c] : acc)
            if (!c.is_zero()) out.push_back({idx, std::move(c)});
          return out;
        },
        exec);
    img_ = std::move(next);
  }
}

CycVector SymImages::apply(CycVector const &f) const {
  CycVector out(monomial_basis(r_, d_).size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a].is_zero()) continue;
    for (auto const &[idx, c] : img_[a]) out[idx] += f[a] * c;
  }
  return out;
}

CycMatrix SymImages::matrix() const {
  int n = monomial_basis(r_, d_).size();
  CycMatrix m(n);
  for (int a = 0; a < n; ++a)
    for (auto const &[idx, c] : img_[a]) m(idx, a) = c;
  return m;
}

CycMatrix sym_power_action(CycMatrix const &P, int d) { return SymImages(P, d).matrix(); }

Rational monomial_weight(std::vector<int> const &e) {
  Rational w(1);
  for (int v : e)
    for (int k = 2; k <= v; ++k) w *= Rational(k);
  return w;
}

std::string variable_name(int r, int i) {
  static char const *small[] = {"x", "y", "z"};
  if (r <= 3) return small[i];
  return "x" + std::to_string(i + 1);
}

std::string render_poly(CycVector const &f, int r, int d) {
  auto const &b = monomial_basis(r, d);
  std::ostringstream os;
  bool first = true;
  for (int a = 0; a < b.size(); ++a) {
    Cyclotomic const &c = f[a];
    if (c.is_zero()) continue;
    bool neg = coeff_negative(c);
    Cyclotomic abs = neg ? -c : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (int i = 0; i < r; ++i) {
      int e = b.exps[a][i];
      if (e == 0) continue;
      mono += variable_name(r, i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (!abs.is_one() || mono.empty()) os << coeff_str(abs);
    os << mono;
  }
  if (first) os << "0";
  return os.str();
}

} // namespace reflekt
