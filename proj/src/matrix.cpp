#include "reflekt/matrix.hpp"

#include <numeric>
#include <sstream>

#include "reflekt/kernels.hpp"

namespace reflekt {

CycMatrix CycMatrix::identity(int n) {
  CycMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Cyclotomic(1);
  return m;
}

CycMatrix CycMatrix::diag(std::vector<Cyclotomic> const &d) {
  CycMatrix m(int(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
  return m;
}

CycMatrix CycMatrix::from_rows(std::vector<CycVector> const &rows) {
  if (rows.empty()) return CycMatrix();
  CycMatrix m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (int(rows[i].size()) != m.cols()) throw SizeMismatch("ragged rows");
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

CycVector CycMatrix::row(int i) const {
  return CycVector(a_.begin() + std::size_t(i) * cols_, a_.begin() + std::size_t(i + 1) * cols_);
}

CycVector CycMatrix::col(int j) const {
  CycVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CycMatrix CycMatrix::conj_transpose() const {
  CycMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
  return t;
}

CycMatrix CycMatrix::galois(std::int64_t s) const {
  CycMatrix t = *this;
  for (auto &v : t.a_) v = v.galois(s);
  return t;
}

CycMatrix CycMatrix::operator-(CycMatrix const &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeMismatch("matrix difference");
  CycMatrix t = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) t.a_[i] -= o.a_[i];
  return t;
}

CycMatrix CycMatrix::operator+(CycMatrix const &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeMismatch("matrix sum");
  CycMatrix t = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) t.a_[i] += o.a_[i];
  return t;
}

CycMatrix CycMatrix::scaled(Cyclotomic const &c) const {
  CycMatrix t = *this;
  for (auto &v : t.a_) v *= c;
  return t;
}

bool operator==(CycMatrix const &a, CycMatrix const &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Cyclotomic CycMatrix::trace() const {
  Cyclotomic t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool CycMatrix::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      auto const &v = (*this)(i, j);
      if (i == j ? !v.is_one() : !v.is_zero()) return false;
    }
  return true;
}

bool CycMatrix::is_zero() const {
  for (auto const &v : a_)
    if (!v.is_zero()) return false;
  return true;
}

int CycMatrix::conductor() const {
  std::int64_t m = 1;
  for (auto const &v : a_) m = lcm_int(m, v.conductor());
  return int(m);
}

std::string CycMatrix::key(int m) const {
  std::string s;
  for (auto const &v : a_) {
    s += v.key(m);
    s += '|';
  }
  return s;
}

std::string CycMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

CycMatrix mat_mul(CycMatrix const &a, CycMatrix const &b) {
  if (a.cols() != b.rows()) throw SizeMismatch("mat_mul");
  CycMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      Cyclotomic const &x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        Cyclotomic const &y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  return c;
}

CycVector mat_vec(CycMatrix const &a, CycVector const &v) {
  if (a.cols() != int(v.size())) throw SizeMismatch("mat_vec");
  CycVector out(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

CycMatrix mat_pow(CycMatrix const &a, std::int64_t e) {
  if (!a.is_square()) throw SizeMismatch("mat_pow");
  if (e < 0) return mat_pow(mat_inverse(a), -e);
  CycMatrix r = CycMatrix::identity(a.rows()), b = a;
  while (e) {
    if (e & 1) r = mat_mul(r, b);
    e >>= 1;
    if (e) b = mat_mul(b, b);
  }
  return r;
}

CycMatrix kron(CycMatrix const &a, CycMatrix const &b) {
  CycMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

namespace {

Cyclotomic det_cofactor(CycMatrix const &a, std::vector<int> &cols, int row) {
  int n = a.rows();
  if (row == n) return Cyclotomic(1);
  Cyclotomic total;
  int sign = 1;
  for (std::size_t idx = 0; idx < cols.size(); ++idx) {
    int c = cols[idx];
    if (c < 0) continue;
    if (!a(row, c).is_zero()) {
      cols[idx] = -1;
      Cyclotomic minor = det_cofactor(a, cols, row + 1);
      cols[idx] = c;
      Cyclotomic term = a(row, c) * minor;
      if (sign > 0)
        total += term;
      else
        total -= term;
    }
    sign = -sign;
  }
  return total;
}

// Bareiss fraction-free elimination
Cyclotomic det_bareiss(CycMatrix a) {
  int n = a.rows();
  Cyclotomic prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k).is_zero()) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a(i, k).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return Cyclotomic();
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  Cyclotomic d = a(n - 1, n - 1);
  return sign > 0 ? d : -d;
}

} // namespace

Cyclotomic mat_det(CycMatrix const &a) {
  if (!a.is_square()) throw SizeMismatch("mat_det");
  if (a.rows() == 0) return Cyclotomic(1);
  if (a.rows() <= 5) {
    std::vector<int> cols(a.cols());
    std::iota(cols.begin(), cols.end(), 0);
    return det_cofactor(a, cols, 0);
  }
  return det_bareiss(a);
}

CycMatrix mat_inverse(CycMatrix const &a) {
  if (!a.is_square()) throw SizeMismatch("mat_inverse");
  int n = a.rows();
  CycMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Cyclotomic(1);
  }
  auto piv = rref(aug);
  if (int(piv.size()) < n || piv[n - 1] != n - 1) throw DivisionByZero();
  CycMatrix inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<int> rref(CycMatrix &a) { return kernels::rref(a, kernels::Exec::parallel); }

int rank(CycMatrix a) { return int(rref(a).size()); }

std::vector<CycVector> kernel(CycMatrix const &a) {
  CycMatrix r = a;
  auto piv = rref(r);
  std::vector<bool> is_piv(a.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<CycVector> out;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    CycVector v(a.cols());
    v[f] = Cyclotomic(1);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!r(int(i), f).is_zero()) v[piv[i]] = -r(int(i), f);
    out.push_back(std::move(v));
  }
  return out;
}

Subspace::Subspace(int ambient, std::vector<CycVector> const &spanning) : n_(ambient) {
  if (spanning.empty()) return;
  CycMatrix m(int(spanning.size()), ambient);
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    if (int(spanning[i].size()) != ambient) throw SizeMismatch("subspace vector length");
    for (int j = 0; j < ambient; ++j) m(int(i), j) = spanning[i][j];
  }
  pivots_ = rref(m);
  for (std::size_t i = 0; i < pivots_.size(); ++i) basis_.push_back(m.row(int(i)));
}

CycVector Subspace::coordinates(CycVector const &v) const {
  CycVector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  CycVector back = combine(c);
  for (int j = 0; j < n_; ++j)
    if (!(back[j] == v[j])) throw ArithmeticInvariantError("vector not in subspace");
  return c;
}

bool Subspace::contains(CycVector const &v) const {
  try {
    coordinates(v);
    return true;
  } catch (ArithmeticInvariantError const &) {
    return false;
  }
}

CycVector Subspace::combine(CycVector const &coords) const {
  CycVector out(n_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (coords[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j)
      if (!basis_[i][j].is_zero()) out[j] += coords[i] * basis_[i][j];
  }
  return out;
}

int EigenMultiset::size() const { return std::accumulate(mult.begin(), mult.end(), 0); }

std::vector<std::pair<int, int>> EigenMultiset::eigenvalues() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < int(mult.size()); ++j)
    for (int k = 0; k < mult[j]; ++k) out.push_back({order, j});
  return out;
}

EigenMultiset EigenMultiset::inverse() const {
  EigenMultiset e;
  e.order = order;
  e.mult.assign(order, 0);
  for (int j = 0; j < order; ++j) e.mult[(order - j) % order] = mult[j];
  return e;
}

std::string EigenMultiset::key() const {
  std::string s = std::to_string(order) + ":";
  for (int m : mult) s += std::to_string(m) + ",";
  return s;
}

std::vector<Cyclotomic> power_traces(CycMatrix const &g, int cap) {
  if (!g.is_square()) throw SizeMismatch("power_traces");
  std::vector<Cyclotomic> t{Cyclotomic(g.rows())};
  CycMatrix p = g;
  while (!p.is_identity()) {
    if (int(t.size()) >= cap) throw CapExceeded("element order exceeds cap " + std::to_string(cap));
    t.push_back(p.trace());
    p = mat_mul(p, g);
  }
  return t;
}

int element_order(CycMatrix const &g, int cap) {
  if (!g.is_square()) throw SizeMismatch("element_order");
  CycMatrix p = g;
  int o = 1;
  while (!p.is_identity()) {
    if (++o > cap) throw CapExceeded("element order exceeds cap " + std::to_string(cap));
    p = mat_mul(p, g);
  }
  return o;
}

EigenMultiset eigen_multiset_from_traces(std::vector<Cyclotomic> const &traces, int size) {
  int o = int(traces.size());
  EigenMultiset e;
  e.order = o;
  e.mult.assign(o, 0);
  for (int j = 0; j < o; ++j) {
    Cyclotomic s;
    for (int k = 0; k < o; ++k) {
      if (traces[k].is_zero()) continue;
      s += traces[k] * Cyclotomic::root(o, -std::int64_t(j) * k);
    }
    s /= Cyclotomic(o);
    if (!s.is_rational() || !s.rational().is_integer() || s.rational().sign() < 0)
      throw ArithmeticInvariantError("eigenvalue multiplicity not a nonnegative integer: " + s.str());
    e.mult[j] = int(s.rational().to_int64());
  }
  if (e.size() != size) throw ArithmeticInvariantError("eigenvalue multiplicities do not sum to the size");
  return e;
}

namespace {

std::vector<Cyclotomic> poly_mul(std::vector<Cyclotomic> const &a, std::vector<Cyclotomic> const &b) {
  std::vector<Cyclotomic> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!a[i].is_zero() && !b[j].is_zero()) c[i + j] += a[i] * b[j];
  return c;
}

} // namespace

std::vector<Cyclotomic> det_one_minus_xg(EigenMultiset const &e) {
  std::vector<Cyclotomic> p{Cyclotomic(1)};
  for (int j = 0; j < e.order; ++j)
    for (int k = 0; k < e.mult[j]; ++k) p = poly_mul(p, {Cyclotomic(1), -Cyclotomic::root(e.order, j)});
  return p;
}

std::vector<Cyclotomic> det_one_minus_xg(CycMatrix const &g) {
  // evaluate det(1 - x g) at x = 0..r, then solve the Vandermonde system
  int r = g.rows();
  CycMatrix aug(r + 1, r + 2);
  for (int i = 0; i <= r; ++i) {
    CycMatrix m = CycMatrix::identity(r) - g.scaled(Cyclotomic(i));
    Cyclotomic p(1);
    for (int k = 0; k <= r; ++k) {
      aug(i, k) = p;
      p *= Cyclotomic(i);
    }
    aug(i, r + 1) = mat_det(m);
  }
  rref(aug);
  std::vector<Cyclotomic> c(r + 1);
  for (int k = 0; k <= r; ++k) c[k] = aug(k, r + 1);
  return c;
}

EigenMultiset eigen_multiset(CycMatrix const &g) {
  auto t = power_traces(g);
  EigenMultiset e = eigen_multiset_from_traces(t, g.rows());
  if (det_one_minus_xg(g) != det_one_minus_xg(e))
    throw ArithmeticInvariantError("eigenvalues do not reconstruct det(1 - xg)");
  return e;
}

int fix_dim(CycMatrix const &g) {
  auto t = power_traces(g);
  Cyclotomic s;
  for (auto const &v : t) s += v;
  s /= Cyclotomic(int(t.size()));
  if (!s.is_rational() || !s.rational().is_integer()) throw ArithmeticInvariantError("fixed dimension not an integer");
  int by_trace = int(s.rational().to_int64());
  int by_rank = g.rows() - rank(g - CycMatrix::identity(g.rows()));
  if (by_trace != by_rank) throw ArithmeticInvariantError("fix_dim: trace and rank routes disagree");
  return by_trace;
}

bool is_reflection(CycMatrix const &g) { return !g.is_identity() && fix_dim(g) == g.rows() - 1; }

bool is_unitary(CycMatrix const &g) { return mat_mul(g, g.conj_transpose()).is_identity(); }

} // namespace reflekt
