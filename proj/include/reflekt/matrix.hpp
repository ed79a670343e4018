#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reflekt/cyclotomic.hpp"

namespace reflekt {

using CycVector = std::vector<Cyclotomic>;

// Dense matrix over Cyclotomic.  Group elements are square; the elimination
// helpers also take rectangular ones.
class CycMatrix {
public:
  CycMatrix() = default;
  CycMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}
  explicit CycMatrix(int n) : CycMatrix(n, n) {}
  static CycMatrix identity(int n);
  static CycMatrix diag(std::vector<Cyclotomic> const &d);
  static CycMatrix from_rows(std::vector<CycVector> const &rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_; }
  bool is_square() const { return rows_ == cols_; }

  Cyclotomic &operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  Cyclotomic const &operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
  CycVector row(int i) const;
  CycVector col(int j) const;

  CycMatrix transpose() const;
  CycMatrix conj_transpose() const;
  CycMatrix galois(std::int64_t s) const;
  CycMatrix operator-(CycMatrix const &o) const;
  CycMatrix operator+(CycMatrix const &o) const;
  CycMatrix scaled(Cyclotomic const &c) const;
  friend bool operator==(CycMatrix const &a, CycMatrix const &b);

  Cyclotomic trace() const;
  bool is_identity() const;
  bool is_zero() const;
  // lcm of entry conductors
  int conductor() const;
  std::string key(int m) const;
  std::string str() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Cyclotomic> a_;
};

struct SizeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal consistency failure (two routes disagree, a multiplicity is not
// an integer, ...).  Never a user error.
struct ArithmeticInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

CycMatrix mat_mul(CycMatrix const &a, CycMatrix const &b);
CycVector mat_vec(CycMatrix const &a, CycVector const &v);
CycMatrix mat_pow(CycMatrix const &a, std::int64_t e);
CycMatrix kron(CycMatrix const &a, CycMatrix const &b);
Cyclotomic mat_det(CycMatrix const &a);
CycMatrix mat_inverse(CycMatrix const &a);

// Reduced row echelon form in place; returns pivot columns.  Leftmost
// nonzero pivot, pivot rows scaled to 1.
std::vector<int> rref(CycMatrix &a);
int rank(CycMatrix a);
// basis of {v : a v = 0}, one vector per free column
std::vector<CycVector> kernel(CycMatrix const &a);

// Subspace of K^n kept in reduced row echelon form, so the coordinates of a
// member vector are its entries at the pivot columns.
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(int ambient) : n_(ambient) {}
  Subspace(int ambient, std::vector<CycVector> const &spanning);

  int ambient() const { return n_; }
  int dim() const { return int(basis_.size()); }
  std::vector<CycVector> const &basis() const { return basis_; }
  std::vector<int> const &pivots() const { return pivots_; }
  // coordinates of v; throws ArithmeticInvariantError if v is not in the span
  CycVector coordinates(CycVector const &v) const;
  bool contains(CycVector const &v) const;
  CycVector combine(CycVector const &coords) const;

private:
  int n_ = 0;
  std::vector<CycVector> basis_;
  std::vector<int> pivots_;
};

struct EigenMultiset {
  int order = 1;
  std::vector<int> mult; // mult[j] for eigenvalue zeta_order^j

  int size() const;
  int fixed() const { return mult.empty() ? 0 : mult[0]; }
  // (order, residue) pairs with repetition
  std::vector<std::pair<int, int>> eigenvalues() const;
  // the multiset of the inverse matrix
  EigenMultiset inverse() const;
  std::string key() const;
  friend bool operator==(EigenMultiset const &, EigenMultiset const &) = default;
};

int element_order(CycMatrix const &g, int cap = 100000);
// traces of g^k for 0 <= k < o and the order o
std::vector<Cyclotomic> power_traces(CycMatrix const &g, int cap = 100000);
EigenMultiset eigen_multiset(CycMatrix const &g);
EigenMultiset eigen_multiset_from_traces(std::vector<Cyclotomic> const &traces, int size);
// coefficients of det(1 - x g), low degree first
std::vector<Cyclotomic> det_one_minus_xg(CycMatrix const &g);
std::vector<Cyclotomic> det_one_minus_xg(EigenMultiset const &e);
int fix_dim(CycMatrix const &g);
bool is_reflection(CycMatrix const &g);
bool is_unitary(CycMatrix const &g);

} // namespace reflekt
