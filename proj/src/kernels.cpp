#include "reflekt/kernels.hpp"

namespace reflekt::kernels {

std::vector<int> rref(CycMatrix &a, Exec exec) {
  int rows = a.rows(), cols = a.cols();
  bool par = exec == Exec::parallel && std::size_t(rows) * cols >= kParallelRrefThreshold;
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!a(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = col; j < cols; ++j) std::swap(a(p, j), a(r, j));
    Cyclotomic inv = a(r, col).inverse();
    std::vector<int> nz;
    for (int j = col; j < cols; ++j)
      if (!a(r, j).is_zero()) {
        if (j != col) a(r, j) *= inv;
        nz.push_back(j);
      }
    a(r, col) = Cyclotomic(1);
    auto eliminate = [&](int i) {
      if (i == r || a(i, col).is_zero()) return;
      Cyclotomic f = a(i, col);
      for (int j : nz) a(i, j) -= f * a(r, j);
    };
    if (par) {
      ErrorSlot err;
#pragma omp parallel for schedule(static)
      for (int i = 0; i < rows; ++i) err.run([&] { eliminate(i); });
      err.rethrow();
    } else {
      for (int i = 0; i < rows; ++i) eliminate(i);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

} // namespace reflekt::kernels
