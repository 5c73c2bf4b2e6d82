#include "cakit/rational.hpp"

namespace cakit {

namespace {

struct Rref {
  int rank;
  std::vector<int> pivot_cols;
};

Rref rref(RatMatrix& m) {
  Rref res;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rat pinv = Rat(1) / m.at(r, col);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) *= pinv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    res.pivot_cols.push_back(col);
    ++r;
  }
  res.rank = r;
  return res;
}

} // namespace

int rat_rank(RatMatrix m) { return rref(m).rank; }

std::vector<std::vector<Rat>> rat_kernel(RatMatrix m) {
  Rref rr = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int cc : rr.pivot_cols) is_pivot[static_cast<size_t>(cc)] = true;
  std::vector<std::vector<Rat>> basis;
  for (int fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[static_cast<size_t>(fc)]) continue;
    std::vector<Rat> v(static_cast<size_t>(m.cols), Rat(0));
    v[static_cast<size_t>(fc)] = 1;
    for (int i = 0; i < rr.rank; ++i)
      v[static_cast<size_t>(rr.pivot_cols[static_cast<size_t>(i)])] = -m.at(i, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool rat_solve(RatMatrix m, std::vector<Rat> b, std::vector<Rat>& x) {
  // reduce the augmented matrix
  RatMatrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[static_cast<size_t>(i)];
  }
  Rref rr = rref(aug);
  x.assign(static_cast<size_t>(m.cols), Rat(0));
  for (int i = 0; i < rr.rank; ++i) {
    int pc = rr.pivot_cols[static_cast<size_t>(i)];
    if (pc == m.cols) return false; // pivot in the augmented column
    x[static_cast<size_t>(pc)] = aug.at(i, m.cols);
  }
  return true;
}

} // namespace cakit
