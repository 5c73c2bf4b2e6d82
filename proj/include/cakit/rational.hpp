#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace cakit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Dense matrix over Q, row major.
struct RatMatrix {
  int rows = 0, cols = 0;
  std::vector<Rat> a;
  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}
  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

int rat_rank(RatMatrix m);
std::vector<std::vector<Rat>> rat_kernel(RatMatrix m);
/// Solve m x = b exactly; returns false when inconsistent.
bool rat_solve(RatMatrix m, std::vector<Rat> b, std::vector<Rat>& x);

} // namespace cakit
