#include "simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

#include "error.hpp"

namespace fracsum::lp {

namespace {
constexpr double kPivotEps = 1e-12;
}

Solution maximize(const std::vector<double>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
  const std::size_t m = b.size();
  const std::size_t n = c.size();
  if (A.size() != m * n) fail(ErrorCode::InvalidArgument, "lp: constraint matrix shape");

  // Tableau rows 0..m-1 are constraints, row m is the reduced-cost row.
  // Columns 0..n-1 structural, n..n+m-1 slack, last column is the rhs.
  const std::size_t cols = n + m + 1;
  std::vector<double> t((m + 1) * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return t[r * cols + col]; };

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < -kPivotEps) fail(ErrorCode::InvalidArgument, "lp: origin infeasible (b < 0)");
    for (std::size_t j = 0; j < n; ++j) at(i, j) = A[i * n + j];
    at(i, n + i) = 1.0;
    at(i, cols - 1) = b[i] < 0.0 ? 0.0 : b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];

  // Bland: entering = lowest index with negative reduced cost; leaving = min
  // ratio, ties by lowest basic variable index. Terminates without cycling.
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (at(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    if (enter == cols) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = at(i, cols - 1) / a;
      if (leave == m || ratio < best - kPivotEps) {
        leave = i;
        best = ratio;
      } else if (ratio <= best + kPivotEps && basis[i] < basis[leave]) {
        leave = i;
        best = std::min(best, ratio);
      }
    }
    if (leave == m) return Solution{Status::Unbounded, {}, 0.0};

    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) at(leave, j) /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) at(i, j) -= f * at(leave, j);
    }
    basis[leave] = enter;
  }

  Solution sol;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = at(i, cols - 1);
  sol.objective = at(m, cols - 1);
  return sol;
}

}  // namespace fracsum::lp
