#pragma once

#include <vector>

namespace fracsum::lp {

enum class Status { Optimal, Unbounded };

struct Solution {
  Status status = Status::Optimal;
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense primal simplex with Bland's rule for
///   maximize c^T x  subject to  A x <= b, x >= 0,
/// where b >= 0 so the slack basis is feasible. A is row-major (m x n).
/// Negative entries of b within -1e-12 are clamped to 0.
Solution maximize(const std::vector<double>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

}  // namespace fracsum::lp
