#include "sbmr/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sbmr {

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const int rows = static_cast<int>(cost.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(cost[0].size());
  if (rows > cols) throw std::invalid_argument("min_cost_assignment: more rows than columns");
  const double kInf = std::numeric_limits<double>::infinity();

  // Potentials method, 1-indexed over rows/columns; p[j0] tracks the row
  // matched to column j0 (classic shortest augmenting path formulation).
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<int> p(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(cols + 1, kInf);
    std::vector<char> used(cols + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> match(rows, -1);
  for (int j = 1; j <= cols; ++j)
    if (p[j] != 0) match[p[j] - 1] = j - 1;
  return match;
}

std::vector<int> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight) {
  const int rows = static_cast<int>(weight.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(weight[0].size());

  // Pad to a square min-cost problem: cost = max_weight - weight, padded
  // entries cost exactly max_weight (i.e. weight 0).
  const int dim = std::max(rows, cols);
  std::int64_t top = 0;
  for (const auto& row : weight)
    for (std::int64_t w : row) top = std::max(top, w);

  std::vector<std::vector<double>> cost(dim, std::vector<double>(dim, static_cast<double>(top)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) cost[i][j] = static_cast<double>(top - weight[i][j]);

  auto match = min_cost_assignment(cost);
  std::vector<int> out(rows, -1);
  for (int i = 0; i < rows; ++i)
    if (match[i] >= 0 && match[i] < cols) out[i] = match[i];
  return out;
}

}  // namespace sbmr
