#pragma once

#include <cstdint>
#include <vector>

namespace sbmr {

/// Exact minimum-cost assignment on an n_rows x n_cols matrix with
/// n_rows <= n_cols (Hungarian algorithm with potentials, O(n^2 m)).
/// Returns row -> column, each column used at most once.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Maximum-weight variant: every row is matched to a distinct column so the
/// total weight is maximal. weight may be rectangular in either direction;
/// rows in excess of columns are left unmatched (-1).
std::vector<int> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight);

}  // namespace sbmr
