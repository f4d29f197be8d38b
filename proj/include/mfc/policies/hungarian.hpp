#pragma once

#include <Eigen/Core>
#include <vector>

namespace mfc::policies {

struct AssignmentResult {
  std::vector<int> col_of_row;  // one distinct column per row
  double total_cost = 0;
};

// Exact minimum-cost bipartite assignment (shortest augmenting paths with
// potentials, O(rows^2 * cols)). Requires rows <= cols; every row is matched.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace mfc::policies
