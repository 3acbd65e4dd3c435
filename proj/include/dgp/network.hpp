#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

// Communication graph among the drones, its Laplacian, the visibility
// weighted matrix H = L + D_v, and the P^i matrices.

namespace dgp {

struct DroneGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // undirected, 1-based indices
  std::vector<double> d;                   // positive visibility weights

  // Validates counts, index ranges, d_i > 0 and connectivity (BFS).
  // Throws std::invalid_argument on violation.
  void validate() const;
};

Eigen::MatrixXd laplacian(const DroneGraph& g);

// H = L + diag(d_i * v_i). `diag_warning`, when non-null, is set to true if
// H is numerically singular / not positive definite (all v_i = 0 or a
// violated graph invariant).
Eigen::MatrixXd h_matrix(const DroneGraph& g, const std::vector<int>& v,
                         bool* diag_warning = nullptr);

// P^i of the stability theorem: 1 at (i,i), 0.5 on the rest of row/column i.
Eigen::MatrixXd p_matrix(int i, int n);

std::vector<int> neighbors(const DroneGraph& g, int i);

}  // namespace dgp
