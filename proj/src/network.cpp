#include "dgp/network.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dgp {

void DroneGraph::validate() const {
  if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
  if (static_cast<int>(d.size()) != n) {
    throw std::invalid_argument("graph: d must have n entries");
  }
  for (double di : d) {
    if (!(di > 0.0)) throw std::invalid_argument("graph: d_i must be > 0");
  }
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [i, j] : edges) {
    if (i < 1 || i > n || j < 1 || j > n || i == j) {
      throw std::invalid_argument("graph: bad edge");
    }
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  // connectivity
  std::vector<char> seen(n + 1, 0);
  std::queue<int> q;
  q.push(1);
  seen[1] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
    }
  }
  if (count != n) throw std::invalid_argument("graph: not connected");
}

Eigen::MatrixXd laplacian(const DroneGraph& g) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n, g.n);
  for (auto [i, j] : g.edges) {
    L(i - 1, j - 1) -= 1.0;
    L(j - 1, i - 1) -= 1.0;
    L(i - 1, i - 1) += 1.0;
    L(j - 1, j - 1) += 1.0;
  }
  return L;
}

Eigen::MatrixXd h_matrix(const DroneGraph& g, const std::vector<int>& v,
                         bool* diag_warning) {
  if (static_cast<int>(v.size()) != g.n) {
    throw std::invalid_argument("h_matrix: v must have n entries");
  }
  Eigen::MatrixXd H = laplacian(g);
  for (int i = 0; i < g.n; ++i) {
    H(i, i) += g.d[i] * (v[i] ? 1.0 : 0.0);
  }
  if (diag_warning) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    *diag_warning = es.eigenvalues().minCoeff() <= 1e-10;
  }
  return H;
}

Eigen::MatrixXd p_matrix(int i, int n) {
  if (i < 1 || i > n) throw std::out_of_range("p_matrix: index out of range");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      if (i == j && j == k) {
        P(j - 1, k - 1) = 1.0;
      } else if (i == j || i == k) {
        P(j - 1, k - 1) = 0.5;
      }
    }
  }
  return P;
}

std::vector<int> neighbors(const DroneGraph& g, int i) {
  if (i < 1 || i > g.n) throw std::out_of_range("neighbors: index out of range");
  std::vector<int> out;
  for (auto [a, b] : g.edges) {
    if (a == i) out.push_back(b);
    if (b == i) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dgp
