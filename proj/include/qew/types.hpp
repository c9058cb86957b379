// Core value types shared across the workbench: the error taxonomy,
// the weight parameter m ∈ (0,∞], and small dense tensor containers.
#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qew {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy. The CLI maps these onto its exit codes:
// SchemaError -> 2, HypothesisError -> 3, everything else here -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Invalid geometry or out-of-domain inputs (degenerate metric, bad ball, ...).
struct DomainError : Error {
  using Error::Error;
};
// Config file cannot be parsed or does not validate against a scenario schema.
struct SchemaError : Error {
  using Error::Error;
};
// A theorem hypothesis fails on the supplied data; no verdict is produced.
struct HypothesisError : Error {
  using Error::Error;
};
// Numerical machinery failed (integrator, quadrature, conditioning, I/O).
struct NumericalError : Error {
  using Error::Error;
};
// API misuse: an operation was called outside its stated contract.
struct ContractError : Error {
  using Error::Error;
};

// The weight m ∈ (0,∞] with its reciprocal ε = 1/m. m = ∞ is a first-class
// tagged value so that ε is exactly 0 in soliton checks. m = 0 is unsupported.
class Weight {
 public:
  static Weight finite(double m) {
    if (!(m > 0.0) || !std::isfinite(m))
      throw DomainError("weight must satisfy 0 < m < inf, got " + std::to_string(m));
    Weight w;
    w.value_ = m;
    w.eps_ = 1.0 / m;
    return w;
  }
  static Weight infinite() { return Weight{}; }

  bool is_finite() const { return eps_ != 0.0; }
  // ε = 1/m; exactly 0 when m = ∞.
  double reciprocal() const { return eps_; }
  double value() const {
    if (!is_finite()) throw ContractError("finite weight required");
    return value_;
  }

 private:
  double value_ = std::numeric_limits<double>::infinity();
  double eps_ = 0.0;
};

// ∂_k g_ij stored as t(i,j,k); dense, row-major in the last index.
class Ten3 {
 public:
  Ten3() = default;
  explicit Ten3(int n) : n_(n), v_(static_cast<size_t>(n) * n * n, 0.0) {}
  double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }
  int dim() const { return n_; }
  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<double> v_;
};

// ∂_k ∂_l g_ij stored as t(i,j,k,l).
class Ten4 {
 public:
  Ten4() = default;
  explicit Ten4(int n) : n_(n), v_(static_cast<size_t>(n) * n * n * n, 0.0) {}
  double& operator()(int i, int j, int k, int l) { return v_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return v_[idx(i, j, k, l)]; }
  int dim() const { return n_; }

 private:
  size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<double> v_;
};

inline double sup_norm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qew
