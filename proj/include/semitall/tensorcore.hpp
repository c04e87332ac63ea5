#pragma once

// Dense order-3 tensors, their flattenings, and the chart maps between
// n x p x m tensors T, u x p matrices W and u x n x m pencils Y.
//
// Axis convention: a Tensor3 of shape (d1, d2, d3) has slices
// T_k in R^{d1 x d2}, k = 0..d3-1. Indices in code are zero-based.
//   fl1(T) = (T_0, ..., T_{d3-1})          d1 x (d2*d3)
//   fl2(T) = (T_0; ...; T_{d3-1})          (d1*d3) x d2
// T in R^{n x p x m} and Y in R^{u x n x m}; the two orientations are never
// reinterpreted implicitly.

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace semitall {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

struct Format {
  int m = 3;
  int n = 3;
  int p = 5;
  int u = 4;

  // p = (m-1)(n-1)+1, u = m+n-2.
  static Format critical(int m, int n);
  // Any (m-1)(n-1)+1 <= p <= mn; u = mn - p.
  static Format general(int m, int n, int p);

  bool is_critical() const { return p == (m - 1) * (n - 1) + 1; }
  bool operator==(const Format&) const = default;
};

class Tensor3 {
 public:
  using Shape = std::array<int, 3>;

  Tensor3() = default;
  Tensor3(int d1, int d2, int d3);
  Tensor3(Shape shape, std::vector<double> data);

  static Tensor3 from_slices(const std::vector<Matrix>& slices);
  // sum_r x_r (x) y_r (x) z_r, factors given as columns.
  static Tensor3 from_factors(const Matrix& x, const Matrix& y, const Matrix& z);

  const Shape& shape() const { return shape_; }
  int dim(int axis) const { return shape_[axis]; }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }

  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  Matrix slice(int k) const;
  void set_slice(int k, const Matrix& s);

  // (P T_0 Q; ...; P T_{d3-1} Q)
  Tensor3 slice_action(const Matrix& P, const Matrix& Q) const;

  Tensor3& operator+=(const Tensor3& other);
  Tensor3 operator+(const Tensor3& other) const;
  Tensor3 operator-(const Tensor3& other) const;
  Tensor3 operator*(double s) const;
  bool operator==(const Tensor3& other) const = default;

  double max_abs() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k;
  }

  Shape shape_{0, 0, 0};
  std::vector<double> data_;
};

enum class Flattening { FL1, FL2 };

Matrix flatten(const Tensor3& t, Flattening mode);
Tensor3 unflatten(const Matrix& f, Flattening mode, const Tensor3::Shape& shape);

// The base pencil A in R^{u x n x m}: A_k (k < m-1) is E_n placed at row
// offset k; the last slice has -1 at (0, n-1) and E_{n-1} in rows m-1..u-1.
Tensor3 make_base_tensor(int m, int n);

// Slice l of the reordered tensor is sign[l] * B_{source[l]}.
struct SliceMap {
  std::vector<int> source;
  std::vector<int> sign;
};

// (B_2; ...; B_{m-2}; B_m; -B_{m-1}; -B_1) in one-based slice names.
SliceMap start_slice_map(int m);

struct StartFrame {
  Format format;
  Tensor3 A;          // base tensor
  Tensor3 reordered;  // slice-reordered and negated A
  Tensor3 Aprime;     // P * reordered
  Matrix P;           // u x u permutation
  std::vector<int> row_target;  // row r of `reordered` lands at row_target[r]
  SliceMap slices;
  Matrix W0;          // first p columns of fl1(Aprime)
};

StartFrame make_start_frame(int m, int n);

// P * (slice-reordered B), so that rho(A) == Aprime.
Tensor3 rho(const Tensor3& B, const StartFrame& frame);

// x' with M(x', rho(B)) = P M(x, B); kernels in b are unchanged.
CVector map_point_to_frame(const CVector& x, const StartFrame& frame);

Tensor3 tau(const Matrix& W, const Format& fmt);
Matrix sigma(const Tensor3& T, const Format& fmt, double max_condition = 1e12);
Tensor3 mu(const Matrix& W, const Format& fmt);
Matrix nu(const Tensor3& Y, const Format& fmt, double max_condition = 1e12);

// M(a, B) = sum_k a_k B_k.
Matrix pencil_eval(const Vector& a, const Tensor3& B);
CMatrix pencil_eval(const CVector& a, const Tensor3& B);

// First p entries of a (x) b.
Vector psi(const Vector& a, const Vector& b, const Format& fmt);

// Numerical rank of the column matrix: #{sigma_i > tol * sigma_1}.
int span_dim(const std::vector<Vector>& vectors, double tol);

double condition_number(const Matrix& M);

}  // namespace semitall
