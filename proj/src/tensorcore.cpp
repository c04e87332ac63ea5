#include "semitall/tensorcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "semitall/error.hpp"

namespace semitall {

Format Format::critical(int m, int n) {
  if (m < 3 || m > n) fail(ErrorCode::Domain, "format: need 3 <= m <= n");
  const int p = (m - 1) * (n - 1) + 1;
  return {m, n, p, m * n - p};
}

Format Format::general(int m, int n, int p) {
  if (m < 3 || m > n) fail(ErrorCode::Domain, "format: need 3 <= m <= n");
  if (p < (m - 1) * (n - 1) + 1 || p > m * n)
    fail(ErrorCode::Domain, "format: need (m-1)(n-1)+1 <= p <= mn");
  return {m, n, p, m * n - p};
}

Tensor3::Tensor3(int d1, int d2, int d3)
    : shape_{d1, d2, d3},
      data_(static_cast<std::size_t>(d1) * d2 * d3, 0.0) {
  if (d1 < 0 || d2 < 0 || d3 < 0) fail(ErrorCode::Domain, "tensor: negative dimension");
}

Tensor3::Tensor3(Shape shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  if (shape[0] < 0 || shape[1] < 0 || shape[2] < 0)
    fail(ErrorCode::Domain, "tensor: negative dimension");
  if (data_.size() != static_cast<std::size_t>(shape[0]) * shape[1] * shape[2])
    fail(ErrorCode::Domain, "tensor: data length does not match shape");
}

Tensor3 Tensor3::from_slices(const std::vector<Matrix>& slices) {
  if (slices.empty()) return {};
  const int d1 = static_cast<int>(slices[0].rows());
  const int d2 = static_cast<int>(slices[0].cols());
  Tensor3 t(d1, d2, static_cast<int>(slices.size()));
  for (std::size_t k = 0; k < slices.size(); ++k) t.set_slice(static_cast<int>(k), slices[k]);
  return t;
}

Tensor3 Tensor3::from_factors(const Matrix& x, const Matrix& y, const Matrix& z) {
  if (x.cols() != y.cols() || y.cols() != z.cols())
    fail(ErrorCode::Domain, "from_factors: factor counts differ");
  Tensor3 t(static_cast<int>(x.rows()), static_cast<int>(y.rows()), static_cast<int>(z.rows()));
  for (Eigen::Index r = 0; r < x.cols(); ++r)
    for (int i = 0; i < t.dim(0); ++i)
      for (int j = 0; j < t.dim(1); ++j)
        for (int k = 0; k < t.dim(2); ++k) t(i, j, k) += x(i, r) * y(j, r) * z(k, r);
  return t;
}

Matrix Tensor3::slice(int k) const {
  Matrix s(shape_[0], shape_[1]);
  for (int i = 0; i < shape_[0]; ++i)
    for (int j = 0; j < shape_[1]; ++j) s(i, j) = (*this)(i, j, k);
  return s;
}

void Tensor3::set_slice(int k, const Matrix& s) {
  if (s.rows() != shape_[0] || s.cols() != shape_[1])
    fail(ErrorCode::Domain, "set_slice: shape mismatch");
  for (int i = 0; i < shape_[0]; ++i)
    for (int j = 0; j < shape_[1]; ++j) (*this)(i, j, k) = s(i, j);
}

Tensor3 Tensor3::slice_action(const Matrix& P, const Matrix& Q) const {
  if (P.cols() != shape_[0] || Q.rows() != shape_[1])
    fail(ErrorCode::Domain, "slice_action: shape mismatch");
  Tensor3 out(static_cast<int>(P.rows()), static_cast<int>(Q.cols()), shape_[2]);
  for (int k = 0; k < shape_[2]; ++k) out.set_slice(k, P * slice(k) * Q);
  return out;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  if (shape_ != other.shape_) fail(ErrorCode::Domain, "tensor add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor3 Tensor3::operator+(const Tensor3& other) const {
  Tensor3 out = *this;
  out += other;
  return out;
}

Tensor3 Tensor3::operator-(const Tensor3& other) const { return *this + other * -1.0; }

Tensor3 Tensor3::operator*(double s) const {
  Tensor3 out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

double Tensor3::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

Matrix flatten(const Tensor3& t, Flattening mode) {
  const auto [d1, d2, d3] = t.shape();
  if (mode == Flattening::FL1) {
    Matrix f(d1, d2 * d3);
    for (int k = 0; k < d3; ++k) f.middleCols(static_cast<Eigen::Index>(k) * d2, d2) = t.slice(k);
    return f;
  }
  Matrix f(d1 * d3, d2);
  for (int k = 0; k < d3; ++k) f.middleRows(static_cast<Eigen::Index>(k) * d1, d1) = t.slice(k);
  return f;
}

Tensor3 unflatten(const Matrix& f, Flattening mode, const Tensor3::Shape& shape) {
  const auto [d1, d2, d3] = shape;
  Tensor3 t(d1, d2, d3);
  if (mode == Flattening::FL1) {
    if (f.rows() != d1 || f.cols() != static_cast<Eigen::Index>(d2) * d3)
      fail(ErrorCode::Domain, "unflatten FL1: shape mismatch");
    for (int k = 0; k < d3; ++k) t.set_slice(k, f.middleCols(static_cast<Eigen::Index>(k) * d2, d2));
  } else {
    if (f.rows() != static_cast<Eigen::Index>(d1) * d3 || f.cols() != d2)
      fail(ErrorCode::Domain, "unflatten FL2: shape mismatch");
    for (int k = 0; k < d3; ++k) t.set_slice(k, f.middleRows(static_cast<Eigen::Index>(k) * d1, d1));
  }
  return t;
}

Tensor3 make_base_tensor(int m, int n) {
  const Format fmt = Format::critical(m, n);
  const int u = fmt.u;
  Tensor3 A(u, n, m);
  for (int k = 0; k < m - 1; ++k)
    for (int j = 0; j < n; ++j) A(k + j, j, k) = 1.0;
  A(0, n - 1, m - 1) = -1.0;
  for (int j = 0; j < n - 1; ++j) A(m - 1 + j, j, m - 1) = 1.0;
  return A;
}

SliceMap start_slice_map(int m) {
  SliceMap map;
  for (int k = 1; k <= m - 3; ++k) {
    map.source.push_back(k);
    map.sign.push_back(1);
  }
  map.source.insert(map.source.end(), {m - 1, m - 2, 0});
  map.sign.insert(map.sign.end(), {1, -1, -1});
  return map;
}

namespace {

Tensor3 apply_slice_map(const Tensor3& B, const SliceMap& map) {
  std::vector<Matrix> slices;
  slices.reserve(map.source.size());
  for (std::size_t l = 0; l < map.source.size(); ++l)
    slices.push_back(static_cast<double>(map.sign[l]) * B.slice(map.source[l]));
  return Tensor3::from_slices(slices);
}

Tensor3 permute_rows(const Tensor3& B, const Matrix& P) {
  return B.slice_action(P, Matrix::Identity(B.dim(1), B.dim(1)));
}

}  // namespace

StartFrame make_start_frame(int m, int n) {
  StartFrame frame;
  frame.format = Format::critical(m, n);
  const int u = frame.format.u;
  const int p = frame.format.p;
  frame.A = make_base_tensor(m, n);
  frame.slices = start_slice_map(m);
  frame.reordered = apply_slice_map(frame.A, frame.slices);

  // Each trailing column of fl1(reordered) must be -e_r for a distinct r;
  // P sends row r to the column's position.
  const Matrix trailing = flatten(frame.reordered, Flattening::FL1).rightCols(u);
  frame.row_target.assign(u, -1);
  for (int c = 0; c < u; ++c) {
    int row = -1;
    for (int r = 0; r < u; ++r) {
      if (trailing(r, c) == -1.0 && row < 0) {
        row = r;
      } else if (trailing(r, c) != 0.0) {
        row = -2;
        break;
      }
    }
    if (row < 0 || frame.row_target[row] != -1)
      fail(ErrorCode::Internal, "start frame: trailing block is not a signed permutation");
    frame.row_target[row] = c;
  }
  frame.P = Matrix::Zero(u, u);
  for (int r = 0; r < u; ++r) frame.P(frame.row_target[r], r) = 1.0;

  frame.Aprime = permute_rows(frame.reordered, frame.P);
  const Matrix fl = flatten(frame.Aprime, Flattening::FL1);
  if (fl.rightCols(u) != -Matrix::Identity(u, u))
    fail(ErrorCode::Internal, "start frame: trailing block of fl1(P A'') is not -E_u");

  // Closed form: rows n..u-1 move to 0..m-3, rows 0..n-1 move to m-2..u-1.
  for (int r = 0; r < u; ++r) {
    const int expected = r >= n ? r - n : r + m - 2;
    if (frame.row_target[r] != expected)
      fail(ErrorCode::Internal, "start frame: permutation differs from block swap");
  }
  frame.W0 = fl.leftCols(p);
  return frame;
}

Tensor3 rho(const Tensor3& B, const StartFrame& frame) {
  return permute_rows(apply_slice_map(B, frame.slices), frame.P);
}

CVector map_point_to_frame(const CVector& x, const StartFrame& frame) {
  CVector out(x.size());
  for (std::size_t l = 0; l < frame.slices.source.size(); ++l)
    out(static_cast<Eigen::Index>(l)) = static_cast<double>(frame.slices.sign[l]) * x(frame.slices.source[l]);
  return out;
}

double condition_number(const Matrix& M) {
  if (M.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Tensor3 tau(const Matrix& W, const Format& fmt) {
  if (W.rows() != fmt.u || W.cols() != fmt.p) fail(ErrorCode::Domain, "tau: W must be u x p");
  Matrix stacked(fmt.p + fmt.u, fmt.p);
  stacked.topRows(fmt.p).setIdentity();
  stacked.bottomRows(fmt.u) = W;
  return unflatten(stacked, Flattening::FL2, {fmt.n, fmt.p, fmt.m});
}

Matrix sigma(const Tensor3& T, const Format& fmt, double max_condition) {
  if (T.shape() != Tensor3::Shape{fmt.n, fmt.p, fmt.m})
    fail(ErrorCode::Domain, "sigma: T must be n x p x m");
  const Matrix f = flatten(T, Flattening::FL2);
  const Matrix lead = f.topRows(fmt.p);
  if (!(condition_number(lead) < max_condition))
    fail(ErrorCode::ChartViolation, "sigma: leading p x p block of fl2(T) is singular");
  // R * lead^{-1} via lead^T X^T = R^T.
  const Eigen::PartialPivLU<Matrix> lu(lead.transpose());
  return lu.solve(f.bottomRows(fmt.u).transpose()).transpose();
}

Tensor3 mu(const Matrix& W, const Format& fmt) {
  if (W.rows() != fmt.u || W.cols() != fmt.p) fail(ErrorCode::Domain, "mu: W must be u x p");
  Matrix wide(fmt.u, fmt.p + fmt.u);
  wide.leftCols(fmt.p) = W;
  wide.rightCols(fmt.u) = -Matrix::Identity(fmt.u, fmt.u);
  return unflatten(wide, Flattening::FL1, {fmt.u, fmt.n, fmt.m});
}

Matrix nu(const Tensor3& Y, const Format& fmt, double max_condition) {
  if (Y.shape() != Tensor3::Shape{fmt.u, fmt.n, fmt.m})
    fail(ErrorCode::Domain, "nu: Y must be u x n x m");
  const Matrix f = flatten(Y, Flattening::FL1);
  const Matrix trail = f.rightCols(fmt.u);
  if (!(condition_number(trail) < max_condition))
    fail(ErrorCode::ChartViolation, "nu: trailing u x u block of fl1(Y) is singular");
  return -Eigen::PartialPivLU<Matrix>(trail).solve(f.leftCols(fmt.p));
}

Matrix pencil_eval(const Vector& a, const Tensor3& B) {
  if (a.size() != B.dim(2)) fail(ErrorCode::Domain, "pencil_eval: length of a must match slices");
  Matrix M = Matrix::Zero(B.dim(0), B.dim(1));
  for (int k = 0; k < B.dim(2); ++k) M += a(k) * B.slice(k);
  return M;
}

CMatrix pencil_eval(const CVector& a, const Tensor3& B) {
  if (a.size() != B.dim(2)) fail(ErrorCode::Domain, "pencil_eval: length of a must match slices");
  CMatrix M = CMatrix::Zero(B.dim(0), B.dim(1));
  for (int k = 0; k < B.dim(2); ++k) M += a(k) * B.slice(k).cast<std::complex<double>>();
  return M;
}

Vector psi(const Vector& a, const Vector& b, const Format& fmt) {
  if (a.size() != fmt.m || b.size() != fmt.n) fail(ErrorCode::Domain, "psi: a in R^m, b in R^n");
  if (fmt.p > (fmt.m - 1) * fmt.n) fail(ErrorCode::Domain, "psi: p must be <= (m-1)n");
  Vector out(fmt.p);
  for (int i = 0; i < fmt.p; ++i) out(i) = a(i / fmt.n) * b(i % fmt.n);
  return out;
}

int span_dim(const std::vector<Vector>& vectors, double tol) {
  if (tol <= 0.0) fail(ErrorCode::Domain, "span_dim: tol must be positive");
  if (vectors.empty()) return 0;
  Matrix cols(vectors[0].size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != cols.rows()) fail(ErrorCode::Domain, "span_dim: length mismatch");
    cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  Eigen::JacobiSVD<Matrix> svd(cols);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

}  // namespace semitall
