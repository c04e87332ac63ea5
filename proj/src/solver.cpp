#include "semitall/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "semitall/error.hpp"
#include "semitall/parallel.hpp"

namespace semitall {

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Success: return "SUCCESS";
    case PathStatus::Stall: return "PATH_STALL";
    case PathStatus::Diverge: return "PATH_DIVERGE";
    case PathStatus::AtInfinity: return "AT_INFINITY";
    case PathStatus::MaxSteps: return "MAX_STEPS";
  }
  return "?";
}

Chart Chart::standard(int m, const Vector& cb) {
  Chart c;
  c.a = CVector::Zero(m);
  c.a(m - 1) = -1.0;
  c.b = cb.cast<cplx>();
  return c;
}

cplx draw_gamma(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x67616d6du};
  std::mt19937_64 rng(seq);
  // Stay away from the real axis, where the straight-line path degenerates.
  std::uniform_real_distribution<double> angle(0.1, std::numbers::pi - 0.1);
  std::bernoulli_distribution flip(0.5);
  const double theta = angle(rng);
  return std::polar(1.0, flip(rng) ? -theta : theta);
}

Vector draw_chart(int n, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x63686172u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  Vector c(n);
  for (int i = 0; i < n; ++i) c(i) = normal(rng);
  return c;
}

double solution_residual(const Tensor3& B, const CVector& a, const CVector& b) {
  const double bn = b.norm();
  if (bn == 0.0) return std::numeric_limits<double>::infinity();
  return (pencil_eval(a, B) * b).norm() / bn;
}

namespace {

Eigen::Index argmax_modulus(const CVector& v) {
  Eigen::Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  return best;
}

}  // namespace

void normalize(Solution& s, const Tensor3& B, const Vector& chart_b) {
  const Eigen::Index m = s.a.size();
  const double amax = s.a.cwiseAbs().maxCoeff();
  if (std::abs(s.a(m - 1)) > 1e-8 * amax) {
    s.a *= -1.0 / s.a(m - 1);
    s.a(m - 1) = -1.0;
    s.chart_escape = false;
  } else {
    s.a /= s.a(argmax_modulus(s.a));
    s.chart_escape = true;
  }
  const cplx cb = chart_b.cast<cplx>().transpose() * s.b;
  if (std::abs(cb) > 1e-12 * s.b.norm()) {
    s.b /= cb;
  } else {
    s.b /= s.b(argmax_modulus(s.b));
  }
  // The normalized a is exact in its chart, so evaluate with it directly.
  CVector a_eval = s.a;
  if (!s.chart_escape) a_eval(m - 1) = -1.0;
  s.residual = solution_residual(B, a_eval, s.b);
}

double kernel_gap(const Tensor3& B, const CVector& a) {
  const CMatrix M = pencil_eval(a, B);
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() < 2 || s(0) == 0.0) return 0.0;
  return s(s.size() - 2) / s(0);
}

std::vector<Solution> start_solutions(int m, int n, const Vector& chart_b, double kernel_tol) {
  const StartFrame frame = make_start_frame(m, n);
  const int u = frame.format.u;
  const int d = m - 1;
  std::vector<Solution> out;
  std::vector<int> combo(d);
  for (int i = 0; i < d; ++i) combo[i] = i;
  while (true) {
    DivisorSelection sel{u, combo};
    const ComplexPoly h = sel.expand();
    const auto point = divisor_to_point_complex(h, m);
    const CVector x = Eigen::Map<const CVector>(point.data(), m);

    const CMatrix N = pencil_eval(x, frame.A);
    Eigen::JacobiSVD<CMatrix> svd(N, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(n - 2) < kernel_tol * sv(0))
      fail(ErrorCode::DegenerateStart, "start system: kernel of dimension >= 2");

    Solution s;
    s.a = map_point_to_frame(x, frame);
    s.b = svd.matrixV().col(n - 1);
    s.source = sel;
    s.is_real = sel.conjugation_closed();
    normalize(s, frame.Aprime, chart_b);
    out.push_back(std::move(s));

    // Next combination in lexicographic order.
    int i = d - 1;
    while (i >= 0 && combo[i] == u - d + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < d; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

namespace {

class Homotopy {
 public:
  Homotopy(const Tensor3& from, const Tensor3& to, cplx gamma, const Chart& chart)
      : m_(from.dim(2)), n_(from.dim(1)), u_(from.dim(0)), gamma_(gamma), chart_(chart) {
    for (int k = 0; k < m_; ++k) {
      from_.push_back(from.slice(k).cast<cplx>());
      to_.push_back(to.slice(k).cast<cplx>());
    }
  }

  int size() const { return m_ + n_; }

  // F(z, t), its Jacobian in z and, when requested, dF/dt.
  void eval(const CVector& z, double t, CVector& F, CMatrix& J, CVector* Ft) const {
    const auto a = z.head(m_);
    const auto b = z.tail(n_);
    F.setZero(size());
    J.setZero(size(), size());
    CMatrix M = CMatrix::Zero(u_, n_);
    const cplx wf = (1.0 - t) * gamma_;
    for (int k = 0; k < m_; ++k) {
      const CMatrix Bk = wf * from_[k] + t * to_[k];
      J.col(k).head(u_) = Bk * b;
      M += a(k) * Bk;
    }
    F.head(u_) = M * b;
    J.block(0, m_, u_, n_) = M;
    J.row(u_).head(m_) = chart_.a.transpose();
    J.row(u_ + 1).tail(n_) = chart_.b.transpose();
    F(u_) = (chart_.a.transpose() * a)(0) - 1.0;
    F(u_ + 1) = (chart_.b.transpose() * b)(0) - 1.0;
    if (Ft) {
      Ft->setZero(size());
      CMatrix D = CMatrix::Zero(u_, n_);
      for (int k = 0; k < m_; ++k) D += a(k) * (to_[k] - gamma_ * from_[k]);
      Ft->head(u_) = D * b;
    }
  }

 private:
  int m_, n_, u_;
  cplx gamma_;
  Chart chart_;
  std::vector<CMatrix> from_, to_;
};

// Newton iterations at fixed t. Returns true when the update norm drops
// below tol * (1 + |z|) within max_iter iterations while contracting.
bool newton(const Homotopy& H, CVector& z, double t, double tol, int max_iter) {
  CVector F;
  CMatrix J;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    H.eval(z, t, F, J, nullptr);
    const CVector d = -Eigen::PartialPivLU<CMatrix>(J).solve(F);
    if (!d.allFinite()) return false;
    const double dn = d.norm();
    if (it > 0 && dn > 0.5 * prev) return false;
    z += d;
    if (dn < tol * (1.0 + z.norm())) return true;
    prev = dn;
  }
  return false;
}

}  // namespace

TrackResult track_path(const Tensor3& from, const Tensor3& to, const Solution& start,
                       const TrackOptions& opts, const Chart& chart) {
  if (from.shape() != to.shape()) fail(ErrorCode::Domain, "track_path: tensor shapes differ");
  const int m = from.dim(2);
  const int n = from.dim(1);
  if (opts.gamma == cplx(0.0)) fail(ErrorCode::Domain, "track_path: gamma must be nonzero");
  const Homotopy H(from, to, opts.gamma, chart);

  CVector z(m + n);
  const cplx sa = (chart.a.transpose() * start.a)(0);
  const cplx sb = (chart.b.transpose() * start.b)(0);
  if (std::abs(sa) < 1e-14 || std::abs(sb) < 1e-14) return {PathStatus::AtInfinity, std::nullopt, 0.0, 0, 0};
  z.head(m) = start.a / sa;
  z.tail(n) = start.b / sb;

  TrackResult result;
  double t = 0.0;
  double h = opts.initial_step;
  int streak = 0;
  CVector F, Ft;
  CMatrix J;
  while (t < 1.0) {
    if (result.steps + result.rejected >= opts.max_steps) {
      result.status = PathStatus::MaxSteps;
      result.t_reached = t;
      return result;
    }
    const bool last = h >= 1.0 - t;
    const double t1 = last ? 1.0 : t + h;
    const double dt = t1 - t;

    // Euler predictor along the tangent, Newton corrector at t1.
    H.eval(z, t, F, J, &Ft);
    const CVector tangent = -Eigen::PartialPivLU<CMatrix>(J).solve(Ft);
    CVector z1 = z + dt * tangent;
    const bool ok = tangent.allFinite() && newton(H, z1, t1, opts.corrector_tol, opts.max_newton);
    if (ok) {
      z = z1;
      t = t1;
      ++result.steps;
      if (++streak >= 3) {
        h = std::min(2.0 * h, opts.max_step);
        streak = 0;
      }
      if (z.norm() > opts.infinity_norm) {
        result.status = PathStatus::AtInfinity;
        result.t_reached = t;
        return result;
      }
    } else {
      ++result.rejected;
      streak = 0;
      h = 0.5 * std::min(h, dt);
      if (h < opts.min_step) {
        // A path that cannot progress while its norm grows is heading to infinity.
        result.status = z.norm() > std::sqrt(opts.infinity_norm) ? PathStatus::AtInfinity : PathStatus::Stall;
        result.t_reached = t;
        return result;
      }
    }
  }
  result.t_reached = 1.0;

  if (!newton(H, z, 1.0, opts.final_tol, 8)) {
    // Accept a converged-looking endpoint whose residual is already tiny.
    H.eval(z, 1.0, F, J, nullptr);
    if (!(F.norm() < 1e-10 * (1.0 + z.norm()))) {
      result.status = PathStatus::Diverge;
      return result;
    }
  }
  Solution s;
  s.a = z.head(m);
  s.b = z.tail(n);
  s.path = start.path;
  normalize(s, to, chart.b.real());
  result.solution = std::move(s);
  return result;
}

bool refine(const Tensor3& B, Solution& s, const Chart& chart, double tol, int max_iter) {
  const Homotopy H(B, B, cplx(0.0), chart);
  const int m = B.dim(2);
  const int n = B.dim(1);
  CVector z(m + n);
  z.head(m) = s.a / (chart.a.transpose() * s.a)(0);
  z.tail(n) = s.b / (chart.b.transpose() * s.b)(0);
  const bool ok = newton(H, z, 1.0, tol, max_iter);
  s.a = z.head(m);
  s.b = z.tail(n);
  normalize(s, B, chart.b.real());
  return ok;
}

bool is_real_solution(const Solution& s, double tol) {
  if (tol <= 0.0) fail(ErrorCode::Domain, "real_filter: tol must be positive");
  const auto imag_ok = [tol](const CVector& v) {
    const CVector w = v / v(argmax_modulus(v));
    return w.imag().cwiseAbs().maxCoeff() < tol;
  };
  return imag_ok(s.a) && imag_ok(s.b);
}

std::vector<Solution> real_filter(const std::vector<Solution>& solutions, double tol) {
  std::vector<Solution> out;
  for (const auto& s : solutions)
    if (is_real_solution(s, tol)) out.push_back(s);
  return out;
}

Vector real_part_a(const Solution& s) { return (s.a / s.a(argmax_modulus(s.a))).real(); }
Vector real_part_b(const Solution& s) { return (s.b / s.b(argmax_modulus(s.b))).real(); }

namespace {

double projective_sine(const CVector& x, const CVector& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 1.0;
  const CVector xh = x / nx;
  const CVector yh = y / ny;
  return std::min(1.0, (yh - xh.dot(yh) * xh).norm());
}

Chart retry_chart(int m, const Vector& cb, std::uint64_t seed, int path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), 0x72657472u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  Chart c;
  c.a = CVector(m);
  for (int i = 0; i < m; ++i) c.a(i) = cplx(normal(rng), normal(rng));
  c.b = cb.cast<cplx>();
  return c;
}

std::vector<MultiplicityWarning> find_collisions(const std::vector<Solution>& sols, double tol) {
  std::vector<MultiplicityWarning> out;
  for (std::size_t i = 0; i < sols.size(); ++i)
    for (std::size_t j = i + 1; j < sols.size(); ++j) {
      const double d = projective_distance(sols[i], sols[j]);
      if (d < tol) out.push_back({sols[i].path, sols[j].path, d});
    }
  return out;
}

}  // namespace

double projective_distance(const Solution& x, const Solution& y) {
  const double da = projective_sine(x.a, y.a);
  const double db = projective_sine(x.b, y.b);
  return std::sqrt(da * da + db * db);
}

SolveReport solve_all(const Tensor3& B, const SolveOptions& opts) {
  const int u = B.dim(0);
  const int n = B.dim(1);
  const int m = B.dim(2);
  const Format fmt = Format::critical(m, n);
  if (u != fmt.u) fail(ErrorCode::Domain, "solve_all: B must be (m+n-2) x n x m");
  const BigInt paths = binomial(u, m - 1);
  if (paths > opts.path_budget) fail(ErrorCode::Resource, "solve_all: path count exceeds budget");

  SolveReport report;
  report.n_paths = static_cast<std::uint64_t>(paths);
  report.gamma = draw_gamma(opts.seed);
  report.chart_b = draw_chart(n, opts.seed);

  const StartFrame frame = make_start_frame(m, n);
  std::vector<Solution> starts = start_solutions(m, n, report.chart_b, opts.kernel_tol);
  for (std::size_t i = 0; i < starts.size(); ++i) starts[i].path = static_cast<int>(i);

  TrackOptions track = opts.track;
  track.gamma = report.gamma;
  const Chart chart = Chart::standard(m, report.chart_b);

  const auto run_path = [&](int path, const TrackOptions& to) {
    TrackResult r = track_path(frame.Aprime, B, starts[path], to, chart);
    if (r.status != PathStatus::Success) {
      // One retry in a random complex chart for a.
      TrackResult retry = track_path(frame.Aprime, B, starts[path], to, retry_chart(m, report.chart_b, opts.seed, path));
      if (retry.status == PathStatus::Success) r = std::move(retry);
    }
    return r;
  };

  std::vector<TrackResult> results(starts.size());
  parallel_for(starts.size(), opts.jobs, [&](std::size_t i) { results[i] = run_path(static_cast<int>(i), track); });

  const auto collect = [&] {
    report.solutions.clear();
    report.failures.clear();
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].status == PathStatus::Success) {
        report.solutions.push_back(*results[i].solution);
      } else {
        report.failures.push_back({static_cast<int>(i), results[i].status, results[i].t_reached});
      }
    }
    report.warnings = find_collisions(report.solutions, opts.dedup_tol);
  };
  collect();

  if (!report.warnings.empty() || !report.failures.empty()) {
    // Colliding or failed paths get one more pass with a finer step.
    std::vector<int> again;
    for (const auto& w : report.warnings) again.insert(again.end(), {w.first, w.second});
    for (const auto& f : report.failures) again.push_back(f.path);
    std::sort(again.begin(), again.end());
    again.erase(std::unique(again.begin(), again.end()), again.end());
    TrackOptions fine = track;
    fine.max_step = track.max_step / 10.0;
    fine.initial_step = std::min(track.initial_step, fine.max_step);
    parallel_for(again.size(), opts.jobs, [&](std::size_t i) {
      TrackResult r = run_path(again[i], fine);
      if (r.status == PathStatus::Success || results[again[i]].status != PathStatus::Success)
        results[again[i]] = std::move(r);
    });
    report.retracked = static_cast<int>(again.size());
    collect();
  }

  report.real_count = 0;
  for (auto& s : report.solutions) {
    s.is_real = is_real_solution(s, opts.reality_tol);
    if (s.is_real) ++report.real_count;
  }
  return report;
}

}  // namespace semitall
