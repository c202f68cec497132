#include "cqed/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace cqed {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

bool is_hermitian(const Matrix& H) {
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  return (H - H.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

Matrix exp_scaling_squaring(const Matrix& H, double t) {
  const Matrix generator = (kMinusI * t) * H;
  return generator.exp();
}

std::vector<double> uniform_times(double duration, int sample_count) {
  std::vector<double> times(static_cast<std::size_t>(sample_count));
  const double dt = duration / (sample_count - 1);
  for (int k = 0; k < sample_count; ++k) times[static_cast<std::size_t>(k)] = k * dt;
  times.back() = duration;
  return times;
}

void check_sampling(double duration, int sample_count, double tolerance) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("propagation: duration must be > 0 for a sampled run");
  }
  if (sample_count < 2) throw std::invalid_argument("propagation: sample_count must be >= 2");
  if (!(tolerance > 0.0)) throw std::invalid_argument("propagation: tolerance must be > 0");
}

void check_dims(Eigen::Index rows, const StateVector& psi) {
  if (rows != psi.amplitudes().size()) {
    throw std::invalid_argument("propagation: Hamiltonian dimension " +
                                std::to_string(rows) + " does not match state dimension " +
                                std::to_string(psi.amplitudes().size()));
  }
}

void push_sample(Trajectory& traj, double t, StateVector state) {
  traj.times.push_back(t);
  traj.norms.push_back(state.norm2());
  traj.states.push_back(std::move(state));
}

/// Upper bound on ||H(t)||_1 over all t.
double norm_bound(const TimeDependentHamiltonian& rule) {
  auto col_sum = [](const SparseMatrix& m) {
    double best = 0.0;
    for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
      double s = 0.0;
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) s += std::abs(it.value());
      best = std::max(best, s);
    }
    return best;
  };
  return col_sum(rule.static_part()) + 2.0 * col_sum(rule.raising()) +
         2.0 * col_sum(SparseMatrix(rule.raising().adjoint()));
}

// Dormand-Prince 5(4) with FSAL, propagating the 5th-order solution.
template <typename State>
class DormandPrince {
 public:
  DormandPrince(const TimeDependentHamiltonian& rule, double tolerance)
      : rule_(rule), tol_(kLocalFraction * tolerance) {
    const double bound = norm_bound(rule);
    h_ = bound > 0.0 ? 0.1 / bound : std::numeric_limits<double>::infinity();
    // A step spanning a whole drive period aliases the error estimate to ~0.
    h_max_ = rule.is_constant() ? std::numeric_limits<double>::infinity()
                                : rule.period() / 8.0;
    h_ = std::min(h_, h_max_);
  }

  /// Advances y from t to t_end.
  void advance(State& y, double& t, double t_end, StepStatistics& stats) {
    if (!(t_end > t)) return;
    rhs(t, y, k1_);
    while (t < t_end) {
      const double remaining = t_end - t;
      double h = std::min(h_, remaining);
      for (;;) {
        const bool clipped = h == remaining;
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
          throw PropagationError("adaptive step size underflow at t=" + std::to_string(t) +
                                     " (local error cannot be brought below tolerance " +
                                     std::to_string(tol_) + ")",
                                 t);
        }
        const double err = trial_step(y, t, h);
        if (!std::isfinite(err)) {
          h *= 0.2;
          ++stats.rejected;
          continue;
        }
        const double factor =
            err == 0.0 ? kMaxGrow : std::clamp(0.9 * std::pow(err, -0.2), kMinShrink, kMaxGrow);
        if (err <= 1.0) {
          ++stats.accepted;
          t = clipped ? t_end : t + h;
          y = y_new_;
          k1_ = k7_;
          // Keep the step proposal from being ruined by a clipped landing.
          if (!clipped || factor < 1.0) h_ = std::min(h * factor, h_max_);
          break;
        }
        ++stats.rejected;
        h *= std::min(1.0, factor);
      }
    }
  }

 private:
  // Per-step error target as a fraction of the requested tolerance, so the
  // error accumulated over a stage also stays below it.
  static constexpr double kLocalFraction = 0.1;
  static constexpr double kMaxGrow = 5.0;
  static constexpr double kMinShrink = 0.2;

  void rhs(double t, const State& y, State& dy) {
    rule_.apply(t, y, dy);
    dy *= kMinusI;
  }

  double trial_step(const State& y, double t, double h) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp_ = y + h * (a21 * k1_);
    rhs(t + c2 * h, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    rhs(t + c3 * h, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs(t + c4 * h, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs(t + c5 * h, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs(t + h, tmp_, k6_);
    y_new_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs(t + h, y_new_, k7_);

    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const auto scale =
        (tol_ * (1.0 + y.cwiseAbs().cwiseMax(y_new_.cwiseAbs()).array())).eval();
    return (err_.cwiseAbs().array() / scale).maxCoeff();
  }

  const TimeDependentHamiltonian& rule_;
  double tol_;
  double h_;
  double h_max_;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_, err_;
};

Matrix matrix_power(Matrix base, long exponent) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

}  // namespace

namespace {

/// Connected components of the coupling graph of H (i ~ j when H(i,j) or
/// H(j,i) is nonzero). exp(-iHt) is block diagonal over them.
std::vector<std::vector<Eigen::Index>> coupled_blocks(const Matrix& H) {
  const Eigen::Index n = H.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      auto& p = parent[static_cast<std::size_t>(i)];
      p = parent[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && H(i, j) != 0.0) {
        const Eigen::Index a = find(i), b = find(j);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
  }
  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<Eigen::Index>> blocks;
  for (auto& [root, members] : groups) blocks.push_back(std::move(members));
  return blocks;
}

Matrix propagator_block(const Matrix& H, double t, const ExpOptions& opts) {
  if (opts.method == ExpMethod::ScalingSquaring) return exp_scaling_squaring(H, t);

  if (is_hermitian(H)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    if (es.info() == Eigen::Success) {
      const Vector phases =
          (kMinusI * t * es.eigenvalues().cast<Complex>()).array().exp().matrix();
      return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(H);
    if (es.info() == Eigen::Success) {
      const Matrix& V = es.eigenvectors();
      Eigen::PartialPivLU<Matrix> lu(V);
      const double rcond = lu.rcond();
      if (rcond > 0.0 && 1.0 / rcond < opts.max_condition) {
        const Vector phases = (kMinusI * t * es.eigenvalues()).array().exp().matrix();
        return V * phases.asDiagonal() * lu.inverse();
      }
    }
  }
  return exp_scaling_squaring(H, t);
}

}  // namespace

Matrix propagator_matrix(const Matrix& H, double t, const ExpOptions& opts) {
  if (H.rows() != H.cols()) throw std::invalid_argument("propagator_matrix: H is not square");
  if (t == 0.0 || H.size() == 0) return Matrix::Identity(H.rows(), H.cols());

  const auto blocks = coupled_blocks(H);
  if (blocks.size() == 1) return propagator_block(H, t, opts);
  Matrix U = Matrix::Zero(H.rows(), H.cols());
  for (const auto& idx : blocks) {
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = H(idx[a], idx[b]);
    const Matrix u = propagator_block(sub, t, opts);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) U(idx[a], idx[b]) = u(a, b);
  }
  return U;
}

StateVector evolve_constant(const Matrix& H, const StateVector& psi0, double t,
                            const ExpOptions& opts) {
  check_dims(H.rows(), psi0);
  if (t == 0.0) return psi0;
  return StateVector(psi0.space(), propagator_matrix(H, t, opts) * psi0.amplitudes());
}

Trajectory Trajectory::shifted(double offset) const {
  Trajectory out = *this;
  for (double& t : out.times) t += offset;
  return out;
}

Trajectory evolve_constant_sampled(const Matrix& H, const StateVector& psi0,
                                   double duration, int sample_count,
                                   const ExpOptions& opts) {
  check_dims(H.rows(), psi0);
  check_sampling(duration, sample_count, 1.0);
  const std::vector<double> times = uniform_times(duration, sample_count);
  const Matrix step = propagator_matrix(H, times[1] - times[0], opts);

  Trajectory traj;
  Vector psi = psi0.amplitudes();
  push_sample(traj, 0.0, psi0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    psi = step * psi;
    push_sample(traj, times[k], StateVector(psi0.space(), psi));
  }
  return traj;
}

Trajectory evolve_timedep(const TimeDependentHamiltonian& rule, const StateVector& psi0,
                          double duration, double tolerance, int sample_count,
                          StepStatistics* stats) {
  check_dims(rule.dim(), psi0);
  check_sampling(duration, sample_count, tolerance);
  const std::vector<double> times = uniform_times(duration, sample_count);

  StepStatistics local;
  DormandPrince<Vector> stepper(rule, tolerance);
  Trajectory traj;
  Vector psi = psi0.amplitudes();
  double t = 0.0;
  push_sample(traj, 0.0, psi0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    stepper.advance(psi, t, times[k], local);
    push_sample(traj, times[k], StateVector(psi0.space(), psi));
  }
  if (stats) *stats = local;
  return traj;
}

Trajectory evolve_stroboscopic(const TimeDependentHamiltonian& rule,
                               const StateVector& psi0, double duration,
                               double tolerance, int sample_count) {
  check_dims(rule.dim(), psi0);
  check_sampling(duration, sample_count, tolerance);
  if (rule.is_constant()) {
    return evolve_timedep(rule, psi0, duration, tolerance, sample_count);
  }
  const double period = rule.period();
  const std::vector<double> times = uniform_times(duration, sample_count);

  StepStatistics ignored;
  Matrix one_period = Matrix::Identity(rule.dim(), rule.dim());
  {
    DormandPrince<Matrix> stepper(rule, tolerance);
    double t = 0.0;
    stepper.advance(one_period, t, period, ignored);
  }

  std::map<long, Matrix> powers;
  auto power = [&](long n) -> const Matrix& {
    auto it = powers.find(n);
    if (it == powers.end()) it = powers.emplace(n, matrix_power(one_period, n)).first;
    return it->second;
  };

  Trajectory traj;
  push_sample(traj, 0.0, psi0);
  Vector strobe = psi0.amplitudes();  // state at the last whole period
  long periods_done = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const long n = static_cast<long>(std::floor(times[k] / period));
    if (n > periods_done) {
      strobe = power(n - periods_done) * strobe;
      periods_done = n;
    }
    Vector psi = strobe;
    const double remainder = times[k] - static_cast<double>(n) * period;
    if (remainder > 0.0) {
      DormandPrince<Vector> stepper(rule, tolerance);
      double t = 0.0;
      stepper.advance(psi, t, remainder, ignored);
    }
    push_sample(traj, times[k], StateVector(psi0.space(), std::move(psi)));
  }
  return traj;
}

void PropagationRequest::validate() const {
  const Eigen::Index rows = std::visit(
      [](const auto& h) -> Eigen::Index {
        if constexpr (std::is_same_v<std::decay_t<decltype(h)>, Matrix>) {
          return h.rows();
        } else {
          return h.dim();
        }
      },
      hamiltonian);
  check_dims(rows, initial);
  check_sampling(duration, sample_count, tolerance);
}

Trajectory propagate(const PropagationRequest& request) {
  request.validate();
  if (const auto* H = std::get_if<Matrix>(&request.hamiltonian)) {
    return evolve_constant_sampled(*H, request.initial, request.duration,
                                   request.sample_count);
  }
  const auto& rule = std::get<TimeDependentHamiltonian>(request.hamiltonian);
  if (!rule.is_constant() && request.duration / rule.period() > request.stroboscopic_threshold) {
    return evolve_stroboscopic(rule, request.initial, request.duration, request.tolerance,
                               request.sample_count);
  }
  return evolve_timedep(rule, request.initial, request.duration, request.tolerance,
                        request.sample_count);
}

// -- Populations --------------------------------------------------------------

Selector Selector::state(const BasisLabel& label) {
  return Selector(to_string(label), [label](const BasisLabel& l) { return l == label; });
}

Selector Selector::states(std::string name, std::vector<BasisLabel> labels) {
  return Selector(std::move(name), [labels = std::move(labels)](const BasisLabel& l) {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
  });
}

Selector Selector::photon() {
  return Selector("photon", [](const BasisLabel& l) { return l.nL + l.nR >= 1; });
}

Selector Selector::photon_count(int n) {
  return Selector("photons=" + std::to_string(n),
                  [n](const BasisLabel& l) { return l.nL + l.nR == n; });
}

Selector Selector::excited() {
  return Selector("excited", [](const BasisLabel& l) {
    return is_excited(l.atomA) || is_excited(l.atomB);
  });
}

namespace {

std::vector<Eigen::Index> matching_indices(const HilbertSpace& space, const Selector& s) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (s.matches(space.label(i))) idx.push_back(static_cast<Eigen::Index>(i));
  }
  return idx;
}

double summed_population(const Vector& amps, const std::vector<Eigen::Index>& idx) {
  double p = 0.0;
  for (Eigen::Index i : idx) p += std::norm(amps[i]);
  return p;
}

}  // namespace

double population(const StateVector& psi, const Selector& selector) {
  return summed_population(psi.amplitudes(), matching_indices(psi.space(), selector));
}

PopulationTable populations(const Trajectory& traj, std::span<const Selector> selectors) {
  PopulationTable table;
  table.times = traj.times;
  if (traj.states.empty()) {
    table.series.assign(selectors.size(), {});
    for (const auto& s : selectors) table.names.push_back(s.name());
    return table;
  }
  const HilbertSpace& space = traj.states.front().space();
  for (const auto& s : selectors) {
    table.names.push_back(s.name());
    const auto idx = matching_indices(space, s);
    std::vector<double> col;
    col.reserve(traj.states.size());
    for (const auto& st : traj.states) col.push_back(summed_population(st.amplitudes(), idx));
    table.series.push_back(std::move(col));
  }
  return table;
}

}  // namespace cqed
