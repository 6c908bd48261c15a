#include "latent/qubit.hpp"

#include <cmath>

namespace latent {

Eigen::Matrix4d phi_plus_state() {
  Eigen::Vector4d v;
  v << 1, 0, 0, 1;
  v /= std::sqrt(2.0);
  return v * v.transpose();
}

Eigen::Matrix4d product_zero_state() {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0;
  return m;
}

namespace {

Eigen::Matrix2d plane_projector(double angle, int outcome) {
  const double s = outcome == 0 ? 1.0 : -1.0;
  Eigen::Matrix2d m;
  m << 1.0 + s * std::cos(angle), s * std::sin(angle),  //
      s * std::sin(angle), 1.0 - s * std::cos(angle);
  return 0.5 * m;
}

Eigen::Matrix4d kron(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Eigen::Matrix4d out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Box<double> qubit_box(const Eigen::Matrix4d& state,
                      const std::array<double, 2>& alice_angles,
                      const std::array<double, 2>& bob_angles) {
  if ((state - state.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw InvalidState("state is not symmetric");
  if (std::abs(state.trace() - 1.0) > 1e-9)
    throw InvalidState("state trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(state);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw InvalidState("state is not positive semidefinite");

  Box<double> b(bell_shape());
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bo = 0; bo < 2; ++bo) {
          Eigen::Matrix4d eff = kron(plane_projector(alice_angles[x], a),
                                     plane_projector(bob_angles[y], bo));
          b.at({a, bo}, {x, y}) = (state * eff).trace();
        }
  return b;
}

AngleSearchResult maximize_over_angles(const LinearFunctional<double>& payoff,
                                       int grid_steps, int refine_rounds) {
  const Eigen::Matrix4d state = phi_plus_state();
  auto eval = [&](const std::array<double, 4>& t) {
    return evaluate(payoff, qubit_box(state, {t[0], t[1]}, {t[2], t[3]}));
  };

  // For |phi+> all single-party marginals are uniform, so only angle
  // differences matter; pin the first angle.
  std::array<double, 4> best{0, 0, 0, 0};
  double best_v = eval(best);
  const double tau = 2.0 * M_PI;
  for (int i = 0; i < grid_steps; ++i)
    for (int j = 0; j < grid_steps; ++j)
      for (int k = 0; k < grid_steps; ++k) {
        std::array<double, 4> t{0, tau * i / grid_steps, tau * j / grid_steps,
                                tau * k / grid_steps};
        double v = eval(t);
        if (v > best_v) {
          best_v = v;
          best = t;
        }
      }

  double step = tau / grid_steps;
  for (int round = 0; round < refine_rounds; ++round) {
    bool improved = false;
    for (int c = 1; c < 4; ++c) {
      for (double dir : {-1.0, 1.0}) {
        auto t = best;
        t[c] += dir * step;
        double v = eval(t);
        if (v > best_v + 1e-15) {
          best_v = v;
          best = t;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }
  return {best_v, {best[0], best[1]}, {best[2], best[3]}};
}

}  // namespace latent
