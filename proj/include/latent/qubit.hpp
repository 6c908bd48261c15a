#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>

#include "latent/box.hpp"

namespace latent {

struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |phi+><phi+| = maximally entangled two-qubit state (real density matrix).
Eigen::Matrix4d phi_plus_state();

/// |00><00| product state.
Eigen::Matrix4d product_zero_state();

/// P(a,b|x,y) from binary projective measurements of a two-qubit state in
/// the X-Z Bloch plane: outcome-0 projector at angle t is
/// (I + cos t * sigma_z + sin t * sigma_x)/2.
Box<double> qubit_box(const Eigen::Matrix4d& state,
                      const std::array<double, 2>& alice_angles,
                      const std::array<double, 2>& bob_angles);

struct AngleSearchResult {
  double value = 0;
  std::array<double, 2> alice{};
  std::array<double, 2> bob{};
};

/// Maximizes a float functional over qubit_box(phi_plus, angles) by a coarse
/// grid followed by coordinate-descent refinement. Deterministic.
AngleSearchResult maximize_over_angles(const LinearFunctional<double>& payoff,
                                       int grid_steps = 24,
                                       int refine_rounds = 60);

}  // namespace latent
