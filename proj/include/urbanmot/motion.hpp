#pragma once

#include <Eigen/Dense>

#include "urbanmot/geometry.hpp"

namespace urbanmot {

// Filter noise parameters. The defaults give an uninformative velocity
// prior and a smooth motion prior.
struct NoiseConfig {
  double process_pos_var = 0.01;
  double process_vel_var = 0.01;
  double measurement_var = 1.0;
  double initial_vel_var = 1000.0;
};

// Constant-velocity box state: [cx, cy, w, h, vcx, vcy, vw, vh] with one
// frame per time step.
struct KalmanState {
  using Vector8 = Eigen::Matrix<double, 8, 1>;
  using Matrix8 = Eigen::Matrix<double, 8, 8>;

  Vector8 mean = Vector8::Zero();
  Matrix8 covariance = Matrix8::Zero();
};

KalmanState init_state(const BoundingBox& box, const NoiseConfig& noise);

// One prediction step: position += velocity, covariance inflated by the
// process noise. Width/height of the mean are clamped to >= 1 px so coasted
// tracks keep a valid box.
KalmanState predict(const KalmanState& state, const NoiseConfig& noise);

// Measurement update with z = [cx, cy, w, h]. Joseph-form covariance
// update, then symmetrized.
KalmanState update(const KalmanState& state, const BoundingBox& measured_box,
                   const NoiseConfig& noise);

BoundingBox state_to_box(const KalmanState& state);

}  // namespace urbanmot
