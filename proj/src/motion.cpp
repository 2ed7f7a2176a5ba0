#include "urbanmot/motion.hpp"

#include <algorithm>

namespace urbanmot {

namespace {

using Vector4 = Eigen::Matrix<double, 4, 1>;
using Matrix4 = Eigen::Matrix<double, 4, 4>;
using Matrix48 = Eigen::Matrix<double, 4, 8>;
using Matrix84 = Eigen::Matrix<double, 8, 4>;

KalmanState::Matrix8 transition_matrix() {
  KalmanState::Matrix8 f = KalmanState::Matrix8::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;
  return f;
}

Matrix48 measurement_matrix() {
  Matrix48 h = Matrix48::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = 1.0;
  return h;
}

void clamp_extent(KalmanState& state) {
  state.mean(2) = std::max(state.mean(2), 1.0);
  state.mean(3) = std::max(state.mean(3), 1.0);
}

}  // namespace

KalmanState init_state(const BoundingBox& box, const NoiseConfig& noise) {
  KalmanState state;
  state.mean << box.center_x(), box.center_y(), box.w, box.h, 0.0, 0.0, 0.0, 0.0;
  for (int i = 0; i < 4; ++i) {
    state.covariance(i, i) = noise.measurement_var;
    state.covariance(i + 4, i + 4) = noise.initial_vel_var;
  }
  return state;
}

KalmanState predict(const KalmanState& state, const NoiseConfig& noise) {
  const auto f = transition_matrix();
  KalmanState::Matrix8 q = KalmanState::Matrix8::Zero();
  for (int i = 0; i < 4; ++i) {
    q(i, i) = noise.process_pos_var;
    q(i + 4, i + 4) = noise.process_vel_var;
  }
  KalmanState out;
  out.mean = f * state.mean;
  out.covariance = f * state.covariance * f.transpose() + q;
  clamp_extent(out);
  return out;
}

KalmanState update(const KalmanState& state, const BoundingBox& measured_box,
                   const NoiseConfig& noise) {
  const auto h = measurement_matrix();
  const Matrix4 r = Matrix4::Identity() * noise.measurement_var;

  Vector4 z;
  z << measured_box.center_x(), measured_box.center_y(), measured_box.w, measured_box.h;

  const Vector4 innovation = z - h * state.mean;
  const Matrix4 s = h * state.covariance * h.transpose() + r;
  const Matrix84 gain = state.covariance * h.transpose() * s.inverse();

  KalmanState out;
  out.mean = state.mean + gain * innovation;

  // Joseph form keeps the covariance PSD under roundoff.
  const KalmanState::Matrix8 ikh = KalmanState::Matrix8::Identity() - gain * h;
  out.covariance = ikh * state.covariance * ikh.transpose() + gain * r * gain.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

BoundingBox state_to_box(const KalmanState& state) {
  BoundingBox box;
  box.w = state.mean(2);
  box.h = state.mean(3);
  box.x = state.mean(0) - 0.5 * box.w;
  box.y = state.mean(1) - 0.5 * box.h;
  return box;
}

}  // namespace urbanmot
