#pragma once

#include <cstdint>

#include "selfopt/util.hpp"

namespace selfopt {

// Per-parameter MLP optimizer. Each optimized parameter gets a 10-feature row;
// the MLP maps it to a direction head d and log-magnitude head m, and the
// update is x += kStepScale * d * exp(kLogStepScale * m). The constant-1 input
// feature plays the role of the hidden bias, so theta is
// [W1 (10x32 row-major), W2 (32x2 row-major), b2 (2)] = 386 entries.

inline constexpr int kFeatureCount = 10;
inline constexpr int kHiddenWidth = 32;
inline constexpr int kHeadCount = 2;
inline constexpr int kThetaLen =
    kFeatureCount * kHiddenWidth + kHiddenWidth * kHeadCount + kHeadCount;  // 386

inline constexpr double kStepScale = 1e-3;     // lambda1
inline constexpr double kLogStepScale = 1e-3;  // lambda2
inline constexpr double kHeadClamp = 10.0;     // raw MLP outputs clamped to [-10, 10]
inline constexpr double kRmsEps = 1e-8;

// theta layout offsets
inline constexpr int kThetaW1 = 0;
inline constexpr int kThetaW2 = kFeatureCount * kHiddenWidth;
inline constexpr int kThetaB2 = kThetaW2 + kHiddenWidth * kHeadCount;

struct LearnedOptParams {
  Vec theta;  // length kThetaLen
};

// i.i.d. normal(0, scale^2); deterministic in seed.
LearnedOptParams init_theta(uint64_t seed, double scale = 0.01);

// Shared accumulator shape for the learned optimizer and Adam. m1/m2/m3 are
// gradient EMAs at decays 0.9/0.99/0.999, v is the squared-gradient EMA at
// 0.999; Adam reuses the m1 and v slots.
struct OptimizerState {
  Vec m1, m2, m3, v;
  uint64_t t = 0;

  static OptimizerState zeros(size_t n) {
    OptimizerState s;
    s.m1.assign(n, 0.0);
    s.m2.assign(n, 0.0);
    s.m3.assign(n, 0.0);
    s.v.assign(n, 0.0);
    return s;
  }
};

// m_k <- beta_k m_k + (1-beta_k) g, v <- 0.999 v + 0.001 g^2, t <- t+1.
void update_state(OptimizerState& state, const Vec& grad);

// rows x 10, row-major: [g, m1, m2, m3, g/sqrt(v+eps), x, tanh(t/10),
// tanh(t/100), tanh(t/1000), 1]; columns 0-5 RMS-normalized over the rows.
struct FeatureMatrix {
  size_t rows = 0;
  Vec data;  // rows * kFeatureCount
  bool diverged = false;

  const double* row(size_t i) const { return data.data() + i * kFeatureCount; }
};

FeatureMatrix compute_features(const Vec& x, const Vec& grad, const OptimizerState& state);
void compute_features_into(const Vec& x, const Vec& grad, const OptimizerState& state,
                           FeatureMatrix& out);

// x_i += lambda1 * d_i * exp(lambda2 * m_i); heads clamped to [-10, 10].
// Returns the updated vector; sets *diverged when any output is non-finite.
Vec apply_update(const LearnedOptParams& opt, const Vec& x, const FeatureMatrix& features,
                 bool* diverged = nullptr);
bool apply_update_inplace(const LearnedOptParams& opt, Vec& x, const FeatureMatrix& features);

}  // namespace selfopt
