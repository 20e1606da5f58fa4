#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "selfopt/util.hpp"

namespace selfopt {

// Desk-scale distribution of optimization problems. Every family has a
// closed-form loss and gradient, so finite-difference checks can pin the
// implementations down and no autodiff is needed anywhere.

enum class TaskFamilyId : int {
  kNoisyQuadratic = 0,
  kLinearRegression = 1,
  kLogisticRegression = 2,
  kTinyMlpClassification = 3,
};

const char* family_name(TaskFamilyId id);
bool parse_family_name(const std::string& name, TaskFamilyId& out);

struct TaskFamily {
  TaskFamilyId id = TaskFamilyId::kNoisyQuadratic;
  int dim_min = 2;
  int dim_max = 16;
  double noise_scale = 0.0;  // gradient noise (quadratic) / data noise (data families)
  int batch_size = 16;       // data families only
  int norm_horizon = 500;    // steps of the tuned-Adam run that defines l_best
};

// TinyMlp target network: 2 -> 16 -> 2, tanh hidden, softmax cross-entropy.
inline constexpr int kMlpIn = 2;
inline constexpr int kMlpHidden = 16;
inline constexpr int kMlpOut = 2;
inline constexpr int kMlpParamCount =
    kMlpHidden * kMlpIn + kMlpHidden + kMlpOut * kMlpHidden + kMlpOut;  // 82
inline constexpr int kMlpDatasetSize = 256;

struct TaskInstance {
  TaskFamilyId family = TaskFamilyId::kNoisyQuadratic;
  uint64_t seed = 0;
  int param_dim = 0;
  double noise_scale = 0.0;
  int batch_size = 0;
  int norm_horizon = 500;

  // family payloads (only the relevant ones are populated)
  Vec quad_a;         // dim*dim SPD matrix, row-major
  Vec quad_opt;       // optimum x*
  Vec w_true;         // data-generating weights (regression families)
  Vec feature_scale;  // per-feature std of the input distribution
  Vec mlp_points;     // 256 * 2 coordinates (TinyMlp)
  std::vector<int> mlp_labels;

  // normalization constants, fixed at sampling time
  double l_init = 1.0;
  double l_best = 0.0;
};

// Deterministic in (family, seed); payload invariants hold by construction
// (A = B^T B + eps*I with eps = 1e-3 * dim). Computes and caches l_init and
// l_best (tuned-Adam oracle over norm_horizon steps, clamped to <= l_init).
TaskInstance sample_task(const TaskFamily& family, uint64_t seed);

// Payload only, normalization constants left provisional (l_init=1, l_best=0).
TaskInstance sample_task_payload(const TaskFamily& family, uint64_t seed);

// Recomputes (l_init, l_best) from scratch; equal to the cached values.
std::pair<double, double> normalization_constants(const TaskInstance& task);

// i.i.d. normal init, scale 1/sqrt(fan_in) per layer for the TinyMlp family,
// 1.0 otherwise; deterministic in seed.
Vec init_params(const TaskInstance& task, uint64_t seed);

double loss(const TaskInstance& task, const Vec& params, uint64_t batch_seed);

Vec gradient(const TaskInstance& task, const Vec& params, uint64_t batch_seed);
void gradient_into(const TaskInstance& task, const Vec& params, uint64_t batch_seed, Vec& out);

// Test/CLI helper: quadratic instance with explicit payload and constants.
TaskInstance make_quadratic_task(Vec a_matrix, Vec optimum, double noise_scale, double l_init,
                                 double l_best);

}  // namespace selfopt
