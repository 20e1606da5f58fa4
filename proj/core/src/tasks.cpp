#include "selfopt/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "selfopt/baselines.hpp"
#include "selfopt/rng.hpp"

namespace selfopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dim(const TaskInstance& task, const Vec& params) {
  if (static_cast<int>(params.size()) != task.param_dim) {
    throw std::invalid_argument("parameter vector length " + std::to_string(params.size()) +
                                " does not match task param_dim " +
                                std::to_string(task.param_dim));
  }
}

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) { return z > 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

// TinyMlp parameter layout offsets.
constexpr int kW1 = 0;
constexpr int kB1 = kMlpHidden * kMlpIn;
constexpr int kW2 = kB1 + kMlpHidden;
constexpr int kB2 = kW2 + kMlpOut * kMlpHidden;

struct MlpForward {
  double hidden[kMlpHidden];
  double logits[kMlpOut];
};

void mlp_forward(const Vec& p, const double* point, MlpForward& f) {
  for (int h = 0; h < kMlpHidden; ++h) {
    double a = p[kB1 + h];
    for (int i = 0; i < kMlpIn; ++i) a += p[kW1 + h * kMlpIn + i] * point[i];
    f.hidden[h] = std::tanh(a);
  }
  for (int o = 0; o < kMlpOut; ++o) {
    double z = p[kB2 + o];
    for (int h = 0; h < kMlpHidden; ++h) z += p[kW2 + o * kMlpHidden + h] * f.hidden[h];
    f.logits[o] = z;
  }
}

double mlp_example_loss(const MlpForward& f, int label) {
  double m = std::max(f.logits[0], f.logits[1]);
  double lse = m + std::log(std::exp(f.logits[0] - m) + std::exp(f.logits[1] - m));
  return lse - f.logits[label];
}

}  // namespace

const char* family_name(TaskFamilyId id) {
  switch (id) {
    case TaskFamilyId::kNoisyQuadratic: return "noisy_quadratic";
    case TaskFamilyId::kLinearRegression: return "linear_regression";
    case TaskFamilyId::kLogisticRegression: return "logistic_regression";
    case TaskFamilyId::kTinyMlpClassification: return "tiny_mlp";
  }
  return "unknown";
}

bool parse_family_name(const std::string& name, TaskFamilyId& out) {
  if (name == "noisy_quadratic") out = TaskFamilyId::kNoisyQuadratic;
  else if (name == "linear_regression") out = TaskFamilyId::kLinearRegression;
  else if (name == "logistic_regression") out = TaskFamilyId::kLogisticRegression;
  else if (name == "tiny_mlp") out = TaskFamilyId::kTinyMlpClassification;
  else return false;
  return true;
}

TaskInstance sample_task_payload(const TaskFamily& family, uint64_t seed) {
  TaskInstance t;
  t.family = family.id;
  t.seed = seed;
  t.noise_scale = family.noise_scale;
  t.batch_size = family.batch_size;
  t.norm_horizon = family.norm_horizon;

  Rng r(substream(seed, Stream::kTaskPayload, static_cast<uint64_t>(family.id)));
  const int dim_span = family.dim_max - family.dim_min + 1;

  switch (family.id) {
    case TaskFamilyId::kNoisyQuadratic: {
      const int dim = family.dim_min + static_cast<int>(r.below(static_cast<uint64_t>(dim_span)));
      t.param_dim = dim;
      const double scale = r.log_uniform(1e-2, 1e1);
      Vec b(static_cast<size_t>(dim) * dim);
      for (auto& x : b) x = r.normal(0.0, scale);
      t.quad_a.assign(static_cast<size_t>(dim) * dim, 0.0);
      const double eps = 1e-3 * dim;
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          double s = 0.0;
          for (int k = 0; k < dim; ++k) s += b[k * dim + i] * b[k * dim + j];
          t.quad_a[i * dim + j] = s;
        }
        t.quad_a[i * dim + i] += eps;
      }
      t.quad_opt.resize(dim);
      for (auto& x : t.quad_opt) x = r.normal();
      break;
    }
    case TaskFamilyId::kLinearRegression:
    case TaskFamilyId::kLogisticRegression: {
      const int dim = family.dim_min + static_cast<int>(r.below(static_cast<uint64_t>(dim_span)));
      t.param_dim = dim;
      t.feature_scale.resize(dim);
      for (auto& s : t.feature_scale) s = r.log_uniform(0.1, 10.0);
      t.w_true.resize(dim);
      for (auto& w : t.w_true) w = r.normal();
      break;
    }
    case TaskFamilyId::kTinyMlpClassification: {
      t.param_dim = kMlpParamCount;
      t.mlp_points.resize(2 * kMlpDatasetSize);
      t.mlp_labels.resize(kMlpDatasetSize);
      const int half = kMlpDatasetSize / 2;
      for (int i = 0; i < kMlpDatasetSize; ++i) {
        const double phi = r.uniform() * kPi;
        double x, y;
        if (i < half) {
          x = std::cos(phi);
          y = std::sin(phi);
          t.mlp_labels[i] = 0;
        } else {
          x = 1.0 - std::cos(phi);
          y = 0.5 - std::sin(phi);
          t.mlp_labels[i] = 1;
        }
        t.mlp_points[2 * i] = x + 0.1 * r.normal();
        t.mlp_points[2 * i + 1] = y + 0.1 * r.normal();
      }
      break;
    }
  }
  return t;
}

std::pair<double, double> normalization_constants(const TaskInstance& task) {
  double l_init = 0.0;
  for (uint64_t i = 0; i < 8; ++i) {
    Vec x = init_params(task, substream(task.seed, Stream::kNormInit, i));
    l_init += loss(task, x, substream(task.seed, Stream::kNormInitBatch, i));
  }
  l_init /= 8.0;

  TaskInstance probe = task;
  probe.l_init = l_init;
  probe.l_best = 0.0;
  TunedAdam tuned = tuned_adam(probe, static_cast<uint64_t>(task.norm_horizon),
                               substream(task.seed, Stream::kNormOracle));
  double l_best = tuned.best_final_loss;
  if (!std::isfinite(l_best)) l_best = l_init;
  l_best = std::clamp(l_best, 0.0, l_init);
  return {l_init, l_best};
}

TaskInstance sample_task(const TaskFamily& family, uint64_t seed) {
  TaskInstance t = sample_task_payload(family, seed);
  auto [l_init, l_best] = normalization_constants(t);
  t.l_init = l_init;
  t.l_best = l_best;
  return t;
}

Vec init_params(const TaskInstance& task, uint64_t seed) {
  Rng r(substream(seed, Stream::kInitParams));
  Vec x(task.param_dim);
  if (task.family == TaskFamilyId::kTinyMlpClassification) {
    const double s1 = 1.0 / std::sqrt(static_cast<double>(kMlpIn));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(kMlpHidden));
    for (int i = 0; i < task.param_dim; ++i) x[i] = r.normal(0.0, i < kW2 ? s1 : s2);
  } else {
    for (auto& v : x) v = r.normal();
  }
  return x;
}

double loss(const TaskInstance& task, const Vec& params, uint64_t batch_seed) {
  check_dim(task, params);
  const int dim = task.param_dim;
  double value = 0.0;
  switch (task.family) {
    case TaskFamilyId::kNoisyQuadratic: {
      // batch_seed unused: the quadratic is deterministic, noise enters the gradient only
      for (int i = 0; i < dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim; ++j) row += task.quad_a[i * dim + j] * (params[j] - task.quad_opt[j]);
        value += (params[i] - task.quad_opt[i]) * row;
      }
      value *= 0.5;
      break;
    }
    case TaskFamilyId::kLinearRegression: {
      Rng rb(batch_seed);
      double xbuf[64];
      for (int b = 0; b < task.batch_size; ++b) {
        double pred = 0.0, target = 0.0;
        for (int j = 0; j < dim; ++j) {
          xbuf[j] = task.feature_scale[j] * rb.normal();
          pred += xbuf[j] * params[j];
          target += xbuf[j] * task.w_true[j];
        }
        target += task.noise_scale * rb.normal();
        const double resid = pred - target;
        value += 0.5 * resid * resid;
      }
      value /= task.batch_size;
      break;
    }
    case TaskFamilyId::kLogisticRegression: {
      Rng rb(batch_seed);
      double xbuf[64];
      for (int b = 0; b < task.batch_size; ++b) {
        double z = 0.0, ztrue = 0.0;
        for (int j = 0; j < dim; ++j) {
          xbuf[j] = task.feature_scale[j] * rb.normal();
          z += xbuf[j] * params[j];
          ztrue += xbuf[j] * task.w_true[j];
        }
        ztrue += task.noise_scale * rb.normal();
        const int y = ztrue > 0 ? 1 : 0;
        value += softplus(z) - y * z;
      }
      value /= task.batch_size;
      break;
    }
    case TaskFamilyId::kTinyMlpClassification: {
      Rng rb(batch_seed);
      MlpForward f;
      for (int b = 0; b < task.batch_size; ++b) {
        const int idx = static_cast<int>(rb.below(kMlpDatasetSize));
        mlp_forward(params, &task.mlp_points[2 * idx], f);
        value += mlp_example_loss(f, task.mlp_labels[idx]);
      }
      value /= task.batch_size;
      break;
    }
  }
  return std::isnan(value) ? value : std::max(0.0, value);
}

void gradient_into(const TaskInstance& task, const Vec& params, uint64_t batch_seed, Vec& out) {
  check_dim(task, params);
  const int dim = task.param_dim;
  out.assign(dim, 0.0);
  switch (task.family) {
    case TaskFamilyId::kNoisyQuadratic: {
      for (int i = 0; i < dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim; ++j) row += task.quad_a[i * dim + j] * (params[j] - task.quad_opt[j]);
        out[i] = row;
      }
      if (task.noise_scale > 0.0) {
        Rng rn(substream(batch_seed, Stream::kGradNoise));
        for (int i = 0; i < dim; ++i) out[i] += task.noise_scale * rn.normal();
      }
      break;
    }
    case TaskFamilyId::kLinearRegression: {
      Rng rb(batch_seed);
      double xbuf[64];
      for (int b = 0; b < task.batch_size; ++b) {
        double pred = 0.0, target = 0.0;
        for (int j = 0; j < dim; ++j) {
          xbuf[j] = task.feature_scale[j] * rb.normal();
          pred += xbuf[j] * params[j];
          target += xbuf[j] * task.w_true[j];
        }
        target += task.noise_scale * rb.normal();
        const double resid = pred - target;
        for (int j = 0; j < dim; ++j) out[j] += xbuf[j] * resid;
      }
      for (int j = 0; j < dim; ++j) out[j] /= task.batch_size;
      break;
    }
    case TaskFamilyId::kLogisticRegression: {
      Rng rb(batch_seed);
      double xbuf[64];
      for (int b = 0; b < task.batch_size; ++b) {
        double z = 0.0, ztrue = 0.0;
        for (int j = 0; j < dim; ++j) {
          xbuf[j] = task.feature_scale[j] * rb.normal();
          z += xbuf[j] * params[j];
          ztrue += xbuf[j] * task.w_true[j];
        }
        ztrue += task.noise_scale * rb.normal();
        const int y = ztrue > 0 ? 1 : 0;
        const double err = sigmoid(z) - y;
        for (int j = 0; j < dim; ++j) out[j] += xbuf[j] * err;
      }
      for (int j = 0; j < dim; ++j) out[j] /= task.batch_size;
      break;
    }
    case TaskFamilyId::kTinyMlpClassification: {
      Rng rb(batch_seed);
      MlpForward f;
      for (int b = 0; b < task.batch_size; ++b) {
        const int idx = static_cast<int>(rb.below(kMlpDatasetSize));
        const double* pt = &task.mlp_points[2 * idx];
        mlp_forward(params, pt, f);
        const int y = task.mlp_labels[idx];
        const double m = std::max(f.logits[0], f.logits[1]);
        const double e0 = std::exp(f.logits[0] - m), e1 = std::exp(f.logits[1] - m);
        const double inv = 1.0 / (e0 + e1);
        double dz[kMlpOut] = {e0 * inv, e1 * inv};
        dz[y] -= 1.0;
        for (int o = 0; o < kMlpOut; ++o) {
          out[kB2 + o] += dz[o];
          for (int h = 0; h < kMlpHidden; ++h) out[kW2 + o * kMlpHidden + h] += dz[o] * f.hidden[h];
        }
        for (int h = 0; h < kMlpHidden; ++h) {
          double dh = 0.0;
          for (int o = 0; o < kMlpOut; ++o) dh += params[kW2 + o * kMlpHidden + h] * dz[o];
          const double da = dh * (1.0 - f.hidden[h] * f.hidden[h]);
          out[kB1 + h] += da;
          for (int i = 0; i < kMlpIn; ++i) out[kW1 + h * kMlpIn + i] += da * pt[i];
        }
      }
      for (auto& g : out) g /= task.batch_size;
      break;
    }
  }
}

Vec gradient(const TaskInstance& task, const Vec& params, uint64_t batch_seed) {
  Vec out;
  gradient_into(task, params, batch_seed, out);
  return out;
}

TaskInstance make_quadratic_task(Vec a_matrix, Vec optimum, double noise_scale, double l_init,
                                 double l_best) {
  TaskInstance t;
  t.family = TaskFamilyId::kNoisyQuadratic;
  t.param_dim = static_cast<int>(optimum.size());
  t.quad_a = std::move(a_matrix);
  t.quad_opt = std::move(optimum);
  t.noise_scale = noise_scale;
  t.l_init = l_init;
  t.l_best = l_best;
  return t;
}

}  // namespace selfopt
