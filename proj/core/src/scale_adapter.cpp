#include "oms/scale_adapter.hpp"

#include <cmath>
#include <stdexcept>

namespace oms {

ClipState make_clip_state(double initial_scale, double rate) {
  if (!(initial_scale > 0.0)) {
    throw std::invalid_argument("make_clip_state: initial scale must be positive");
  }
  if (!(rate >= 1.0)) {
    throw std::invalid_argument("make_clip_state: rate must be >= 1");
  }
  ClipState s;
  s.initial = initial_scale;
  s.committed = initial_scale;
  s.rate = rate;
  s.running = 0.0;
  s.restarts = 0;
  return s;
}

ClipResult clip_loss(ClipState& state, const std::vector<double>& loss,
                     const std::vector<double>& m) {
  if (loss.size() != m.size()) {
    throw std::invalid_argument("clip_loss: size mismatch");
  }
  double err = 0.0;
  for (std::size_t i = 0; i < loss.size(); ++i) {
    if (!std::isfinite(loss[i]) || !std::isfinite(m[i])) {
      throw std::invalid_argument("clip_loss: non-finite input");
    }
    err = std::max(err, std::abs(loss[i] - m[i]));
  }

  const double prev = std::max(state.initial, state.running);  // B_{t-1}
  const double cur = std::max(prev, err);                      // B_t
  state.running = std::max(state.running, err);

  ClipResult res;
  res.surrogate.resize(loss.size());
  const double ratio = cur > 0.0 ? prev / cur : 0.0;
  for (std::size_t i = 0; i < loss.size(); ++i) {
    res.surrogate[i] = cur > 0.0 ? m[i] + ratio * (loss[i] - m[i]) : m[i];
  }

  if (cur > state.committed) {
    res.restart_needed = true;
    state.committed = std::max(state.rate * state.committed, cur);
    ++state.restarts;
  }
  return res;
}

ScaledLearner::ScaledLearner(InnerFactory factory, double initial_scale, double rate,
                             const std::vector<ExpertId>& initial_experts)
    : factory_(std::move(factory)),
      clip_(make_clip_state(initial_scale, rate)),
      current_experts_(initial_experts) {
  inner_ = factory_(clip_.committed, current_experts_);
  if (!inner_.learner) {
    throw std::invalid_argument("ScaledLearner: factory produced no learner");
  }
}

std::vector<double> ScaledLearner::to_inner(const std::vector<double>& v) const {
  if (!inner_.unit_range) return v;
  std::vector<double> scaled(v.size());
  const double inv = 1.0 / clip_.committed;
  for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = v[i] * inv;
  return scaled;
}

RoundOutput ScaledLearner::begin_round(const std::vector<ExpertId>& experts_now,
                                       const std::vector<double>& decision_prediction) {
  current_experts_ = experts_now;
  return inner_.learner->begin_round(experts_now, to_inner(decision_prediction));
}

void ScaledLearner::end_round(const std::vector<double>& observed_loss,
                              const std::vector<double>& full_prediction,
                              const RoundOutput& out) {
  const double scale_before = clip_.committed;
  ClipResult res = clip_loss(clip_, observed_loss, full_prediction);

  double fed = 0.0;
  for (std::size_t i = 0; i < res.surrogate.size(); ++i) {
    fed = std::max(fed, std::abs(res.surrogate[i] - full_prediction[i]));
  }
  last_fed_error_ = fed;

  // The surrogate goes to the old instance first; the rebuild happens after.
  if (inner_.unit_range) {
    const double inv = 1.0 / scale_before;
    std::vector<double> l(res.surrogate.size()), mp(full_prediction.size());
    for (std::size_t i = 0; i < res.surrogate.size(); ++i) {
      l[i] = res.surrogate[i] * inv;
      mp[i] = full_prediction[i] * inv;
    }
    inner_.learner->end_round(l, mp, out);
  } else {
    inner_.learner->end_round(res.surrogate, full_prediction, out);
  }

  if (res.restart_needed) {
    inner_ = factory_(clip_.committed, current_experts_);
    if (!inner_.learner) {
      throw std::runtime_error("ScaledLearner: factory produced no learner on restart");
    }
  }
}

void ScaledLearner::remove_experts(const std::vector<ExpertId>& ids) {
  inner_.learner->remove_experts(ids);
}

}  // namespace oms
