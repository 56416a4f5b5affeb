#include "oms/optimism.hpp"

#include <cmath>
#include <stdexcept>

namespace oms {

namespace {

void check_distribution(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -1e-12) {
      throw std::invalid_argument("finalize: prediction is not a distribution");
    }
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-6) {
    throw std::invalid_argument("finalize: prediction does not sum to one");
  }
}

}  // namespace

EmaPredictor::EmaPredictor(double step) : step_(step) {
  if (!(step > 0.0) || !(step <= 1.0)) {
    throw std::invalid_argument("EmaPredictor: step must be in (0, 1]");
  }
}

std::vector<double> EmaPredictor::predict(const std::vector<ExpertId>& experts_now) {
  if (awaiting_finalize_) {
    throw std::logic_error("EmaPredictor: finalize missing for previous round");
  }
  current_ = experts_now;
  current_m_prime_.resize(experts_now.size());
  for (std::size_t k = 0; k < experts_now.size(); ++k) {
    auto it = surrogate_.find(experts_now[k]);
    if (it == surrogate_.end()) {
      // strictly new expert: seed from the algorithm's own loss baseline
      surrogate_.emplace(experts_now[k], baseline_);
      current_m_prime_[k] = baseline_;
    } else {
      current_m_prime_[k] = it->second;
    }
  }
  awaiting_finalize_ = true;
  return current_m_prime_;
}

std::vector<double> EmaPredictor::finalize(const std::vector<double>& observed_loss,
                                           const std::vector<double>& prediction_p) {
  if (!awaiting_finalize_) {
    throw std::logic_error("EmaPredictor: predict must come first");
  }
  if (observed_loss.size() != current_.size() || prediction_p.size() != current_.size()) {
    throw std::invalid_argument("finalize: size mismatch");
  }
  check_distribution(prediction_p);

  double shift = 0.0;
  double learner_loss = 0.0;
  for (std::size_t k = 0; k < current_.size(); ++k) {
    shift += (observed_loss[k] - current_m_prime_[k]) * prediction_p[k];
    learner_loss += observed_loss[k] * prediction_p[k];
  }
  std::vector<double> full(current_.size());
  for (std::size_t k = 0; k < current_.size(); ++k) {
    full[k] = current_m_prime_[k] + shift;
  }

  for (std::size_t k = 0; k < current_.size(); ++k) {
    surrogate_[current_[k]] =
        (1.0 - step_) * current_m_prime_[k] + step_ * observed_loss[k];
  }
  baseline_ = (1.0 - step_) * baseline_ + step_ * learner_loss;
  awaiting_finalize_ = false;
  return full;
}

std::vector<double> ZeroPredictor::predict(const std::vector<ExpertId>& experts_now) {
  current_size_ = experts_now.size();
  return std::vector<double>(experts_now.size(), 0.0);
}

std::vector<double> ZeroPredictor::finalize(const std::vector<double>& observed_loss,
                                            const std::vector<double>& prediction_p) {
  if (observed_loss.size() != current_size_ || prediction_p.size() != current_size_) {
    throw std::invalid_argument("finalize: size mismatch");
  }
  check_distribution(prediction_p);
  return std::vector<double>(current_size_, 0.0);
}

std::vector<double> ExternalPredictor::predict(const std::vector<ExpertId>& experts_now) {
  if (next_.size() != experts_now.size()) {
    throw std::invalid_argument("ExternalPredictor: no prediction staged for this round");
  }
  return next_;
}

std::vector<double> ExternalPredictor::finalize(const std::vector<double>& observed_loss,
                                                const std::vector<double>& prediction_p) {
  if (observed_loss.size() != next_.size() || prediction_p.size() != next_.size()) {
    throw std::invalid_argument("finalize: size mismatch");
  }
  check_distribution(prediction_p);
  return next_;
}

}  // namespace oms
