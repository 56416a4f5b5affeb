#pragma once

#include <unordered_map>
#include <vector>

#include "oms/weights.hpp"

namespace oms {

/// Produces the per-round loss prediction. predict() returns the
/// decision-time surrogate m'(i) used for the optimistic solve; after the
/// loss is observed, finalize() returns the full prediction
/// m(i) = m'(i) + <loss - m', p> used for residuals, corrections,
/// penalties, and clipping. The two calls must alternate, once per round.
class LossPredictor {
 public:
  virtual ~LossPredictor() = default;
  virtual std::vector<double> predict(const std::vector<ExpertId>& experts_now) = 0;
  virtual std::vector<double> finalize(const std::vector<double>& observed_loss,
                                       const std::vector<double>& prediction_p) = 0;
};

/// Half-step exponential moving average per expert:
///   m'(i) <- (1-step) m'(i) + step * loss(i)      for continuing experts,
/// strictly new experts start at the running baseline
///   b <- (1-step) b + step * <loss, p>,
/// and experts absent this round keep their surrogate unchanged.
/// The centering term in finalize() makes <loss - m, p> vanish exactly.
class EmaPredictor : public LossPredictor {
 public:
  explicit EmaPredictor(double step = 0.5);

  std::vector<double> predict(const std::vector<ExpertId>& experts_now) override;
  std::vector<double> finalize(const std::vector<double>& observed_loss,
                               const std::vector<double>& prediction_p) override;

  double baseline() const { return baseline_; }
  double surrogate(ExpertId id) const { return surrogate_.at(id); }

 private:
  double step_;
  double baseline_ = 0.0;
  std::unordered_map<ExpertId, double> surrogate_;
  std::vector<ExpertId> current_;
  std::vector<double> current_m_prime_;
  bool awaiting_finalize_ = false;
};

/// m = 0 every round; reduces the learner to its non-optimistic ablation.
class ZeroPredictor : public LossPredictor {
 public:
  std::vector<double> predict(const std::vector<ExpertId>& experts_now) override;
  std::vector<double> finalize(const std::vector<double>& observed_loss,
                               const std::vector<double>& prediction_p) override;

 private:
  std::size_t current_size_ = 0;
};

/// Replays an externally supplied prediction vector (adversarial streams);
/// the full prediction equals the supplied one, with no centering shift.
class ExternalPredictor : public LossPredictor {
 public:
  void set_next(std::vector<double> m) { next_ = std::move(m); }

  std::vector<double> predict(const std::vector<ExpertId>& experts_now) override;
  std::vector<double> finalize(const std::vector<double>& observed_loss,
                               const std::vector<double>& prediction_p) override;

 private:
  std::vector<double> next_;
};

}  // namespace oms
