#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "oms/learner.hpp"

namespace oms {

/// Running loss-scale state for the clipping wrapper. committed is the
/// scale the inner algorithm was initialized for; running tracks
/// max_s ||loss_s - m_s||_inf.
struct ClipState {
  double committed = 1.0;  // B~
  double running = 0.0;    // B_t
  double initial = 1.0;    // B_0
  double rate = 2.0;       // R
  int restarts = 0;
};

struct ClipResult {
  std::vector<double> surrogate;
  bool restart_needed = false;
};

ClipState make_clip_state(double initial_scale, double rate);

/// One clipping step: B_t = max(B_{t-1}, ||loss - m||_inf), the surrogate
/// is m + (B_{t-1}/B_t)(loss - m), and a restart fires when B_t exceeds
/// the committed scale, which then becomes max(R * B~, B_t). The fed error
/// ||surrogate - m||_inf never exceeds B_{t-1}.
ClipResult clip_loss(ClipState& state, const std::vector<double>& loss,
                     const std::vector<double>& m);

/// Builds the inner learner for a committed loss range [0, scale]. When
/// unit_range is true the wrapper divides predictions and surrogate losses
/// by the committed scale before feeding the learner (for inner algorithms
/// that assume [0, 1] losses); otherwise values pass through unchanged.
struct InnerLearner {
  std::unique_ptr<Learner> learner;
  bool unit_range = false;
};
using InnerFactory =
    std::function<InnerLearner(double scale, const std::vector<ExpertId>& experts)>;

/// Clipping wrapper around a learner. Exposes the same begin/end round
/// interface; on a restart round the surrogate loss is fed to the old
/// instance first and the inner learner is rebuilt afterwards for the new
/// committed range, continuing the stream.
class ScaledLearner {
 public:
  ScaledLearner(InnerFactory factory, double initial_scale, double rate,
                const std::vector<ExpertId>& initial_experts);

  RoundOutput begin_round(const std::vector<ExpertId>& experts_now,
                          const std::vector<double>& decision_prediction);
  void end_round(const std::vector<double>& observed_loss,
                 const std::vector<double>& full_prediction, const RoundOutput& out);
  void remove_experts(const std::vector<ExpertId>& ids);

  const ClipState& clip_state() const { return clip_; }
  const Learner& inner() const { return *inner_.learner; }
  Learner& inner() { return *inner_.learner; }
  double last_fed_error() const { return last_fed_error_; }

 private:
  std::vector<double> to_inner(const std::vector<double>& v) const;

  InnerFactory factory_;
  InnerLearner inner_;
  ClipState clip_;
  std::vector<ExpertId> current_experts_;
  double last_fed_error_ = 0.0;
};

}  // namespace oms
