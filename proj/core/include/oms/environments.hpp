#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "oms/rng.hpp"

namespace oms {

enum class Scenario { abrupt, incremental, corruption, adversarial };

const char* to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

/// Seeded synthetic drift stream over angle-specialist experts. Losses are
/// the normalized circular distance d(theta_t, angle_i) / 180 in [0, 1].
///
/// Random draws come from CounterRng sub-streams so trajectories are
/// reproducible from (scenario, seed) alone. Stream ids (offset by
/// 16 * scenario):
///   0: initial concept angle (counter 0)
///   1: abrupt segment target angles (counter = segment index, segment 0
///      is the initial concept)
///   2: corruption coins (counter = round)
///   3: corruption replacement angles (counter = round)
///   4: optional additive loss noise (counter = (round-1)*K + expert)
struct DriftConfig {
  Scenario scenario = Scenario::abrupt;
  int num_experts = 100;
  int horizon = 400;
  std::uint64_t seed = 0;
  int drift_period = 100;        // abrupt: rounds per concept
  double drift_rate = 1.0;       // incremental: degrees per round
  double corruption_prob = 0.1;  // corruption: per-round replacement chance
  double noise_std = 0.0;        // optional additive noise, off by default
};

/// angle(i) = 360 (i-1) / K for i = 1..K (returned 0-based).
std::vector<double> expert_angles(int num_experts);

/// Normalized circular distance in [0, 1].
double angular_loss(double theta_deg, double angle_deg);

/// Theorem-style two-expert instance: loss (1, 0.5) and prediction
/// (0, 0.5) at every round; expert 2 is optimal, the prediction misleads
/// on expert 1.
std::pair<std::vector<double>, std::vector<double>> adversarial_round(int round);

class DriftTrajectory {
 public:
  explicit DriftTrajectory(const DriftConfig& config);

  const DriftConfig& config() const { return config_; }
  int horizon() const { return config_.horizon; }
  int num_experts() const { return config_.num_experts; }

  /// Concept angle at round t (1-based). Zero for adversarial streams.
  double theta(int t) const;

  /// Loss vector for the fixed specialist pool at round t (1-based).
  const std::vector<double>& round_losses(int t) const;

  /// Loss of an arbitrary-angle expert at round t; unavailable on
  /// imported streams.
  double loss_for_angle(int t, double angle_deg) const;

  /// Self-describing text export (one row per round: t, theta, losses).
  void export_stream(std::ostream& out) const;
  static DriftTrajectory import_stream(std::istream& in);

  bool imported() const { return imported_; }

 private:
  DriftTrajectory() = default;

  DriftConfig config_;
  std::vector<double> thetas_;               // [T]
  std::vector<std::vector<double>> losses_;  // [T][K]
  bool imported_ = false;
};

/// Dynamic-pool growth schedule: one new expert per completed chunk.
struct PoolSchedule {
  int chunk_len = 10;
  int max_pool = 100;
};

/// Training-window length in chunks for the expert added after
/// chunk_count chunks: with chunk_count = k 2^n (k odd), the window is
/// 2^(n+1) chunks, or 2^n in the special case k = 1.
int schedule_window_chunks(int chunk_count);

/// Window lengths for every chunk boundary 1..chunk_count.
std::vector<int> pool_schedule_events(const PoolSchedule& schedule, int chunk_count);

/// Circular mean (degrees in [0, 360)) of the concept over the rounds of
/// the window ending at chunk chunk_count; this is the "trained" angle of
/// the scheduled expert.
double window_mean_angle(const DriftTrajectory& traj, const PoolSchedule& schedule,
                         int chunk_count);

}  // namespace oms
