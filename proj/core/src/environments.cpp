#include "oms/environments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oms {

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::abrupt: return "abrupt";
    case Scenario::incremental: return "incremental";
    case Scenario::corruption: return "corruption";
    case Scenario::adversarial: return "adversarial";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "abrupt") return Scenario::abrupt;
  if (name == "incremental") return Scenario::incremental;
  if (name == "corruption") return Scenario::corruption;
  if (name == "adversarial") return Scenario::adversarial;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<double> expert_angles(int num_experts) {
  if (num_experts < 1) {
    throw std::invalid_argument("expert_angles: need at least one expert");
  }
  std::vector<double> angles(static_cast<std::size_t>(num_experts));
  for (int i = 0; i < num_experts; ++i) {
    angles[static_cast<std::size_t>(i)] = 360.0 * i / num_experts;
  }
  return angles;
}

double angular_loss(double theta_deg, double angle_deg) {
  double d = std::fmod(std::abs(theta_deg - angle_deg), 360.0);
  if (d > 180.0) d = 360.0 - d;
  return d / 180.0;
}

std::pair<std::vector<double>, std::vector<double>> adversarial_round(int) {
  return {{1.0, 0.5}, {0.0, 0.5}};
}

namespace {

std::uint64_t stream_id(Scenario s, std::uint64_t sub) {
  return 16u * static_cast<std::uint64_t>(s) + sub;
}

}  // namespace

DriftTrajectory::DriftTrajectory(const DriftConfig& config) : config_(config) {
  if (config.horizon < 1) {
    throw std::invalid_argument("DriftTrajectory: horizon must be positive");
  }
  if (config.scenario == Scenario::adversarial && config.num_experts != 2) {
    throw std::invalid_argument("DriftTrajectory: adversarial stream has two experts");
  }
  if (config.num_experts < 1) {
    throw std::invalid_argument("DriftTrajectory: need at least one expert");
  }
  if (config.drift_period < 1) {
    throw std::invalid_argument("DriftTrajectory: drift period must be positive");
  }

  const int t_max = config.horizon;
  thetas_.resize(static_cast<std::size_t>(t_max), 0.0);

  const CounterRng init_rng(config.seed, stream_id(config.scenario, 0));
  const CounterRng segment_rng(config.seed, stream_id(config.scenario, 1));
  const CounterRng coin_rng(config.seed, stream_id(config.scenario, 2));
  const CounterRng angle_rng(config.seed, stream_id(config.scenario, 3));

  switch (config.scenario) {
    case Scenario::abrupt:
      for (int t = 1; t <= t_max; ++t) {
        const std::uint64_t segment = static_cast<std::uint64_t>(t - 1) /
                                      static_cast<std::uint64_t>(config.drift_period);
        thetas_[static_cast<std::size_t>(t - 1)] =
            segment_rng.uniform_range(segment, 0.0, 360.0);
      }
      break;
    case Scenario::incremental: {
      const double theta1 = init_rng.uniform_range(0, 0.0, 360.0);
      for (int t = 1; t <= t_max; ++t) {
        thetas_[static_cast<std::size_t>(t - 1)] =
            std::fmod(theta1 + config.drift_rate * (t - 1), 360.0);
      }
      break;
    }
    case Scenario::corruption:
      for (int t = 1; t <= t_max; ++t) {
        const bool corrupt =
            coin_rng.uniform(static_cast<std::uint64_t>(t)) < config.corruption_prob;
        thetas_[static_cast<std::size_t>(t - 1)] =
            corrupt ? angle_rng.uniform_range(static_cast<std::uint64_t>(t), 0.0, 360.0)
                    : 0.0;  // fixed base rotation
      }
      break;
    case Scenario::adversarial:
      break;  // thetas stay zero; losses are fixed below
  }

  const std::vector<double> angles = expert_angles(config.num_experts);
  const CounterRng noise_rng(config.seed, stream_id(config.scenario, 4));
  losses_.resize(static_cast<std::size_t>(t_max));
  for (int t = 1; t <= t_max; ++t) {
    auto& row = losses_[static_cast<std::size_t>(t - 1)];
    if (config.scenario == Scenario::adversarial) {
      row = adversarial_round(t).first;
      continue;
    }
    row.resize(static_cast<std::size_t>(config.num_experts));
    for (int i = 0; i < config.num_experts; ++i) {
      double v = angular_loss(thetas_[static_cast<std::size_t>(t - 1)],
                              angles[static_cast<std::size_t>(i)]);
      if (config.noise_std > 0.0) {
        const std::uint64_t counter =
            static_cast<std::uint64_t>(t - 1) * static_cast<std::uint64_t>(config.num_experts) +
            static_cast<std::uint64_t>(i);
        v += config.noise_std * (2.0 * noise_rng.uniform(counter) - 1.0);
        v = std::min(1.0, std::max(0.0, v));
      }
      row[static_cast<std::size_t>(i)] = v;
    }
  }
}

double DriftTrajectory::theta(int t) const {
  return thetas_.at(static_cast<std::size_t>(t - 1));
}

const std::vector<double>& DriftTrajectory::round_losses(int t) const {
  return losses_.at(static_cast<std::size_t>(t - 1));
}

double DriftTrajectory::loss_for_angle(int t, double angle_deg) const {
  if (imported_) {
    throw std::logic_error("DriftTrajectory: imported streams carry no concept angles");
  }
  if (config_.scenario == Scenario::adversarial) {
    throw std::logic_error("DriftTrajectory: adversarial stream has fixed losses");
  }
  return angular_loss(theta(t), angle_deg);
}

void DriftTrajectory::export_stream(std::ostream& out) const {
  out << "# oms-stream v1\n";
  out << "scenario " << to_string(config_.scenario) << "\n";
  out << "horizon " << config_.horizon << "\n";
  out << "experts " << config_.num_experts << "\n";
  out << "seed " << config_.seed << "\n";
  char buf[32];
  for (int t = 1; t <= config_.horizon; ++t) {
    out << t;
    std::snprintf(buf, sizeof buf, " %.17g", theta(t));
    out << buf;
    for (double v : round_losses(t)) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out << buf;
    }
    out << "\n";
  }
}

DriftTrajectory DriftTrajectory::import_stream(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# oms-stream", 0) != 0) {
    throw std::invalid_argument("import_stream: missing stream header");
  }
  DriftTrajectory traj;
  traj.imported_ = true;
  std::string key;
  for (int field = 0; field < 4; ++field) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("import_stream: truncated header");
    }
    std::istringstream ls(line);
    ls >> key;
    if (key == "scenario") {
      std::string name;
      ls >> name;
      traj.config_.scenario = parse_scenario(name);
    } else if (key == "horizon") {
      ls >> traj.config_.horizon;
    } else if (key == "experts") {
      ls >> traj.config_.num_experts;
    } else if (key == "seed") {
      ls >> traj.config_.seed;
    } else {
      throw std::invalid_argument("import_stream: unexpected header field " + key);
    }
  }
  if (traj.config_.horizon < 1 || traj.config_.num_experts < 1) {
    throw std::invalid_argument("import_stream: bad dimensions");
  }
  traj.thetas_.resize(static_cast<std::size_t>(traj.config_.horizon));
  traj.losses_.resize(static_cast<std::size_t>(traj.config_.horizon));
  for (int t = 1; t <= traj.config_.horizon; ++t) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("import_stream: truncated body");
    }
    std::istringstream ls(line);
    int tt = 0;
    ls >> tt;
    if (tt != t) throw std::invalid_argument("import_stream: round index mismatch");
    ls >> traj.thetas_[static_cast<std::size_t>(t - 1)];
    auto& row = traj.losses_[static_cast<std::size_t>(t - 1)];
    row.resize(static_cast<std::size_t>(traj.config_.num_experts));
    for (int i = 0; i < traj.config_.num_experts; ++i) {
      if (!(ls >> row[static_cast<std::size_t>(i)])) {
        throw std::invalid_argument("import_stream: short loss row");
      }
    }
  }
  return traj;
}

int schedule_window_chunks(int chunk_count) {
  if (chunk_count < 1) {
    throw std::invalid_argument("schedule_window_chunks: chunk count must be positive");
  }
  int n = 0;
  int k = chunk_count;
  while ((k & 1) == 0) {
    k >>= 1;
    ++n;
  }
  return k == 1 ? (1 << n) : (1 << (n + 1));
}

std::vector<int> pool_schedule_events(const PoolSchedule& schedule, int chunk_count) {
  if (schedule.chunk_len < 1 || schedule.max_pool < 2) {
    throw std::invalid_argument("pool_schedule_events: bad schedule");
  }
  if (chunk_count < 1) {
    throw std::invalid_argument("pool_schedule_events: chunk count must be positive");
  }
  std::vector<int> windows(static_cast<std::size_t>(chunk_count));
  for (int c = 1; c <= chunk_count; ++c) {
    windows[static_cast<std::size_t>(c - 1)] = schedule_window_chunks(c);
  }
  return windows;
}

double window_mean_angle(const DriftTrajectory& traj, const PoolSchedule& schedule,
                         int chunk_count) {
  const int window = schedule_window_chunks(chunk_count);
  const int first_chunk = std::max(1, chunk_count - window + 1);
  const int t_begin = (first_chunk - 1) * schedule.chunk_len + 1;
  const int t_end = std::min(chunk_count * schedule.chunk_len, traj.horizon());
  double sx = 0.0, sy = 0.0;
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  for (int t = t_begin; t <= t_end; ++t) {
    sx += std::cos(traj.theta(t) * kDegToRad);
    sy += std::sin(traj.theta(t) * kDegToRad);
  }
  double deg = std::atan2(sy, sx) / kDegToRad;
  if (deg < 0.0) deg += 360.0;
  return deg;
}

}  // namespace oms
