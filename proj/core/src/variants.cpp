#include "oms/variants.hpp"

#include <stdexcept>

namespace oms {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::proposed: return "proposed";
    case Variant::msmwc: return "msmwc";
    case Variant::unsafeguarded: return "unsafeguarded";
    case Variant::proposed_no_optimism: return "proposed_no_optimism";
    case Variant::msmwc_no_optimism: return "msmwc_no_optimism";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "proposed") return Variant::proposed;
  if (name == "msmwc") return Variant::msmwc;
  if (name == "unsafeguarded") return Variant::unsafeguarded;
  if (name == "proposed_no_optimism") return Variant::proposed_no_optimism;
  if (name == "msmwc_no_optimism") return Variant::msmwc_no_optimism;
  throw std::invalid_argument("unknown variant: " + name);
}

int msmwc_grid_size(std::int64_t horizon, int full_size) {
  // The (count+1)-th rate qualifies iff 32 * 2^(count+1) / (16 T) <= 1,
  // i.e. 2^(count+2) <= T; the boundary rate with 32 eta = 1 is kept.
  int count = 0;
  double next = 4.0;  // 2^(count+2)
  while (count < full_size && next <= static_cast<double>(horizon)) {
    next *= 2.0;
    ++count;
  }
  return count;
}

VariantBundle make_variant(const VariantSpec& spec, std::int64_t horizon) {
  VariantBundle bundle;
  bundle.config = spec.base;
  if (bundle.config.horizon == 0) bundle.config.horizon = horizon;
  if (bundle.config.horizon < 2) {
    throw std::invalid_argument("make_variant: horizon must be >= 2");
  }

  const int full =
      bundle.config.grid_size
          ? *bundle.config.grid_size
          : LearningRateGrid::theoretical_size(bundle.config.horizon);

  switch (spec.name) {
    case Variant::proposed:
      break;
    case Variant::msmwc:
    case Variant::msmwc_no_optimism: {
      const int truncated = msmwc_grid_size(bundle.config.horizon, full);
      if (truncated < 1) {
        throw std::invalid_argument("make_variant: horizon too small for msmwc grid");
      }
      bundle.config.grid_size = truncated;
      bundle.config.safeguard_enabled = false;
      bundle.config.track_penalties = false;
      break;
    }
    case Variant::unsafeguarded:
      bundle.config.safeguard_enabled = false;
      break;
    case Variant::proposed_no_optimism:
      break;
  }
  bundle.use_optimism =
      spec.name == Variant::proposed || spec.name == Variant::msmwc ||
      spec.name == Variant::unsafeguarded;
  return bundle;
}

std::unique_ptr<LossPredictor> make_predictor(const VariantBundle& bundle,
                                              double ema_step) {
  if (bundle.use_optimism) return std::make_unique<EmaPredictor>(ema_step);
  return std::make_unique<ZeroPredictor>();
}

}  // namespace oms
