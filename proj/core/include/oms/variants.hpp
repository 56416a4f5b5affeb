#pragma once

#include <memory>
#include <string>

#include "oms/learner.hpp"
#include "oms/optimism.hpp"

namespace oms {

/// Algorithm variants compared by the harness:
///  - proposed: full safeguarded multi-scale learner with EMA optimism
///  - msmwc: single-layer multiplicative-weights baseline, realized as the
///    same learner with the grid truncated to { j : 32 eta(j) <= 1 } and
///    the safeguard disabled (penalties are not even tracked)
///  - unsafeguarded: full grid with the active set pinned to [M]
///  - *_no_optimism: zero predictor ablations
enum class Variant {
  proposed,
  msmwc,
  unsafeguarded,
  proposed_no_optimism,
  msmwc_no_optimism,
};

const char* to_string(Variant v);
Variant parse_variant(const std::string& name);

struct VariantSpec {
  Variant name = Variant::proposed;
  LearnerConfig base;
};

struct VariantBundle {
  LearnerConfig config;
  bool use_optimism = true;
};

/// Largest grid index count whose rates satisfy 32 eta(j) <= 1, i.e. the
/// a-priori stability constraint under unit-bounded prediction errors.
int msmwc_grid_size(std::int64_t horizon, int full_size);

/// Resolves a variant into a learner configuration plus predictor choice.
/// spec.base.horizon may be zero, in which case `horizon` is used.
VariantBundle make_variant(const VariantSpec& spec, std::int64_t horizon);

std::unique_ptr<LossPredictor> make_predictor(const VariantBundle& bundle,
                                              double ema_step = 0.5);

}  // namespace oms
