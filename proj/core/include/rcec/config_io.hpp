#pragma once

// Flat "key = value" text form of EstimatorConfig. Blank lines and lines
// starting with '#' are ignored. Keys:
//   L, rule, folds, grid_size, enforce_pd, threshold_diagonal, seed,
//   estimator, block_count, shuffle_blocks

#include <string>
#include <string_view>

#include "rcec/tuning.hpp"

namespace rcec {

std::string to_key_values(const EstimatorConfig& config);

// Applies every setting in `text` on top of `base`. Throws
// std::invalid_argument naming the offending line.
EstimatorConfig parse_key_values(std::string_view text, EstimatorConfig base = {});

// Applies one setting. Throws std::invalid_argument on unknown keys or bad values.
void apply_setting(EstimatorConfig& config, std::string_view key, std::string_view value);

EstimatorConfig load_config_file(const std::string& path, EstimatorConfig base = {});

}  // namespace rcec
