#include "rcec/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("invalid boolean '" + std::string(value) + "' for " + std::string(key));
}

}  // namespace

std::string to_key_values(const EstimatorConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "L = " << config.L << '\n'
     << "rule = " << config.rule.to_string() << '\n'
     << "folds = " << config.folds << '\n'
     << "grid_size = " << config.grid_size << '\n'
     << "enforce_pd = " << (config.enforce_pd ? "true" : "false") << '\n'
     << "threshold_diagonal = " << (config.threshold_diagonal ? "true" : "false") << '\n'
     << "seed = " << config.seed << '\n'
     << "estimator = " << to_string(config.kind) << '\n'
     << "block_count = " << config.block_count << '\n'
     << "shuffle_blocks = " << (config.shuffle_blocks ? "true" : "false") << '\n';
  return os.str();
}

void apply_setting(EstimatorConfig& config, std::string_view key, std::string_view value) {
  if (key == "L") {
    config.L = parse_number<double>(key, value);
  } else if (key == "rule") {
    config.rule = ThresholdRule::parse(value);
  } else if (key == "folds") {
    config.folds = parse_number<std::size_t>(key, value);
  } else if (key == "grid_size") {
    config.grid_size = parse_number<std::size_t>(key, value);
  } else if (key == "enforce_pd") {
    config.enforce_pd = parse_bool(key, value);
  } else if (key == "threshold_diagonal") {
    config.threshold_diagonal = parse_bool(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "estimator") {
    config.kind = parse_estimator_kind(value);
  } else if (key == "block_count") {
    config.block_count = parse_number<std::size_t>(key, value);
  } else if (key == "shuffle_blocks") {
    config.shuffle_blocks = parse_bool(key, value);
  } else {
    throw std::invalid_argument("unknown configuration key '" + std::string(key) + "'");
  }
}

EstimatorConfig parse_key_values(std::string_view text, EstimatorConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

EstimatorConfig load_config_file(const std::string& path, EstimatorConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_key_values(buffer.str(), base);
}

}  // namespace rcec
