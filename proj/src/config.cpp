#include "arex/config.hpp"

#include <array>
#include <fstream>

#include "arex/errors.hpp"
#include "arex/strings.hpp"

namespace arex {

namespace {

constexpr std::array kKnownKeys = {
    "relation",      "seeds",          "provider",
    "snapshot",      "normalization",  "ta_marbuta_to_ha",
    "threshold",     "max_iterations", "top_k",
    "prefix_max",    "middle_max",     "suffix_max",
    "e1_max_words",  "e2_max_words",   "live.base_url",
    "live.user_agent", "live.timeout_ms", "live.proxy_host",
    "live.proxy_port", "live.min_interval_ms",
};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys) {
    if (key == k) return true;
  }
  return false;
}

std::string unquote(std::string_view value) {
  if (value.size() >= 2 &&
      ((value.front() == '"' && value.back() == '"') ||
       (value.front() == '\'' && value.back() == '\''))) {
    return std::string(value.substr(1, value.size() - 2));
  }
  return std::string(value);
}

}  // namespace

RunSettings RunSettings::load(const std::filesystem::path& config_file) {
  std::ifstream in(config_file);
  if (!in) throw ConfigError("cannot open config: " + config_file.string());
  RunSettings settings;
  settings.base_dir_ = config_file.parent_path();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(config_file.string() + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key{trim(stripped.substr(0, eq))};
    const std::string value = unquote(trim(stripped.substr(eq + 1)));
    if (!known_key(key)) {
      throw ConfigError(config_file.string() + ":" + std::to_string(line_no) +
                        ": unknown key \"" + key + "\"");
    }
    settings.values_[key] = value;
  }
  return settings;
}

void RunSettings::apply_override(const std::string& key,
                                 const std::string& value) {
  if (!known_key(key)) {
    throw ConfigError("unknown override key \"" + key + "\"");
  }
  values_[key] = value;
}

std::string RunSettings::get(const std::string& key,
                             const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

int RunSettings::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ConfigError("key \"" + key + "\" needs an integer, got \"" +
                      it->second + "\"");
  }
}

RunConfig RunSettings::make_run_config() const {
  RunConfig config;
  config.relation_label = get("relation", "");
  config.threshold = get_int("threshold", 100);
  config.max_iterations = get_int("max_iterations", 10);
  config.top_k = get_int("top_k", 20);
  config.context.prefix_max =
      static_cast<std::size_t>(get_int("prefix_max", 2));
  config.context.middle_max =
      static_cast<std::size_t>(get_int("middle_max", 3));
  config.context.suffix_max =
      static_cast<std::size_t>(get_int("suffix_max", 3));
  config.slots.e1_max = static_cast<std::size_t>(get_int("e1_max_words", 3));
  config.slots.e2_max = static_cast<std::size_t>(get_int("e2_max_words", 4));

  const std::string table_file = get("normalization", "");
  if (!table_file.empty()) {
    config.table = NormalizationTable::load(base_dir_ / table_file);
  } else if (get("ta_marbuta_to_ha", "true") == "false") {
    config.table = NormalizationTable::paper_folding();
  }

  const std::string seeds_file = get("seeds", "");
  if (seeds_file.empty()) throw ConfigError("config needs a \"seeds\" path");
  config.seed_pairs = load_seeds_tsv(base_dir_ / seeds_file);
  return config;
}

std::unique_ptr<SearchProvider> RunSettings::make_provider() const {
  const std::string kind = get("provider", "snapshot");
  if (kind == "snapshot") {
    const std::string snapshot = get("snapshot", "");
    if (snapshot.empty()) {
      throw ConfigError("snapshot provider needs a \"snapshot\" path");
    }
    return std::make_unique<SnapshotProvider>(
        SnapshotStore::load(base_dir_ / snapshot));
  }
  if (kind == "live") {
    LiveConfig live;
    live.base_url = get("live.base_url", "");
    live.user_agent = get("live.user_agent", live.user_agent);
    live.timeout_ms = get_int("live.timeout_ms", live.timeout_ms);
    live.proxy_host = get("live.proxy_host", "");
    live.proxy_port = get_int("live.proxy_port", 0);
    live.min_interval_ms = get_int("live.min_interval_ms", 0);
    return std::make_unique<LiveProvider>(std::move(live));
  }
  throw ConfigError("unknown provider \"" + kind + "\"");
}

std::vector<InstancePair> load_seeds_tsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open seed file: " + file.string());
  std::vector<InstancePair> seeds;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, '\t');
    if (cells.size() < 2) {
      throw ConfigError(file.string() + ":" + std::to_string(line_no) +
                        ": expected e1<TAB>e2");
    }
    InstancePair pair;
    pair.e1 = cells[0];
    pair.e2 = cells[1];
    pair.first_seen = 0;
    seeds.push_back(std::move(pair));
  }
  return seeds;
}

}  // namespace arex
