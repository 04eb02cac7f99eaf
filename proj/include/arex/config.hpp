#ifndef AREX_CONFIG_HPP
#define AREX_CONFIG_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "arex/bootstrap.hpp"
#include "arex/corpus.hpp"

namespace arex {

// Flat key = value run configuration. Lines starting with # are
// comments; values may be quoted. Paths are resolved relative to the
// config file. Recognized keys:
//
//   relation        label for reports
//   seeds           path to a seed TSV (e1<TAB>e2 per line)
//   provider        "snapshot" (default) or "live"
//   snapshot        path to the JSONL snapshot corpus
//   normalization   optional path to a normalization-table JSON
//   ta_marbuta_to_ha  true (default) folds ة->ه, false folds ه->ة
//   threshold, max_iterations, top_k
//   prefix_max, middle_max, suffix_max
//   e1_max_words, e2_max_words
//   live.base_url, live.user_agent, live.timeout_ms,
//   live.proxy_host, live.proxy_port, live.min_interval_ms
//
// Command-line overrides use the same keys; unknown keys are rejected.
class RunSettings {
 public:
  static RunSettings load(const std::filesystem::path& config_file);

  void apply_override(const std::string& key, const std::string& value);

  // Builds the engine configuration (loads seeds and the normalization
  // table) and the provider it should run against.
  RunConfig make_run_config() const;
  std::unique_ptr<SearchProvider> make_provider() const;

  std::string get(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;

 private:
  std::filesystem::path base_dir_;
  std::map<std::string, std::string> values_;
};

std::vector<InstancePair> load_seeds_tsv(const std::filesystem::path& file);

}  // namespace arex

#endif  // AREX_CONFIG_HPP
