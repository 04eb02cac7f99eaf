// Command-line front end: bootstrap runs, evaluation against gold
// judgments, artifact inspection, and snapshot corpus construction.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arex/bootstrap.hpp"
#include "arex/config.hpp"
#include "arex/corpus.hpp"
#include "arex/errors.hpp"
#include "arex/eval.hpp"
#include "arex/strings.hpp"

namespace fs = std::filesystem;

namespace {

// Fixed exit codes per error class.
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;
constexpr int kProviderUnavailable = 3;
constexpr int kIoError = 4;
constexpr int kMissingJudgment = 5;
constexpr int kMalformedSnapshot = 6;

// Published tables round precision/recall half-up at two decimals but
// truncate the F-measure; the printed row follows that convention while
// metrics.json keeps full precision.
double round2(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }
double trunc2(double x) { return std::floor(x * 100.0 + 1e-9) / 100.0; }

std::string show2(double x) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << x;
  std::string s = out.str();
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void apply_overrides(arex::RunSettings& settings,
                     const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw arex::ConfigError("override \"" + item + "\" is not key=value");
    }
    settings.apply_override(std::string(arex::trim(item.substr(0, eq))),
                            std::string(arex::trim(item.substr(eq + 1))));
  }
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& overrides,
            const std::string& out_dir, bool resume_run) {
  arex::RunSettings settings = arex::RunSettings::load(config_path);
  apply_overrides(settings, overrides);
  arex::RunConfig config = settings.make_run_config();
  config.state_dir = out_dir;
  const auto provider = settings.make_provider();

  const arex::RunResult result = resume_run
                                     ? arex::resume(config, *provider)
                                     : arex::run(config, *provider);

  for (const arex::IterationReport& r : result.reports) {
    std::cout << "iteration " << r.iteration << ": patterns "
              << r.patterns_total << " detecting " << r.patterns_detecting
              << " | instances new " << r.instances_new << " repeated "
              << r.instances_repeated << " total " << r.instances_cumulative
              << "\n";
  }
  const int total = result.reports.empty()
                        ? 0
                        : result.reports.back().instances_cumulative;
  std::cout << "done: " << result.reports.size() << " iteration(s), "
            << result.patterns.size() << " pattern(s), " << total
            << " extracted instance(s) -> " << out_dir << "\n";
  return kOk;
}

int cmd_eval(const std::string& run_dir, const std::string& gold_path,
             const std::string& undetected_path,
             const std::string& config_path) {
  arex::NormalizationTable table = arex::NormalizationTable::defaults();
  std::string relation;
  if (!config_path.empty()) {
    arex::RunSettings settings = arex::RunSettings::load(config_path);
    const arex::RunConfig config = settings.make_run_config();
    table = config.table;
    relation = config.relation_label;
  }

  fs::path gold_file = gold_path;
  fs::path undetected_file = undetected_path;
  if (fs::is_directory(gold_file)) {
    if (undetected_file.empty()) undetected_file = gold_file / "undetected.tsv";
    gold_file = gold_file / "gold.tsv";
  } else if (undetected_file.empty()) {
    undetected_file = gold_file.parent_path() / "undetected.tsv";
  }
  const arex::GoldSet gold = arex::GoldSet::load(gold_file, undetected_file, table);

  const fs::path dir = run_dir;
  std::ifstream instances_in(dir / "instances.tsv");
  if (!instances_in) {
    throw arex::IoError("missing instances.tsv in " + dir.string());
  }
  const arex::InstanceTable instances = arex::read_instances_tsv(instances_in);

  std::vector<arex::Pattern> patterns;
  std::vector<int> first_iteration;
  {
    std::ifstream patterns_in(dir / "patterns.tsv");
    if (patterns_in) patterns = arex::read_patterns_tsv(patterns_in);
    std::ifstream meta_in(dir / "patterns_meta.json");
    if (meta_in) {
      nlohmann::json meta;
      meta_in >> meta;
      for (const auto& item : meta) {
        first_iteration.push_back(item.value("first_iteration", 1));
      }
    }
  }
  first_iteration.resize(patterns.size(), 1);

  // Attribute each judged instance to the pattern that extracted it.
  const std::vector<arex::InstancePair> extracted = instances.extracted_pairs();
  const arex::EvalCounts counts = arex::score_instances(extracted, gold);
  for (const arex::InstanceRow& row : instances.rows()) {
    if (row.pattern_id <= 0 ||
        row.pattern_id > static_cast<int>(patterns.size())) {
      continue;
    }
    const auto it = gold.judgments.find(row.pair.key());
    if (it == gold.judgments.end()) continue;
    auto& stats = patterns[static_cast<std::size_t>(row.pattern_id - 1)].stats;
    if (it->second) {
      ++stats.positive;
    } else {
      ++stats.negative;
    }
  }
  const arex::Metrics metrics = arex::compute_metrics(counts);
  const arex::ConfidenceSummary averages =
      arex::average_confidence(patterns, first_iteration);

  nlohmann::json doc;
  doc["relation"] = relation;
  doc["T"] = counts.total;
  doc["Nc"] = counts.n_correct;
  doc["I"] = counts.n_incorrect;
  doc["Uc"] = counts.n_undetected;
  doc["precision"] = metrics.precision;
  doc["recall"] = metrics.recall;
  doc["f_measure"] = metrics.f_measure;
  nlohmann::json per_pattern = nlohmann::json::array();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    nlohmann::json entry;
    entry["pattern_id"] = static_cast<int>(i) + 1;
    entry["positive"] = patterns[i].stats.positive;
    entry["negative"] = patterns[i].stats.negative;
    if (const auto conf = arex::maybe_confidence(patterns[i])) {
      entry["confidence"] = *conf;
      entry["reliable"] = *conf >= 0.5;
    } else {
      entry["confidence"] = nullptr;
      entry["reliable"] = nullptr;
    }
    per_pattern.push_back(std::move(entry));
  }
  doc["per_pattern"] = per_pattern;
  nlohmann::json avg;
  avg["per_iteration"] = nlohmann::json::array();
  for (const auto& [iter, mean] : averages.per_iteration) {
    avg["per_iteration"].push_back({{"iteration", iter}, {"mean", mean}});
  }
  avg["mean_of_means"] = averages.mean_of_means;
  avg["pooled"] = averages.pooled;
  doc["avg_confidence"] = avg;

  std::ofstream out(dir / "metrics.json", std::ios::binary);
  if (!out) throw arex::IoError("cannot write metrics.json");
  out << doc.dump(2) << "\n";

  std::cout << show2(round2(metrics.precision)) << " "
            << show2(round2(metrics.recall)) << " "
            << show2(trunc2(metrics.f_measure)) << "\n";
  return kOk;
}

int cmd_inspect(const std::string& run_dir, bool show_patterns,
                bool show_instances, int top) {
  const fs::path dir = run_dir;
  const bool all = !show_patterns && !show_instances;

  if (all || show_patterns) {
    std::ifstream in(dir / "patterns.tsv");
    if (!in) throw arex::IoError("missing patterns.tsv in " + dir.string());
    const std::vector<arex::Pattern> patterns = arex::read_patterns_tsv(in);
    std::cout << "patterns (" << patterns.size() << "):\n";
    int shown = 0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (top > 0 && shown >= top) break;
      const arex::Pattern& p = patterns[i];
      const auto field = [](const arex::OptWords& f) {
        return f ? arex::join(*f, " ") : std::string("∅");
      };
      std::cout << "  #" << (i + 1) << " [" << field(p.prefix) << "] e"
                << (p.e1_first ? "1" : "2") << " [" << field(p.middle)
                << "] e" << (p.e1_first ? "2" : "1") << " ["
                << field(p.suffix) << "] x" << p.repetition << "\n";
      ++shown;
    }
  }
  if (all || show_instances) {
    std::ifstream in(dir / "instances.tsv");
    if (!in) throw arex::IoError("missing instances.tsv in " + dir.string());
    const arex::InstanceTable table = arex::read_instances_tsv(in);
    std::cout << "instances (" << table.size() << "):\n";
    int shown = 0;
    for (const arex::InstanceRow& row : table.rows()) {
      if (top > 0 && shown >= top) break;
      std::cout << "  (" << row.pair.e1 << " | " << row.pair.e2
                << ") iteration " << row.pair.first_seen << " pattern ";
      if (row.pattern_id > 0) {
        std::cout << "#" << row.pattern_id;
      } else {
        std::cout << "-";
      }
      std::cout << "\n";
      ++shown;
    }
  }
  return kOk;
}

int cmd_snapshot(const std::string& raw_dir, const std::string& out_file) {
  const fs::path dir = raw_dir;
  if (!fs::is_directory(dir)) {
    throw arex::IoError("not a directory: " + dir.string());
  }

  // Optional filename -> query mapping for queries that filesystem
  // names cannot carry (pattern queries contain + and *).
  std::map<std::string, std::string> query_names;
  const fs::path mapping = dir / "queries.tsv";
  if (fs::exists(mapping)) {
    std::ifstream in(mapping);
    std::string line;
    while (std::getline(in, line)) {
      if (arex::trim(line).empty()) continue;
      const auto cells = arex::split(line, '\t');
      if (cells.size() != 2) {
        throw arex::MalformedSnapshot("queries.tsv rows must be file<TAB>query");
      }
      query_names[cells[0]] = cells[1];
    }
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw arex::MalformedSnapshot("no .txt query files in " + dir.string());
  }

  arex::SnapshotStore store;
  int entries = 0;
  int blank = 0;
  for (const fs::path& file : files) {
    const auto named = query_names.find(file.filename().string());
    const std::string query =
        named != query_names.end() ? named->second : file.stem().string();
    std::ifstream in(file);
    if (!in) throw arex::IoError("cannot read " + file.string());
    std::string line;
    while (std::getline(in, line)) {
      if (arex::trim(line).empty()) {
        ++blank;
        continue;
      }
      store.add(query, line);
      ++entries;
    }
  }
  store.save(out_file);
  // Validate what we just wrote before declaring success.
  arex::SnapshotStore::load(out_file);
  std::cout << "snapshot " << out_file << ": " << entries << " entries from "
            << files.size() << " query file(s)";
  if (blank > 0) std::cout << ", " << blank << " blank line(s) dropped";
  std::cout << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bootstrapping relation extraction from Arabic search snippets"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  bool resume_run = false;
  auto* run = app.add_subcommand("run", "run the bootstrap loop");
  run->add_option("--config", config_path, "run configuration file")
      ->required();
  run->add_option("--set", overrides, "override a config key (key=value)");
  run->add_option("--out", out_dir, "artifact directory");
  run->add_flag("--resume", resume_run, "continue from a checkpoint in --out");

  std::string gold_path;
  std::string undetected_path;
  std::string eval_config;
  std::string eval_dir = "out";
  auto* eval = app.add_subcommand("eval", "score a run against gold judgments");
  eval->add_option("--out", eval_dir, "run artifact directory");
  eval->add_option("--gold", gold_path,
                   "gold TSV (e1,e2,label) or directory with gold.tsv")
      ->required();
  eval->add_option("--undetected", undetected_path,
                   "undetected-pairs TSV (default: undetected.tsv next to gold)");
  eval->add_option("--config", eval_config,
                   "config supplying normalization and relation label");

  std::string inspect_dir = "out";
  bool show_patterns = false;
  bool show_instances = false;
  int top = 0;
  auto* inspect = app.add_subcommand("inspect", "print run artifacts");
  inspect->add_option("--out", inspect_dir, "run artifact directory");
  inspect->add_flag("--patterns", show_patterns, "show the pattern table");
  inspect->add_flag("--instances", show_instances, "show the instance table");
  inspect->add_option("--top", top, "limit listing length");

  std::string raw_dir;
  std::string snapshot_out = "snapshot.jsonl";
  auto* snapshot =
      app.add_subcommand("snapshot", "build a snapshot corpus from text files");
  snapshot->add_option("raw_dir", raw_dir, "directory of per-query .txt files")
      ->required();
  snapshot->add_option("--out", snapshot_out, "snapshot file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, overrides, out_dir, resume_run);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_dir, gold_path, undetected_path, eval_config);
    }
    if (inspect->parsed()) {
      return cmd_inspect(inspect_dir, show_patterns, show_instances, top);
    }
    if (snapshot->parsed()) {
      return cmd_snapshot(raw_dir, snapshot_out);
    }
  } catch (const arex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const arex::ProviderUnavailable& e) {
    std::cerr << "provider unavailable: " << e.what() << "\n";
    return kProviderUnavailable;
  } catch (const arex::MalformedSnapshot& e) {
    std::cerr << "malformed snapshot: " << e.what() << "\n";
    return kMalformedSnapshot;
  } catch (const arex::MissingJudgment& e) {
    std::cerr << "missing judgment: " << e.what() << "\n";
    return kMissingJudgment;
  } catch (const arex::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
