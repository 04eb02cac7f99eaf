#include "arex/eval.hpp"

#include <fstream>
#include <map>

#include "arex/errors.hpp"
#include "arex/strings.hpp"

namespace arex {

namespace {

std::string normalize_entity(const std::string& text,
                             const NormalizationTable& table) {
  return normalize(text, table);
}

}  // namespace

GoldSet GoldSet::load(const std::filesystem::path& gold_tsv,
                      const std::filesystem::path& undetected_tsv,
                      const NormalizationTable& table) {
  GoldSet gold;
  std::ifstream in(gold_tsv);
  if (!in) throw IoError("cannot open gold file: " + gold_tsv.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, '\t');
    if (cells.size() != 3 || (cells[2] != "0" && cells[2] != "1")) {
      throw IoError(gold_tsv.string() + ":" + std::to_string(line_no) +
                    ": expected e1<TAB>e2<TAB>label(0|1)");
    }
    gold.judgments[{normalize_entity(cells[0], table),
                    normalize_entity(cells[1], table)}] = cells[2] == "1";
  }
  if (!undetected_tsv.empty() && std::filesystem::exists(undetected_tsv)) {
    std::ifstream und(undetected_tsv);
    if (!und) {
      throw IoError("cannot open undetected file: " + undetected_tsv.string());
    }
    while (std::getline(und, line)) {
      if (trim(line).empty()) continue;
      const std::vector<std::string> cells = split(line, '\t');
      if (cells.size() < 2) {
        throw IoError(undetected_tsv.string() + ": expected e1<TAB>e2 rows");
      }
      gold.undetected.push_back(InstancePair{
          normalize_entity(cells[0], table),
          normalize_entity(cells[1], table)});
    }
  }
  return gold;
}

EvalCounts score_instances(const std::vector<InstancePair>& extracted,
                           const GoldSet& gold) {
  EvalCounts counts;
  for (const InstancePair& pair : extracted) {
    const auto it = gold.judgments.find(pair.key());
    if (it == gold.judgments.end()) {
      throw MissingJudgment("no judgment for extracted pair (" + pair.e1 +
                            ", " + pair.e2 + ")");
    }
    if (it->second) {
      ++counts.n_correct;
    } else {
      ++counts.n_incorrect;
    }
  }
  counts.total = counts.n_correct + counts.n_incorrect;
  counts.n_undetected = static_cast<int>(gold.undetected.size());
  return counts;
}

Metrics compute_metrics(const EvalCounts& counts) {
  Metrics m;
  if (counts.total > 0) {
    m.precision = static_cast<double>(counts.n_correct) / counts.total;
  }
  if (counts.actual_correct() > 0) {
    m.recall =
        static_cast<double>(counts.n_correct) / counts.actual_correct();
  }
  if (m.precision + m.recall > 0.0) {
    m.f_measure = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

double pattern_confidence(const Pattern& pattern) {
  const int evidence = pattern.stats.positive + pattern.stats.negative;
  if (evidence == 0) {
    throw NoEvidence("pattern has no judged instances");
  }
  return static_cast<double>(pattern.stats.positive) / evidence;
}

std::optional<double> maybe_confidence(const Pattern& pattern) {
  if (!pattern.stats.evaluated()) return std::nullopt;
  return pattern_confidence(pattern);
}

bool is_reliable(const Pattern& pattern) {
  return pattern_confidence(pattern) >= 0.5;
}

ConfidenceSummary average_confidence(
    const std::vector<Pattern>& patterns,
    const std::vector<int>& first_iteration) {
  ConfidenceSummary summary;
  std::map<int, std::pair<double, int>> groups;  // iteration -> (sum, count)
  double pooled_sum = 0.0;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto conf = maybe_confidence(patterns[i]);
    if (!conf) continue;
    const int iter =
        i < first_iteration.size() ? first_iteration[i] : 1;
    auto& [sum, count] = groups[iter];
    sum += *conf;
    count += 1;
    pooled_sum += *conf;
    summary.evaluated_patterns += 1;
  }
  if (summary.evaluated_patterns == 0) return summary;
  double mean_sum = 0.0;
  for (const auto& [iter, group] : groups) {
    const double mean = group.first / group.second;
    summary.per_iteration.emplace_back(iter, mean);
    mean_sum += mean;
  }
  summary.mean_of_means = mean_sum / static_cast<double>(groups.size());
  summary.pooled = pooled_sum / summary.evaluated_patterns;
  return summary;
}

}  // namespace arex
