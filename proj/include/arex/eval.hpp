#ifndef AREX_EVAL_HPP
#define AREX_EVAL_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arex/normalize.hpp"
#include "arex/types.hpp"

namespace arex {

// Human judgments: 1 for a correct extracted pair, 0 for incorrect,
// plus the pairs present in the fetched text that were never extracted.
struct GoldSet {
  std::map<std::pair<std::string, std::string>, int> judgments;
  std::vector<InstancePair> undetected;

  // gold TSV: e1<TAB>e2<TAB>label with label 1 or 0; undetected TSV:
  // e1<TAB>e2. Pairs are normalized with `table` so comparisons use the
  // same folding as extraction. The undetected path may not exist.
  static GoldSet load(const std::filesystem::path& gold_tsv,
                      const std::filesystem::path& undetected_tsv,
                      const NormalizationTable& table);
};

struct EvalCounts {
  int n_correct = 0;    // N_c
  int n_incorrect = 0;  // I
  int n_undetected = 0; // U_c
  int total = 0;        // T = N_c + I

  int actual_correct() const { return n_correct + n_undetected; }  // A
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

EvalCounts score_instances(const std::vector<InstancePair>& extracted,
                           const GoldSet& gold);

// precision = N_c/T, recall = N_c/A, F = 2PR/(P+R); zero denominators
// yield 0 so batch evaluation stays total over empty runs.
Metrics compute_metrics(const EvalCounts& counts);

// positive / (positive + negative). Throws NoEvidence when the pattern
// has no judged instances.
double pattern_confidence(const Pattern& pattern);
std::optional<double> maybe_confidence(const Pattern& pattern);

// A pattern is reliable when its confidence is at least 0.5.
bool is_reliable(const Pattern& pattern);

// Mean confidences per iteration group plus two whole-run aggregates:
// the mean of the iteration means and the pooled mean over all
// evaluated patterns (the published per-relation averages are
// reproduced by the former). Unevaluated patterns are excluded.
struct ConfidenceSummary {
  std::vector<std::pair<int, double>> per_iteration;  // (iteration, mean)
  double mean_of_means = 0.0;
  double pooled = 0.0;
  int evaluated_patterns = 0;
};

ConfidenceSummary average_confidence(const std::vector<Pattern>& patterns,
                                     const std::vector<int>& first_iteration);

}  // namespace arex

#endif  // AREX_EVAL_HPP
