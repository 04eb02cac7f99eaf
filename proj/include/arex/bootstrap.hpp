#ifndef AREX_BOOTSTRAP_HPP
#define AREX_BOOTSTRAP_HPP

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arex/corpus.hpp"
#include "arex/extract.hpp"
#include "arex/normalize.hpp"
#include "arex/patterns.hpp"
#include "arex/types.hpp"

namespace arex {

struct RunConfig {
  std::vector<InstancePair> seed_pairs;  // four work well in practice
  int threshold = 100;      // stop once this many distinct pairs were extracted
  int max_iterations = 10;  // safety bound
  int top_k = 20;
  ContextCaps context;      // prefix<=2, middle<=3, suffix<=3
  SlotCaps slots;           // e1<=3(+1), e2<=4
  std::string relation_label;
  NormalizationTable table = NormalizationTable::defaults();
  std::filesystem::path state_dir;  // empty: no on-disk checkpoints
};

// Per-iteration bookkeeping: pattern counts, new/repeated instance
// counts, and the running total of distinct extracted pairs.
struct IterationReport {
  int iteration = 0;
  int patterns_total = 0;      // patterns derived this iteration
  int patterns_detecting = 0;  // of those, patterns whose instances survived
  int instances_new = 0;
  int instances_repeated = 0;
  int instances_cumulative = 0;
};

// One row of the instance table. pattern_id is the 1-based id of the
// pattern that first extracted the pair, or -1 for a seed that was never
// re-extracted. A row counts as extracted iff pattern_id > 0.
struct InstanceRow {
  InstancePair pair;
  int pattern_id = -1;
};

class InstanceTable {
 public:
  void add(InstancePair pair, int pattern_id);
  bool contains(const InstancePair& pair) const;

  // Marks a known pair as extracted by `pattern_id` if it was not
  // attributed yet (a seed getting re-discovered keeps its seed row).
  void mark_extracted(const InstancePair& pair, int pattern_id);

  const std::vector<InstanceRow>& rows() const { return rows_; }
  std::vector<InstancePair> extracted_pairs() const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<InstanceRow> rows_;
  std::set<std::pair<std::string, std::string>> keys_;
};

// A pattern in the cross-iteration table, with its stable id and the
// iteration that first derived it.
struct LearnedPattern {
  Pattern pattern;
  int id = 0;
  int first_iteration = 0;
};

struct RunResult {
  InstanceTable table;
  std::vector<LearnedPattern> patterns;
  std::vector<IterationReport> reports;
};

// Splits incoming filtered pairs into table-new pairs and the count of
// repeats (pairs already present, including pairs equal to seeds).
std::pair<std::vector<InstancePair>, int> dedup_and_count(
    const InstanceTable& table, const std::vector<InstancePair>& incoming);

// Phase 1 alone: fetch the seeds' summaries, validate, build
// occurrences, and merge them into patterns.
std::vector<Pattern> derive_patterns(const std::vector<InstancePair>& seeds,
                                     const SearchProvider& provider,
                                     const RunConfig& config);

// The full bootstrap loop. Each iteration learns patterns from the
// current seeds, harvests candidate pairs with those patterns, filters
// them, and feeds only the newly added pairs to the next iteration.
// Stops when the distinct-extracted total reaches the threshold, when an
// iteration adds nothing, or at max_iterations. When config.state_dir is
// set, artifacts are rewritten after every iteration so an interrupted
// run can resume.
RunResult run(const RunConfig& config, const SearchProvider& provider);

// Continues a checkpointed run loaded from config.state_dir.
RunResult resume(const RunConfig& config, const SearchProvider& provider);

// --- artifact I/O ---------------------------------------------------

// instances.tsv: e1|e2|provenance_iteration|pattern_id (tab separated,
// U+2205 for a missing pattern id).
void write_instances_tsv(std::ostream& out, const InstanceTable& table);
InstanceTable read_instances_tsv(std::istream& in);

void write_report_json(std::ostream& out,
                       const std::vector<IterationReport>& reports);
std::vector<IterationReport> read_report_json(std::istream& in);

// Writes instances.tsv, patterns.tsv, patterns_meta.json, report.json
// and resume.json into `dir`.
void save_state(const std::filesystem::path& dir, const RunResult& state,
                const std::vector<InstancePair>& seeds_next);

}  // namespace arex

#endif  // AREX_BOOTSTRAP_HPP
