#include "arex/bootstrap.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arex/errors.hpp"
#include "arex/segment.hpp"
#include "arex/strings.hpp"

namespace arex {

namespace {

constexpr const char* kNullField = "∅";

std::set<int> detecting_ids(const std::vector<CandidateInstance>& filtered) {
  std::set<int> ids;
  for (const CandidateInstance& c : filtered) ids.insert(c.pattern_id);
  return ids;
}

std::vector<Occurrence> collect_occurrences(
    const std::vector<InstancePair>& seeds, const SearchProvider& provider,
    const RunConfig& config) {
  std::vector<Occurrence> occs;
  for (const InstancePair& pair : seeds) {
    const Query query = build_instance_query(pair, config.top_k);
    for (const Summary& summary : provider.fetch(query)) {
      const std::string normalized = normalize(summary.raw_text, config.table);
      SourceRef origin;
      origin.query = summary.query_text;
      origin.rank = summary.rank;
      for (const Sentence& sentence : segment(normalized, origin)) {
        const auto spans =
            validate_sentence(sentence, pair, config.context.middle_max);
        if (!spans) continue;
        occs.push_back(build_occurrence(sentence, spans->first, spans->second,
                                        config.context));
      }
    }
  }
  return occs;
}

std::vector<CandidateInstance> harvest_candidates(
    const std::vector<int>& pattern_ids,
    const std::vector<LearnedPattern>& learned, const SearchProvider& provider,
    const RunConfig& config) {
  std::vector<CandidateInstance> candidates;
  for (int id : pattern_ids) {
    const LearnedPattern& lp = learned[static_cast<std::size_t>(id - 1)];
    const auto query = build_pattern_query(lp.pattern, config.top_k);
    if (!query) continue;  // no usable search parts
    const auto tmpl = make_template(lp.pattern, config.slots);
    for (const Summary& summary : provider.fetch(*query)) {
      const std::string normalized = normalize(summary.raw_text, config.table);
      SourceRef origin;
      origin.query = summary.query_text;
      origin.rank = summary.rank;
      for (const Sentence& sentence : segment(normalized, origin)) {
        auto matches = match_pattern(*tmpl, sentence, id);
        candidates.insert(candidates.end(),
                          std::make_move_iterator(matches.begin()),
                          std::make_move_iterator(matches.end()));
      }
    }
  }
  return candidates;
}

std::vector<InstancePair> normalized_seeds(const RunConfig& config) {
  std::vector<InstancePair> seeds;
  for (const InstancePair& raw : config.seed_pairs) {
    InstancePair seed;
    seed.e1 = normalize(raw.e1, config.table);
    seed.e2 = normalize(raw.e2, config.table);
    seed.first_seen = 0;
    if (seed.e1.empty() || seed.e2.empty()) {
      throw ConfigError("seed pair (" + raw.e1 + ", " + raw.e2 +
                        ") normalizes to an empty entity");
    }
    seeds.push_back(std::move(seed));
  }
  if (seeds.empty()) throw ConfigError("at least one seed pair is required");
  return seeds;
}

struct LoopState {
  RunResult result;
  std::vector<InstancePair> seeds_next;
  std::set<std::pair<std::string, std::string>> extracted_ever;
  int iteration = 0;
};

void persist(const RunConfig& config, const LoopState& state) {
  if (config.state_dir.empty()) return;
  save_state(config.state_dir, state.result, state.seeds_next);
}

RunResult run_loop(const RunConfig& config, const SearchProvider& provider,
                   LoopState state) {
  while (static_cast<int>(state.extracted_ever.size()) < config.threshold &&
         !state.seeds_next.empty() &&
         state.iteration < config.max_iterations) {
    const int iteration = ++state.iteration;
    auto& learned = state.result.patterns;

    // Phase 1: pattern extraction from the current seeds.
    const std::vector<Occurrence> occs =
        collect_occurrences(state.seeds_next, provider, config);
    const std::vector<Pattern> iteration_patterns = merge_occurrences(occs);

    std::vector<int> iteration_ids;
    for (const Pattern& p : iteration_patterns) {
      auto existing = std::find_if(
          learned.begin(), learned.end(),
          [&](const LearnedPattern& lp) { return same_shape(lp.pattern, p); });
      if (existing != learned.end()) {
        // Re-derived in a later iteration: more reliable, not a duplicate.
        existing->pattern.recurrence += 1;
        existing->pattern.repetition += p.repetition;
        iteration_ids.push_back(existing->id);
      } else {
        LearnedPattern lp;
        lp.pattern = p;
        lp.id = static_cast<int>(learned.size()) + 1;
        lp.first_iteration = iteration;
        learned.push_back(std::move(lp));
        iteration_ids.push_back(learned.back().id);
      }
    }

    // Phase 2: instance extraction with this iteration's patterns.
    const std::vector<CandidateInstance> candidates =
        harvest_candidates(iteration_ids, learned, provider, config);
    const std::vector<CandidateInstance> filtered =
        filter_candidates(candidates, config.slots);

    std::vector<InstancePair> incoming;
    incoming.reserve(filtered.size());
    for (const CandidateInstance& c : filtered) incoming.push_back(c.pair);
    const auto [new_pairs, repeated] =
        dedup_and_count(state.result.table, incoming);

    for (const CandidateInstance& c : filtered) {
      if (state.result.table.contains(c.pair)) {
        state.result.table.mark_extracted(c.pair, c.pattern_id);
      } else {
        InstancePair pair = c.pair;
        pair.first_seen = iteration;
        state.result.table.add(std::move(pair), c.pattern_id);
      }
      state.extracted_ever.insert(c.pair.key());
    }

    IterationReport report;
    report.iteration = iteration;
    report.patterns_total = static_cast<int>(iteration_patterns.size());
    report.patterns_detecting = static_cast<int>(detecting_ids(filtered).size());
    report.instances_new = static_cast<int>(new_pairs.size());
    report.instances_repeated = repeated;
    report.instances_cumulative =
        static_cast<int>(state.extracted_ever.size());
    state.result.reports.push_back(report);

    state.seeds_next = new_pairs;
    persist(config, state);
  }
  persist(config, state);
  return std::move(state.result);
}

}  // namespace

void InstanceTable::add(InstancePair pair, int pattern_id) {
  if (!keys_.insert(pair.key()).second) return;
  rows_.push_back(InstanceRow{std::move(pair), pattern_id});
}

bool InstanceTable::contains(const InstancePair& pair) const {
  return keys_.count(pair.key()) > 0;
}

void InstanceTable::mark_extracted(const InstancePair& pair, int pattern_id) {
  for (InstanceRow& row : rows_) {
    if (row.pair.key() == pair.key()) {
      if (row.pattern_id < 0) row.pattern_id = pattern_id;
      return;
    }
  }
}

std::vector<InstancePair> InstanceTable::extracted_pairs() const {
  std::vector<InstancePair> out;
  for (const InstanceRow& row : rows_) {
    if (row.pattern_id > 0) out.push_back(row.pair);
  }
  return out;
}

std::pair<std::vector<InstancePair>, int> dedup_and_count(
    const InstanceTable& table, const std::vector<InstancePair>& incoming) {
  std::vector<InstancePair> fresh;
  int repeated = 0;
  std::set<std::pair<std::string, std::string>> seen_now;
  for (const InstancePair& pair : incoming) {
    if (table.contains(pair) || !seen_now.insert(pair.key()).second) {
      ++repeated;
    } else {
      fresh.push_back(pair);
    }
  }
  return {fresh, repeated};
}

std::vector<Pattern> derive_patterns(const std::vector<InstancePair>& seeds,
                                     const SearchProvider& provider,
                                     const RunConfig& config) {
  return merge_occurrences(collect_occurrences(seeds, provider, config));
}

RunResult run(const RunConfig& config, const SearchProvider& provider) {
  LoopState state;
  state.seeds_next = normalized_seeds(config);
  for (const InstancePair& seed : state.seeds_next) {
    state.result.table.add(seed, -1);
  }
  return run_loop(config, provider, std::move(state));
}

RunResult resume(const RunConfig& config, const SearchProvider& provider) {
  const auto& dir = config.state_dir;
  if (dir.empty()) throw ConfigError("resume needs a state directory");
  std::ifstream resume_in(dir / "resume.json");
  if (!resume_in) {
    throw IoError("no resume.json in " + dir.string());
  }
  nlohmann::json doc;
  try {
    resume_in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("invalid resume.json: ") + e.what());
  }

  LoopState state;
  state.iteration = doc.at("iteration").get<int>();
  for (const auto& entry : doc.at("seeds_next")) {
    InstancePair pair;
    pair.e1 = entry.at(0).get<std::string>();
    pair.e2 = entry.at(1).get<std::string>();
    pair.first_seen = state.iteration;
    state.seeds_next.push_back(std::move(pair));
  }

  std::ifstream table_in(dir / doc.at("table_path").get<std::string>());
  if (!table_in) throw IoError("missing instance table for resume");
  state.result.table = read_instances_tsv(table_in);
  for (const InstanceRow& row : state.result.table.rows()) {
    if (row.pattern_id > 0) state.extracted_ever.insert(row.pair.key());
  }

  std::ifstream patterns_in(dir / doc.at("patterns_path").get<std::string>());
  if (!patterns_in) throw IoError("missing pattern table for resume");
  const std::vector<Pattern> patterns = read_patterns_tsv(patterns_in);

  std::ifstream meta_in(dir / "patterns_meta.json");
  nlohmann::json meta = nlohmann::json::array();
  if (meta_in) meta_in >> meta;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    LearnedPattern lp;
    lp.pattern = patterns[i];
    lp.id = static_cast<int>(i) + 1;
    lp.first_iteration = 1;
    if (i < meta.size()) {
      lp.first_iteration = meta[i].value("first_iteration", 1);
      lp.pattern.recurrence = meta[i].value("recurrence", 1);
    }
    state.result.patterns.push_back(std::move(lp));
  }

  std::ifstream report_in(dir / "report.json");
  if (report_in) state.result.reports = read_report_json(report_in);

  return run_loop(config, provider, std::move(state));
}

void write_instances_tsv(std::ostream& out, const InstanceTable& table) {
  for (const InstanceRow& row : table.rows()) {
    out << row.pair.e1 << '\t' << row.pair.e2 << '\t' << row.pair.first_seen
        << '\t';
    if (row.pattern_id > 0) {
      out << row.pattern_id;
    } else {
      out << kNullField;
    }
    out << '\n';
  }
}

InstanceTable read_instances_tsv(std::istream& in) {
  InstanceTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, '\t');
    if (cells.size() != 4) {
      throw IoError("instances.tsv:" + std::to_string(line_no) +
                    ": expected 4 columns");
    }
    InstancePair pair;
    pair.e1 = cells[0];
    pair.e2 = cells[1];
    pair.first_seen = std::stoi(cells[2]);
    const int pattern_id = cells[3] == kNullField ? -1 : std::stoi(cells[3]);
    table.add(std::move(pair), pattern_id);
  }
  return table;
}

void write_report_json(std::ostream& out,
                       const std::vector<IterationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IterationReport& r : reports) {
    arr.push_back({{"iteration", r.iteration},
                   {"patterns_total", r.patterns_total},
                   {"patterns_detecting", r.patterns_detecting},
                   {"instances_new", r.instances_new},
                   {"instances_repeated", r.instances_repeated},
                   {"instances_cumulative", r.instances_cumulative}});
  }
  out << arr.dump(2) << "\n";
}

std::vector<IterationReport> read_report_json(std::istream& in) {
  nlohmann::json arr;
  try {
    in >> arr;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("invalid report.json: ") + e.what());
  }
  std::vector<IterationReport> reports;
  for (const auto& item : arr) {
    IterationReport r;
    r.iteration = item.at("iteration").get<int>();
    r.patterns_total = item.at("patterns_total").get<int>();
    r.patterns_detecting = item.at("patterns_detecting").get<int>();
    r.instances_new = item.at("instances_new").get<int>();
    r.instances_repeated = item.at("instances_repeated").get<int>();
    r.instances_cumulative = item.at("instances_cumulative").get<int>();
    reports.push_back(r);
  }
  return reports;
}

void save_state(const std::filesystem::path& dir, const RunResult& state,
                const std::vector<InstancePair>& seeds_next) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    return out;
  };

  {
    auto out = open("instances.tsv");
    write_instances_tsv(out, state.table);
  }
  {
    std::vector<Pattern> patterns;
    patterns.reserve(state.patterns.size());
    for (const LearnedPattern& lp : state.patterns) {
      patterns.push_back(lp.pattern);
    }
    auto out = open("patterns.tsv");
    write_patterns_tsv(out, patterns);
  }
  {
    nlohmann::json meta = nlohmann::json::array();
    for (const LearnedPattern& lp : state.patterns) {
      meta.push_back({{"id", lp.id},
                      {"first_iteration", lp.first_iteration},
                      {"recurrence", lp.pattern.recurrence}});
    }
    auto out = open("patterns_meta.json");
    out << meta.dump(2) << "\n";
  }
  {
    auto out = open("report.json");
    write_report_json(out, state.reports);
  }
  {
    nlohmann::json resume;
    resume["iteration"] = static_cast<int>(state.reports.size());
    nlohmann::json seeds = nlohmann::json::array();
    for (const InstancePair& pair : seeds_next) {
      seeds.push_back({pair.e1, pair.e2});
    }
    resume["seeds_next"] = seeds;
    resume["table_path"] = "instances.tsv";
    resume["patterns_path"] = "patterns.tsv";
    auto out = open("resume.json");
    out << resume.dump(2) << "\n";
  }
}

}  // namespace arex
