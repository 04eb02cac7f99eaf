// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arex/bootstrap.hpp"
#include "arex/config.hpp"
#include "arex/corpus.hpp"
#include "arex/eval.hpp"
#include "arex/extract.hpp"
#include "arex/normalize.hpp"
#include "arex/patterns.hpp"
#include "arex/segment.hpp"
#include "arex/strings.hpp"
#include "arex/utf8.hpp"
#include "support.hpp"

using namespace arex;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " - criterion " << criterion << ": "
            << name;
  if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

double round2(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }
double trunc2(double x) { return std::floor(x * 100.0 + 1e-9) / 100.0; }
double trunc1(double x) { return std::floor(x * 10.0 + 1e-9) / 10.0; }
bool near(double a, double b, double eps = 1e-9) {
  return std::abs(a - b) < eps;
}

// --- criterion 1: published metric table ------------------------------

void criterion_metric_reproduction() {
  struct Row {
    int total, correct, undetected;
    double precision, recall, f_measure;
  };
  const std::vector<Row> rows = {
      {186, 134, 54, 0.72, 0.71, 0.71},
      {100, 61, 14, 0.61, 0.81, 0.69},
      {147, 106, 21, 0.72, 0.83, 0.77},
      {115, 86, 25, 0.75, 0.77, 0.76},
  };
  bool ok = true;
  std::string detail;
  for (const Row& row : rows) {
    EvalCounts counts;
    counts.total = row.total;
    counts.n_correct = row.correct;
    counts.n_incorrect = row.total - row.correct;
    counts.n_undetected = row.undetected;
    const Metrics m = compute_metrics(counts);
    if (!near(round2(m.precision), row.precision) ||
        !near(round2(m.recall), row.recall) ||
        !near(trunc2(m.f_measure), row.f_measure)) {
      ok = false;
      std::ostringstream out;
      out << "T=" << row.total << " got " << m.precision << "/" << m.recall
          << "/" << m.f_measure;
      detail = out.str();
    }
  }
  // The worked author-book divisions.
  ok = ok && near(134.0 / 186.0, 0.7204301, 1e-6) &&
       near(round2(134.0 / 186.0), 0.72) && near(round2(134.0 / 188.0), 0.71);
  report(1, "published counts reproduce all 12 metric values", ok, detail);
}

// --- criterion 2: confidence arithmetic --------------------------------

void criterion_confidence_reproduction() {
  Pattern p;
  p.middle = test::words("و");
  p.stats = {2, 1};
  bool ok = std::abs(pattern_confidence(p) - 0.667) <= 0.001;

  const std::vector<std::tuple<int, int, double>> published = {
      {6, 5, 0.5}, {7, 1, 0.8}, {13, 3, 0.8}, {8, 2, 0.8}};
  for (const auto& [pos, neg, printed] : published) {
    p.stats = {pos, neg};
    const double conf = pattern_confidence(p);
    // One-decimal tolerance; the table's own rounding truncates.
    if (std::abs(conf - printed) >= 0.1 || !near(trunc1(conf), printed)) {
      ok = false;
    }
  }
  report(2, "pattern confidence matches the worked example and table", ok);
}

// --- criterion 3: fixture bookkeeping ----------------------------------

void criterion_fixture_trajectory() {
  const std::string cli = test::cli_path();
  if (cli.empty()) {
    report(3, "author-book fixture reproduces the iteration table", false,
           "AREX_CLI not set");
    return;
  }
  const auto out = test::temp_dir("acceptance_run");
  const auto config =
      (test::fixtures_dir() / "authorbook" / "config.toml").string();
  const auto result = test::run_command("\"" + cli + "\" run --config \"" +
                                        config + "\" --out \"" +
                                        out.string() + "\"");
  bool ok = result.exit_code == 0;
  std::string detail = ok ? "" : "run exited " + std::to_string(result.exit_code);
  if (ok) {
    const auto report_doc =
        nlohmann::json::parse(test::read_file(out / "report.json"));
    ok = report_doc.size() == 2 && report_doc[0]["instances_new"] == 64 &&
         report_doc[0]["instances_repeated"] == 2 &&
         report_doc[0]["instances_cumulative"] == 66 &&
         report_doc[1]["instances_new"] == 120 &&
         report_doc[1]["instances_repeated"] == 25 &&
         report_doc[1]["instances_cumulative"] == 186;
    if (!ok) detail = "report.json: " + report_doc.dump();
  }
  report(3, "author-book fixture reproduces the iteration table", ok, detail);
}

// --- criterion 4: merge oracle equivalence ------------------------------
// Independent pairwise-fixpoint oracle over the merge criteria.

bool oracle_share(const OptWords& a, const OptWords& b) {
  if (!a || !b) return false;
  for (const auto& w : *a) {
    if (std::count(b->begin(), b->end(), w) > 0) return true;
  }
  return false;
}

OptWords oracle_intersect(const OptWords& a, const OptWords& b) {
  Words out;
  for (const auto& w : *a) {
    if (std::count(b->begin(), b->end(), w) > 0 &&
        std::count(out.begin(), out.end(), w) == 0) {
      out.push_back(w);
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

bool oracle_mergeable(const Pattern& a, const Pattern& b) {
  if (a.e1_first != b.e1_first) return false;
  if (a.prefix == b.prefix && a.middle == b.middle) return true;
  return oracle_share(a.prefix, b.prefix) && oracle_share(a.middle, b.middle);
}

Pattern oracle_merge(const Pattern& a, const Pattern& b) {
  Pattern out = a;
  out.repetition = a.repetition + b.repetition;
  if (a.prefix == b.prefix && a.middle == b.middle) {
    if (a.suffix != b.suffix) out.suffix = std::nullopt;
    return out;
  }
  out.prefix = oracle_intersect(a.prefix, b.prefix);
  out.middle = oracle_intersect(a.middle, b.middle);
  out.suffix = std::nullopt;
  return out;
}

std::vector<Pattern> oracle_fixpoint(const std::vector<Occurrence>& occs) {
  std::vector<Pattern> patterns;
  for (const Occurrence& occ : occs) {
    Pattern p;
    p.prefix = occ.prefix;
    p.middle = occ.middle;
    p.suffix = occ.suffix;
    p.e1_first = occ.e1_first;
    patterns.push_back(std::move(p));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < patterns.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < patterns.size() && !changed; ++j) {
        if (oracle_mergeable(patterns[i], patterns[j])) {
          patterns[i] = oracle_merge(patterns[i], patterns[j]);
          patterns.erase(patterns.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
  return patterns;
}

std::string canon_pattern(const Pattern& p) {
  const auto field = [](const OptWords& f) {
    return f ? join(*f, " ") : std::string("<null>");
  };
  std::ostringstream out;
  out << field(p.prefix) << "|" << field(p.middle) << "|" << field(p.suffix)
      << "|" << p.e1_first << "|" << p.repetition;
  return out.str();
}

std::vector<std::string> canon_multiset(const std::vector<Pattern>& patterns) {
  std::vector<std::string> out;
  for (const Pattern& p : patterns) out.push_back(canon_pattern(p));
  std::sort(out.begin(), out.end());
  return out;
}

void criterion_merge_oracle() {
  std::mt19937 rng(123457);
  const Words vocab = {"و1", "و2", "و3", "و4", "و5", "و6"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> count(0, 8);
  std::uniform_int_distribution<int> coin(0, 1);
  const auto field = [&](int max_len) -> OptWords {
    std::uniform_int_distribution<int> len(-1, max_len);
    const int n = len(rng);
    if (n <= 0) return std::nullopt;
    Words out;
    for (int i = 0; i < n; ++i) out.push_back(vocab[pick(rng)]);
    return out;
  };

  bool ok = true;
  std::string detail;
  for (int round = 0; round < 1000 && ok; ++round) {
    std::vector<Occurrence> occs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      Occurrence occ;
      occ.prefix = field(2);
      occ.middle = field(3);
      occ.suffix = field(3);
      occ.e1_first = coin(rng) == 1;
      occs.push_back(std::move(occ));
    }
    const auto got = merge_occurrences(occs);
    if (canon_multiset(got) != canon_multiset(oracle_fixpoint(occs))) {
      ok = false;
      detail = "divergence at round " + std::to_string(round);
    }
    int repetition_sum = 0;
    for (const Pattern& p : got) repetition_sum += p.repetition;
    if (repetition_sum != n) {
      ok = false;
      detail = "conservation broken at round " + std::to_string(round);
    }
  }
  report(4, "merge equals the pairwise-fixpoint oracle on 1000 lists", ok,
         detail);
}

// --- criterion 5: filter decision table ---------------------------------

void criterion_filter_table() {
  const Words particles = {"عبد", "بن", "ابو"};
  const auto expected_keep = [](std::size_t n, bool third_particle,
                                bool leading_al) {
    if (n == 1) return leading_al;
    if (n <= 3) return true;
    if (n == 4) return third_particle;
    return false;
  };

  bool ok = true;
  std::string detail;
  for (std::size_t n = 1; n <= 5 && ok; ++n) {
    for (std::size_t t = 0; t < particles.size() + 1 && ok; ++t) {
      const bool third_particle = t < particles.size();
      for (const bool leading_al : {true, false}) {
        Words e1;
        for (std::size_t i = 0; i < n; ++i) {
          e1.push_back("اسم" + std::to_string(i + 1));
        }
        if (leading_al) e1[0] = "الاسم";
        if (n >= 3 && third_particle) e1[2] = particles[t];

        CandidateInstance candidate;
        candidate.pair.e1 = join(e1, " ");
        candidate.pair.e2 = "هدف ثابت";
        candidate.pattern_id = 1;
        const bool kept = !filter_instances({candidate}).empty();
        const bool expected =
            expected_keep(n, n >= 3 && third_particle, leading_al);
        if (kept != expected) {
          ok = false;
          detail = "e1=\"" + candidate.pair.e1 + "\" kept=" +
                   (kept ? "yes" : "no");
          break;
        }
      }
    }
  }

  // The published worked examples.
  if (ok) {
    CandidateInstance shorter;
    shorter.pair = {"محمد نجيب", "كتاب", 0};
    CandidateInstance longer;
    longer.pair = {"محمد نجيب عبدالله", "كتاب", 0};
    const auto merged = filter_instances({shorter, longer});
    ok = merged.size() == 1 && merged[0].e1 == "محمد نجيب";
    if (!ok) detail = "prefix-extension merge";
  }
  if (ok) {
    CandidateInstance rejected;
    rejected.pair = {"محمد", "كتاب", 0};
    CandidateInstance kept;
    kept.pair = {"القرطبي", "كتاب اخر", 0};
    const auto out = filter_instances({rejected, kept});
    ok = out.size() == 1 && out[0].e1 == "القرطبي";
    if (!ok) detail = "single-word rule";
  }
  report(5, "filter rules match the decision table and worked examples", ok,
         detail);
}

// --- criterion 6: extraction round trip ---------------------------------

void criterion_round_trip() {
  std::mt19937 rng(424242);
  const Words entity_vocab = {"اسم1", "اسم2", "اسم3", "اسم4",
                              "اسم5", "اسم6", "عبد",  "بن"};
  std::uniform_int_distribution<std::size_t> pick(0, entity_vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> pad(0, 2);

  MatchTemplate tmpl;
  tmpl.prefix = {"مرساه1", "مرساه2"};
  tmpl.middle = {"وصله"};
  tmpl.suffix = Words{"ذيل1", "ذيل2", "ذيل3"};

  const Words particles = {"عبد", "بن", "ابو"};
  int recovered = 0;
  int cap_violating = 0;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 200 && ok; ++i) {
    Words e1(len(rng));
    Words e2(len(rng));
    for (auto& w : e1) w = entity_vocab[pick(rng)];
    for (auto& w : e2) w = entity_vocab[pick(rng)];

    Words tokens;
    for (int p = pad(rng); p > 0; --p) tokens.push_back("حشو");
    tokens.insert(tokens.end(), tmpl.prefix.begin(), tmpl.prefix.end());
    tokens.insert(tokens.end(), e1.begin(), e1.end());
    tokens.push_back(tmpl.middle[0]);
    tokens.insert(tokens.end(), e2.begin(), e2.end());
    tokens.insert(tokens.end(), tmpl.suffix->begin(), tmpl.suffix->end());
    for (int p = pad(rng); p > 0; --p) tokens.push_back("زياده");
    const Sentence sentence{tokens, SourceRef{}};

    const bool e1_fits =
        e1.size() <= 3 ||
        (e1.size() == 4 && std::count(particles.begin(), particles.end(),
                                      e1[2]) > 0);
    const auto matches = match_pattern(tmpl, sentence, 1);
    if (e1_fits) {
      if (matches.size() != 1 || matches[0].pair.e1 != join(e1, " ") ||
          matches[0].pair.e2 != join(e2, " ")) {
        ok = false;
        detail = "failed to recover a cap-satisfying pair at case " +
                 std::to_string(i);
      } else {
        ++recovered;
      }
    } else {
      // A cap violation must yield nothing; anything else would be an
      // anchor-violating extraction.
      if (!matches.empty()) {
        ok = false;
        detail = "extracted a cap-violating pair at case " + std::to_string(i);
      } else {
        ++cap_violating;
      }
    }
  }
  if (ok && (recovered == 0 || cap_violating == 0)) {
    ok = false;
    detail = "generator never hit both sides";
  }
  report(6, "planted pairs round-trip through match_pattern", ok, detail);
}

// --- criterion 7: seed-count trend ---------------------------------------

void criterion_seed_trend() {
  RunConfig config;
  config.seed_pairs =
      load_seeds_tsv(test::fixtures_dir() / "seedtrend" / "seeds.tsv");
  const SnapshotProvider provider(
      SnapshotStore::load(test::fixtures_dir() / "seedtrend" / "snapshot.jsonl"));

  std::vector<std::size_t> counts;
  for (std::size_t n = 1; n <= config.seed_pairs.size(); ++n) {
    const std::vector<InstancePair> seeds(config.seed_pairs.begin(),
                                          config.seed_pairs.begin() +
                                              static_cast<std::ptrdiff_t>(n));
    counts.push_back(derive_patterns(seeds, provider, config).size());
  }
  bool ok = counts.size() == 4;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    ok = ok && counts[i] >= counts[i - 1];
  }
  ok = ok && counts.back() > counts.front();
  std::ostringstream detail;
  detail << "counts:";
  for (std::size_t c : counts) detail << " " << c;
  report(7, "more seeds never shrink the learned pattern set", ok,
         detail.str());
}

// --- criterion 8: determinism --------------------------------------------

void criterion_determinism() {
  const std::string cli = test::cli_path();
  if (cli.empty()) {
    report(8, "repeated runs produce byte-identical artifacts", false,
           "AREX_CLI not set");
    return;
  }
  const auto config =
      (test::fixtures_dir() / "authorbook" / "config.toml").string();
  const auto a = test::temp_dir("acceptance_det_a");
  const auto b = test::temp_dir("acceptance_det_b");
  bool ok = true;
  for (const auto& dir : {a, b}) {
    ok = ok && test::run_command("\"" + cli + "\" run --config \"" + config +
                                 "\" --out \"" + dir.string() + "\"")
                       .exit_code == 0;
  }
  std::string detail;
  for (const char* name : {"instances.tsv", "patterns.tsv", "report.json"}) {
    if (test::read_file(a / name) != test::read_file(b / name)) {
      ok = false;
      detail = std::string(name) + " differs";
    }
  }
  report(8, "repeated runs produce byte-identical artifacts", ok, detail);
}

// --- criterion 9: normalization properties --------------------------------

void criterion_normalization_fuzz() {
  const NormalizationTable table = NormalizationTable::defaults();
  std::mt19937 rng(987654);
  const std::vector<char32_t> pool = {
      0x0627, 0x0628, 0x062A, 0x062C, 0x062D, 0x0633, 0x0645, 0x0646,
      0x0648, 0x064A, 0x0623, 0x0625, 0x0622, 0x0649, 0x0629, 0x0647,
      0x0621, 0x0639, 0x0631, 0x0644, 'a',    'b',    'X',    'z',
      '0',    '4',    '9',    '.',    ',',    '!',    '-',    '_',
      0x061F, 0x060C, 0x061B, 0x0640, 0x064B, 0x064E, 0x0650, 0x0652,
      0x0660, 0x0665, 0x06F1, 0x200F, 0x200B, '(',    ')',    '"',
      ' ',    ' ',    ' ',    '\t',   '\n',   '\r',   0x00A0, 0x2003,
  };
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, 60);

  bool ok = true;
  std::string detail;
  for (int i = 0; i < 10000 && ok; ++i) {
    std::string raw;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) utf8::append(raw, pool[pick(rng)]);

    const std::string once = normalize(raw, table);
    if (normalize(once, table) != once) {
      ok = false;
      detail = "idempotence broke on: " + raw;
      break;
    }
    for (const Sentence& sentence : segment(once)) {
      for (const std::string& token : sentence.tokens) {
        for (char32_t cp : utf8::decode(token)) {
          if (!is_arabic_letter(cp)) {
            ok = false;
            detail = "impure token: " + token;
          }
        }
      }
    }
  }
  report(9, "normalization idempotence and token purity on 10k strings", ok,
         detail);
}

}  // namespace

int main() {
  criterion_metric_reproduction();
  criterion_confidence_reproduction();
  criterion_fixture_trajectory();
  criterion_merge_oracle();
  criterion_filter_table();
  criterion_round_trip();
  criterion_seed_trend();
  criterion_determinism();
  criterion_normalization_fuzz();

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
