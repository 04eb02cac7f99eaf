#include "arex/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "arex/errors.hpp"
#include "arex/strings.hpp"

namespace arex {

namespace {

constexpr const char* kNullField = "∅";

// All start positions where `needle` occurs as a contiguous token run.
std::vector<std::size_t> find_runs(const Words& haystack, const Words& needle) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > haystack.size()) return out;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (haystack[i + k] != needle[k]) {
        hit = false;
        break;
      }
    }
    if (hit) out.push_back(i);
  }
  return out;
}

std::size_t gap_between(const TokenSpan& a, const TokenSpan& b) {
  if (a.precedes(b)) return b.begin - a.end;
  return a.begin - b.end;
}

OptWords slice_or_null(const Words& tokens, std::size_t begin,
                       std::size_t end) {
  if (begin >= end) return std::nullopt;
  return Words(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
               tokens.begin() + static_cast<std::ptrdiff_t>(end));
}

bool shares_word(const OptWords& a, const OptWords& b) {
  if (!a || !b) return false;
  for (const std::string& w : *a) {
    if (std::find(b->begin(), b->end(), w) != b->end()) return true;
  }
  return false;
}

// Common words in the relative order of the first argument.
OptWords intersect(const OptWords& a, const OptWords& b) {
  if (!a || !b) return std::nullopt;
  Words out;
  for (const std::string& w : *a) {
    if (std::find(b->begin(), b->end(), w) != b->end() &&
        std::find(out.begin(), out.end(), w) == out.end()) {
      out.push_back(w);
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// Tries to fold `occ` into `pattern`; true when merged.
bool try_merge(Pattern& pattern, const Occurrence& occ) {
  if (pattern.e1_first != occ.e1_first) return false;
  if (pattern.prefix == occ.prefix && pattern.middle == occ.middle) {
    if (pattern.suffix != occ.suffix) pattern.suffix = std::nullopt;
    pattern.repetition += 1;
    return true;
  }
  if (shares_word(pattern.prefix, occ.prefix) &&
      shares_word(pattern.middle, occ.middle)) {
    pattern.prefix = intersect(pattern.prefix, occ.prefix);
    pattern.middle = intersect(pattern.middle, occ.middle);
    pattern.suffix = std::nullopt;
    pattern.repetition += 1;
    return true;
  }
  return false;
}

std::string field_to_tsv(const OptWords& field) {
  if (!field) return kNullField;
  return join(*field, " ");
}

OptWords field_from_tsv(const std::string& cell) {
  if (cell == kNullField) return std::nullopt;
  return split_words(cell);
}

}  // namespace

std::optional<std::pair<TokenSpan, TokenSpan>> validate_sentence(
    const Sentence& sentence, const InstancePair& pair,
    std::size_t middle_max) {
  const Words e1_tokens = split_words(pair.e1);
  const Words e2_tokens = split_words(pair.e2);
  if (e1_tokens.empty() || e2_tokens.empty()) return std::nullopt;

  const std::vector<std::size_t> e1_starts =
      find_runs(sentence.tokens, e1_tokens);
  if (e1_starts.empty()) return std::nullopt;
  const std::vector<std::size_t> e2_starts =
      find_runs(sentence.tokens, e2_tokens);
  if (e2_starts.empty()) return std::nullopt;

  const TokenSpan e1{e1_starts.front(), e1_starts.front() + e1_tokens.size()};

  bool found = false;
  TokenSpan best{};
  std::size_t best_gap = std::numeric_limits<std::size_t>::max();
  bool best_follows = false;
  for (std::size_t start : e2_starts) {
    const TokenSpan e2{start, start + e2_tokens.size()};
    if (e2.overlaps(e1)) continue;
    const std::size_t gap = gap_between(e1, e2);
    const bool follows = e1.precedes(e2);
    if (!found || gap < best_gap || (gap == best_gap && follows && !best_follows)) {
      found = true;
      best = e2;
      best_gap = gap;
      best_follows = follows;
    }
  }
  if (!found || best_gap > middle_max) return std::nullopt;
  return std::make_pair(e1, best);
}

Occurrence build_occurrence(const Sentence& sentence, TokenSpan e1_span,
                            TokenSpan e2_span, const ContextCaps& caps) {
  if (e1_span.overlaps(e2_span)) {
    throw SpanOverlap("entity spans overlap at token " +
                      std::to_string(std::max(e1_span.begin, e2_span.begin)));
  }
  const bool e1_first = e1_span.precedes(e2_span);
  const TokenSpan& first = e1_first ? e1_span : e2_span;
  const TokenSpan& second = e1_first ? e2_span : e1_span;
  const Words& tokens = sentence.tokens;

  Occurrence occ;
  occ.e1_span = e1_span;
  occ.e2_span = e2_span;
  occ.e1_first = e1_first;
  occ.source = sentence.source;

  const std::size_t prefix_begin =
      first.begin > caps.prefix_max ? first.begin - caps.prefix_max : 0;
  occ.prefix = slice_or_null(tokens, prefix_begin, first.begin);
  occ.middle = slice_or_null(tokens, first.end, second.begin);
  occ.suffix = slice_or_null(
      tokens, second.end,
      std::min(tokens.size(), second.end + caps.suffix_max));
  return occ;
}

std::vector<Pattern> merge_occurrences(const std::vector<Occurrence>& occs) {
  std::vector<Pattern> patterns;
  for (const Occurrence& occ : occs) {
    bool merged = false;
    for (Pattern& pattern : patterns) {
      if (try_merge(pattern, occ)) {
        merged = true;
        break;
      }
    }
    if (!merged) {
      Pattern p;
      p.prefix = occ.prefix;
      p.middle = occ.middle;
      p.suffix = occ.suffix;
      p.e1_first = occ.e1_first;
      p.repetition = 1;
      patterns.push_back(std::move(p));
    }
  }
  return patterns;
}

void write_patterns_tsv(std::ostream& out,
                        const std::vector<Pattern>& patterns) {
  for (const Pattern& p : patterns) {
    out << field_to_tsv(p.prefix) << '\t' << field_to_tsv(p.middle) << '\t'
        << field_to_tsv(p.suffix) << '\t' << (p.e1_first ? "true" : "false")
        << '\t' << p.repetition << '\t' << p.stats.positive << '\t'
        << p.stats.negative << '\t';
    if (p.stats.evaluated()) {
      std::ostringstream conf;
      conf.precision(6);
      conf << static_cast<double>(p.stats.positive) /
                  (p.stats.positive + p.stats.negative);
      out << conf.str();
    } else {
      out << kNullField;
    }
    out << '\n';
  }
}

std::vector<Pattern> read_patterns_tsv(std::istream& in) {
  std::vector<Pattern> patterns;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, '\t');
    if (cells.size() != 8) {
      throw IoError("patterns.tsv:" + std::to_string(line_no) +
                    ": expected 8 columns, got " +
                    std::to_string(cells.size()));
    }
    Pattern p;
    p.prefix = field_from_tsv(cells[0]);
    p.middle = field_from_tsv(cells[1]);
    p.suffix = field_from_tsv(cells[2]);
    p.e1_first = cells[3] == "true";
    p.repetition = std::stoi(cells[4]);
    p.stats.positive = std::stoi(cells[5]);
    p.stats.negative = std::stoi(cells[6]);
    patterns.push_back(std::move(p));
  }
  return patterns;
}

}  // namespace arex
