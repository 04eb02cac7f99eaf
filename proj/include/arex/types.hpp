#ifndef AREX_TYPES_HPP
#define AREX_TYPES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arex {

using Words = std::vector<std::string>;

// A context field of an occurrence or pattern. std::nullopt is the
// "null" state, which is distinct from an empty word list: a null field
// means the sentence had no words there at all.
using OptWords = std::optional<Words>;

// Half-open token range [begin, end) within a sentence.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool precedes(const TokenSpan& other) const { return end <= other.begin; }
  bool overlaps(const TokenSpan& other) const {
    return begin < other.end && other.begin < end;
  }
  bool operator==(const TokenSpan&) const = default;
};

// An ordered (e1, e2) entity pair: the unit of input seeds and output
// results. first_seen is 0 for user-provided seeds and k >= 1 for pairs
// first extracted in iteration k.
struct InstancePair {
  std::string e1;
  std::string e2;
  int first_seen = 0;

  bool is_seed() const { return first_seen == 0; }
  std::pair<std::string, std::string> key() const { return {e1, e2}; }
  bool operator==(const InstancePair&) const = default;
};

// Where a sentence came from: the query that fetched its summary, the
// summary rank, and the line within the summary.
struct SourceRef {
  std::string query;
  int rank = 0;
  int line = 0;
  bool operator==(const SourceRef&) const = default;
};

// One candidate line of a normalized summary, split into tokens. Tokens
// are non-empty and contain no whitespace.
struct Sentence {
  Words tokens;
  SourceRef source;
};

// The 6-part decomposition of one validated sentence around an entity
// pair: (prefix, e1, middle, e2, suffix, order).
struct Occurrence {
  OptWords prefix;   // <= 2 words before the first entity
  OptWords middle;   // <= 3 words between the entities
  OptWords suffix;   // <= 3 words after the second entity
  TokenSpan e1_span;
  TokenSpan e2_span;
  bool e1_first = true;  // order flag: true iff e1 precedes e2
  SourceRef source;
};

// Correct/incorrect instance counts attributed to a pattern by the
// evaluation stage.
struct PatternStats {
  int positive = 0;
  int negative = 0;
  bool evaluated() const { return positive + negative > 0; }
};

// A generalized extraction template with entity slots. Shape identity
// is (prefix, middle, suffix, e1_first); repetition counts the merged
// occurrences and recurrence the iterations in which the same shape was
// re-derived.
struct Pattern {
  OptWords prefix;
  OptWords middle;
  OptWords suffix;
  bool e1_first = true;
  int repetition = 1;
  int recurrence = 1;
  PatternStats stats;

  bool queryable() const { return prefix.has_value() && middle.has_value(); }
};

inline bool same_shape(const Pattern& a, const Pattern& b) {
  return a.e1_first == b.e1_first && a.prefix == b.prefix &&
         a.middle == b.middle && a.suffix == b.suffix;
}

}  // namespace arex

#endif  // AREX_TYPES_HPP
