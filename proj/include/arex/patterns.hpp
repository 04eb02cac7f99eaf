#ifndef AREX_PATTERNS_HPP
#define AREX_PATTERNS_HPP

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "arex/types.hpp"

namespace arex {

// Context-width caps applied when an occurrence is cut out of a
// sentence: at most prefix_max words before the first entity, middle_max
// between the entities, suffix_max after the second.
struct ContextCaps {
  std::size_t prefix_max = 2;
  std::size_t middle_max = 3;
  std::size_t suffix_max = 3;
};

// Accepts a sentence for a pair when both entities occur as contiguous
// token runs and at most middle_max tokens lie strictly between them.
// Entity matching uses the leftmost e1 occurrence and the disjoint e2
// occurrence minimizing the gap (ties prefer e1-before-e2, then the
// leftmost e2). Returns (e1_span, e2_span), or nothing.
std::optional<std::pair<TokenSpan, TokenSpan>> validate_sentence(
    const Sentence& sentence, const InstancePair& pair,
    std::size_t middle_max = 3);

// Cuts the 6-part occurrence out of a validated sentence. Context
// fields that have no words become null. Throws SpanOverlap when the
// spans intersect.
Occurrence build_occurrence(const Sentence& sentence, TokenSpan e1_span,
                            TokenSpan e2_span, const ContextCaps& caps = {});

// Folds occurrences into generalized patterns:
//   1. occurrences of different order never merge; anything unmergeable
//      becomes a singleton pattern with repetition 1;
//   2. identical prefix + middle + order merge; the suffix survives only
//      when identical on both sides, otherwise it becomes null;
//   3. differing prefix/middle merge when the prefixes share at least
//      one word AND the middles share at least one word; the merged
//      fields are the order-preserving intersections and the suffix
//      becomes null.
// Occurrences are processed in input order; each is tested against
// existing patterns in creation order and the first match wins, so the
// result is a pure function of the input list. Sum of repetitions always
// equals the input size.
std::vector<Pattern> merge_occurrences(const std::vector<Occurrence>& occs);

// Pattern table TSV: prefix|middle|suffix|order|repetition|positive|
// negative|confidence, tab-separated, null fields as the literal U+2205.
// The 1-based row number is the pattern id referenced by instance rows.
void write_patterns_tsv(std::ostream& out, const std::vector<Pattern>& patterns);
std::vector<Pattern> read_patterns_tsv(std::istream& in);

}  // namespace arex

#endif  // AREX_PATTERNS_HPP
