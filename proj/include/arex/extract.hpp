#ifndef AREX_EXTRACT_HPP
#define AREX_EXTRACT_HPP

#include <optional>
#include <string>
#include <vector>

#include "arex/types.hpp"

namespace arex {

// Bounds on the token runs that may fill an entity slot. e1 may take one
// extra word (4 instead of 3) when its third word is a patronymic
// particle, because an Arabic person name cannot end in one.
struct SlotCaps {
  std::size_t e1_max = 3;
  std::size_t e2_max = 4;
  Words e1_particles = {"عبد", "بن", "ابو"};
};

// The matchable 5-part form (prefix, slot, middle, slot, suffix) of a
// pattern. Which slot is e1 follows the pattern's order flag.
struct MatchTemplate {
  Words prefix;
  Words middle;
  OptWords suffix;
  bool e1_first = true;
  SlotCaps caps;
};

// Builds a template from a pattern; patterns lacking prefix or middle
// have no usable search parts and yield nothing.
std::optional<MatchTemplate> make_template(const Pattern& pattern,
                                           const SlotCaps& caps = {});

struct CandidateInstance {
  InstancePair pair;
  int pattern_id = -1;
  SourceRef sentence;
};

// Cuts every anchor-consistent 5-part split of the sentence into a
// candidate pair. Slot runs are the shortest non-empty token sequences
// consistent with the anchors; a null suffix leaves the second slot
// anchored only on its left, so it takes a single token. Runs beyond the
// entity caps reject the match position.
std::vector<CandidateInstance> match_pattern(const MatchTemplate& tmpl,
                                             const Sentence& sentence,
                                             int pattern_id = -1);

// Applies the four validation rules in order:
//   R1 exact duplicates on (e1, e2) collapse to one;
//   R2 pairs with equal e2 whose e1s extend one another by extra words
//      collapse to the shared token-prefix e1;
//   R3 e1 longer than 3 words is rejected unless it has exactly 4 words
//      and the third is a patronymic particle;
//   R4 a single-word e1 is rejected unless the word starts with "ال".
// Keeps first-seen order and the surviving candidate's attribution.
std::vector<CandidateInstance> filter_candidates(
    const std::vector<CandidateInstance>& candidates,
    const SlotCaps& caps = {});

std::vector<InstancePair> filter_instances(
    const std::vector<CandidateInstance>& candidates,
    const SlotCaps& caps = {});

}  // namespace arex

#endif  // AREX_EXTRACT_HPP
