#include "arex/extract.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "arex/strings.hpp"

namespace arex {

namespace {

bool run_matches(const Words& tokens, std::size_t at, const Words& run) {
  if (at + run.size() > tokens.size()) return false;
  for (std::size_t k = 0; k < run.size(); ++k) {
    if (tokens[at + k] != run[k]) return false;
  }
  return true;
}

// First start >= from where `run` occurs, or npos.
std::size_t find_from(const Words& tokens, std::size_t from,
                      const Words& run) {
  if (run.empty()) return std::string::npos;
  for (std::size_t i = from; i + run.size() <= tokens.size(); ++i) {
    if (run_matches(tokens, i, run)) return i;
  }
  return std::string::npos;
}

bool e1_run_ok(const Words& run, const SlotCaps& caps) {
  if (run.size() <= caps.e1_max) return true;
  if (run.size() == caps.e1_max + 1 && run.size() >= 3) {
    const std::string& third = run[2];
    return std::find(caps.e1_particles.begin(), caps.e1_particles.end(),
                     third) != caps.e1_particles.end();
  }
  return false;
}

std::string join_run(const Words& tokens, std::size_t begin,
                     std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

bool starts_with_al(const std::string& word) {
  // "ال" is 0xD8 0xA7 0xD9 0x84 in UTF-8.
  return word.size() >= 4 && static_cast<unsigned char>(word[0]) == 0xD8 &&
         static_cast<unsigned char>(word[1]) == 0xA7 &&
         static_cast<unsigned char>(word[2]) == 0xD9 &&
         static_cast<unsigned char>(word[3]) == 0x84;
}

// True when `longer` extends `shorter` with extra trailing words.
bool extends(const Words& shorter, const Words& longer) {
  if (shorter.size() >= longer.size()) return false;
  for (std::size_t i = 0; i < shorter.size(); ++i) {
    if (shorter[i] != longer[i]) return false;
  }
  return true;
}

}  // namespace

std::optional<MatchTemplate> make_template(const Pattern& pattern,
                                           const SlotCaps& caps) {
  if (!pattern.queryable()) return std::nullopt;
  MatchTemplate tmpl;
  tmpl.prefix = *pattern.prefix;
  tmpl.middle = *pattern.middle;
  tmpl.suffix = pattern.suffix;
  tmpl.e1_first = pattern.e1_first;
  tmpl.caps = caps;
  return tmpl;
}

std::vector<CandidateInstance> match_pattern(const MatchTemplate& tmpl,
                                             const Sentence& sentence,
                                             int pattern_id) {
  std::vector<CandidateInstance> out;
  const Words& tokens = sentence.tokens;
  const std::size_t first_cap =
      tmpl.e1_first ? tmpl.caps.e1_max + 1 : tmpl.caps.e2_max;

  for (std::size_t i = 0; i + tmpl.prefix.size() <= tokens.size(); ++i) {
    if (!run_matches(tokens, i, tmpl.prefix)) continue;
    const std::size_t slot1_begin = i + tmpl.prefix.size();

    // Nearest middle anchor leaving a non-empty first slot.
    const std::size_t mid = find_from(tokens, slot1_begin + 1, tmpl.middle);
    if (mid == std::string::npos) continue;
    const std::size_t slot1_len = mid - slot1_begin;
    if (slot1_len > first_cap) continue;
    const Words slot1(tokens.begin() + static_cast<std::ptrdiff_t>(slot1_begin),
                      tokens.begin() + static_cast<std::ptrdiff_t>(mid));
    if (tmpl.e1_first && !e1_run_ok(slot1, tmpl.caps)) continue;
    if (!tmpl.e1_first && slot1.size() > tmpl.caps.e2_max) continue;

    const std::size_t slot2_begin = mid + tmpl.middle.size();
    std::size_t slot2_end = 0;
    if (tmpl.suffix.has_value()) {
      const std::size_t suf = find_from(tokens, slot2_begin + 1, *tmpl.suffix);
      if (suf == std::string::npos) continue;
      slot2_end = suf;
    } else {
      // No right anchor: shortest non-empty run is a single token.
      if (slot2_begin >= tokens.size()) continue;
      slot2_end = slot2_begin + 1;
    }
    const Words slot2(tokens.begin() + static_cast<std::ptrdiff_t>(slot2_begin),
                      tokens.begin() + static_cast<std::ptrdiff_t>(slot2_end));
    if (tmpl.e1_first) {
      if (slot2.size() > tmpl.caps.e2_max) continue;
    } else {
      if (!e1_run_ok(slot2, tmpl.caps)) continue;
    }

    CandidateInstance cand;
    const std::string first_text = join_run(tokens, slot1_begin, mid);
    const std::string second_text = join_run(tokens, slot2_begin, slot2_end);
    cand.pair.e1 = tmpl.e1_first ? first_text : second_text;
    cand.pair.e2 = tmpl.e1_first ? second_text : first_text;
    cand.pattern_id = pattern_id;
    cand.sentence = sentence.source;
    out.push_back(std::move(cand));
  }
  return out;
}

std::vector<CandidateInstance> filter_candidates(
    const std::vector<CandidateInstance>& candidates, const SlotCaps& caps) {
  // R1: collapse exact duplicates, keeping the first.
  std::vector<CandidateInstance> unique;
  std::set<std::pair<std::string, std::string>> seen;
  for (const CandidateInstance& c : candidates) {
    if (seen.insert(c.pair.key()).second) unique.push_back(c);
  }

  // R2: among pairs sharing e2, an e1 that extends another pair's e1
  // with extra words collapses into the shorter one.
  std::vector<CandidateInstance> merged;
  for (const CandidateInstance& c : unique) {
    const Words e1_words = split_words(c.pair.e1);
    bool subsumed = false;
    for (const CandidateInstance& other : unique) {
      if (other.pair.e2 != c.pair.e2) continue;
      if (extends(split_words(other.pair.e1), e1_words)) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) merged.push_back(c);
  }

  // R3 + R4 on e1.
  std::vector<CandidateInstance> out;
  for (const CandidateInstance& c : merged) {
    const Words e1_words = split_words(c.pair.e1);
    if (e1_words.empty()) continue;
    if (!e1_run_ok(e1_words, caps)) continue;
    if (e1_words.size() == 1 && !starts_with_al(e1_words[0])) continue;
    out.push_back(c);
  }
  return out;
}

std::vector<InstancePair> filter_instances(
    const std::vector<CandidateInstance>& candidates, const SlotCaps& caps) {
  std::vector<InstancePair> out;
  for (const CandidateInstance& c : filter_candidates(candidates, caps)) {
    out.push_back(c.pair);
  }
  return out;
}

}  // namespace arex
