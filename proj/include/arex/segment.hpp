#ifndef AREX_SEGMENT_HPP
#define AREX_SEGMENT_HPP

#include <string_view>
#include <vector>

#include "arex/types.hpp"

namespace arex {

// Splits normalized text into candidate sentences, one per line. The
// normalizer preserves the line breaks of the original summary, so each
// summary snippet line becomes one sentence of whitespace-split tokens.
std::vector<Sentence> segment(std::string_view normalized);
std::vector<Sentence> segment(std::string_view normalized,
                              const SourceRef& origin);

}  // namespace arex

#endif  // AREX_SEGMENT_HPP
