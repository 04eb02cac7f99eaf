#include "arex/segment.hpp"

#include "arex/strings.hpp"

namespace arex {

std::vector<Sentence> segment(std::string_view normalized) {
  return segment(normalized, SourceRef{});
}

std::vector<Sentence> segment(std::string_view normalized,
                              const SourceRef& origin) {
  std::vector<Sentence> out;
  if (normalized.empty()) return out;
  int line_no = 0;
  for (const std::string& line : split(normalized, '\n')) {
    ++line_no;
    Words tokens = split_words(line);
    if (tokens.empty()) continue;
    SourceRef src = origin;
    src.line = line_no;
    out.push_back(Sentence{std::move(tokens), std::move(src)});
  }
  return out;
}

}  // namespace arex
