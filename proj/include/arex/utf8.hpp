#ifndef AREX_UTF8_HPP
#define AREX_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace arex::utf8 {

// Decodes UTF-8 into code points. Invalid byte sequences decode to
// U+FFFD so that dirty web snippets never abort the pipeline; the
// replacement character is later dropped as a non-Arabic symbol.
std::vector<char32_t> decode(std::string_view text);

// Encodes a single code point, appending to `out`.
void append(std::string& out, char32_t cp);

std::string encode(const std::vector<char32_t>& cps);

// Decodes exactly one code point; used to validate single-character
// normalization-table entries.
bool decode_one(std::string_view text, char32_t& cp);

}  // namespace arex::utf8

#endif  // AREX_UTF8_HPP
