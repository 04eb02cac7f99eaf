#ifndef AREX_STRINGS_HPP
#define AREX_STRINGS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace arex {

std::vector<std::string> split(std::string_view text, char delim);

// Splits on runs of ASCII space; never yields empty tokens.
std::vector<std::string> split_words(std::string_view text);

std::string join(const std::vector<std::string>& parts,
                 std::string_view sep);

std::string_view trim(std::string_view text);

}  // namespace arex

#endif  // AREX_STRINGS_HPP
