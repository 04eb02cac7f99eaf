#ifndef AREX_NORMALIZE_HPP
#define AREX_NORMALIZE_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace arex {

// Character folding plus removal classes for raw snippet text.
//
// normalize() applies, per word of each input line:
//   1. char_map substitution per code point,
//   2. removal of everything that is not an Arabic letter after folding
//      (punctuation, digits, Latin letters, tatweel, diacritics),
// then drops words that fold to nothing or to a web stop-word, collapses
// the survivors with single spaces, and keeps line breaks so that the
// segmenter can treat each summary line as one candidate sentence.
//
// The default table folds alif variants to bare alif, alif maqsura to
// yaa, and taa marbuta to haa. The folding direction of the haa pair is
// debatable for this corpus, so paper_folding() provides the reverse
// (haa -> taa marbuta) and arbitrary maps can be loaded from JSON.
class NormalizationTable {
 public:
  static NormalizationTable defaults();
  static NormalizationTable paper_folding();

  // JSON file: {"char_map": {"أ": "ا", ...}, "web_stopwords": ["موقع", ...]}
  // Every char_map key and value must be a single code point.
  static NormalizationTable load(const std::filesystem::path& file);

  char32_t fold(char32_t cp) const;
  bool is_stopword(const std::string& folded_word) const;

  const std::map<char32_t, char32_t>& char_map() const { return char_map_; }
  const std::set<std::string>& web_stopwords() const { return stopwords_; }

 private:
  NormalizationTable(std::map<char32_t, char32_t> map,
                     std::set<std::string> stopwords);

  std::map<char32_t, char32_t> char_map_;
  std::set<std::string> stopwords_;  // stored folded
};

std::string normalize(std::string_view raw, const NormalizationTable& table);

// Character classes used by the normalizer; exposed for tests.
bool is_arabic_letter(char32_t cp);
bool is_stripped_mark(char32_t cp);  // tatweel, diacritics, format controls
bool is_line_break(char32_t cp);
bool is_space_char(char32_t cp);

}  // namespace arex

#endif  // AREX_NORMALIZE_HPP
