#include "arex/normalize.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arex/errors.hpp"
#include "arex/utf8.hpp"

namespace arex {

namespace {

// Arabic letters of interest.
constexpr char32_t kAlef = 0x0627;          // ا
constexpr char32_t kAlefMadda = 0x0622;     // آ
constexpr char32_t kAlefHamzaAbove = 0x0623;  // أ
constexpr char32_t kAlefHamzaBelow = 0x0625;  // إ
constexpr char32_t kTehMarbuta = 0x0629;    // ة
constexpr char32_t kHeh = 0x0647;           // ه
constexpr char32_t kAlefMaksura = 0x0649;   // ى
constexpr char32_t kYeh = 0x064A;           // ي

std::map<char32_t, char32_t> base_map() {
  return {
      {kAlefHamzaAbove, kAlef},
      {kAlefHamzaBelow, kAlef},
      {kAlefMadda, kAlef},
      {kAlefMaksura, kYeh},
  };
}

std::set<std::string> default_stopwords() {
  // Closed set of web-page boilerplate words; extendable via config.
  return {"مجاناً", "موقع", "تحميل"};
}

}  // namespace

bool is_arabic_letter(char32_t cp) {
  return (cp >= 0x0621 && cp <= 0x063A) || (cp >= 0x0641 && cp <= 0x064A);
}

bool is_stripped_mark(char32_t cp) {
  if (cp == 0x0640) return true;                   // tatweel
  if (cp >= 0x064B && cp <= 0x065F) return true;   // harakat
  if (cp == 0x0670) return true;                   // superscript alef
  if (cp >= 0x200B && cp <= 0x200F) return true;   // ZWSP..RLM
  if (cp == 0xFEFF) return true;                   // BOM / ZWNBSP
  return false;
}

bool is_line_break(char32_t cp) {
  return cp == '\n' || cp == '\r' || cp == 0x0085 || cp == 0x2028 ||
         cp == 0x2029;
}

bool is_space_char(char32_t cp) {
  switch (cp) {
    case '\t':
    case '\v':
    case '\f':
    case ' ':
    case 0x00A0:
    case 0x1680:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

NormalizationTable::NormalizationTable(std::map<char32_t, char32_t> map,
                                       std::set<std::string> stopwords)
    : char_map_(std::move(map)) {
  // Stop-words are matched against folded tokens, so fold them too.
  for (const std::string& word : stopwords) {
    std::string folded;
    for (char32_t cp : utf8::decode(word)) {
      const char32_t f = fold(cp);
      if (is_arabic_letter(f)) utf8::append(folded, f);
    }
    if (!folded.empty()) stopwords_.insert(folded);
  }
}

NormalizationTable NormalizationTable::defaults() {
  auto map = base_map();
  map.emplace(kTehMarbuta, kHeh);
  return NormalizationTable(std::move(map), default_stopwords());
}

NormalizationTable NormalizationTable::paper_folding() {
  auto map = base_map();
  map.emplace(kHeh, kTehMarbuta);
  return NormalizationTable(std::move(map), default_stopwords());
}

NormalizationTable NormalizationTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open normalization table: " + file.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid normalization table " + file.string() + ": " +
                      e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("normalization table must be a JSON object");
  }
  std::map<char32_t, char32_t> map;
  if (doc.contains("char_map")) {
    for (const auto& [key, value] : doc.at("char_map").items()) {
      char32_t from = 0;
      char32_t to = 0;
      if (!utf8::decode_one(key, from) ||
          !utf8::decode_one(value.get<std::string>(), to)) {
        throw ConfigError("char_map entries must be single characters");
      }
      map[from] = to;
    }
  }
  std::set<std::string> stopwords = default_stopwords();
  if (doc.contains("web_stopwords")) {
    for (const auto& w : doc.at("web_stopwords")) {
      stopwords.insert(w.get<std::string>());
    }
  }
  return NormalizationTable(std::move(map), std::move(stopwords));
}

char32_t NormalizationTable::fold(char32_t cp) const {
  const auto it = char_map_.find(cp);
  return it == char_map_.end() ? cp : it->second;
}

bool NormalizationTable::is_stopword(const std::string& folded_word) const {
  return stopwords_.count(folded_word) > 0;
}

std::string normalize(std::string_view raw, const NormalizationTable& table) {
  const std::vector<char32_t> cps = utf8::decode(raw);

  std::string out;
  std::string word;
  bool line_has_word = false;
  bool out_has_line = false;

  const auto flush_word = [&] {
    if (word.empty()) return;
    if (!table.is_stopword(word)) {
      if (line_has_word) {
        out.push_back(' ');
      } else {
        if (out_has_line) out.push_back('\n');
        line_has_word = true;
        out_has_line = true;
      }
      out.append(word);
    }
    word.clear();
  };

  for (char32_t cp : cps) {
    if (is_line_break(cp)) {
      flush_word();
      line_has_word = false;
      continue;
    }
    if (is_space_char(cp)) {
      flush_word();
      continue;
    }
    const char32_t folded = table.fold(cp);
    if (is_arabic_letter(folded)) {
      utf8::append(word, folded);
    }
    // Everything else (punctuation, digits, Latin letters, diacritics,
    // tatweel, symbols) is dropped in place, so a word glued to noise
    // keeps its surviving letters as one token.
  }
  flush_word();
  return out;
}

}  // namespace arex
