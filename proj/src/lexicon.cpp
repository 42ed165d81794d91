// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "pitchlex/error.hpp"
#include "text_util.hpp"

namespace pitchlex {
namespace {

constexpr char32_t kRightQuote = 0x2019;
constexpr std::string_view kNumberPattern = "<number>";

bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

char32_t fold(char32_t cp) { return cp == kRightQuote ? U'\'' : cp; }

// Peeks the code point at `pos` without advancing the caller.
char32_t peek(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  return fold(detail::next_code_point(s, pos));
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "dictionary line " + std::to_string(line) + ": " + what);
}

int parse_id(std::string_view text, std::size_t line) {
  int id = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, id);
  if (ec != std::errc() || ptr != end) fail(line, "invalid category id '" + std::string(text) + "'");
  return id;
}

void merge_ids(std::vector<int>& into, const std::vector<int>& ids) {
  into.insert(into.end(), ids.begin(), ids.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = fold(detail::next_code_point(text, pos));
    if (detail::is_letter(cp)) {
      Token tok{{}, TokenKind::Word};
      detail::append_utf8(tok.surface, detail::to_lower(cp));
      while (pos < text.size()) {
        auto look = pos;
        const char32_t next = fold(detail::next_code_point(text, look));
        if (detail::is_letter(next)) {
          detail::append_utf8(tok.surface, detail::to_lower(next));
          pos = look;
        } else if (next == U'\'' && detail::is_letter(peek(text, look))) {
          tok.surface.push_back('\'');
          pos = look;
        } else {
          break;
        }
      }
      tokens.push_back(std::move(tok));
    } else if (is_ascii_digit(cp)) {
      Token tok{std::string(1, static_cast<char>(cp)), TokenKind::Number};
      while (pos < text.size()) {
        const char c = text[pos];
        if (is_ascii_digit(static_cast<unsigned char>(c))) {
          tok.surface.push_back(c);
          ++pos;
        } else if ((c == ',' || c == '.') && pos + 1 < text.size() &&
                   is_ascii_digit(static_cast<unsigned char>(text[pos + 1]))) {
          tok.surface.push_back(c);
          ++pos;
        } else {
          break;
        }
      }
      tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

std::size_t letter_count(std::string_view surface) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < surface.size()) {
    if (detail::is_letter(detail::next_code_point(surface, pos))) ++n;
  }
  return n;
}

CategoryDictionary CategoryDictionary::load(std::string_view bytes) {
  CategoryDictionary dict;
  const std::string text = detail::normalize_newlines(detail::strip_bom(bytes));
  const auto lines = detail::split_lines(text);

  enum class Section { Preamble, Categories, Entries } section = Section::Preamble;
  std::unordered_set<std::string> names;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    if (line == "%") {
      if (section == Section::Preamble) {
        section = Section::Categories;
      } else if (section == Section::Categories) {
        section = Section::Entries;
      } else {
        fail(line_no, "unexpected third '%' separator");
      }
      continue;
    }

    const auto fields = split_fields(line);
    switch (section) {
      case Section::Preamble:
        fail(line_no, "expected '%' before category declarations");
      case Section::Categories: {
        if (fields.size() != 2) fail(line_no, "category declaration must be 'id<TAB>name'");
        const int id = parse_id(fields[0], line_no);
        if (dict.index_of_.count(id)) fail(line_no, "duplicate category id " + std::to_string(id));
        std::string name(fields[1]);
        if (!names.insert(name).second) fail(line_no, "duplicate category name '" + name + "'");
        dict.index_of_.emplace(id, dict.categories_.size());
        dict.categories_.push_back({id, std::move(name)});
        break;
      }
      case Section::Entries: {
        if (fields.size() < 2) fail(line_no, "entry needs a pattern and at least one category id");
        std::string pattern = detail::to_lower_utf8(fields[0]);
        std::vector<int> ids;
        for (std::size_t f = 1; f < fields.size(); ++f) {
          const int id = parse_id(fields[f], line_no);
          if (!dict.index_of_.count(id)) {
            fail(line_no, "entry '" + pattern + "' references unknown category id " +
                              std::to_string(id));
          }
          ids.push_back(id);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        if (pattern == kNumberPattern) {
          merge_ids(dict.number_wildcard_, ids);
          break;
        }
        const auto star = pattern.find('*');
        if (star != std::string::npos && star != pattern.size() - 1) {
          fail(line_no, "wildcard '*' is only allowed as the final character in '" + pattern + "'");
        }
        if (star == std::string::npos) {
          merge_ids(dict.exact_[pattern], ids);
        } else {
          pattern.pop_back();
          if (pattern.empty()) fail(line_no, "bare '*' is not a valid pattern");
          dict.longest_stem_ = std::max(dict.longest_stem_, pattern.size());
          merge_ids(dict.stems_[pattern], ids);
        }
        break;
      }
    }
  }
  return dict;
}

std::optional<int> CategoryDictionary::find_category(std::string_view name) const {
  for (const auto& c : categories_) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

std::span<const int> CategoryDictionary::match(const Token& token) const {
  if (const auto it = exact_.find(token.surface); it != exact_.end()) return it->second;
  if (token.kind == TokenKind::Number) return number_wildcard_;

  const std::string_view surface = token.surface;
  for (std::size_t len = std::min(longest_stem_, surface.size()); len > 0; --len) {
    if (const auto it = stems_.find(surface.substr(0, len)); it != stems_.end()) {
      return it->second;
    }
  }
  return {};
}

CategoryProfile category_percentages(const CategoryDictionary& dict, std::span<const Token> tokens,
                                     std::optional<int> number_word_category) {
  CategoryProfile profile;
  profile.word_count = tokens.size();
  profile.category_pct.assign(dict.categories().size(), 0.0);
  if (tokens.empty()) return profile;

  std::vector<std::size_t> hits(dict.categories().size(), 0);
  std::size_t in_dictionary = 0;
  std::size_t long_words = 0;
  std::size_t numbers = 0;

  for (const auto& tok : tokens) {
    const auto ids = dict.match(tok);
    if (!ids.empty()) ++in_dictionary;
    bool number_word = false;
    for (int id : ids) {
      ++hits[dict.index_of(id)];
      if (number_word_category && id == *number_word_category) number_word = true;
    }
    if (tok.kind == TokenKind::Number) {
      ++numbers;
    } else {
      if (number_word) ++numbers;
      if (letter_count(tok.surface) >= 7) ++long_words;
    }
  }

  const double n = static_cast<double>(tokens.size());
  for (std::size_t i = 0; i < hits.size(); ++i) profile.category_pct[i] = 100.0 * hits[i] / n;
  profile.dictionary_pct = 100.0 * in_dictionary / n;
  profile.sixltr_pct = 100.0 * long_words / n;
  profile.numbers_pct = 100.0 * numbers / n;
  return profile;
}

}  // namespace pitchlex
