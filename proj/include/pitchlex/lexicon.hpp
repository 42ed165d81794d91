// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pitchlex {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

enum class TokenKind { Word, Number };

struct Token {
  std::string surface;  // lowercase UTF-8
  TokenKind kind = TokenKind::Word;

  bool operator==(const Token&) const = default;
};

/// Splits text into lowercase word and number tokens.
///
/// Words are maximal runs of letters with internal apostrophes (U+2019 is
/// folded to '). Numbers are maximal digit runs with internal ',' or '.'
/// separators. Everything else, hyphens included, separates tokens.
std::vector<Token> tokenize(std::string_view text);

/// Letters in a word surface, apostrophes excluded.
std::size_t letter_count(std::string_view surface);

struct Category {
  int id = 0;
  std::string name;
};

/// Word-category lexicon with exact and trailing-"*" stem entries.
///
/// File layout: a "%" line, "id<TAB>name" declarations, a second "%" line,
/// then "pattern<TAB>id[<TAB>id...]" entries. Lines starting with "#" are
/// comments. The reserved pattern "<number>" matches every number token.
class CategoryDictionary {
 public:
  static CategoryDictionary load(std::string_view bytes);

  const std::vector<Category>& categories() const noexcept { return categories_; }
  std::optional<int> find_category(std::string_view name) const;
  bool has_category(int id) const { return index_of_.count(id) != 0; }
  // Position of a category id within categories().
  std::size_t index_of(int id) const { return index_of_.at(id); }
  std::size_t entry_count() const noexcept { return exact_.size() + stems_.size(); }

  /// Category ids (ascending) for a token: exact entry first, otherwise the
  /// longest matching stem. Number tokens only see digit entries and
  /// "<number>".
  std::span<const int> match(const Token& token) const;

 private:
  std::vector<Category> categories_;
  std::unordered_map<int, std::size_t> index_of_;
  StringMap<std::vector<int>> exact_;
  StringMap<std::vector<int>> stems_;
  std::vector<int> number_wildcard_;
  std::size_t longest_stem_ = 0;
};

inline std::span<const int> match_token(const CategoryDictionary& dict, const Token& token) {
  return dict.match(token);
}

/// Per-text category usage as percentages of word_count.
struct CategoryProfile {
  std::size_t word_count = 0;
  std::vector<double> category_pct;  // aligned with CategoryDictionary::categories()
  double dictionary_pct = 0.0;
  double sixltr_pct = 0.0;
  double numbers_pct = 0.0;
};

/// `number_word_category`, when set, names a category whose word matches
/// count toward numbers_pct alongside digit tokens.
CategoryProfile category_percentages(const CategoryDictionary& dict, std::span<const Token> tokens,
                                     std::optional<int> number_word_category = std::nullopt);

}  // namespace pitchlex
