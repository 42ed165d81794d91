// SPDX-License-Identifier: Apache-2.0
// Short texts with category counts tallied by hand against data/demo.dic.
// Percentages are derived from the counts at test time (100 * k / words).
#pragma once

#include <array>
#include <string_view>

namespace pitchlex::testing {

struct HandCount {
  std::string_view text;
  int words;
  int sixltr;
  int dictionary;
  int numbers;
  int posemo;
  int negemo;
  int sadness;
  int adjectives;
  int adverbs;
  int perceptual;
  int informal;
  int certainty;
  int discrepancy;
  int present_focus;
};

// clang-format off
inline constexpr std::array<HandCount, 10> kHandCounts = {{
    // we love this small lamp and it is very bright
    {"We love this small lamp and it is very bright.",
     10, 0, 8, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1},
    // prototype, dollars: 7+ letters; our/and/in: function words only
    {"Our prototype costs 2,400 dollars and ships in 16 days.",
     10, 2, 3, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    // sad, lonely (lonel*), cried, lost: negemo and sadness; version: 7 letters
    {"I am so sad and lonely; I cried when we lost the first version.",
     14, 1, 12, 0, 0, 4, 4, 0, 1, 0, 0, 0, 0, 1},
    // mean/know/ship are not entries; it's is an exact entry
    {"Yeah, um, it's okay, lol. We gonna ship it, I mean, you know?",
     13, 0, 10, 0, 0, 0, 0, 0, 0, 0, 5, 0, 0, 0},
    // listen (listen*), guarantee (guarantee*); happen/feedback unmatched
    {"You should always look and listen: we never guarantee what would happen, but we definitely want feedback.",
     17, 3, 15, 0, 0, 0, 0, 0, 0, 2, 0, 4, 3, 0},
    {"Today the app is really simple and fast, it's free, and it has 3 modes.",
     15, 0, 12, 1, 0, 0, 0, 3, 1, 0, 0, 0, 0, 3},
    // amazing and easy are posemo + adjectives; don't is not an entry
    {"Thanks to amazing backers, success is certain. Worried? Don't be; it's easy.",
     12, 5, 10, 0, 4, 1, 0, 2, 0, 0, 0, 1, 0, 1},
    {"WOW! Look at this: 99 colors, 4.5 hours of battery, and we definitely feel proud.",
     15, 2, 10, 2, 1, 0, 0, 0, 0, 2, 1, 1, 0, 0},
    {"The team could not have built it without you; we wish we had more time, but we absolutely need your help now.",
     22, 2, 16, 0, 0, 0, 0, 0, 0, 0, 0, 1, 3, 2},
    // curly apostrophe folds to it's; heartbroken hits heartbroke* over heartbreak*
    {"Café owners LOVE it’s sleek design. Heartbroken? Never again.",
     9, 1, 4, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0},
}};
// clang-format on

}  // namespace pitchlex::testing
