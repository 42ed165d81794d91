// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hand_counts.hpp"
#include "pitchlex/error.hpp"
#include "pitchlex/features.hpp"
#include "pitchlex/pipeline.hpp"

using namespace pitchlex;
using pitchlex::testing::kHandCounts;

namespace {

const CategoryDictionary& demo() {
  static const auto dict = CategoryDictionary::load(demo_dictionary_text());
  return dict;
}

ErrorKind error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("tone index") {
  CHECK(tone_index(3, 3) == 50.0);
  CHECK(tone_index(0, 0) == 50.0);
  CHECK(tone_index(4, 1) == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(tone_index(5, 0) == 100.0);
  CHECK(tone_index(0, 2) == 0.0);
}

TEST_CASE("hand-counted texts") {
  for (const auto& h : kHandCounts) {
    CAPTURE(h.text);
    const auto v = extract_features(h.text, demo());
    const double n = h.words;
    auto pct = [&](int k) { return 100.0 * k / n; };
    CHECK(v.word_count == static_cast<std::size_t>(h.words));
    CHECK(std::abs(v.sixltr - pct(h.sixltr)) <= 1e-9);
    CHECK(std::abs(v.dictionary - pct(h.dictionary)) <= 1e-9);
    CHECK(std::abs(v.numbers - pct(h.numbers)) <= 1e-9);
    const double tone = h.posemo + h.negemo == 0 ? 50.0 : 50.0 + 50.0 * (h.posemo - h.negemo) / (h.posemo + h.negemo);
    CHECK(std::abs(v.tone - tone) <= 1e-9);
    CHECK(std::abs(v.sadness - pct(h.sadness)) <= 1e-9);
    CHECK(std::abs(v.adjectives - pct(h.adjectives)) <= 1e-9);
    CHECK(std::abs(v.adverbs - pct(h.adverbs)) <= 1e-9);
    CHECK(std::abs(v.perceptual - pct(h.perceptual)) <= 1e-9);
    CHECK(std::abs(v.informal - pct(h.informal)) <= 1e-9);
    CHECK(std::abs(v.certainty - pct(h.certainty)) <= 1e-9);
    CHECK(std::abs(v.discrepancy - pct(h.discrepancy)) <= 1e-9);
    CHECK(std::abs(v.present_focus - pct(h.present_focus)) <= 1e-9);
  }
}

TEST_CASE("single-category texts against the demo lexicon") {
  const auto informal = extract_features("ok lol yeah um wow", demo());
  CHECK(informal.informal == 100.0);
  CHECK(informal.dictionary == 100.0);

  const auto certain = extract_features("always never", demo());
  CHECK(certain.certainty == 100.0);
  CHECK(certain.word_count == 2);
}

TEST_CASE("empty text is a zero vector with neutral tone") {
  const auto v = extract_features("", demo());
  CHECK(v.word_count == 0);
  CHECK(v.tone == 50.0);
  const auto values = v.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (kFeatureNames[i] != "tone") CHECK(values[i] == 0.0);
  }
}

TEST_CASE("values() follows kFeatureNames") {
  const auto v = extract_features("We love 3 big wins, always.", demo());
  const auto values = v.values();
  for (std::size_t i = 0; i < kFeatureCount; ++i) CHECK(values[i] == v.value(kFeatureNames[i]));
  CHECK_THROWS_AS(v.value("nope"), Error);
}

TEST_CASE("mapping parse and validation") {
  const auto id = CategoryMapping::identity();
  CHECK(id.feature_to_category.size() == kRequiredCategories.size());

  std::string text = "# renamed lexicon\n";
  for (auto f : kRequiredCategories) text += std::string(f) + "=" + std::string(f) + "\n";
  text += "numbers=quantity";
  const auto m = CategoryMapping::parse(text);
  CHECK(m.feature_to_category.at("numbers") == "quantity");

  CHECK(error_kind([] { CategoryMapping::parse("posemo=pos,negemo=neg"); }) == ErrorKind::Config);
}

TEST_CASE("a mapped category missing from the dictionary names the category") {
  const auto small = CategoryDictionary::load("%\n1\tposemo\n%\ngood\t1\n");
  try {
    FeatureExtractor fx(small, CategoryMapping::identity());
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("negemo") != std::string::npos);
  }
}

TEST_CASE("number words count when the mapping names a numbers category") {
  std::string dic = "%\n";
  int id = 1;
  for (auto f : kRequiredCategories) dic += std::to_string(id++) + "\t" + std::string(f) + "\n";
  dic += "11\tquantity\n%\nthree\t11\ndozen\t11\n";
  const auto dict = CategoryDictionary::load(dic);
  std::string map;
  for (auto f : kRequiredCategories) map += std::string(f) + "=" + std::string(f) + ",";
  const auto with_words = extract_features("three dozen 12 eggs", dict, CategoryMapping::parse(map + "numbers=quantity"));
  CHECK(with_words.numbers == 75.0);
  const auto digits_only = extract_features("three dozen 12 eggs", dict, CategoryMapping::parse(map));
  CHECK(digits_only.numbers == 25.0);
}

TEST_CASE("descriptive statistics") {
  const std::vector<double> v = {1, 2, 3};
  const auto s = describe("x", v);
  CHECK(s.obs == 3);
  CHECK(s.mean == 2.0);
  CHECK(s.sd == 1.0);
  CHECK(s.min == 1.0);
  CHECK(s.max == 3.0);

  const std::vector<double> one = {4.5};
  CHECK(describe("x", one).sd == 0.0);

  const std::vector<double> same = {0.1, 0.1};
  const auto c = describe("x", same);
  CHECK(c.sd == 0.0);
  CHECK(c.min == c.max);
  CHECK(c.mean == c.min);

  CHECK(error_kind([] { describe("x", std::vector<double>{}); }) == ErrorKind::EmptyInput);
  CHECK(error_kind([] { summarize(std::vector<LinguisticFeatureVector>{}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("summarize covers every feature in order") {
  const std::vector<LinguisticFeatureVector> vs = {extract_features("we love it", demo()),
                                                   extract_features("sad and lonely", demo())};
  const auto s = summarize(vs);
  REQUIRE(s.variables.size() == kFeatureCount);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    CHECK(s.variables[i].name == kFeatureNames[i]);
    CHECK(s.variables[i].obs == 2);
    CHECK(s.variables[i].min <= s.variables[i].mean);
    CHECK(s.variables[i].mean <= s.variables[i].max);
  }
  const auto csv = stats_csv(s);
  CHECK(csv.rfind("variable,", 0) == 0);
}

TEST_CASE("features csv has one row per record and source") {
  const std::vector<LabeledFeatures> rows = {{"p1", "description", extract_features("hello", demo())},
                                             {"p1", "otter", extract_features("hey, ok", demo())}};
  const auto csv = features_csv(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("p1,otter,2,") != std::string::npos);
}

}  // TEST_SUITE
