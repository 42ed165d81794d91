// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "pitchlex/corpus.hpp"
#include "pitchlex/pitchlex.h"
#include "synth.hpp"

using namespace pitchlex::testing;

TEST_SUITE("capi") {

TEST_CASE("version and status names") {
  CHECK(std::strlen(pl_version()) > 0);
  CHECK(std::string(pl_status_name(PL_OK)) == "ok");
  CHECK(std::string(pl_status_name(PL_ERR_DEGENERATE)) == "degenerate-outcome");
  CHECK(std::string(pl_status_name(static_cast<pl_status>(99))) == "unknown");
}

TEST_CASE("null arguments are rejected") {
  CHECK(pl_config_create(nullptr) == PL_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(pl_last_error()) > 0);
  CHECK(pl_run(nullptr, "suite", nullptr) == PL_ERR_INVALID_ARGUMENT);
  pl_config_free(nullptr);
  pl_report_free(nullptr);
  pl_fit_free(nullptr);
}

TEST_CASE("config keys and values") {
  pl_config* c = nullptr;
  REQUIRE(pl_config_create(&c) == PL_OK);
  CHECK(pl_config_set(c, "standardize", "yes") == PL_OK);
  CHECK(pl_config_set(c, "workers", "2") == PL_OK);
  CHECK(pl_config_set(c, "workers", "two") == PL_ERR_CONFIG);
  CHECK(std::string(pl_last_error()).find("workers") != std::string::npos);
  CHECK(pl_config_set(c, "format", "xml") == PL_ERR_CONFIG);
  CHECK(pl_config_set(c, "colour", "red") == PL_ERR_CONFIG);
  CHECK(pl_run(c, "dance", nullptr) == PL_ERR_INVALID_ARGUMENT);
  pl_config_free(c);
}

TEST_CASE("a suite run through the handle api") {
  const auto dir = fresh_dir("capi-run");
  const auto records = make_suite_corpus({.records = 200, .first_source = 120, .second_source = 100, .manual = 10,
                                          .seed = 17, .description_words = 80, .pitch_words = 30});
  write_text(dir / "c.jsonl", pitchlex::write_corpus(records, pitchlex::CorpusFormat::Jsonl));

  pl_config* c = nullptr;
  REQUIRE(pl_config_create(&c) == PL_OK);
  REQUIRE(pl_config_set(c, "corpus", (dir / "c.jsonl").c_str()) == PL_OK);
  REQUIRE(pl_config_set(c, "out", (dir / "out").c_str()) == PL_OK);
  REQUIRE(pl_config_set(c, "format", "csv") == PL_OK);
  pl_report* r = nullptr;
  REQUIRE(pl_run(c, "suite", &r) == PL_OK);
  CHECK(std::string(pl_report_summary(r)).rfind("pseudo-R2 ranking:", 0) == 0);
  CHECK(pl_report_written_count(r) > 0);
  CHECK(std::string(pl_report_written(r, 0)).find("table.csv") != std::string::npos);
  CHECK(pl_report_written(r, 10000) == nullptr);
  pl_report_free(r);

  pl_corpus* corpus = nullptr;
  REQUIRE(pl_corpus_load((dir / "c.jsonl").c_str(), &corpus) == PL_OK);
  CHECK(pl_corpus_size(corpus) == 200);
  CHECK(std::string(pl_corpus_record_id(corpus, 0)) == records[0].id);
  pl_corpus_free(corpus);

  REQUIRE(pl_config_set(c, "corpus", (dir / "missing.jsonl").c_str()) == PL_OK);
  CHECK(pl_run(c, "suite", &r) == PL_ERR_IO);
  CHECK(r == nullptr);
  pl_config_free(c);
}

TEST_CASE("features through a dictionary handle") {
  pl_dictionary* d = nullptr;
  REQUIRE(pl_dictionary_demo(&d) == PL_OK);
  CHECK(pl_dictionary_category_count(d) > 10);
  std::vector<double> v(pl_feature_count());
  const std::string text = "ok lol yeah um wow";
  REQUIRE(pl_extract_features(d, nullptr, text.data(), text.size(), v.data()) == PL_OK);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::string(pl_feature_name(i)) == "informal") CHECK(v[i] == 100.0);
    if (std::string(pl_feature_name(i)) == "word_count") CHECK(v[i] == 5.0);
  }
  CHECK(pl_feature_name(pl_feature_count()) == nullptr);
  pl_dictionary_free(d);

  const std::string small = "%\n1\tposemo\n%\ngood\t1\n";
  REQUIRE(pl_dictionary_load(small.data(), small.size(), &d) == PL_OK);
  CHECK(pl_extract_features(d, nullptr, text.data(), text.size(), v.data()) == PL_ERR_CONFIG);
  CHECK(std::string(pl_last_error()).find("negemo") != std::string::npos);
  pl_dictionary_free(d);

  CHECK(pl_dictionary_load("%\nbroken", 8, &d) == PL_ERR_PARSE);
}

TEST_CASE("transcripts and hit rate") {
  const std::string srt = "1\n00:00:01,000 --> 00:00:02,000\n[Music] <i>Hello</i> there\n";
  char* out = nullptr;
  REQUIRE(pl_transcript_text(srt.data(), srt.size(), 1, &out) == PL_OK);
  CHECK(std::string(out) == "Hello there");
  pl_string_free(out);
  const std::string bad = "1\n00:00:02,000 --> 00:00:01,000\nx\n";
  CHECK(pl_transcript_text(bad.data(), bad.size(), 1, &out) == PL_ERR_PARSE);

  double h = 0;
  REQUIRE(pl_hit_rate("the quick brown fox", "the quick brown box", &h) == PL_OK);
  CHECK(h == 0.75);
  CHECK(pl_hit_rate("", "words", &h) == PL_ERR_UNDEFINED);
}

TEST_CASE("logistic fit through the c api") {
  const auto fx = logistic_fixtures()[2];
  const auto n = static_cast<std::size_t>(fx.design.x.rows());
  const std::size_t k = 2;
  std::vector<double> x(n * k);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) x[i * k + j] = fx.design.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1));
    y[i] = fx.design.y[static_cast<Eigen::Index>(i)];
  }
  pl_fit* fit = nullptr;
  REQUIRE(pl_fit_logistic(x.data(), y.data(), n, k, nullptr, 1, 0, 0.0, &fit) == PL_OK);
  CHECK(pl_fit_param_count(fit) == 3);
  CHECK(std::string(pl_fit_column_name(fit, 0)) == "(intercept)");
  CHECK(std::string(pl_fit_column_name(fit, 2)) == "x2");
  CHECK(pl_fit_converged(fit) == 1);
  const auto direct = pitchlex::fit_logistic(fx.design);
  double beta = 0, se = 0, z = 0, p = 0;
  REQUIRE(pl_fit_coefficient(fit, 1, &beta, &se, &z, &p) == PL_OK);
  CHECK(beta == doctest::Approx(direct.coefficients[1]).epsilon(1e-10));
  CHECK(se == doctest::Approx(direct.standard_errors[1]).epsilon(1e-10));
  CHECK(pl_fit_coefficient(fit, 3, &beta, &se, &z, &p) == PL_ERR_INVALID_ARGUMENT);
  CHECK(pl_fit_log_likelihood(fit) == doctest::Approx(direct.log_likelihood).epsilon(1e-12));
  CHECK(pl_fit_pseudo_r2(fit) == doctest::Approx(direct.pseudo_r2).epsilon(1e-10));
  char* json = nullptr;
  REQUIRE(pl_fit_json(fit, &json) == PL_OK);
  CHECK(std::string(json).find("\"converged\"") != std::string::npos);
  pl_string_free(json);
  pl_fit_free(fit);

  std::vector<double> ones(n, 1.0);
  CHECK(pl_fit_logistic(x.data(), ones.data(), n, k, nullptr, 1, 0, 0.0, &fit) == PL_ERR_DEGENERATE);
  CHECK(fit == nullptr);
}

}  // TEST_SUITE
