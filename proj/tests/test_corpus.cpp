// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <string>

#include "pitchlex/corpus.hpp"
#include "pitchlex/error.hpp"
#include "synth.hpp"

using namespace pitchlex;
using namespace pitchlex::testing;

namespace {

constexpr std::string_view kHeader =
    "id,funded,goal_usd,created_count,has_video,picture_count,duration_days,updates_count,pledged_usd,"
    "reward_levels,team,creativity,description";

CampaignRecord sample_record() {
  CampaignRecord r;
  r.id = "p1";
  r.funded = 1;
  r.goal_usd = 5000;
  r.created_count = 2;
  r.has_video = 1;
  r.picture_count = 12;
  r.duration_days = 30.5;
  r.updates_count = 4;
  r.pledged_usd = 600;
  r.reward_levels = 6;
  r.team = 0;
  r.creativity = 3;
  r.description = "A small, smart lamp.";
  return r;
}

Error load_error(const std::filesystem::path& path) {
  try {
    load_corpus(path);
  } catch (const Error& e) {
    return e;
  }
  FAIL("corpus loaded without error");
  return Error(ErrorKind::Io, "");
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("a one-row inline csv") {
  const auto dir = fresh_dir("corpus-csv");
  write_text(dir / "c.csv", std::string(kHeader) + "\np1,1,5000,2,1,12,30.5,4,600,6,0,3,\"A small, smart lamp.\"\n");
  const auto records = load_corpus(dir / "c.csv");
  REQUIRE(records.size() == 1);
  CHECK(records[0] == sample_record());
}

TEST_CASE("a non-numeric goal names row and field") {
  const auto dir = fresh_dir("corpus-bad");
  write_text(dir / "c.csv", std::string(kHeader) + "\np1,1,abc,2,1,12,30.5,4,600,6,0,3,x\n");
  const auto e = load_error(dir / "c.csv");
  CHECK(e.kind() == ErrorKind::Schema);
  CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  CHECK(std::string(e.what()).find("goal_usd") != std::string::npos);
}

TEST_CASE("missing columns and empty required cells are schema errors") {
  const auto dir = fresh_dir("corpus-missing");
  write_text(dir / "a.csv", "id,funded\np1,1\n");
  CHECK(load_error(dir / "a.csv").kind() == ErrorKind::Schema);
  write_text(dir / "b.csv", std::string(kHeader) + "\np1,1,5000,,1,12,30.5,4,600,6,0,3,x\n");
  const auto e = load_error(dir / "b.csv");
  CHECK(e.kind() == ErrorKind::Schema);
  CHECK(std::string(e.what()).find("created_count") != std::string::npos);
}

TEST_CASE("jsonl with a side-file description") {
  const auto dir = fresh_dir("corpus-jsonl");
  std::filesystem::create_directories(dir / "desc");
  write_text(dir / "desc" / "p2.txt", "Read from disk.\nSecond line.");
  const std::string base =
      R"("funded":0,"goal_usd":10000,"created_count":1,"has_video":0,"picture_count":0,"duration_days":30,)"
      R"("updates_count":0,"pledged_usd":0,"reward_levels":1,"team":1,"creativity":2)";
  write_text(dir / "c.jsonl", "{\"id\":\"p1\"," + base + ",\"description\":\"one\"}\n" +
                                  "{\"id\":\"p2\"," + base + ",\"description_path\":\"desc/p2.txt\"}\n\n" +
                                  "{\"id\":\"p3\"," + base + ",\"description\":\"three\",\"subtitle_otter\":null}\n");
  const auto records = load_corpus(dir / "c.jsonl");
  REQUIRE(records.size() == 3);
  CHECK(records[1].description == "Read from disk.\nSecond line.");
  CHECK(records[2].subtitles.empty());
}

TEST_CASE("subtitle side files and unreadable paths") {
  const auto dir = fresh_dir("corpus-subs");
  write_text(dir / "p1.srt", "1\n00:00:01,000 --> 00:00:02,000\nhi\n");
  write_text(dir / "c.csv", std::string(kHeader) +
                                ",subtitle_otter_path,subtitle_manual\n"
                                "p1,1,5000,2,1,12,30.5,4,600,6,0,3,x,p1.srt,hi there\n"
                                "p2,0,5000,1,1,12,30.5,4,600,6,0,3,y,,\n");
  const auto records = load_corpus(dir / "c.csv");
  CHECK(records[0].subtitles.at("otter").find("hi") != std::string::npos);
  CHECK(records[0].subtitles.at("manual") == "hi there");
  CHECK(records[1].subtitles.empty());

  write_text(dir / "d.csv", std::string(kHeader) +
                                ",subtitle_otter_path\np9,1,5000,2,1,12,30.5,4,600,6,0,3,x,missing.srt\n");
  const auto e = load_error(dir / "d.csv");
  CHECK(e.kind() == ErrorKind::Io);
  CHECK(std::string(e.what()).find("p9") != std::string::npos);
}

TEST_CASE("duplicate ids and conflicting description columns") {
  const auto dir = fresh_dir("corpus-dup");
  write_text(dir / "a.csv", std::string(kHeader) + "\np1,1,5000,2,1,12,30.5,4,600,6,0,3,x\n" +
                                "p1,1,5000,2,1,12,30.5,4,600,6,0,3,y\n");
  CHECK(load_error(dir / "a.csv").kind() == ErrorKind::Schema);
  write_text(dir / "b.csv", std::string(kHeader) + ",description_path\np1,1,5000,2,1,12,30.5,4,600,6,0,3,x,f.txt\n");
  CHECK(load_error(dir / "b.csv").kind() == ErrorKind::Schema);
}

TEST_CASE("unknown extension and missing file") {
  CHECK_THROWS_AS(corpus_format_for("corpus.xlsx"), Error);
  CHECK(load_error("/nonexistent/pitchlex/corpus.csv").kind() == ErrorKind::Io);
}

TEST_CASE("write then load is the identity in both formats") {
  auto records = make_suite_corpus({.records = 40, .first_source = 25, .second_source = 20, .manual = 5,
                                    .seed = 3, .description_words = 40, .pitch_words = 20});
  records[0].description = "quotes \"inside\", commas, and\nnewlines";
  const auto dir = fresh_dir("corpus-roundtrip");
  for (auto [format, name] : {std::pair{CorpusFormat::Csv, "c.csv"}, std::pair{CorpusFormat::Jsonl, "c.jsonl"}}) {
    write_text(dir / name, write_corpus(records, format));
    CHECK(load_corpus(dir / name) == records);
  }
}

TEST_CASE("record validation") {
  auto r = sample_record();
  CHECK(validate_record(r).empty());
  r.creativity = 4;
  const auto v = validate_record(r);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "creativity");
  r = sample_record();
  r.goal_usd = 0;
  REQUIRE(validate_record(r).size() == 1);
  CHECK(validate_record(r)[0].field == "goal_usd");
  r = sample_record();
  r.funded = 2;
  r.pledged_usd = -1;
  CHECK(validate_record(r).size() == 2);
}

TEST_CASE("derived controls") {
  auto r = sample_record();
  r.updates_count = 0;
  const auto c = derive_controls(r);
  CHECK(c.log_updates == 0.0);
  CHECK(c.log_pledged == doctest::Approx(std::log(601.0)).epsilon(1e-12));
  CHECK(c.log_pledged == doctest::Approx(6.3986).epsilon(1e-4));
  CHECK(c.goal == 5000.0);
  CHECK(c.values()[0] == 5000.0);
}

}  // TEST_SUITE
