// SPDX-License-Identifier: Apache-2.0
// Subtitle inputs with their expected parse outcome.
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace pitchlex::testing {

enum class SubKind { Srt, Vtt };

struct SubtitleFixture {
  std::string_view name;
  SubKind kind;
  std::string_view bytes;
  bool ok;
  // when ok: cue count and the first cue's start, end and text
  std::size_t cues = 0;
  std::int64_t first_start = 0;
  std::int64_t first_end = 0;
  std::string_view first_text;
  // when !ok: line number the error must cite (0 = any)
  std::size_t error_line = 0;
};

// clang-format off
inline constexpr std::array<SubtitleFixture, 22> kSubtitleFixtures = {{
    // well-formed SRT
    {"srt-single", SubKind::Srt, "1\n00:00:01,000 --> 00:00:02,500\nHello world\n", true, 1, 1000, 2500, "Hello world"},
    {"srt-empty", SubKind::Srt, "", true, 0},
    {"srt-two-line-cue", SubKind::Srt,
     "1\n00:00:00,000 --> 00:00:01,000\nfirst line\nsecond line\n\n2\n00:00:01,000 --> 00:00:02,000\nnext\n",
     true, 2, 0, 1000, "first line\nsecond line"},
    {"srt-crlf", SubKind::Srt, "1\r\n00:00:03,250 --> 00:00:04,000\r\nwindows\r\n\r\n", true, 1, 3250, 4000, "windows"},
    {"srt-bom", SubKind::Srt, "\xEF\xBB\xBF" "1\n00:00:01,000 --> 00:00:02,000\nbom\n", true, 1, 1000, 2000, "bom"},
    {"srt-markup-kept", SubKind::Srt, "1\n00:00:01,000 --> 00:00:02,000\n<i>so</i> <b>we</b> built\n",
     true, 1, 1000, 2000, "<i>so</i> <b>we</b> built"},
    {"srt-hours", SubKind::Srt, "7\n01:02:03,004 --> 01:02:04,000\nlate\n", true, 1, 3723004, 3724000, "late"},
    {"srt-no-index", SubKind::Srt, "00:00:01,000 --> 00:00:02,000\nanonymous\n", true, 1, 1000, 2000, "anonymous"},
    {"srt-out-of-order", SubKind::Srt,
     "2\n00:00:05,000 --> 00:00:06,000\nsecond\n\n1\n00:00:01,000 --> 00:00:02,000\nfirst\n",
     true, 2, 1000, 2000, "first"},
    // malformed SRT
    {"srt-end-before-start", SubKind::Srt, "1\n00:00:02,500 --> 00:00:01,000\nbackwards\n", false, 0, 0, 0, "", 2},
    {"srt-missing-arrow", SubKind::Srt, "1\n00:00:01,000 00:00:02,000\ntext\n", false, 0, 0, 0, "", 2},
    {"srt-dot-separator", SubKind::Srt, "1\n00:00:01.000 --> 00:00:02.000\ntext\n", false, 0, 0, 0, "", 2},
    {"srt-bad-seconds", SubKind::Srt,
     "1\n00:00:01,000 --> 00:00:02,000\nok\n\n2\n00:00:75,000 --> 00:00:76,000\nbad\n", false, 0, 0, 0, "", 6},
    {"srt-short-millis", SubKind::Srt, "1\n00:00:01,00 --> 00:00:02,000\ntext\n", false, 0, 0, 0, "", 2},
    // well-formed WebVTT
    {"vtt-single", SubKind::Vtt, "WEBVTT\n\n00:00:00.000 --> 00:00:01.000\n<i>Hi</i>\n", true, 1, 0, 1000, "Hi"},
    {"vtt-magic-only", SubKind::Vtt, "WEBVTT", true, 0},
    {"vtt-bom-header-note", SubKind::Vtt,
     "\xEF\xBB\xBF" "WEBVTT - pitch\nKind: captions\n\nNOTE produced automatically\nsecond note line\n\n"
     "intro\n00:01.500 --> 00:02.000 align:start position:10%\n"
     "<c.yellow>Tom &amp; Jerry</c> <00:00:01.700>say &lt;hi&gt;\n",
     true, 1, 1500, 2000, "Tom & Jerry say <hi>"},
    {"vtt-style-block", SubKind::Vtt,
     "WEBVTT\n\nSTYLE\n::cue { color: red }\n\n00:00:01.000 --> 00:00:02.000\none\n\n00:00:02.000 --> 00:00:03.000\ntwo\n",
     true, 2, 1000, 2000, "one"},
    // malformed WebVTT
    {"vtt-missing-header", SubKind::Vtt, "1\n00:00:01,000 --> 00:00:02,000\nnot vtt\n", false, 0, 0, 0, "", 1},
    {"vtt-comma-separator", SubKind::Vtt, "WEBVTT\n\n00:00:01,000 --> 00:00:02,000\ntext\n", false, 0, 0, 0, "", 3},
    {"vtt-end-before-start", SubKind::Vtt, "WEBVTT\n\n00:00:05.000 --> 00:00:04.000\ntext\n", false, 0, 0, 0, "", 3},
    {"vtt-identifier-without-timing", SubKind::Vtt, "WEBVTT\n\ncue-1\njust text\n", false, 0, 0, 0, "", 4},
}};
// clang-format on

}  // namespace pitchlex::testing
