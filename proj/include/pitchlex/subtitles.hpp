// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pitchlex {

struct SubtitleCue {
  std::optional<int> index;  // SRT sequence number; VTT cues have none
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string text;  // cue lines joined with '\n'

  bool operator==(const SubtitleCue&) const = default;
};

struct SubtitleTrack {
  std::string source;
  std::vector<SubtitleCue> cues;  // sorted by start_ms
  std::vector<std::string> warnings;
};

/// Throws Error(Parse) with a line number on malformed timing or a missing
/// arrow. Out-of-order indices produce a warning and a stable re-sort.
SubtitleTrack parse_srt(std::string_view bytes, std::string source = {});

/// Requires the WEBVTT magic. NOTE/STYLE/REGION blocks, cue identifiers and
/// cue settings are skipped; inline tags are stripped and &amp; &lt; &gt;
/// decoded.
SubtitleTrack parse_vtt(std::string_view bytes, std::string source = {});

/// Canonical SRT: "N\nHH:MM:SS,mmm --> HH:MM:SS,mmm\ntext\n\n" per cue.
std::string write_srt(const SubtitleTrack& track);

enum class SubtitleFormat { Srt, WebVtt, PlainText };
SubtitleFormat detect_subtitle_format(std::string_view bytes);

struct FlattenOptions {
  bool strip_annotations = true;  // drop "[Music]"-style bracketed spans
};

/// Removes "[...]" spans. An unclosed '[' is kept as text.
std::string strip_annotations(std::string_view text);
/// Removes "<...>" markup tags.
std::string strip_tags(std::string_view text);

/// Joins cue texts with single spaces, dropping markup and collapsing
/// consecutive duplicate cues (rolling-caption repeats).
std::string flatten_track(const SubtitleTrack& track, const FlattenOptions& options = {});

/// Detects the format, parses and flattens. Plain text gets the same
/// markup/annotation cleanup and whitespace folding.
std::string transcript_text(std::string_view bytes, const FlattenOptions& options = {});

}  // namespace pitchlex
