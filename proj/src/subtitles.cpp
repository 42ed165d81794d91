// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/subtitles.hpp"

#include <algorithm>
#include <charconv>
#include <regex>

#include <fmt/format.h>

#include "pitchlex/error.hpp"
#include "text_util.hpp"

namespace pitchlex {
namespace {

[[noreturn]] void parse_error(std::string_view format, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, fmt::format("{} line {}: {}", format, line, what));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::int64_t to_ms(const std::csub_match& h, const std::csub_match& m, const std::csub_match& s,
                   const std::csub_match& ms) {
  const std::int64_t hours = h.matched ? std::stoll(h.str()) : 0;
  return ((hours * 60 + std::stoll(m.str())) * 60 + std::stoll(s.str())) * 1000 + std::stoll(ms.str());
}

struct Timing {
  std::int64_t start_ms;
  std::int64_t end_ms;
};

std::optional<Timing> parse_timing(std::string_view line, const std::regex& re) {
  std::cmatch m;
  if (!std::regex_match(line.data(), line.data() + line.size(), m, re)) return std::nullopt;
  if (std::stoi(m[2].str()) > 59 || std::stoi(m[3].str()) > 59 || std::stoi(m[6].str()) > 59 ||
      std::stoi(m[7].str()) > 59) {
    return std::nullopt;
  }
  return Timing{to_ms(m[1], m[2], m[3], m[4]), to_ms(m[5], m[6], m[7], m[8])};
}

const std::regex& srt_timing_re() {
  static const std::regex re(
      R"(\s*(\d{1,6}):(\d{2}):(\d{2}),(\d{3})\s*-->\s*(\d{1,6}):(\d{2}):(\d{2}),(\d{3})(?:\s+.*)?\s*)");
  return re;
}

const std::regex& vtt_timing_re() {
  static const std::regex re(
      R"(\s*(?:(\d{1,6}):)?(\d{2}):(\d{2})\.(\d{3})\s*-->\s*(?:(\d{1,6}):)?(\d{2}):(\d{2})\.(\d{3})(?:\s+.*)?\s*)");
  return re;
}

std::string format_srt_time(std::int64_t ms) {
  const auto h = ms / 3'600'000;
  const auto m = (ms / 60'000) % 60;
  const auto s = (ms / 1000) % 60;
  return fmt::format("{:02}:{:02}:{:02},{:03}", h, m, s, ms % 1000);
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '&') {
      const auto rest = s.substr(i);
      if (rest.starts_with("&amp;")) {
        out.push_back('&');
        i += 4;
        continue;
      }
      if (rest.starts_with("&lt;")) {
        out.push_back('<');
        i += 3;
        continue;
      }
      if (rest.starts_with("&gt;")) {
        out.push_back('>');
        i += 3;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string clean_text(std::string_view text, const FlattenOptions& options) {
  std::string cleaned = strip_tags(text);
  if (options.strip_annotations) cleaned = strip_annotations(cleaned);
  return collapse_whitespace(cleaned);
}

void sort_cues(SubtitleTrack& track) {
  std::stable_sort(track.cues.begin(), track.cues.end(),
                   [](const SubtitleCue& a, const SubtitleCue& b) { return a.start_ms < b.start_ms; });
}

}  // namespace

SubtitleTrack parse_srt(std::string_view bytes, std::string source) {
  SubtitleTrack track;
  track.source = std::move(source);
  const std::string text = detail::normalize_newlines(detail::strip_bom(bytes));
  const auto lines = detail::split_lines(text);

  bool indices_out_of_order = false;
  bool starts_out_of_order = false;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (detail::trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    SubtitleCue cue;
    const auto first = detail::trim(lines[i]);
    if (all_digits(first)) {
      int index = 0;
      const auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), index);
      if (ec != std::errc() || ptr != first.data() + first.size()) {
        parse_error("srt", i + 1, "cue index '" + std::string(first) + "' is out of range");
      }
      cue.index = index;
      ++i;
      if (i >= lines.size()) parse_error("srt", i, "cue " + std::string(first) + " has no timing line");
    }
    const std::size_t timing_line = i + 1;
    if (lines[i].find("-->") == std::string_view::npos) {
      parse_error("srt", timing_line, "expected 'HH:MM:SS,mmm --> HH:MM:SS,mmm'");
    }
    const auto timing = parse_timing(lines[i], srt_timing_re());
    if (!timing) parse_error("srt", timing_line, "malformed timestamp '" + std::string(lines[i]) + "'");
    if (timing->end_ms <= timing->start_ms) parse_error("srt", timing_line, "cue ends before it starts");
    cue.start_ms = timing->start_ms;
    cue.end_ms = timing->end_ms;
    ++i;

    std::string body;
    while (i < lines.size() && !detail::trim(lines[i]).empty()) {
      if (!body.empty()) body.push_back('\n');
      body.append(lines[i]);
      ++i;
    }
    if (detail::trim(body).empty()) {
      track.warnings.push_back(fmt::format("srt line {}: cue without text dropped", timing_line));
      continue;
    }
    cue.text = std::move(body);

    if (!track.cues.empty()) {
      const auto& prev = track.cues.back();
      if (prev.index && cue.index && *cue.index <= *prev.index) indices_out_of_order = true;
      if (cue.start_ms < prev.start_ms) starts_out_of_order = true;
    }
    track.cues.push_back(std::move(cue));
  }

  if (indices_out_of_order) track.warnings.emplace_back("srt: out-of-order cue indices, cues re-sorted by start time");
  if (starts_out_of_order && !indices_out_of_order) {
    track.warnings.emplace_back("srt: cue start times out of order, cues re-sorted");
  }
  if (indices_out_of_order || starts_out_of_order) sort_cues(track);
  return track;
}

SubtitleTrack parse_vtt(std::string_view bytes, std::string source) {
  SubtitleTrack track;
  track.source = std::move(source);
  const std::string text = detail::normalize_newlines(detail::strip_bom(bytes));
  const auto lines = detail::split_lines(text);

  auto is_magic = [](std::string_view l) {
    return l.starts_with("WEBVTT") && (l.size() == 6 || l[6] == ' ' || l[6] == '\t');
  };
  if (lines.empty() || !is_magic(lines[0])) parse_error("vtt", 1, "missing WEBVTT header");

  auto block_keyword = [](std::string_view l, std::string_view kw) {
    return l.starts_with(kw) && (l.size() == kw.size() || l[kw.size()] == ' ' || l[kw.size()] == '\t');
  };

  std::size_t i = 1;
  // The header block runs until the first blank line.
  while (i < lines.size() && !detail::trim(lines[i]).empty()) ++i;

  bool out_of_order = false;
  while (i < lines.size()) {
    if (detail::trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    const auto head = lines[i];
    if (block_keyword(head, "NOTE") || block_keyword(head, "STYLE") || block_keyword(head, "REGION")) {
      while (i < lines.size() && !detail::trim(lines[i]).empty()) ++i;
      continue;
    }
    if (head.find("-->") == std::string_view::npos) {
      // Cue identifier; the timing line must follow.
      ++i;
      if (i >= lines.size() || lines[i].find("-->") == std::string_view::npos) {
        parse_error("vtt", i + 1, "expected cue timing after identifier '" + std::string(head) + "'");
      }
    }
    const std::size_t timing_line = i + 1;
    const auto timing = parse_timing(lines[i], vtt_timing_re());
    if (!timing) parse_error("vtt", timing_line, "malformed cue timing '" + std::string(lines[i]) + "'");
    if (timing->end_ms <= timing->start_ms) parse_error("vtt", timing_line, "cue ends before it starts");
    ++i;

    std::string body;
    while (i < lines.size() && !detail::trim(lines[i]).empty()) {
      const auto cleaned = std::string(detail::trim(decode_entities(strip_tags(lines[i]))));
      if (!cleaned.empty()) {
        if (!body.empty()) body.push_back('\n');
        body.append(cleaned);
      }
      ++i;
    }
    if (body.empty()) {
      track.warnings.push_back(fmt::format("vtt line {}: cue without text dropped", timing_line));
      continue;
    }
    if (!track.cues.empty() && timing->start_ms < track.cues.back().start_ms) out_of_order = true;
    track.cues.push_back({std::nullopt, timing->start_ms, timing->end_ms, std::move(body)});
  }
  if (out_of_order) {
    track.warnings.emplace_back("vtt: cue start times out of order, cues re-sorted");
    sort_cues(track);
  }
  return track;
}

std::string write_srt(const SubtitleTrack& track) {
  std::string out;
  for (std::size_t i = 0; i < track.cues.size(); ++i) {
    const auto& cue = track.cues[i];
    out += fmt::format("{}\n{} --> {}\n{}\n\n", cue.index.value_or(static_cast<int>(i + 1)),
                       format_srt_time(cue.start_ms), format_srt_time(cue.end_ms), cue.text);
  }
  return out;
}

SubtitleFormat detect_subtitle_format(std::string_view bytes) {
  const auto body = detail::strip_bom(bytes);
  if (body.starts_with("WEBVTT")) return SubtitleFormat::WebVtt;
  std::size_t start = 0;
  while (start < body.size()) {
    const auto nl = body.find('\n', start);
    const auto line = detail::trim(body.substr(start, nl == std::string_view::npos ? body.npos : nl - start));
    if (!line.empty()) {
      if (line.find("-->") != std::string_view::npos) return SubtitleFormat::Srt;
      if (!all_digits(line)) return SubtitleFormat::PlainText;
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return SubtitleFormat::PlainText;
}

std::string strip_annotations(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      const auto close = text.find(']', i + 1);
      const auto nl = text.find('\n', i + 1);
      if (close != std::string_view::npos && (nl == std::string_view::npos || close < nl)) {
        out.push_back(' ');
        i = close + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string strip_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      const auto close = text.find('>', i + 1);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string flatten_track(const SubtitleTrack& track, const FlattenOptions& options) {
  std::string out;
  std::string previous;
  bool have_previous = false;
  for (const auto& cue : track.cues) {
    std::string text = clean_text(cue.text, options);
    if (text.empty()) continue;
    if (have_previous && text == previous) continue;
    if (!out.empty()) out.push_back(' ');
    out += text;
    previous = std::move(text);
    have_previous = true;
  }
  return out;
}

std::string transcript_text(std::string_view bytes, const FlattenOptions& options) {
  switch (detect_subtitle_format(bytes)) {
    case SubtitleFormat::Srt: return flatten_track(parse_srt(bytes), options);
    case SubtitleFormat::WebVtt: return flatten_track(parse_vtt(bytes), options);
    case SubtitleFormat::PlainText: break;
  }
  return clean_text(detail::strip_bom(bytes), options);
}

}  // namespace pitchlex
