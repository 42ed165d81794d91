// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/pitchlex.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "pitchlex/align.hpp"
#include "pitchlex/corpus.hpp"
#include "pitchlex/error.hpp"
#include "pitchlex/features.hpp"
#include "pitchlex/glm.hpp"
#include "pitchlex/lexicon.hpp"
#include "pitchlex/pipeline.hpp"
#include "pitchlex/subtitles.hpp"

struct pl_config {
  pitchlex::RunConfig run;
};

struct pl_report {
  pitchlex::RunOutcome outcome;
  std::vector<std::string> written;
};

struct pl_dictionary {
  pitchlex::CategoryDictionary dict;
};

struct pl_corpus {
  std::vector<pitchlex::CampaignRecord> records;
};

struct pl_fit {
  pitchlex::FitResult fit;
};

namespace {

thread_local std::string g_last_error;

pl_status status_for(pitchlex::ErrorKind kind) {
  using pitchlex::ErrorKind;
  switch (kind) {
    case ErrorKind::Io: return PL_ERR_IO;
    case ErrorKind::Schema: return PL_ERR_SCHEMA;
    case ErrorKind::Parse: return PL_ERR_PARSE;
    case ErrorKind::Config: return PL_ERR_CONFIG;
    case ErrorKind::DegenerateOutcome: return PL_ERR_DEGENERATE;
    case ErrorKind::Separation: return PL_ERR_SEPARATION;
    case ErrorKind::Collinearity: return PL_ERR_COLLINEAR;
    case ErrorKind::Undefined: return PL_ERR_UNDEFINED;
    case ErrorKind::InvalidArgument: return PL_ERR_INVALID_ARGUMENT;
    case ErrorKind::EmptyInput: return PL_ERR_EMPTY;
  }
  return PL_ERR_INTERNAL;
}

pl_status fail(pl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
pl_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    return body();
  } catch (const pitchlex::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PL_ERR_INTERNAL, "unknown failure");
  }
}

char* dup_string(std::string_view s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

bool parse_flag(std::string_view v, bool& out) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") {
    out = true;
    return true;
  }
  if (v == "0" || v == "false" || v == "no" || v == "off") {
    out = false;
    return true;
  }
  return false;
}

template <class T>
bool parse_number(std::string_view v, T& out) {
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string_view::npos) comma = v.size();
    auto item = v.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

pl_status bad_value(std::string_view key, std::string_view value) {
  return fail(PL_ERR_CONFIG, fmt::format("invalid value '{}' for {}", value, key));
}

}  // namespace

extern "C" {

const char* pl_version(void) { return "0.1.0"; }

const char* pl_status_name(pl_status status) {
  switch (status) {
    case PL_OK: return "ok";
    case PL_ERR_IO: return "io";
    case PL_ERR_SCHEMA: return "schema";
    case PL_ERR_PARSE: return "parse";
    case PL_ERR_CONFIG: return "config";
    case PL_ERR_DEGENERATE: return "degenerate-outcome";
    case PL_ERR_SEPARATION: return "separation";
    case PL_ERR_COLLINEAR: return "collinearity";
    case PL_ERR_UNDEFINED: return "undefined";
    case PL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PL_ERR_EMPTY: return "empty-input";
    case PL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* pl_last_error(void) { return g_last_error.c_str(); }

void pl_string_free(char* s) { std::free(s); }

pl_status pl_config_create(pl_config** out) {
  return guarded([&] {
    if (out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    *out = new pl_config();
    return PL_OK;
  });
}

void pl_config_free(pl_config* config) { delete config; }

pl_status pl_config_set(pl_config* config, const char* key, const char* value) {
  return guarded([&] {
    if (config == nullptr || key == nullptr || value == nullptr) {
      return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    }
    auto& run = config->run;
    const std::string_view k = key;
    const std::string_view v = value;
    if (k == "corpus") {
      run.corpus_path = std::string(v);
    } else if (k == "dict") {
      run.dictionary = v;
    } else if (k == "map") {
      run.mapping = v;
    } else if (k == "sources") {
      run.subtitle_sources = split_list(v);
    } else if (k == "out") {
      run.output_dir = std::string(v);
    } else if (k == "format") {
      run.format = pitchlex::parse_table_format(v);
    } else if (k == "standardize") {
      if (!parse_flag(v, run.standardize)) return bad_value(k, v);
    } else if (k == "keep_brackets") {
      if (!parse_flag(v, run.keep_brackets)) return bad_value(k, v);
    } else if (k == "workers") {
      if (!parse_number(v, run.workers) || run.workers == 0) return bad_value(k, v);
    } else if (k == "tol") {
      if (!parse_number(v, run.tol) || !(run.tol > 0.0)) return bad_value(k, v);
    } else if (k == "max_iter") {
      if (!parse_number(v, run.max_iter) || run.max_iter <= 0) return bad_value(k, v);
    } else if (k == "reference") {
      run.reference = v;
    } else {
      return fail(PL_ERR_CONFIG, fmt::format("unknown config key '{}'", k));
    }
    return PL_OK;
  });
}

pl_status pl_run(const pl_config* config, const char* command, pl_report** out) {
  return guarded([&] {
    if (config == nullptr || command == nullptr || out == nullptr) {
      return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    const std::string_view cmd = command;
    pitchlex::RunOutcome outcome;
    if (cmd == "features") {
      outcome = pitchlex::cmd_features(config->run);
    } else if (cmd == "accuracy") {
      outcome = pitchlex::cmd_accuracy(config->run);
    } else if (cmd == "suite") {
      outcome = pitchlex::cmd_suite(config->run);
    } else {
      return fail(PL_ERR_INVALID_ARGUMENT, fmt::format("unknown command '{}'", cmd));
    }
    auto* report = new pl_report();
    report->outcome = std::move(outcome);
    for (const auto& p : report->outcome.written) report->written.push_back(p.string());
    *out = report;
    return PL_OK;
  });
}

const char* pl_report_summary(const pl_report* report) {
  return report == nullptr ? "" : report->outcome.summary.c_str();
}

size_t pl_report_diagnostic_count(const pl_report* report) {
  return report == nullptr ? 0 : report->outcome.diagnostics.size();
}

const char* pl_report_diagnostic(const pl_report* report, size_t i) {
  if (report == nullptr || i >= report->outcome.diagnostics.size()) return nullptr;
  return report->outcome.diagnostics[i].c_str();
}

size_t pl_report_written_count(const pl_report* report) { return report == nullptr ? 0 : report->written.size(); }

const char* pl_report_written(const pl_report* report, size_t i) {
  if (report == nullptr || i >= report->written.size()) return nullptr;
  return report->written[i].c_str();
}

void pl_report_free(pl_report* report) { delete report; }

pl_status pl_dictionary_load(const char* bytes, size_t len, pl_dictionary** out) {
  return guarded([&] {
    if ((bytes == nullptr && len > 0) || out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    *out = new pl_dictionary{pitchlex::CategoryDictionary::load(std::string_view(bytes, len))};
    return PL_OK;
  });
}

pl_status pl_dictionary_demo(pl_dictionary** out) {
  return guarded([&] {
    if (out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    *out = new pl_dictionary{pitchlex::CategoryDictionary::load(pitchlex::demo_dictionary_text())};
    return PL_OK;
  });
}

size_t pl_dictionary_category_count(const pl_dictionary* dict) {
  return dict == nullptr ? 0 : dict->dict.categories().size();
}

void pl_dictionary_free(pl_dictionary* dict) { delete dict; }

size_t pl_feature_count(void) { return pitchlex::kFeatureCount; }

const char* pl_feature_name(size_t i) {
  // kFeatureNames are string literals, so data() is NUL-terminated.
  return i < pitchlex::kFeatureCount ? pitchlex::kFeatureNames[i].data() : nullptr;
}

pl_status pl_extract_features(const pl_dictionary* dict, const char* mapping, const char* text, size_t len,
                              double* values) {
  return guarded([&] {
    if (dict == nullptr || (text == nullptr && len > 0) || values == nullptr) {
      return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    }
    const auto map = mapping == nullptr ? pitchlex::CategoryMapping::identity()
                                        : pitchlex::CategoryMapping::parse(mapping);
    const pitchlex::FeatureExtractor extractor(dict->dict, map);
    const auto v = extractor.extract(std::string_view(text, len)).values();
    std::copy(v.begin(), v.end(), values);
    return PL_OK;
  });
}

pl_status pl_corpus_load(const char* path, pl_corpus** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    *out = new pl_corpus{pitchlex::load_corpus(path)};
    return PL_OK;
  });
}

size_t pl_corpus_size(const pl_corpus* corpus) { return corpus == nullptr ? 0 : corpus->records.size(); }

const char* pl_corpus_record_id(const pl_corpus* corpus, size_t i) {
  if (corpus == nullptr || i >= corpus->records.size()) return nullptr;
  return corpus->records[i].id.c_str();
}

void pl_corpus_free(pl_corpus* corpus) { delete corpus; }

pl_status pl_transcript_text(const char* bytes, size_t len, int strip_annotations, char** out) {
  return guarded([&] {
    if ((bytes == nullptr && len > 0) || out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    pitchlex::FlattenOptions options;
    options.strip_annotations = strip_annotations != 0;
    *out = dup_string(pitchlex::transcript_text(std::string_view(bytes, len), options));
    return PL_OK;
  });
}

pl_status pl_hit_rate(const char* ref, const char* hyp, double* out) {
  return guarded([&] {
    if (ref == nullptr || hyp == nullptr || out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    const auto r = pitchlex::normalize_words(ref);
    const auto h = pitchlex::normalize_words(hyp);
    *out = pitchlex::hit_rate(pitchlex::align_words(r, h));
    return PL_OK;
  });
}

pl_status pl_fit_logistic(const double* x, const double* y, size_t n, size_t k, const char* const* names,
                          int add_intercept, int max_iter, double tol, pl_fit** out) {
  return guarded([&] {
    if ((x == nullptr && n * k > 0) || (y == nullptr && n > 0) || out == nullptr) {
      return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd xm(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) xm(r, c) = x[r * cols + c];
    }
    Eigen::VectorXd yv(rows);
    for (Eigen::Index r = 0; r < rows; ++r) yv[r] = y[r];
    std::vector<std::string> labels;
    for (size_t c = 0; c < k; ++c) {
      labels.push_back(names != nullptr && names[c] != nullptr ? std::string(names[c]) : fmt::format("x{}", c + 1));
    }
    pitchlex::DesignMatrix design;
    if (add_intercept != 0) {
      design = pitchlex::DesignMatrix::with_intercept(std::move(labels), xm, yv);
    } else {
      design.columns = std::move(labels);
      design.x = std::move(xm);
      design.y = std::move(yv);
    }
    pitchlex::FitOptions options;
    if (max_iter > 0) options.max_iter = max_iter;
    if (tol > 0.0) options.tol = tol;
    *out = new pl_fit{pitchlex::fit_logistic(design, options)};
    return PL_OK;
  });
}

size_t pl_fit_param_count(const pl_fit* fit) { return fit == nullptr ? 0 : fit->fit.columns.size(); }

const char* pl_fit_column_name(const pl_fit* fit, size_t i) {
  if (fit == nullptr || i >= fit->fit.columns.size()) return nullptr;
  return fit->fit.columns[i].c_str();
}

pl_status pl_fit_coefficient(const pl_fit* fit, size_t i, double* beta, double* se, double* z, double* p) {
  if (fit == nullptr || i >= fit->fit.columns.size()) {
    return fail(PL_ERR_INVALID_ARGUMENT, "coefficient index out of range");
  }
  const auto j = static_cast<Eigen::Index>(i);
  if (beta != nullptr) *beta = fit->fit.coefficients[j];
  if (se != nullptr) *se = fit->fit.standard_errors[j];
  if (z != nullptr) *z = fit->fit.z_scores[j];
  if (p != nullptr) *p = fit->fit.p_values[j];
  return PL_OK;
}

double pl_fit_log_likelihood(const pl_fit* fit) { return fit == nullptr ? 0.0 : fit->fit.log_likelihood; }

double pl_fit_null_log_likelihood(const pl_fit* fit) {
  return fit == nullptr ? 0.0 : fit->fit.null_log_likelihood;
}

double pl_fit_pseudo_r2(const pl_fit* fit) { return fit == nullptr ? 0.0 : fit->fit.pseudo_r2; }

int pl_fit_converged(const pl_fit* fit) { return fit != nullptr && fit->fit.converged ? 1 : 0; }

pl_status pl_fit_json(const pl_fit* fit, char** out) {
  return guarded([&] {
    if (fit == nullptr || out == nullptr) return fail(PL_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    *out = dup_string(pitchlex::to_json(fit->fit).dump(2));
    return PL_OK;
  });
}

void pl_fit_free(pl_fit* fit) { delete fit; }

}  // extern "C"
