// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/suite.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "csv.hpp"
#include "parallel.hpp"
#include "pitchlex/error.hpp"

namespace pitchlex {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kLegend = "Standard errors are in parenthesis, *** p < 0.01, ** p < 0.05, * p < 0.1";

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Text features per record, one optional slot per text source.
struct RecordFeatures {
  std::optional<LinguisticFeatureVector> description;
  std::optional<LinguisticFeatureVector> first;
  std::optional<LinguisticFeatureVector> second;
  std::vector<std::string> diagnostics;
};

const std::optional<LinguisticFeatureVector>& slot_for(const RecordFeatures& f, const ModelSpec& spec,
                                                       const SourcePair& sources) {
  static const std::optional<LinguisticFeatureVector> none;
  if (spec.text_kind == TextKind::Description) return f.description;
  if (spec.text_kind == TextKind::Subtitle) return spec.text_source == sources.first ? f.first : f.second;
  return none;
}

ModelOutcome fit_model(const ModelSpec& spec, std::span<const CampaignRecord* const> records,
                       std::span<const RecordFeatures> features, const SourcePair& sources,
                       const SuiteOptions& options) {
  ModelOutcome out;
  out.spec = spec;

  std::vector<std::size_t> sample;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (spec.text_kind == TextKind::None || slot_for(features[i], spec, sources).has_value()) sample.push_back(i);
  }
  out.obs = sample.size();
  if (sample.empty()) {
    out.skip_reason = ErrorKind::EmptyInput;
    out.diagnostics.push_back(fmt::format("model {} skipped: empty sample ({})", spec.id, spec.sample_filter));
    return out;
  }

  auto names = spec.predictors();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(sample.size()), static_cast<Eigen::Index>(names.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(sample.size()));
  for (std::size_t r = 0; r < sample.size(); ++r) {
    const auto i = sample[r];
    const auto& rec = *records[i];
    const auto controls = derive_controls(rec).values();
    const auto& text = slot_for(features[i], spec, sources);
    for (std::size_t c = 0; c < names.size(); ++c) {
      double v = 0.0;
      const auto cit = std::find(kControlNames.begin(), kControlNames.end(), names[c]);
      if (cit != kControlNames.end()) {
        v = controls[static_cast<std::size_t>(cit - kControlNames.begin())];
      } else {
        v = text->value(names[c]);
      }
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
    y[static_cast<Eigen::Index>(r)] = rec.funded;
  }

  // Constant predictors are indistinguishable from the intercept.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const auto col = x.col(c);
    if (col.maxCoeff() == col.minCoeff()) {
      out.dropped_columns.push_back(names[static_cast<std::size_t>(c)]);
      out.diagnostics.push_back(fmt::format("model {}: dropped constant column {}", spec.id,
                                            names[static_cast<std::size_t>(c)]));
    } else {
      keep.push_back(c);
    }
  }
  Eigen::MatrixXd kept(x.rows(), static_cast<Eigen::Index>(keep.size()));
  std::vector<std::string> kept_names;
  for (std::size_t c = 0; c < keep.size(); ++c) {
    kept.col(static_cast<Eigen::Index>(c)) = x.col(keep[c]);
    kept_names.push_back(names[static_cast<std::size_t>(keep[c])]);
  }
  if (options.standardize && kept.rows() > 1) {
    for (Eigen::Index c = 0; c < kept.cols(); ++c) {
      const double mean = kept.col(c).mean();
      const double sd = std::sqrt((kept.col(c).array() - mean).square().sum() / static_cast<double>(kept.rows() - 1));
      kept.col(c) = (kept.col(c).array() - mean) / sd;
    }
  }

  const auto design = DesignMatrix::with_intercept(kept_names, kept, y);
  try {
    out.fit = fit_logistic(design, options.fit);
  } catch (const Error& e) {
    out.skip_reason = e.kind();
    out.diagnostics.push_back(fmt::format("model {} skipped: {}: {}", spec.id, to_string(e.kind()), e.what()));
    return out;
  }
  if (!out.fit->converged) {
    out.diagnostics.push_back(fmt::format("model {}: did not converge within {} iterations", spec.id, options.fit.max_iter));
  }
  try {
    if (kept_names.size() >= 2) out.vif = vif(design);
  } catch (const Error& e) {
    out.diagnostics.push_back(fmt::format("model {}: VIF unavailable: {}", spec.id, e.what()));
  }
  return out;
}

}  // namespace

std::vector<std::string> ModelSpec::predictors() const {
  std::vector<std::string> out;
  if (include_controls) {
    for (auto name : kControlNames) {
      if (name == "video" && !include_video_dummy) continue;
      out.emplace_back(name);
    }
  }
  if (text_kind != TextKind::None) {
    for (auto name : kLinguisticPredictors) out.emplace_back(name);
  }
  return out;
}

ModelSpec build_model_spec(int id, const SourcePair& sources) {
  if (id < 1 || id > 7) throw Error(ErrorKind::InvalidArgument, fmt::format("model id {} is outside 1..7", id));
  ModelSpec s;
  s.id = id;
  if (id >= 4) {
    const auto& src = id <= 5 ? sources.first : sources.second;
    if (src.empty()) throw Error(ErrorKind::InvalidArgument, fmt::format("model {} needs a subtitle source name", id));
    s.text_kind = TextKind::Subtitle;
    s.text_source = src;
    s.include_controls = (id == 5 || id == 7);
    s.include_video_dummy = false;
    s.label = s.include_controls ? "Controls & " + capitalize(src) : capitalize(src);
    s.sample_filter = "records with a '" + src + "' track";
    return s;
  }
  s.sample_filter = "all records";
  switch (id) {
    case 1:
      s.label = "Controls";
      s.include_controls = true;
      s.include_video_dummy = true;
      break;
    case 2:
      s.label = "Proj.Desc.";
      s.text_kind = TextKind::Description;
      s.text_source = kDescriptionSource;
      break;
    default:
      s.label = "Controls & Proj.Desc.";
      s.text_kind = TextKind::Description;
      s.text_source = kDescriptionSource;
      s.include_controls = true;
      s.include_video_dummy = true;
  }
  return s;
}

SuiteResult run_suite(std::span<const CampaignRecord> corpus, const FeatureExtractor& extractor,
                      const SourcePair& sources, const SuiteOptions& options) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyInput, "empty corpus");
  SuiteResult result;

  std::vector<const CampaignRecord*> records;
  for (const auto& rec : corpus) {
    const auto violations = validate_record(rec);
    if (violations.empty()) {
      records.push_back(&rec);
      continue;
    }
    for (const auto& v : violations) {
      result.diagnostics.push_back("record " + rec.id + " excluded: " + v.field + " " + v.rule);
    }
  }

  std::vector<RecordFeatures> features(records.size());
  detail::parallel_for(records.size(), options.workers, [&](std::size_t i) {
    const auto& rec = *records[i];
    auto& f = features[i];
    f.description = extractor.extract(rec.description);
    auto subtitle = [&](const std::string& source, std::optional<LinguisticFeatureVector>& slot) {
      const auto it = rec.subtitles.find(source);
      if (it == rec.subtitles.end()) return;
      try {
        slot = extractor.extract(transcript_text(it->second, options.flatten));
      } catch (const Error& e) {
        f.diagnostics.push_back("record " + rec.id + ": '" + source + "' track unreadable: " + e.what());
      }
    };
    subtitle(sources.first, f.first);
    subtitle(sources.second, f.second);
  });
  for (const auto& f : features) {
    result.diagnostics.insert(result.diagnostics.end(), f.diagnostics.begin(), f.diagnostics.end());
  }

  std::vector<ModelSpec> specs;
  for (int id = 1; id <= 7; ++id) specs.push_back(build_model_spec(id, sources));
  result.models.resize(specs.size());
  detail::parallel_for(specs.size(), options.workers, [&](std::size_t m) {
    result.models[m] = fit_model(specs[m], records, features, sources, options);
  });
  for (const auto& m : result.models) {
    result.diagnostics.insert(result.diagnostics.end(), m.diagnostics.begin(), m.diagnostics.end());
  }

  auto collect = [&](std::string name, auto pick) {
    std::vector<LinguisticFeatureVector> vs;
    for (const auto& f : features) {
      if (const auto& v = pick(f)) vs.push_back(*v);
    }
    if (!vs.empty()) result.stats.push_back({std::move(name), summarize(vs)});
  };
  collect(std::string(kDescriptionSource), [](const RecordFeatures& f) -> const auto& { return f.description; });
  collect(sources.first, [](const RecordFeatures& f) -> const auto& { return f.first; });
  if (sources.second != sources.first) {
    collect(sources.second, [](const RecordFeatures& f) -> const auto& { return f.second; });
  }

  for (const auto& m : result.models) {
    if (!m.skipped()) result.ranking.push_back(m.spec.id);
  }
  std::stable_sort(result.ranking.begin(), result.ranking.end(), [&](int a, int b) {
    return result.models[static_cast<std::size_t>(a - 1)].fit->pseudo_r2 >
           result.models[static_cast<std::size_t>(b - 1)].fit->pseudo_r2;
  });
  return result;
}

std::string format_cell(double coefficient, double standard_error, double p_value) {
  return fmt::format("{:.3f}{} ({:.3f})", coefficient, significance_stars(p_value), standard_error);
}

std::string_view display_name(std::string_view predictor) {
  static constexpr std::pair<std::string_view, std::string_view> kNames[] = {
      {"log_updates", "updates"},      {"log_pledged", "log pledged"}, {"reward_levels", "reward levels"},
      {"team", "team size"},           {"word_count", "word count"},   {"sixltr", "sixletter words"},
  };
  for (const auto& [key, label] : kNames) {
    if (key == predictor) return label;
  }
  return predictor;
}

TableGrid build_grid(const SuiteResult& result) {
  TableGrid grid;
  std::vector<std::string> row_names;
  for (auto name : kControlNames) row_names.emplace_back(name);
  for (auto name : kLinguisticPredictors) row_names.emplace_back(name);

  for (const auto& m : result.models) {
    grid.model_ids.push_back(std::to_string(m.spec.id));
    grid.model_labels.push_back(m.spec.label);
  }
  for (const auto& name : row_names) {
    std::vector<std::string> cells;
    for (const auto& m : result.models) {
      std::string cell;
      if (m.fit) {
        if (const auto j = m.fit->column_index(name)) {
          const auto idx = static_cast<Eigen::Index>(*j);
          cell = format_cell(m.fit->coefficients[idx], m.fit->standard_errors[idx], m.fit->p_values[idx]);
        }
      }
      cells.push_back(std::move(cell));
    }
    grid.rows.emplace_back(std::string(display_name(name)), std::move(cells));
  }

  std::vector<std::string> obs;
  std::vector<std::string> r2;
  for (const auto& m : result.models) {
    obs.push_back(m.fit ? std::to_string(m.obs) : std::string());
    r2.push_back(m.fit ? fmt::format("{:.3f}", m.fit->pseudo_r2) : std::string());
  }
  grid.rows.emplace_back("Obs.", std::move(obs));
  grid.rows.emplace_back("Pseudo R²", std::move(r2));

  grid.footnotes.emplace_back(kLegend);
  for (const auto& m : result.models) {
    for (const auto& d : m.diagnostics) grid.footnotes.push_back(d);
  }
  return grid;
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "markdown" || name == "md") return TableFormat::Markdown;
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw Error(ErrorKind::Config, "unknown table format '" + std::string(name) + "' (markdown, csv, json)");
}

std::string_view extension_for(TableFormat format) {
  switch (format) {
    case TableFormat::Markdown: return "md";
    case TableFormat::Csv: return "csv";
    case TableFormat::Json: return "json";
  }
  return "txt";
}

namespace {

std::string markdown(const TableGrid& g) {
  auto line = [](const std::string& first, const std::vector<std::string>& cells) {
    std::string out = "| " + first;
    for (const auto& c : cells) out += " | " + c;
    return out + " |\n";
  };
  std::string out = line("Model", g.model_ids);
  out += "|---";
  for (std::size_t i = 0; i < g.model_ids.size(); ++i) out += "|---";
  out += "|\n";
  out += line("Variable", g.model_labels);
  for (const auto& [name, cells] : g.rows) out += line(name, cells);
  out += "\n";
  for (const auto& f : g.footnotes) out += f + "\n\n";
  return out;
}

std::string csv(const TableGrid& g) {
  std::string out;
  detail::CsvRow header{"Model"};
  header.insert(header.end(), g.model_ids.begin(), g.model_ids.end());
  detail::append_csv_row(out, header);
  detail::CsvRow labels{"Variable"};
  labels.insert(labels.end(), g.model_labels.begin(), g.model_labels.end());
  detail::append_csv_row(out, labels);
  for (const auto& [name, cells] : g.rows) {
    detail::CsvRow row{name};
    row.insert(row.end(), cells.begin(), cells.end());
    detail::append_csv_row(out, row);
  }
  for (const auto& f : g.footnotes) detail::append_csv_row(out, {f});
  return out;
}

ordered_json grid_json(const TableGrid& g) {
  ordered_json j;
  j["models"] = ordered_json::array();
  for (std::size_t i = 0; i < g.model_ids.size(); ++i) {
    j["models"].push_back({{"id", g.model_ids[i]}, {"label", g.model_labels[i]}});
  }
  j["rows"] = ordered_json::array();
  for (const auto& [name, cells] : g.rows) j["rows"].push_back({{"variable", name}, {"cells", cells}});
  j["footnotes"] = g.footnotes;
  return j;
}

}  // namespace

ordered_json to_json(const SuiteResult& result) {
  ordered_json j;
  j["models"] = ordered_json::array();
  for (const auto& m : result.models) {
    ordered_json entry;
    entry["id"] = m.spec.id;
    entry["label"] = m.spec.label;
    entry["text_source"] = m.spec.text_source;
    entry["sample"] = m.spec.sample_filter;
    entry["obs"] = m.obs;
    entry["skipped"] = m.skipped();
    entry["fit"] = m.fit ? to_json(*m.fit) : ordered_json(nullptr);
    entry["vif"] = ordered_json::array();
    for (const auto& v : m.vif) entry["vif"].push_back({{"column", v.column}, {"vif", v.vif}});
    entry["dropped_columns"] = m.dropped_columns;
    entry["diagnostics"] = m.diagnostics;
    j["models"].push_back(std::move(entry));
  }
  j["ranking"] = result.ranking;
  j["diagnostics"] = result.diagnostics;
  return j;
}

std::string render_table(const SuiteResult& result, TableFormat format) {
  const auto grid = build_grid(result);
  switch (format) {
    case TableFormat::Markdown: return markdown(grid);
    case TableFormat::Csv: return csv(grid);
    case TableFormat::Json: break;
  }
  ordered_json j;
  j["table"] = grid_json(grid);
  j["suite"] = to_json(result);
  return j.dump(2) + "\n";
}

TableGrid grid_from_json(std::string_view json_text) {
  TableGrid g;
  try {
    const auto j = nlohmann::json::parse(json_text);
    const auto& t = j.at("table");
    for (const auto& m : t.at("models")) {
      g.model_ids.push_back(m.at("id").get<std::string>());
      g.model_labels.push_back(m.at("label").get<std::string>());
    }
    for (const auto& r : t.at("rows")) {
      g.rows.emplace_back(r.at("variable").get<std::string>(), r.at("cells").get<std::vector<std::string>>());
    }
    g.footnotes = t.at("footnotes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("table json: ") + e.what());
  }
  return g;
}

std::string vif_csv(const ModelOutcome& model) {
  std::string out;
  detail::append_csv_row(out, {"column", "vif"});
  for (const auto& v : model.vif) detail::append_csv_row(out, {v.column, fmt::format("{:.6f}", v.vif)});
  return out;
}

std::string ranking_text(const SuiteResult& result) {
  std::string out = "pseudo-R2 ranking:";
  for (std::size_t i = 0; i < result.ranking.size(); ++i) {
    const auto& m = result.models[static_cast<std::size_t>(result.ranking[i] - 1)];
    out += fmt::format("{}model {} {} ({:.3f})", i == 0 ? " " : " > ", m.spec.id, m.spec.label, m.fit->pseudo_r2);
  }
  return out + "\n";
}

}  // namespace pitchlex
