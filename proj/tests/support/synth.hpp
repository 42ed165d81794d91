// SPDX-License-Identifier: Apache-2.0
// Seeded synthetic data for tests. Everything here is deterministic for a
// given seed on a given standard library.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pitchlex/corpus.hpp"
#include "pitchlex/glm.hpp"

namespace pitchlex::testing {

using Rng = std::mt19937_64;

/// Uniform in [lo, hi). Built from raw engine bits so the stream does not
/// depend on the library's distribution implementations.
double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
double normal(Rng& rng, double mean = 0.0, double sd = 1.0);
bool bernoulli(Rng& rng, double p);
std::size_t pick(Rng& rng, std::size_t n);

double sigmoid(double eta);

// ---- logistic regression fixtures ----

struct LogisticFixture {
  std::string name;
  DesignMatrix design;  // intercept plus at most two predictors, n = 30
};

/// Five fixed recipes (seed, true coefficients, predictor count).
std::vector<LogisticFixture> logistic_fixtures();

struct SignRecoveryData {
  DesignMatrix design;          // intercept + the twelve linguistic predictors
  Eigen::VectorXd beta_true;    // aligned with design.columns
  std::vector<int> planted_sign;  // -1, 0 or +1 per column (0 for intercept)
};

/// Predictors drawn independently with the description-text means and SDs
/// of the reference study; planted coefficients have |beta * sd| = effect.
SignRecoveryData make_sign_recovery(std::size_t n, std::uint64_t seed, double effect = 0.6);

// ---- transcripts ----

/// Words drawn from a fixed in-vocabulary pool.
std::vector<std::string> random_words(Rng& rng, std::size_t n);

/// Replaces exactly round(fraction * n) distinct positions with tokens that
/// appear nowhere in the vocabulary.
std::vector<std::string> corrupt_words(const std::vector<std::string>& words, double fraction, Rng& rng);

std::string join_words(const std::vector<std::string>& words);

/// Splits words into cues of `per_cue` words, 2 s apart.
std::string render_srt(const std::vector<std::string>& words, std::size_t per_cue = 8);
std::string render_vtt(const std::vector<std::string>& words, std::size_t per_cue = 8);

// ---- suite corpus ----

struct SuiteCorpusRecipe {
  std::size_t records = 1049;
  std::size_t first_source = 660;   // records with an "otter" track
  std::size_t second_source = 533;  // records with a "youtube" track
  std::size_t manual = 60;          // records with a "manual" reference (subset of both)
  std::uint64_t seed = 1049;
  std::size_t description_words = 300;
  std::size_t pitch_words = 120;
  int outcome_override = -1;  // 0 or 1 forces a single class
};

/// Campaigns whose funding depends on a latent quality that also shapes the
/// description's word mix; pitch transcripts carry a weaker trace of it.
/// Subtitle sources are "otter" (SRT) and "youtube" (WebVTT).
std::vector<CampaignRecord> make_suite_corpus(const SuiteCorpusRecipe& recipe = {});

// ---- files ----

/// Fresh empty directory under the system temp dir.
std::filesystem::path fresh_dir(std::string_view tag);
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace pitchlex::testing
