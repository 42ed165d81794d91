// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace pitchlex {

inline constexpr std::string_view kInterceptName = "(intercept)";

/// Predictors plus binary outcome. When present, the intercept is column 0.
struct DesignMatrix {
  std::vector<std::string> columns;
  Eigen::MatrixXd x;  // n x k
  Eigen::VectorXd y;  // 0/1, length n
  bool has_intercept = false;

  /// Prepends an all-ones "(intercept)" column.
  static DesignMatrix with_intercept(std::vector<std::string> predictor_names, const Eigen::MatrixXd& predictors,
                                     const Eigen::VectorXd& y);

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }

  /// Throws Error(InvalidArgument) on shape, finiteness, naming or outcome coding problems.
  void validate() const;
};

struct FitOptions {
  int max_iter = 50;
  double tol = 1e-8;               // on max |score| of the internally standardized problem
  double separation_bound = 30.0;  // on max |coefficient| of the standardized problem
};

struct FitResult {
  std::vector<std::string> columns;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd z_scores;
  Eigen::VectorXd p_values;
  Eigen::MatrixXd covariance;  // inverse observed information
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  double pseudo_r2 = 0.0;
  std::size_t n = 0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> log_likelihood_trace;  // one entry per accepted iterate, starting at beta = 0

  std::optional<std::size_t> column_index(std::string_view name) const;
};

/// Maximum-likelihood logistic regression by Newton-Raphson (IRLS) with
/// step-halving, started at beta = 0.
///
/// Columns are centered and scaled internally so the solve is well
/// conditioned regardless of predictor units; results are mapped back to
/// the original scale.
///
/// Throws Error(DegenerateOutcome) for single-class y, Error(Collinearity)
/// for a rank-deficient design, Error(Separation) when the coefficients
/// diverge past options.separation_bound.
FitResult fit_logistic(const DesignMatrix& design, const FitOptions& options = {});

/// Bernoulli log-likelihood, probabilities clamped to [1e-12, 1 - 1e-12].
double log_likelihood(const Eigen::VectorXd& beta, const DesignMatrix& design);
/// Gradient of log_likelihood: X'(y - p).
Eigen::VectorXd score(const Eigen::VectorXd& beta, const DesignMatrix& design);
/// Observed (= expected, for the logit link) information X'WX.
Eigen::MatrixXd information(const Eigen::VectorXd& beta, const DesignMatrix& design);

/// 1 - full/null. Throws Error(Undefined) when null_ll is 0.
double mcfadden_r2(double full_ll, double null_ll);

std::string_view significance_stars(double p);

struct WaldStat {
  double se = 0.0;
  double z = 0.0;
  double p = 1.0;
  std::string_view stars;
};

WaldStat wald(double beta, double se);
/// Throws Error(Collinearity) if the covariance diagonal is not positive and finite.
std::vector<WaldStat> wald_stats(const FitResult& fit);

struct VifEntry {
  std::string column;
  double vif = 1.0;
};

/// VIF_j = 1 / (1 - R_j^2), R_j^2 from regressing predictor j on the other
/// predictors plus an intercept. The design's own intercept column is skipped.
/// Throws Error(Collinearity) naming the column when R_j^2 reaches 1 within 1e-12.
std::vector<VifEntry> vif(const DesignMatrix& design);

nlohmann::ordered_json to_json(const FitResult& fit);

}  // namespace pitchlex
