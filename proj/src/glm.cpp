// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/glm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "pitchlex/error.hpp"

namespace pitchlex {
namespace {

constexpr double kProbClamp = 1e-12;
constexpr int kMaxHalvings = 40;
constexpr double kRankThreshold = 1e-10;
constexpr double kVifCollinear = 1e-12;
// Log-likelihood differences below this (relative) are rounding noise. Near
// the optimum a Newton step's true gain drops under it while the score is
// still well above the tolerance, so such steps are accepted as non-worsening.
constexpr double kLlNoise = 1e-13;

// p = P(y = 1) and q = 1 - p, each computed without cancellation.
inline void probabilities(double eta, double& p, double& q) {
  if (eta >= 0) {
    const double e = std::exp(-eta);
    p = 1.0 / (1.0 + e);
    q = e / (1.0 + e);
  } else {
    const double e = std::exp(eta);
    p = e / (1.0 + e);
    q = 1.0 / (1.0 + e);
  }
}

double ll_of(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    double p = 0.0;
    double q = 0.0;
    probabilities(eta[i], p, q);
    p = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    q = std::clamp(q, kProbClamp, 1.0 - kProbClamp);
    ll += y[i] > 0.5 ? std::log(p) : std::log(q);
  }
  return ll;
}

Eigen::VectorXd fitted(const Eigen::VectorXd& eta) {
  Eigen::VectorXd p(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    double q = 0.0;
    probabilities(eta[i], p[i], q);
  }
  return p;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

// Centering/scaling that turns the user design into a well-conditioned one.
struct Standardization {
  Eigen::VectorXd center;
  Eigen::VectorXd scale;

  // beta_original = T * beta_standardized
  Eigen::MatrixXd back_transform(bool has_intercept) const {
    const auto k = center.size();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j) t(j, j) = 1.0 / scale[j];
    if (has_intercept) {
      for (Eigen::Index j = 1; j < k; ++j) t(0, j) = -center[j] / scale[j];
    }
    return t;
  }
};

Standardization standardize(const DesignMatrix& d) {
  const auto k = static_cast<Eigen::Index>(d.cols());
  const auto n = static_cast<double>(d.rows());
  Standardization s{Eigen::VectorXd::Zero(k), Eigen::VectorXd::Ones(k)};
  for (Eigen::Index j = 0; j < k; ++j) {
    if (d.has_intercept && j == 0) continue;
    const auto col = d.x.col(j);
    if (d.has_intercept) {
      s.center[j] = col.mean();
      const double sd = std::sqrt((col.array() - s.center[j]).square().sum() / n);
      if (!(sd > 0)) {
        throw Error(ErrorKind::Collinearity,
                    "column " + d.columns[static_cast<std::size_t>(j)] + " is constant (collinear with the intercept)");
      }
      s.scale[j] = sd;
    } else {
      const double rms = std::sqrt(col.squaredNorm() / n);
      if (!(rms > 0)) throw Error(ErrorKind::Collinearity, "column " + d.columns[static_cast<std::size_t>(j)] + " is all zero");
      s.scale[j] = rms;
    }
  }
  return s;
}

std::vector<std::string> diverging_columns(const Eigen::VectorXd& beta_std, const DesignMatrix& d) {
  const Eigen::Index first = d.has_intercept ? 1 : 0;
  double largest = 0.0;
  for (Eigen::Index j = first; j < beta_std.size(); ++j) largest = std::max(largest, std::abs(beta_std[j]));
  std::vector<std::string> names;
  for (Eigen::Index j = first; j < beta_std.size(); ++j) {
    if (largest > 0 && std::abs(beta_std[j]) >= 0.5 * largest) names.push_back(d.columns[static_cast<std::size_t>(j)]);
  }
  if (names.empty()) names.push_back(d.columns.front());
  return names;
}

[[noreturn]] void separation(const Eigen::VectorXd& beta_std, const DesignMatrix& d, const std::string& why) {
  throw Error(ErrorKind::Separation,
              "complete or quasi-complete separation (" + why + "); offending columns: " + join(diverging_columns(beta_std, d)));
}

}  // namespace

DesignMatrix DesignMatrix::with_intercept(std::vector<std::string> predictor_names, const Eigen::MatrixXd& predictors,
                                          const Eigen::VectorXd& y) {
  if (static_cast<Eigen::Index>(predictor_names.size()) != predictors.cols()) {
    throw Error(ErrorKind::InvalidArgument, "predictor names do not match the predictor column count");
  }
  DesignMatrix d;
  d.columns.reserve(predictor_names.size() + 1);
  d.columns.emplace_back(kInterceptName);
  for (auto& name : predictor_names) d.columns.push_back(std::move(name));
  d.x.resize(predictors.rows(), predictors.cols() + 1);
  d.x.col(0).setOnes();
  d.x.rightCols(predictors.cols()) = predictors;
  d.y = y;
  d.has_intercept = true;
  return d;
}

void DesignMatrix::validate() const {
  if (static_cast<Eigen::Index>(columns.size()) != x.cols()) {
    throw Error(ErrorKind::InvalidArgument, "column names do not match the design width");
  }
  if (y.size() != x.rows()) throw Error(ErrorKind::InvalidArgument, "outcome length does not match the design rows");
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (!seen.insert(c).second) throw Error(ErrorKind::InvalidArgument, "duplicate column name '" + c + "'");
  }
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "design contains non-finite values");
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) throw Error(ErrorKind::InvalidArgument, "outcome must be coded 0/1");
  }
  if (has_intercept && (x.cols() == 0 || !(x.col(0).array() == 1.0).all())) {
    throw Error(ErrorKind::InvalidArgument, "intercept column must be all ones");
  }
}

std::optional<std::size_t> FitResult::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

double log_likelihood(const Eigen::VectorXd& beta, const DesignMatrix& design) {
  if (beta.size() != design.x.cols()) throw Error(ErrorKind::InvalidArgument, "coefficient length does not match the design");
  return ll_of(design.x * beta, design.y);
}

Eigen::VectorXd score(const Eigen::VectorXd& beta, const DesignMatrix& design) {
  if (beta.size() != design.x.cols()) throw Error(ErrorKind::InvalidArgument, "coefficient length does not match the design");
  return design.x.transpose() * (design.y - fitted(design.x * beta));
}

Eigen::MatrixXd information(const Eigen::VectorXd& beta, const DesignMatrix& design) {
  const Eigen::VectorXd p = fitted(design.x * beta);
  const Eigen::VectorXd w = (p.array() * (1.0 - p.array())).matrix();
  return design.x.transpose() * w.asDiagonal() * design.x;
}

double mcfadden_r2(double full_ll, double null_ll) {
  if (null_ll == 0.0) throw Error(ErrorKind::Undefined, "McFadden R2 is undefined when the null log-likelihood is 0");
  return 1.0 - full_ll / null_ll;
}

std::string_view significance_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

WaldStat wald(double beta, double se) {
  if (!(se > 0) || !std::isfinite(se)) throw Error(ErrorKind::Collinearity, "standard error is not positive and finite");
  WaldStat w;
  w.se = se;
  w.z = beta / se;
  w.p = std::erfc(std::abs(w.z) / std::sqrt(2.0));
  w.stars = significance_stars(w.p);
  return w;
}

std::vector<WaldStat> wald_stats(const FitResult& fit) {
  std::vector<WaldStat> out;
  out.reserve(fit.columns.size());
  for (Eigen::Index j = 0; j < fit.coefficients.size(); ++j) {
    const double var = fit.covariance(j, j);
    if (!(var > 0) || !std::isfinite(var)) {
      throw Error(ErrorKind::Collinearity, "information matrix is not invertible at column " + fit.columns[static_cast<std::size_t>(j)]);
    }
    out.push_back(wald(fit.coefficients[j], std::sqrt(var)));
  }
  return out;
}

FitResult fit_logistic(const DesignMatrix& design, const FitOptions& options) {
  design.validate();
  const auto n = design.x.rows();
  const auto k = design.x.cols();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "design has no columns");
  if (n <= k) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("need more rows than columns (n = {}, k = {})", n, k));
  }
  const double positives = design.y.sum();
  if (positives == 0.0 || positives == static_cast<double>(n)) {
    throw Error(ErrorKind::DegenerateOutcome, "outcome has a single class");
  }

  const Standardization st = standardize(design);
  DesignMatrix z = design;
  for (Eigen::Index j = 0; j < k; ++j) {
    z.x.col(j) = (design.x.col(j).array() - st.center[j]) / st.scale[j];
  }

  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z.x);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < k) {
      std::vector<std::string> dependent;
      for (Eigen::Index r = qr.rank(); r < k; ++r) {
        dependent.push_back(design.columns[static_cast<std::size_t>(qr.colsPermutation().indices()[r])]);
      }
      std::sort(dependent.begin(), dependent.end());
      throw Error(ErrorKind::Collinearity, "design matrix is rank deficient; dependent columns: " + join(dependent));
    }
  }

  FitResult fit;
  fit.columns = design.columns;
  fit.n = static_cast<std::size_t>(n);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  double ll = ll_of(z.x * beta, z.y);
  fit.log_likelihood_trace.push_back(ll);

  auto converged_at = [&](const Eigen::VectorXd& g) { return g.cwiseAbs().maxCoeff() < options.tol; };

  Eigen::VectorXd g = score(beta, z);
  while (!converged_at(g) && fit.iterations < options.max_iter) {
    const Eigen::MatrixXd info = information(beta, z);
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success) separation(beta, design, "information matrix became singular");
    const Eigen::VectorXd step = llt.solve(g);

    const double floor = ll - kLlNoise * (1.0 + std::abs(ll));
    double t = 1.0;
    Eigen::VectorXd candidate = beta + step;
    double candidate_ll = ll_of(z.x * candidate, z.y);
    int halvings = 0;
    while (!(candidate_ll >= floor) && halvings < kMaxHalvings) {
      t *= 0.5;
      candidate = beta + t * step;
      candidate_ll = ll_of(z.x * candidate, z.y);
      ++halvings;
    }
    if (!(candidate_ll >= floor)) break;  // no ascent left at working precision

    beta = std::move(candidate);
    ll = candidate_ll;
    ++fit.iterations;
    fit.log_likelihood_trace.push_back(ll);
    if (beta.cwiseAbs().maxCoeff() > options.separation_bound) {
      separation(beta, design, fmt::format("coefficients exceeded {}", options.separation_bound));
    }
    g = score(beta, z);
  }
  fit.converged = converged_at(g);
  if (!fit.converged && beta.cwiseAbs().maxCoeff() > 0.5 * options.separation_bound) {
    separation(beta, design, "no convergence with diverging coefficients");
  }

  const Eigen::MatrixXd info = information(beta, z);
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::Collinearity, "information matrix is not invertible at the optimum");
  }
  const Eigen::MatrixXd cov_std = llt.solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd t = st.back_transform(design.has_intercept);

  fit.coefficients = t * beta;
  fit.covariance = t * cov_std * t.transpose();
  fit.log_likelihood = ll;
  const double ybar = positives / static_cast<double>(n);
  fit.null_log_likelihood = positives * std::log(ybar) + (static_cast<double>(n) - positives) * std::log1p(-ybar);
  fit.pseudo_r2 = mcfadden_r2(fit.log_likelihood, fit.null_log_likelihood);

  const auto stats = wald_stats(fit);
  fit.standard_errors.resize(k);
  fit.z_scores.resize(k);
  fit.p_values.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    fit.standard_errors[j] = stats[static_cast<std::size_t>(j)].se;
    fit.z_scores[j] = stats[static_cast<std::size_t>(j)].z;
    fit.p_values[j] = stats[static_cast<std::size_t>(j)].p;
  }
  return fit;
}

std::vector<VifEntry> vif(const DesignMatrix& design) {
  const Eigen::Index first = design.has_intercept ? 1 : 0;
  const Eigen::Index p = design.x.cols() - first;
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "VIF needs at least two predictors");
  const Eigen::Index n = design.x.rows();

  std::vector<VifEntry> out;
  for (Eigen::Index j = first; j < design.x.cols(); ++j) {
    const auto& name = design.columns[static_cast<std::size_t>(j)];
    const Eigen::VectorXd target = design.x.col(j);
    const double mean = target.mean();
    const double sst = (target.array() - mean).square().sum();
    if (!(sst > 0)) throw Error(ErrorKind::InvalidArgument, "predictor " + name + " has zero variance");

    Eigen::MatrixXd others(n, p);
    others.col(0).setOnes();
    Eigen::Index c = 1;
    for (Eigen::Index o = first; o < design.x.cols(); ++o) {
      if (o != j) others.col(c++) = design.x.col(o);
    }
    const Eigen::VectorXd coef = others.colPivHouseholderQr().solve(target);
    const double ssr = (target - others * coef).squaredNorm();
    const double unexplained = ssr / sst;  // 1 - R^2
    if (unexplained <= kVifCollinear) {
      throw Error(ErrorKind::Collinearity, "infinite VIF: predictor " + name + " is a linear combination of the others");
    }
    out.push_back({name, 1.0 / unexplained});
  }
  return out;
}

nlohmann::ordered_json to_json(const FitResult& fit) {
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::ordered_json j;
  j["columns"] = fit.columns;
  j["coefficients"] = vec(fit.coefficients);
  j["standard_errors"] = vec(fit.standard_errors);
  j["z_scores"] = vec(fit.z_scores);
  j["p_values"] = vec(fit.p_values);
  j["log_likelihood"] = fit.log_likelihood;
  j["null_log_likelihood"] = fit.null_log_likelihood;
  j["pseudo_r2"] = fit.pseudo_r2;
  j["n"] = fit.n;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  return j;
}

}  // namespace pitchlex
