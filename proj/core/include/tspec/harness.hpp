#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tspec/deviation.hpp"
#include "tspec/symbol.hpp"
#include "tspec/types.hpp"

namespace tspec {

enum class Mode { Compare, DetAsym, Eig, Predict };

struct ExperimentConfig {
  SymbolSpec symbol = PureJump{{0.8, 1.0 / 3.0}, 0.0};
  std::vector<std::size_t> n_list{200};
  std::size_t quad_points = 8192;
  std::optional<double> exclusion_margin;
  std::string output_path;  // empty: stdout
  Mode mode = Mode::Compare;
  cplx zeta{2.0, 0.0};
  QuadratureConfig quad;
};

/// Throws ConfigError unless n_list is nonempty with every n >= 2 and quad_points is a power of
/// two >= 1024.
void validate(const ExperimentConfig& cfg);

/// YAML config: the symbol-spec keys plus n_list, quad_points, exclusion_margin, output, mode
/// (compare | det-asym | eig | predict), zeta_re, zeta_im. The symbol keys are optional.
ExperimentConfig config_from_yaml(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

Mode parse_mode(const std::string& name);
std::string mode_name(Mode m);

/// Worker count: hardware concurrency, capped by TOEPLITZ_SPECTRA_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. The exception thrown by the
/// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct ComparisonRow {
  std::size_t n = 0;
  std::size_t j = 0;  // 1-based theta index
  double theta = 0.0;
  cplx lambda;
  cplx image;
  cplx predicted;
  cplx actual;  // lambda - image
  double residual_abs = 0.0;  // |actual - predicted|
  bool near_endpoint = false;
};

struct ComparisonSummary {
  std::size_t n = 0;
  cplx beta;
  double median_residual_mid80 = 0.0;
  double median_deviation_mid80 = 0.0;
  /// median |lambda - a| / median |lambda - a - delta_a| over the middle 80% of indices.
  double improvement_factor = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::vector<ComparisonSummary> summaries;
};

/// The caveat attached to every comparison summary.
extern const char* const kUniformGridCaveat;

ComparisonReport run_compare(const ExperimentConfig& cfg);

/// Middle-80% statistics of the rows for one n.
ComparisonSummary summarize(const std::vector<ComparisonRow>& rows, std::size_t n, cplx beta);

struct DetRow {
  std::size_t n = 0;
  cplx exact;
  cplx predicted;
  double abs_err = 0.0;  // imaginary parts compared modulo 2 pi
};

struct DetReport {
  std::vector<DetRow> rows;
  cplx beta_zeta;
  /// Least-squares coefficients of r(n) = log det - nH - E0 on {log n, 1}, with Im r taken on the
  /// branch nearest to the predicted -beta_zeta^2 log n.
  cplx fitted_log_n_coefficient;
  cplx fitted_intercept;
};

DetReport run_det_validation(const ExperimentConfig& cfg);

struct EigReport {
  std::size_t n = 0;
  std::vector<cplx> eigenvalues;
  double residual_bound = 0.0;
};

/// Uses the single n of cfg.n_list.
EigReport run_eig(const ExperimentConfig& cfg);

/// Predictions at the theta_j grid of the single n in cfg.n_list.
std::vector<DeviationPrediction> run_predict(const ExperimentConfig& cfg);

void write_comparison_csv(std::ostream& os, const ComparisonReport& r);
void write_summary_csv(std::ostream& os, const ComparisonReport& r);
void write_det_csv(std::ostream& os, const DetReport& r);
void write_eig_csv(std::ostream& os, const EigReport& r);
void write_predict_csv(std::ostream& os, const std::vector<DeviationPrediction>& rows);

}  // namespace tspec
