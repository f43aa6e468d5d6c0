#include "tspec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "tspec/asymptotics.hpp"
#include "tspec/eig.hpp"
#include "tspec/error.hpp"
#include "tspec/symbol_io.hpp"
#include "tspec/toeplitz.hpp"
#include "yaml_symbol.hpp"

namespace tspec {

const char* const kUniformGridCaveat =
    "eigenvalues are matched to theta_j = 2 pi (j - 1/2)/n - pi; uniform density does not pin them to "
    "theta_j exactly, so residuals include that mismatch";

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty()) throw ConfigError("n_list must not be empty");
  for (const std::size_t n : cfg.n_list) {
    if (n < 2) throw ConfigError("every n must be at least 2, got " + std::to_string(n));
  }
  if (!is_power_of_two(cfg.quad_points) || cfg.quad_points < 1024) {
    throw ConfigError("quad_points must be a power of two >= 1024, got " + std::to_string(cfg.quad_points));
  }
  if (cfg.exclusion_margin && !(*cfg.exclusion_margin >= 0.0)) {
    throw ConfigError("exclusion_margin must be nonnegative");
  }
}

Mode parse_mode(const std::string& name) {
  if (name == "compare") return Mode::Compare;
  if (name == "det-asym") return Mode::DetAsym;
  if (name == "eig") return Mode::Eig;
  if (name == "predict") return Mode::Predict;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Compare:
      return "compare";
    case Mode::DetAsym:
      return "det-asym";
    case Mode::Eig:
      return "eig";
    case Mode::Predict:
      return "predict";
  }
  return "compare";
}

ExperimentConfig config_from_yaml(const std::string& text, ExperimentConfig base) {
  YAML::Node doc;
  try {
    doc = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (doc.IsNull()) return base;
  if (!doc.IsMap()) throw ConfigError("config must be a mapping");
  if (detail::has_key(doc, "kind")) base.symbol = detail::symbol_from_node(doc);
  if (detail::has_key(doc, "n_list")) {
    const YAML::Node nl = doc["n_list"];
    base.n_list.clear();
    auto push = [&](const YAML::Node& v) {
      const double d = parse_double(v.Scalar());
      if (d < 0 || d != std::floor(d)) throw ConfigError("n_list entries must be nonnegative integers");
      base.n_list.push_back(static_cast<std::size_t>(d));
    };
    if (nl.IsSequence()) {
      for (const auto& v : nl) push(v);
    } else {
      push(nl);
    }
  }
  if (detail::has_key(doc, "quad_points")) {
    const double d = parse_double(doc["quad_points"].Scalar());
    if (d < 0 || d != std::floor(d)) throw ConfigError("quad_points must be a nonnegative integer");
    base.quad_points = static_cast<std::size_t>(d);
  }
  if (detail::has_key(doc, "exclusion_margin")) base.exclusion_margin = parse_double(doc["exclusion_margin"].Scalar());
  if (detail::has_key(doc, "output")) base.output_path = doc["output"].Scalar();
  if (detail::has_key(doc, "mode")) base.mode = parse_mode(doc["mode"].Scalar());
  base.zeta = {detail::scalar_double(doc, "zeta_re", base.zeta.real()),
               detail::scalar_double(doc, "zeta_im", base.zeta.imag())};
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_yaml(ss.str(), std::move(base));
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TOEPLITZ_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers = std::min(worker_count(), count);
  std::vector<std::exception_ptr> errors(count);
  std::mutex m;
  std::size_t next = 0;
  auto work = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(m);
        if (next >= count) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

[[noreturn]] void rethrow_with_context(const std::string& ctx) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(ctx + ": " + e.what());
  }
}

std::size_t required_quad(std::size_t n) { return 4 * (2 * n - 1); }

FourierSeries section_coefficients(const SymbolSpec& s, std::size_t n, std::size_t quad_points) {
  const int k = static_cast<int>(n) - 1;
  if (quad_points < required_quad(n)) {
    throw ConfigError("quad_points = " + std::to_string(quad_points) + " is too small for n = " + std::to_string(n) +
                      " (need at least " + std::to_string(required_quad(n)) + ")");
  }
  return fourier_coeffs(s, -k, k, quad_points);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::size_t single_n(const ExperimentConfig& cfg, const char* what) {
  if (cfg.n_list.size() != 1) throw ConfigError(std::string(what) + " takes exactly one n");
  return cfg.n_list.front();
}

}  // namespace

ComparisonSummary summarize(const std::vector<ComparisonRow>& rows, std::size_t n, cplx beta) {
  const std::size_t cut = n / 10;
  std::vector<double> dev;
  std::vector<double> res;
  for (const auto& r : rows) {
    if (r.n != n) continue;
    const std::size_t idx = r.j - 1;
    if (idx < cut || idx >= n - cut) continue;
    dev.push_back(std::abs(r.actual));
    res.push_back(r.residual_abs);
  }
  ComparisonSummary s;
  s.n = n;
  s.beta = beta;
  s.median_deviation_mid80 = median(dev);
  s.median_residual_mid80 = median(res);
  s.improvement_factor = s.median_residual_mid80 > 0.0 ? s.median_deviation_mid80 / s.median_residual_mid80
                                                       : std::numeric_limits<double>::infinity();
  return s;
}

ComparisonReport run_compare(const ExperimentConfig& cfg) {
  validate(cfg);
  require_single_jump_at_pi(cfg.symbol);
  const SymbolSpec& s = cfg.symbol;
  const std::size_t count = cfg.n_list.size();

  std::vector<MatchedSpectrum> matched(count);
  parallel_for(count, [&](std::size_t i) {
    const std::size_t n = cfg.n_list[i];
    try {
      const ToeplitzMatrix t = build(section_coefficients(s, n, cfg.quad_points), n);
      matched[i] = match_to_grid(eigenvalues(t.entries), s, n);
    } catch (const Error&) {
      rethrow_with_context("n = " + std::to_string(n));
    }
  });

  std::vector<std::size_t> offset(count + 1, 0);
  for (std::size_t i = 0; i < count; ++i) offset[i + 1] = offset[i] + cfg.n_list[i];
  ComparisonReport report;
  report.rows.resize(offset[count]);
  parallel_for(offset[count], [&](std::size_t flat) {
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), flat) - offset.begin()) - 1;
    const std::size_t n = cfg.n_list[i];
    const std::size_t j = flat - offset[i];
    const auto& [theta, lambda] = matched[i].pairs[j];
    try {
      const JumpData jd = f_continuous(s, theta, cfg.quad_points);
      const OmegaResult om = omega(jd, cfg.quad);
      const DeviationPrediction d = assemble_deviation(s, theta, n, jd.delta_beta_sq, om.value, cfg.exclusion_margin);
      ComparisonRow& row = report.rows[flat];
      row.n = n;
      row.j = j + 1;
      row.theta = theta;
      row.lambda = lambda;
      row.image = evaluate(s, theta);
      row.predicted = d.delta_a;
      row.actual = lambda - row.image;
      row.residual_abs = std::abs(row.actual - row.predicted);
      row.near_endpoint = d.near_endpoint;
    } catch (const Error&) {
      rethrow_with_context("n = " + std::to_string(n) + ", theta_" + std::to_string(j + 1) + " = " +
                           format_double(theta));
    }
  });
  const cplx beta = jump_exponent(s);
  for (const std::size_t n : cfg.n_list) report.summaries.push_back(summarize(report.rows, n, beta));
  return report;
}

DetReport run_det_validation(const ExperimentConfig& cfg) {
  validate(cfg);
  const SymbolSpec& s = cfg.symbol;
  const std::size_t count = cfg.n_list.size();
  DetReport report;
  report.rows.resize(count);
  std::vector<FHPrediction> preds(count);
  parallel_for(count, [&](std::size_t i) {
    const std::size_t n = cfg.n_list[i];
    try {
      const ToeplitzMatrix t = build(section_coefficients(s, n, cfg.quad_points), n);
      const cplx exact = log_det(shifted(t, cfg.zeta));
      preds[i] = fh_logdet_prediction(s, cfg.zeta, n);
      DetRow& row = report.rows[i];
      row.n = n;
      row.exact = exact;
      row.predicted = preds[i].log_det_pred;
      const cplx diff = exact - row.predicted;
      row.abs_err = std::abs(cplx{diff.real(), std::remainder(diff.imag(), two_pi)});
    } catch (const Error&) {
      rethrow_with_context("n = " + std::to_string(n));
    }
  });
  report.beta_zeta = preds.front().beta_zeta;

  // r(n) = log_n_term + (exact - pred) with the imaginary difference reduced modulo 2 pi.
  Eigen::MatrixXcd design(static_cast<Eigen::Index>(count), 2);
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const cplx diff = report.rows[i].exact - report.rows[i].predicted;
    const auto ii = static_cast<Eigen::Index>(i);
    rhs(ii) = preds[i].log_n_term + cplx{diff.real(), std::remainder(diff.imag(), two_pi)};
    design(ii, 0) = std::log(static_cast<double>(report.rows[i].n));
    design(ii, 1) = 1.0;
  }
  if (count >= 2) {
    const Eigen::VectorXcd c = design.colPivHouseholderQr().solve(rhs);
    report.fitted_log_n_coefficient = c(0);
    report.fitted_intercept = c(1);
  } else {
    report.fitted_log_n_coefficient = rhs(0) / design(0, 0);
    report.fitted_intercept = 0.0;
  }
  return report;
}

EigReport run_eig(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t n = single_n(cfg, "eig");
  const ToeplitzMatrix t = build(section_coefficients(cfg.symbol, n, cfg.quad_points), n);
  const Spectrum sp = eigenvalues(t.entries);
  return {n, sp.eigenvalues, sp.residual_bound};
}

std::vector<DeviationPrediction> run_predict(const ExperimentConfig& cfg) {
  validate(cfg);
  require_single_jump_at_pi(cfg.symbol);
  const std::size_t n = single_n(cfg, "predict");
  const std::vector<double> theta = theta_grid(n);
  std::vector<DeviationPrediction> out(n);
  parallel_for(n, [&](std::size_t j) {
    try {
      out[j] = predict_deviation(cfg.symbol, theta[j], n, cfg.quad, cfg.exclusion_margin, cfg.quad_points);
    } catch (const Error&) {
      rethrow_with_context("theta_" + std::to_string(j + 1) + " = " + format_double(theta[j]));
    }
  });
  return out;
}

namespace {

std::string f(double x) { return format_double(x); }

}  // namespace

void write_comparison_csv(std::ostream& os, const ComparisonReport& r) {
  os << "n,j,theta,lambda_re,lambda_im,image_re,image_im,pred_dev_re,pred_dev_im,actual_dev_re,actual_dev_im,"
        "residual_abs\n";
  for (const auto& row : r.rows) {
    os << row.n << ',' << row.j << ',' << f(row.theta) << ',' << f(row.lambda.real()) << ',' << f(row.lambda.imag())
       << ',' << f(row.image.real()) << ',' << f(row.image.imag()) << ',' << f(row.predicted.real()) << ','
       << f(row.predicted.imag()) << ',' << f(row.actual.real()) << ',' << f(row.actual.imag()) << ','
       << f(row.residual_abs) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const ComparisonReport& r) {
  os << "n,beta_re,beta_im,median_deviation_mid80,median_residual_mid80,improvement_factor,note\n";
  for (const auto& s : r.summaries) {
    os << s.n << ',' << f(s.beta.real()) << ',' << f(s.beta.imag()) << ',' << f(s.median_deviation_mid80) << ','
       << f(s.median_residual_mid80) << ',' << f(s.improvement_factor) << ",\"" << kUniformGridCaveat << "\"\n";
  }
}

void write_det_csv(std::ostream& os, const DetReport& r) {
  os << "n,logdet_exact_re,logdet_exact_im,logdet_pred_re,logdet_pred_im,abs_err\n";
  for (const auto& row : r.rows) {
    os << row.n << ',' << f(row.exact.real()) << ',' << f(row.exact.imag()) << ',' << f(row.predicted.real()) << ','
       << f(row.predicted.imag()) << ',' << f(row.abs_err) << '\n';
  }
}

void write_eig_csv(std::ostream& os, const EigReport& r) {
  os << "index,lambda_re,lambda_im\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    os << i << ',' << f(r.eigenvalues[i].real()) << ',' << f(r.eigenvalues[i].imag()) << '\n';
  }
}

void write_predict_csv(std::ostream& os, const std::vector<DeviationPrediction>& rows) {
  os << "theta,da_re,da_im,logn_part_re,logn_part_im,omega_re,omega_im,dbeta2_re,dbeta2_im,endpoint_flag\n";
  for (const auto& d : rows) {
    os << f(d.theta) << ',' << f(d.delta_a.real()) << ',' << f(d.delta_a.imag()) << ',' << f(d.log_n_part.real())
       << ',' << f(d.log_n_part.imag()) << ',' << f(d.omega.real()) << ',' << f(d.omega.imag()) << ','
       << f(d.delta_beta_sq.real()) << ',' << f(d.delta_beta_sq.imag()) << ',' << (d.near_endpoint ? 1 : 0) << '\n';
  }
}

}  // namespace tspec
