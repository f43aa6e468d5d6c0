#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tspec/error.hpp"
#include "tspec/harness.hpp"
#include "tspec/symbol_io.hpp"
#include "tspec/toeplitz.hpp"

namespace {

struct Flags {
  std::string symbol_file;
  std::string config_file;
  std::optional<double> beta_re;
  std::optional<double> beta_im;
  std::optional<double> p0;
  std::vector<std::string> coeffs;
  std::vector<std::size_t> n;
  std::vector<std::size_t> n_list;
  std::optional<std::size_t> quad_points;
  std::string out;
  std::optional<double> zeta_re;
  std::optional<double> zeta_im;
  std::optional<double> exclusion_margin;
  std::string dump_matrix;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--symbol", f.symbol_file, "symbol-spec file (YAML)");
  cmd->add_option("--config", f.config_file, "experiment config file (YAML)");
  cmd->add_option("--beta-re", f.beta_re, "jump exponent, real part");
  cmd->add_option("--beta-im", f.beta_im, "jump exponent, imaginary part");
  cmd->add_option("--p0", f.p0, "jump reference angle (jump at p0 + pi)");
  cmd->add_option("--coeff", f.coeffs, "smooth-part Fourier coefficient as k,re,im (repeatable)");
  cmd->add_option("--n", f.n, "matrix size(s)")->delimiter(',');
  cmd->add_option("--n-list", f.n_list, "comma-separated matrix sizes")->delimiter(',');
  cmd->add_option("--quad-points", f.quad_points, "grid size for coefficients and unwrapping (power of two)");
  cmd->add_option("--out", f.out, "output CSV path (stdout when omitted)");
  cmd->add_option("--zeta-re", f.zeta_re, "shift zeta, real part");
  cmd->add_option("--zeta-im", f.zeta_im, "shift zeta, imaginary part");
  cmd->add_option("--exclusion-margin", f.exclusion_margin, "endpoint exclusion margin in radians");
}

tspec::FourierSeries parse_coeffs(const std::vector<std::string>& items) {
  std::map<int, tspec::cplx> m;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string k, re, im;
    if (!std::getline(ss, k, ',') || !std::getline(ss, re, ',') || !std::getline(ss, im, ',')) {
      throw tspec::ConfigError("--coeff expects k,re,im, got '" + item + "'");
    }
    const double kd = tspec::parse_double(k);
    if (kd != static_cast<double>(static_cast<int>(kd))) throw tspec::ConfigError("--coeff index must be an integer");
    m[static_cast<int>(kd)] = {tspec::parse_double(re), tspec::parse_double(im)};
  }
  return tspec::FourierSeries(m);
}

tspec::ExperimentConfig resolve(const Flags& f, tspec::Mode mode) {
  tspec::ExperimentConfig cfg;
  cfg.mode = mode;
  if (!f.config_file.empty()) cfg = tspec::load_config(f.config_file, cfg);
  cfg.mode = mode;
  if (!f.symbol_file.empty()) cfg.symbol = tspec::read_symbol_file(f.symbol_file);

  const bool inline_jump = f.beta_re || f.beta_im || f.p0;
  if (inline_jump || !f.coeffs.empty()) {
    tspec::PureJump jump{{f.beta_re.value_or(0.0), f.beta_im.value_or(0.0)}, f.p0.value_or(0.0)};
    if (!(jump.p0 >= -tspec::pi && jump.p0 < tspec::pi)) throw tspec::ConfigError("--p0 must lie in [-pi, pi)");
    if (f.coeffs.empty()) {
      cfg.symbol = jump;
    } else if (!inline_jump) {
      cfg.symbol = tspec::FourierSymbol{parse_coeffs(f.coeffs)};
    } else {
      tspec::Composite c;
      c.jump = jump;
      c.smooth = parse_coeffs(f.coeffs);
      cfg.symbol = c;
    }
  }
  std::vector<std::size_t> ns = f.n;
  ns.insert(ns.end(), f.n_list.begin(), f.n_list.end());
  if (!ns.empty()) cfg.n_list = ns;
  if (f.quad_points) cfg.quad_points = *f.quad_points;
  if (!f.out.empty()) cfg.output_path = f.out;
  if (f.zeta_re) cfg.zeta.real(*f.zeta_re);
  if (f.zeta_im) cfg.zeta.imag(*f.zeta_im);
  if (f.exclusion_margin) cfg.exclusion_margin = *f.exclusion_margin;
  tspec::validate(cfg);
  return cfg;
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw tspec::ConfigError("cannot write " + path);
  write(out);
  if (!out) throw tspec::ConfigError("write failed for " + path);
}

void dump_matrix(const tspec::ExperimentConfig& cfg, const std::string& path) {
  if (path.empty()) return;
  const std::size_t n = cfg.n_list.front();
  const int k = static_cast<int>(n) - 1;
  const auto t = tspec::build(tspec::fourier_coeffs(cfg.symbol, -k, k, cfg.quad_points), n);
  emit(path, [&](std::ostream& os) { tspec::write_csv(os, t); });
}

int run_compare(const Flags& f) {
  const auto cfg = resolve(f, tspec::Mode::Compare);
  dump_matrix(cfg, f.dump_matrix);
  const auto report = tspec::run_compare(cfg);
  emit(cfg.output_path, [&](std::ostream& os) { tspec::write_comparison_csv(os, report); });
  std::ostream& info = cfg.output_path.empty() ? std::cerr : std::cout;
  if (!cfg.output_path.empty()) {
    emit(cfg.output_path + ".summary.csv", [&](std::ostream& os) { tspec::write_summary_csv(os, report); });
  }
  for (const auto& s : report.summaries) {
    info << "n=" << s.n << " median_deviation_mid80=" << tspec::format_double(s.median_deviation_mid80)
         << " median_residual_mid80=" << tspec::format_double(s.median_residual_mid80)
         << " improvement_factor=" << tspec::format_double(s.improvement_factor) << '\n';
  }
  info << "note: " << tspec::kUniformGridCaveat << '\n';
  return 0;
}

int run_det(const Flags& f) {
  const auto cfg = resolve(f, tspec::Mode::DetAsym);
  const auto report = tspec::run_det_validation(cfg);
  emit(cfg.output_path, [&](std::ostream& os) { tspec::write_det_csv(os, report); });
  std::ostream& info = cfg.output_path.empty() ? std::cerr : std::cout;
  const auto b2 = -report.beta_zeta * report.beta_zeta;
  info << "beta_zeta=" << tspec::format_double(report.beta_zeta.real()) << ','
       << tspec::format_double(report.beta_zeta.imag())
       << " fitted_log_n_coefficient=" << tspec::format_double(report.fitted_log_n_coefficient.real()) << ','
       << tspec::format_double(report.fitted_log_n_coefficient.imag()) << " expected=" << tspec::format_double(b2.real())
       << ',' << tspec::format_double(b2.imag()) << '\n';
  return 0;
}

int run_eig(const Flags& f) {
  const auto cfg = resolve(f, tspec::Mode::Eig);
  dump_matrix(cfg, f.dump_matrix);
  const auto report = tspec::run_eig(cfg);
  emit(cfg.output_path, [&](std::ostream& os) { tspec::write_eig_csv(os, report); });
  return 0;
}

int run_predict(const Flags& f) {
  const auto cfg = resolve(f, tspec::Mode::Predict);
  const auto rows = tspec::run_predict(cfg);
  emit(cfg.output_path, [&](std::ostream& os) { tspec::write_predict_csv(os, rows); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue deviations of Toeplitz matrices with a jump symbol"};
  app.require_subcommand(1);
  Flags flags;
  auto* compare = app.add_subcommand("compare", "eigenvalues vs predicted deviation");
  auto* det = app.add_subcommand("det-asym", "log det(zeta - T_n) vs its asymptotic prediction");
  auto* eig = app.add_subcommand("eig", "eigenvalues of T_n");
  auto* predict = app.add_subcommand("predict", "predicted deviations on the theta_j grid");
  for (auto* cmd : {compare, det, eig, predict}) add_common(cmd, flags);
  for (auto* cmd : {compare, eig}) cmd->add_option("--dump-matrix", flags.dump_matrix, "write T_n as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compare) return run_compare(flags);
    if (*det) return run_det(flags);
    if (*eig) return run_eig(flags);
    return run_predict(flags);
  } catch (const tspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const tspec::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
