#include "tspec/symbol_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "tspec/error.hpp"
#include "yaml_symbol.hpp"

namespace tspec {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& text) {
  if (text.empty()) throw ConfigError("expected a number, got an empty string");
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw ConfigError("not a number: '" + text + "'");
  if (errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL)) throw ConfigError("number out of range: '" + text + "'");
  return v;
}

namespace detail {

bool has_key(const YAML::Node& doc, const char* key) { return doc[key].IsDefined() && !doc[key].IsNull(); }

double scalar_double(const YAML::Node& doc, const char* key, double fallback) {
  const YAML::Node n = doc[key];
  if (!n.IsDefined() || n.IsNull()) return fallback;
  if (!n.IsScalar()) throw ConfigError(std::string("key '") + key + "' must be a number");
  return parse_double(n.Scalar());
}

namespace {

FourierSeries coeffs_from_node(const YAML::Node& node) {
  if (!node.IsSequence() || node.size() == 0) throw ConfigError("'coeffs' must be a nonempty list of [k, re, im]");
  std::map<int, cplx> m;
  for (const auto& entry : node) {
    if (!entry.IsSequence() || entry.size() != 3) throw ConfigError("each coeffs entry must be [k, re, im]");
    const double kd = parse_double(entry[0].Scalar());
    const int k = static_cast<int>(kd);
    if (static_cast<double>(k) != kd) throw ConfigError("coeffs index must be an integer");
    if (m.count(k)) throw ConfigError("duplicate coeffs index " + std::to_string(k));
    m[k] = {parse_double(entry[1].Scalar()), parse_double(entry[2].Scalar())};
  }
  return FourierSeries(m);
}

}  // namespace

SymbolSpec symbol_from_node(const YAML::Node& doc) {
  if (!doc.IsMap()) throw ConfigError("symbol document must be a mapping");
  if (!has_key(doc, "kind")) throw ConfigError("symbol document is missing 'kind'");
  const std::string kind = doc["kind"].Scalar();
  if (kind == "pure_jump") {
    PureJump j{{scalar_double(doc, "beta_re", 0.0), scalar_double(doc, "beta_im", 0.0)}, scalar_double(doc, "p0", 0.0)};
    if (!(j.p0 >= -pi && j.p0 < pi)) throw ConfigError("p0 must lie in [-pi, pi)");
    return j;
  }
  if (kind == "fourier") {
    if (!has_key(doc, "coeffs")) throw ConfigError("fourier symbol needs 'coeffs'");
    return FourierSymbol{coeffs_from_node(doc["coeffs"])};
  }
  if (kind == "composite") {
    Composite c;
    if (has_key(doc, "beta_re") || has_key(doc, "beta_im")) {
      c.jump = PureJump{{scalar_double(doc, "beta_re", 0.0), scalar_double(doc, "beta_im", 0.0)},
                        scalar_double(doc, "p0", 0.0)};
      if (!(c.jump->p0 >= -pi && c.jump->p0 < pi)) throw ConfigError("p0 must lie in [-pi, pi)");
    }
    if (has_key(doc, "alpha_re") || has_key(doc, "alpha_im")) {
      c.modulus = Modulus{{scalar_double(doc, "alpha_re", 0.0), scalar_double(doc, "alpha_im", 0.0)},
                          scalar_double(doc, "modulus_p0", 0.0)};
      if (!(c.modulus->p0 >= -pi && c.modulus->p0 < pi)) throw ConfigError("modulus_p0 must lie in [-pi, pi)");
    }
    if (has_key(doc, "coeffs")) c.smooth = coeffs_from_node(doc["coeffs"]);
    return c;
  }
  throw ConfigError("unknown symbol kind '" + kind + "'");
}

}  // namespace detail

namespace {

void write_coeffs(std::ostream& os, const FourierSeries& f) {
  os << "coeffs:\n";
  for (int k = f.k_min(); k <= f.k_max(); ++k) {
    const cplx c = f[k];
    os << "  - [" << k << ", " << format_double(c.real()) << ", " << format_double(c.imag()) << "]\n";
  }
}

void write_jump(std::ostream& os, const PureJump& j) {
  os << "beta_re: " << format_double(j.beta.real()) << "\n";
  os << "beta_im: " << format_double(j.beta.imag()) << "\n";
  os << "p0: " << format_double(j.p0) << "\n";
}

}  // namespace

std::string write_symbol(const SymbolSpec& s) {
  std::ostringstream os;
  if (const auto* j = std::get_if<PureJump>(&s)) {
    os << "kind: pure_jump\n";
    write_jump(os, *j);
  } else if (const auto* f = std::get_if<FourierSymbol>(&s)) {
    os << "kind: fourier\n";
    write_coeffs(os, f->coeffs);
  } else {
    const auto& c = std::get<Composite>(s);
    os << "kind: composite\n";
    if (c.jump) write_jump(os, *c.jump);
    if (c.modulus) {
      os << "alpha_re: " << format_double(c.modulus->alpha.real()) << "\n";
      os << "alpha_im: " << format_double(c.modulus->alpha.imag()) << "\n";
      os << "modulus_p0: " << format_double(c.modulus->p0) << "\n";
    }
    write_coeffs(os, c.smooth);
  }
  return os.str();
}

std::string write_symbols(const std::vector<SymbolSpec>& symbols) {
  std::string out;
  for (const auto& s : symbols) out += "---\n" + write_symbol(s);
  return out;
}

std::vector<SymbolSpec> read_symbols(const std::string& text) {
  std::vector<YAML::Node> docs;
  try {
    docs = YAML::LoadAll(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("symbol file is not valid YAML: ") + e.what());
  }
  std::vector<SymbolSpec> out;
  for (const auto& d : docs) {
    if (d.IsNull()) continue;
    out.push_back(detail::symbol_from_node(d));
  }
  return out;
}

SymbolSpec read_symbol(const std::string& text) {
  auto all = read_symbols(text);
  if (all.size() != 1) throw ConfigError("expected exactly one symbol document, found " + std::to_string(all.size()));
  return std::move(all.front());
}

SymbolSpec read_symbol_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_symbol(ss.str());
}

void write_symbol_file(const std::filesystem::path& path, const SymbolSpec& s) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write symbol file " + path.string());
  out << write_symbol(s);
}

}  // namespace tspec
