#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tspec/symbol.hpp"

namespace tspec {

/// Shortest-safe decimal form used for every persisted double: 17 significant digits.
std::string format_double(double x);

/// Parse a decimal produced by format_double (or any strtod-compatible text).
/// Throws ConfigError on trailing garbage or an empty string.
double parse_double(const std::string& text);

/// One YAML document describing the symbol. Keys:
///   kind: pure_jump | fourier | composite
///   beta_re, beta_im, p0              (pure_jump, or the jump factor of a composite)
///   alpha_re, alpha_im, modulus_p0    (composite modulus factor)
///   coeffs: [[k, re, im], ...]        (fourier, or the smooth part of a composite)
std::string write_symbol(const SymbolSpec& s);

/// Documents separated by "---".
std::string write_symbols(const std::vector<SymbolSpec>& symbols);

std::vector<SymbolSpec> read_symbols(const std::string& text);

/// Exactly one document is expected.
SymbolSpec read_symbol(const std::string& text);

SymbolSpec read_symbol_file(const std::filesystem::path& path);
void write_symbol_file(const std::filesystem::path& path, const SymbolSpec& s);

}  // namespace tspec
