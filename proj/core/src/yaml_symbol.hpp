#pragma once

#include <yaml-cpp/yaml.h>

#include <string>

#include "tspec/symbol.hpp"

namespace tspec::detail {

double scalar_double(const YAML::Node& doc, const char* key, double fallback);
bool has_key(const YAML::Node& doc, const char* key);

/// Symbol fields of a YAML mapping; unknown keys are left for the caller.
SymbolSpec symbol_from_node(const YAML::Node& doc);

}  // namespace tspec::detail
