// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "exmax/cli.hpp"

namespace exmax::cli {
namespace {

using nlohmann::json;

void render_value(std::ostringstream& os, const std::string& indent, const std::string& key,
                  const json& value) {
  if (value.is_object()) {
    os << indent << key << ":\n";
    for (const auto& [k, v] : value.items()) {
      render_value(os, indent + "  ", k, v);
    }
  } else if (value.is_array() && !value.empty() && value.front().is_object()) {
    os << indent << key << ":\n";
    for (std::size_t i = 0; i < value.size(); ++i) {
      render_value(os, indent + "  ", "[" + std::to_string(i) + "]", value[i]);
    }
  } else {
    os << indent << key << " = " << value.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& document) {
  std::ostringstream os;
  os << document.value("tool", "") << " " << document.value("command", "") << " ("
     << document.value("status", "") << ")\n";
  if (document.contains("inputs")) {
    render_value(os, "", "inputs", document["inputs"]);
  }
  if (document.contains("results")) {
    render_value(os, "", "results", document["results"]);
  }
  return os.str();
}

std::string render_json(const json& document) {
  return document.dump(2) + "\n";
}

}  // namespace exmax::cli
