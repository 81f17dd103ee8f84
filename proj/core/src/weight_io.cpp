// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#include "lsiforge/weight_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lsiforge {

Weight parse_weight_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("weight JSON: parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("values")) {
    throw std::invalid_argument("weight JSON: expected object with 'n' and 'values'");
  }
  Weight w;
  if (!doc["n"].is_number_integer()) {
    throw std::invalid_argument("weight JSON: 'n' must be an integer");
  }
  w.n = doc["n"].get<int>();
  if (w.n <= 0) {
    throw std::invalid_argument("weight JSON: 'n' must be positive");
  }
  w.label = doc.value("label", std::string("custom"));
  const auto& values = doc["values"];
  if (!values.is_array() || static_cast<int>(values.size()) != w.n) {
    throw std::invalid_argument("weight JSON: 'values' must be an array of length n");
  }
  w.values.reserve(values.size());
  for (const auto& v : values) {
    if (v.is_string()) {
      w.values.push_back(Rational::parse(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      w.values.emplace_back(v.get<long long>());
    } else if (v.is_number()) {
      w.values.push_back(Rational::from_double(v.get<double>()));
    } else {
      throw std::invalid_argument("weight JSON: values must be numbers or rational strings");
    }
  }
  if (!w.is_nonnegative()) {
    throw std::invalid_argument("weight JSON: weight values must be nonnegative");
  }
  return w;
}

std::string weight_to_json(const Weight& w) {
  nlohmann::ordered_json doc;
  doc["n"] = w.n;
  doc["label"] = w.label;
  auto values = nlohmann::ordered_json::array();
  for (const auto& v : w.values) {
    if (v.is_integer()) {
      values.push_back(v.num());
    } else {
      values.push_back(v.str());
    }
  }
  doc["values"] = values;
  return doc.dump(2);
}

Weight load_weight(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_weight: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_weight_json(buffer.str());
}

void save_weight(const Weight& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_weight: cannot open '" + path + "'");
  }
  out << weight_to_json(w) << "\n";
}

}  // namespace lsiforge
