// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "lsiforge/weight.hpp"

namespace lsiforge {

/// JSON weight schema: {"n": int, "label": str, "values": [num | "a/b", ...]}.
/// Numeric entries are converted exactly (doubles are dyadic rationals);
/// string entries are parsed as rationals. Malformed documents throw
/// std::invalid_argument.
Weight parse_weight_json(const std::string& text);

/// Serializes in the same schema. Non-integer rationals render as "a/b"
/// strings so a load/save round trip is exact.
std::string weight_to_json(const Weight& w);

/// File variants of the two functions above. Missing or unreadable files
/// throw std::runtime_error.
Weight load_weight(const std::string& path);
void save_weight(const Weight& w, const std::string& path);

}  // namespace lsiforge
