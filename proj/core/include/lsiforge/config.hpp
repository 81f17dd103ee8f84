// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lsiforge {

/// Central numeric configuration. Every tolerance used by the library lives
/// here so that reports can print the exact constants a run was made with
/// and tests can pin them in one place.
struct Tolerances {
  // Fourier / linear algebra
  double unitarity = 1e-12;        ///< max-norm defect of the normalized DFT
  double split_identity = 1e-10;   ///< even/odd split vs. direct 2n-point DFT
  double realify = 1e-12;          ///< largest imaginary part dropped silently
  double eigenvalue = 1e-10;       ///< spectrum vs. weight/n multiset
  double parseval = 1e-12;         ///< time-side vs. frequency-side norms

  // Inequality slack
  double slack = 1e-9;             ///< verdict tolerance for inequality checks
  double frequency_identity = 1e-10;  ///< block formula vs. direct form

  // KKT search
  double kkt_accept = 1e-9;        ///< residual norm below which a state counts as a solution
  double kkt_dedup = 1e-6;         ///< sup-norm radius identifying duplicate solutions
  double lambda_clamp = 1e-12;     ///< floor used when differentiating x*log(x)
  double norm_window_margin = 0.01;///< relative margin taken inside 0 < |l|^2 < n
  double unit_norm = 1e-6;         ///< how far from 1 a "unit" vector may be

  // Scalar function cascade
  double chain_relative = 1e-5;    ///< derivative-relation mismatch, relative
  double sign_zero = 1e-8;         ///< |value| below which a tabulated zero passes
  double sign_positive = 1e-10;    ///< value above which a tabulated positive passes
  double series_guard = 1e-7;      ///< |x-1| below which the extension value is returned
  double series_radius = 0.045;    ///< |x-1| below which the series evaluation is used

  // Hypercontractivity
  double contractive_threshold = 1e-7;  ///< ratio above 1 + this counts as expansion
  double bracket_width = 1e-3;          ///< bisection stops at this bracket width
  double lower_bound_slack = 1e-3;      ///< estimate may undershoot the analytic bound by this

  /// Name/value pairs for report provenance, in a fixed order.
  std::vector<std::pair<std::string, double>> items() const {
    return {
        {"unitarity", unitarity},
        {"split_identity", split_identity},
        {"realify", realify},
        {"eigenvalue", eigenvalue},
        {"parseval", parseval},
        {"slack", slack},
        {"frequency_identity", frequency_identity},
        {"kkt_accept", kkt_accept},
        {"kkt_dedup", kkt_dedup},
        {"lambda_clamp", lambda_clamp},
        {"norm_window_margin", norm_window_margin},
        {"unit_norm", unit_norm},
        {"chain_relative", chain_relative},
        {"sign_zero", sign_zero},
        {"sign_positive", sign_positive},
        {"series_guard", series_guard},
        {"series_radius", series_radius},
        {"contractive_threshold", contractive_threshold},
        {"bracket_width", bracket_width},
        {"lower_bound_slack", lower_bound_slack},
    };
  }
};

/// Library-wide defaults; construct a Tolerances value to override locally.
inline const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

}  // namespace lsiforge
