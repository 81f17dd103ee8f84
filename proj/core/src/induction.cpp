// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsiforge/induction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "lsiforge/dft.hpp"
#include "lsiforge/parallel.hpp"
#include "lsiforge/rng.hpp"

namespace lsiforge {
namespace {

void check_pair_sizes(const Weight& base, const Weight& doubled,
                      const char* where) {
  if (base.n < 1 || doubled.n != 2 * base.n) {
    throw std::invalid_argument(std::string(where) +
                                ": weight sizes must be (n, 2n), got (" +
                                std::to_string(base.n) + ", " +
                                std::to_string(doubled.n) + ")");
  }
}

struct QuadraticCoefficients {
  double a = 0.0;  // x^2
  double b = 0.0;  // x
  double c = 0.0;  // 1
};

// lhs(x) = A x^2 + B x + C at fixed (r_a, r_b); sqrt_term =
// sqrt((1+r_a)(1+r_b)).
QuadraticCoefficients quadratic_coefficients(bool even, double k_coeff,
                                             double g, double r_a, double r_b,
                                             double sqrt_term) {
  QuadraticCoefficients q;
  if (even) {
    q.a = k_coeff * r_b + g - 1.0;
    q.b = 2.0 * sqrt_term - 2.0 * g;
    q.c = k_coeff * r_a + g - 1.0;
  } else {
    q.a = g - 1.0;
    q.b = 2.0 - 2.0 * g;
    q.c = g - 1.0;
  }
  return q;
}

bool is_even_tower_pair(const Weight& base, const Weight& doubled) {
  if (base.n < 6 || base.n % 2 != 0) return false;
  const Weight ref_base = gamma_even_tower(base.n);
  const Weight ref_doubled = gamma_even_tower(doubled.n);
  return base.values == ref_base.values &&
         doubled.values == ref_doubled.values;
}

}  // namespace

double quadratic_lhs(const Weight& base, const Weight& doubled, double x,
                     double r_a, double r_b) {
  check_pair_sizes(base, doubled, "quadratic_lhs");
  if (!(x >= 0.0)) {
    throw std::invalid_argument("quadratic_lhs: x must be nonnegative");
  }
  if (!(r_a >= 0.0 && r_a <= 1.0 && r_b >= 0.0 && r_b <= 1.0)) {
    throw std::invalid_argument("quadratic_lhs: r_a, r_b must lie in [0, 1]");
  }
  const int n = base.n;
  const double g = doubled.value(n);
  if (n % 2 == 0) {
    const double k_coeff =
        2.0 * doubled.value(n / 2) - 2.0 * base.value(n / 2) - 1.0;
    return k_coeff * (r_a + r_b * x * x) + g * (1.0 - x) * (1.0 - x) -
           (1.0 + x * x) + 2.0 * x * std::sqrt((1.0 + r_a) * (1.0 + r_b));
  }
  return g * (1.0 - x) * (1.0 - x) - (1.0 + x * x) + 2.0 * x;
}

QuadraticScan scan_quadratic(const Weight& base, const Weight& doubled,
                             int resolution, int threads,
                             const Tolerances& tol) {
  check_pair_sizes(base, doubled, "scan_quadratic");
  if (resolution < 50) {
    throw std::invalid_argument(
        "scan_quadratic: resolution must be at least 50 per axis");
  }
  const int n = base.n;
  const bool even = (n % 2 == 0);
  const double g = doubled.value(n);
  const double k_coeff =
      even ? 2.0 * doubled.value(n / 2) - 2.0 * base.value(n / 2) - 1.0 : 0.0;

  QuadraticScan scan;
  scan.pair_label = base.label + " -> " + doubled.label;

  // x grid: 0, then log-spaced on [1e-3, 100].
  scan.grid_x.resize(static_cast<std::size_t>(resolution));
  scan.grid_x[0] = 0.0;
  const double lx_lo = std::log(1e-3);
  const double lx_hi = std::log(100.0);
  for (int i = 1; i < resolution; ++i) {
    scan.grid_x[static_cast<std::size_t>(i)] =
        std::exp(lx_lo + (lx_hi - lx_lo) * (i - 1) / (resolution - 2));
  }
  if (even) {
    scan.grid_r.resize(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
      scan.grid_r[static_cast<std::size_t>(i)] =
          static_cast<double>(i) / (resolution - 1);
    }
  } else {
    scan.grid_r = {0.0};
  }

  const bool tower = even && is_even_tower_pair(base, doubled);

  struct CellMin {
    double value = std::numeric_limits<double>::infinity();
    std::array<double, 3> location{};
    double analytic_diff = 0.0;
  };
  std::vector<CellMin> rows(scan.grid_r.size());

  parallel_chunks(scan.grid_r.size(), resolve_thread_count(threads),
                  [&](std::size_t ia) {
    const double r_a = scan.grid_r[ia];
    CellMin best;
    for (double r_b : scan.grid_r) {
      const double sqrt_term = std::sqrt((1.0 + r_a) * (1.0 + r_b));
      const QuadraticCoefficients q =
          quadratic_coefficients(even, k_coeff, g, r_a, r_b, sqrt_term);
      auto consider = [&](double x) {
        const double v = (q.a * x + q.b) * x + q.c;
        if (v < best.value) {
          best.value = v;
          best.location = {x, even ? r_a : 0.0, even ? r_b : 0.0};
        }
      };
      for (double x : scan.grid_x) consider(x);
      double vertex_min = std::numeric_limits<double>::infinity();
      if (q.a > 0.0) {
        const double xv = -q.b / (2.0 * q.a);
        if (xv > 0.0) {
          consider(xv);
          vertex_min = q.c - q.b * q.b / (4.0 * q.a);
        }
      }
      if (tower) {
        const double analytic =
            (2.0 * (n - 1.0) * (sqrt_term - 1.0) + (n - 3.0) * (r_a + r_b)) /
            (r_b + n - 2.0);
        best.analytic_diff =
            std::max(best.analytic_diff, std::fabs(vertex_min - analytic));
      }
    }
    rows[ia] = best;
  });

  CellMin global;
  for (const CellMin& row : rows) {
    if (row.value < global.value) {
      global.value = row.value;
      global.location = row.location;
    }
    global.analytic_diff = std::max(global.analytic_diff, row.analytic_diff);
  }
  scan.min_value = global.value;
  scan.min_location = global.location;
  scan.verdict = scan.min_value >= -tol.slack;
  scan.analytic_checked = tower;
  scan.analytic_max_diff = tower ? global.analytic_diff : 0.0;
  return scan;
}

double corner_function_h(double r_a, double r_b) {
  return r_a * (24.0 * r_b + 35.0) +
         5.0 * (-30.0 * std::sqrt((1.0 + r_a) * (1.0 + r_b)) + 7.0 * r_b +
                30.0);
}

ComparisonContext make_comparison_context(const Weight& base,
                                          const Weight& doubled,
                                          int resolution, int threads,
                                          const Tolerances& tol) {
  check_pair_sizes(base, doubled, "comparison");
  if (base.n < 3) {
    throw std::invalid_argument(
        "comparison: base size must be at least 3 (the comparison is not "
        "defined for smaller groups)");
  }
  ComparisonContext ctx;
  ctx.base = base;
  ctx.doubled = doubled;
  ctx.pair_report = check_pair_condition(base, doubled);
  if (!ctx.pair_report.all()) {
    throw std::invalid_argument(
        "comparison preconditions: pair-condition clause '" +
        ctx.pair_report.first_failure() + "' fails for (" + base.label + ", " +
        doubled.label + ")");
  }
  ctx.scan = scan_quadratic(base, doubled, resolution, threads, tol);
  if (!ctx.scan.verdict) {
    throw std::invalid_argument(
        "comparison preconditions: quadratic inequality fails for (" +
        base.label + ", " + doubled.label + "): minimum " +
        std::to_string(ctx.scan.min_value) + " at (x=" +
        std::to_string(ctx.scan.min_location[0]) + ", r_a=" +
        std::to_string(ctx.scan.min_location[1]) + ", r_b=" +
        std::to_string(ctx.scan.min_location[2]) + ")");
  }
  ctx.form_base = build_form(base);
  ctx.form_doubled = build_form(doubled);
  return ctx;
}

namespace {

ComparisonResult compare_with_forms(const ComparisonContext& ctx,
                                    const PointVector& a, const PointVector& b,
                                    const Tolerances& tol) {
  const int n = ctx.base.n;
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("compare_dirichlet: a and b must have length " +
                                std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (a(i) < 0.0 || b(i) < 0.0) {
      throw std::invalid_argument(
          "compare_dirichlet: a and b must be nonnegative");
    }
  }
  ComparisonResult out;
  const double norm_gap = a.norm() - b.norm();
  out.lhs = dirichlet(ctx.form_base, a) + dirichlet(ctx.form_base, b) +
            norm_gap * norm_gap / (2.0 * n);
  out.rhs = 2.0 * dirichlet(ctx.form_doubled, interleave(a, b));
  out.holds = out.lhs <= out.rhs + tol.slack;
  return out;
}

}  // namespace

ComparisonResult compare_dirichlet(const ComparisonContext& context,
                                   const PointVector& a, const PointVector& b,
                                   const Tolerances& tol) {
  return compare_with_forms(context, a, b, tol);
}

ComparisonResult compare_dirichlet(const Weight& base, const Weight& doubled,
                                   const PointVector& a, const PointVector& b,
                                   const Tolerances& tol) {
  const ComparisonContext ctx =
      make_comparison_context(base, doubled, 201, 0, tol);
  return compare_with_forms(ctx, a, b, tol);
}

TwoPointBound two_point_lsi(double x, double y) {
  if (x < 0.0 || y < 0.0) {
    throw std::invalid_argument("two_point_lsi: inputs must be nonnegative");
  }
  const double s = x * x + y * y;
  if (s == 0.0) {
    throw std::invalid_argument("two_point_lsi: inputs must not both be zero");
  }
  auto term = [s](double v) {
    const double v2 = v * v;
    return v2 > 0.0 ? v2 * std::log(2.0 * v2 / s) : 0.0;
  };
  TwoPointBound out;
  out.lhs = 0.25 * (term(x) + term(y));
  out.rhs = 0.25 * (x - y) * (x - y);
  return out;
}

InductionReport induction_step(const Weight& base, const Weight& doubled,
                               long long samples, std::uint64_t seed,
                               int threads, const Tolerances& tol) {
  if (samples < 1) {
    throw std::invalid_argument("induction_step: samples must be positive");
  }
  const ComparisonContext ctx =
      make_comparison_context(base, doubled, 201, threads, tol);
  const int n = ctx.base.n;
  const int dim = 2 * n;

  InductionReport report;
  report.pair_label = ctx.scan.pair_label;
  report.samples = samples;
  report.seed = seed;

  constexpr long long kChunk = 1024;
  const long long chunks = (samples + kChunk - 1) / kChunk;

  struct ChunkMin {
    double slack_entropy = std::numeric_limits<double>::infinity();
    double slack_dirichlet = std::numeric_limits<double>::infinity();
    PointVector lambda_entropy;
    PointVector lambda_dirichlet;
  };
  std::vector<ChunkMin> mins(static_cast<std::size_t>(chunks));

  parallel_chunks(static_cast<std::size_t>(chunks),
                  resolve_thread_count(threads), [&](std::size_t c) {
    std::mt19937_64 rng = chunk_rng(seed, c);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> pick_support(1, dim);
    ChunkMin local;
    const long long lo = static_cast<long long>(c) * kChunk;
    const long long hi = std::min(samples, lo + kChunk);
    PointVector lambda(dim);
    for (long long s = lo; s < hi; ++s) {
      // Four sampling families; sparse supports stress the boundary where
      // the comparison is tight.
      switch (rng() % 4) {
        case 0:
          for (int i = 0; i < dim; ++i) lambda(i) = std::abs(normal(rng));
          break;
        case 1:
          lambda = random_positive_corner(rng, dim, pick_support(rng));
          break;
        case 2:  // dense even subsequence, sparse odd subsequence
          for (int i = 0; i < dim; ++i) {
            const bool keep = (i % 2 == 0) || (rng() % 4 == 0);
            lambda(i) = keep ? std::abs(normal(rng)) : 0.0;
          }
          break;
        default:
          for (int i = 0; i < dim; ++i) {
            lambda(i) = 1.0 + 0.2 * std::abs(normal(rng));
          }
          break;
      }
      if (lambda.maxCoeff() <= 0.0) lambda(0) = 1.0;
      const auto [a, b] = deinterleave(lambda);
      const double norm_gap = a.norm() - b.norm();
      const double mid = dirichlet(ctx.form_base, a) +
                         dirichlet(ctx.form_base, b) +
                         norm_gap * norm_gap / (2.0 * n);
      const double lhs_entropy = entropy(lambda);
      const double rhs_dirichlet =
          2.0 * dirichlet(ctx.form_doubled, lambda);
      const double slack1 = mid - lhs_entropy;
      const double slack2 = rhs_dirichlet - mid;
      if (slack1 < local.slack_entropy) {
        local.slack_entropy = slack1;
        local.lambda_entropy = lambda;
      }
      if (slack2 < local.slack_dirichlet) {
        local.slack_dirichlet = slack2;
        local.lambda_dirichlet = lambda;
      }
    }
    mins[c] = std::move(local);
  });

  report.min_slack_entropy = std::numeric_limits<double>::infinity();
  report.min_slack_dirichlet = std::numeric_limits<double>::infinity();
  for (const ChunkMin& m : mins) {
    if (m.slack_entropy < report.min_slack_entropy) {
      report.min_slack_entropy = m.slack_entropy;
      report.worst_entropy_lambda = m.lambda_entropy;
    }
    if (m.slack_dirichlet < report.min_slack_dirichlet) {
      report.min_slack_dirichlet = m.slack_dirichlet;
      report.worst_dirichlet_lambda = m.lambda_dirichlet;
    }
  }
  report.ok = report.min_slack_entropy >= -tol.slack &&
              report.min_slack_dirichlet >= -tol.slack;
  return report;
}

double dirichlet_frequency_side(const Weight& doubled,
                                const PointVector& lambda) {
  const int dim = doubled.n;
  if (dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument(
        "dirichlet_frequency_side: weight size must be even");
  }
  if (lambda.size() != dim) {
    throw std::invalid_argument(
        "dirichlet_frequency_side: lambda must have length " +
        std::to_string(dim));
  }
  const int n = dim / 2;
  const auto [a, b] = deinterleave(lambda);
  const Eigen::VectorXcd a_hat = dft_forward(a);
  const Eigen::VectorXcd b_hat = dft_forward(b);
  const TwiddleDiagonal twiddle = make_twiddle(n);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double g_lo = doubled.value(k);
    const double g_hi = doubled.value(k + n);
    const double squares = std::norm(a_hat(k)) + std::norm(b_hat(k));
    const double cross =
        (std::conj(a_hat(k)) * twiddle.entries(k) * b_hat(k)).real();
    acc += (g_lo + g_hi) * squares + 2.0 * (g_lo - g_hi) * cross;
  }
  return acc / (2.0 * n * n);
}

}  // namespace lsiforge
