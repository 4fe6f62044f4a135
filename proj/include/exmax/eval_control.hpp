// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace exmax {

/// Tolerances and truncation caps shared by every series, root finder and
/// quadrature in the library. An evaluator either meets these or reports
/// failure.
struct EvalControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  std::int64_t max_terms = 10'000'000;
  std::int64_t max_evals = 2'000'000;

  /// Throws std::invalid_argument unless all four fields are positive.
  void validate() const;

  /// Same caps, both tolerances scaled by `factor`.
  [[nodiscard]] EvalControl scaled(double factor) const;

  /// max(abs_tol, rel_tol * |value|)
  [[nodiscard]] double target(double value) const;
};

}  // namespace exmax
