// SPDX-License-Identifier: Apache-2.0
#include "exmax/eval_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exmax {

void EvalControl::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("EvalControl: tolerances must be positive");
  }
  if (max_terms < 1 || max_evals < 1) {
    throw std::invalid_argument("EvalControl: caps must be >= 1");
  }
}

EvalControl EvalControl::scaled(double factor) const {
  EvalControl out = *this;
  out.rel_tol *= factor;
  out.abs_tol *= factor;
  return out;
}

double EvalControl::target(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

}  // namespace exmax
