#pragma once

#include <optional>

#include "extrans/linalg.hpp"

namespace extrans {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  QVec x;
  Rational value;
};

/// maximize c.x subject to A x = b, x >= 0. Exact two-phase simplex with
/// Bland's rule.
LpResult simplex_maximize(const QMatrix& a, const QVec& b, const QVec& c);

struct Feasibility {
  bool feasible = false;
  std::optional<QVec> witness;  // coefficients, all > 0
};

/// Is target = sum a_i vectors[i] for some a_i > 0?
Feasibility strict_cone_feasibility(const std::vector<QVec>& vectors, const QVec& target);

}  // namespace extrans
