#pragma once

#include <vector>

#include "extrans/linalg.hpp"

namespace extrans {

/// M = U * S * V with U, V unimodular and S diagonal, d_1 | d_2 | ...
/// L = U^{-1} and R = V^{-1} are kept as well since most callers need them.
struct SnfResult {
  IntMatrix U, S, V;
  IntMatrix L, R;  // L * M * R = S
  int rank = 0;
  std::vector<Integer> diagonal() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// coker(M : Z^cols -> Z^rows).
struct Cokernel {
  int free_rank = 0;
  std::vector<Integer> torsion;  // each > 1
  /// (free_rank + torsion.size()) x rows. The first free_rank rows are the
  /// free coordinates; the remaining rows are read modulo torsion[i].
  IntMatrix projection;
};

Cokernel cokernel_presentation(const IntMatrix& m);

/// Representatives of {nu in Q^cols : M nu integral} / Z^cols, each reduced
/// into [0,1)^cols, sorted. Throws NotFiniteIndex if M has rank < cols.
std::vector<QVec> overlattice_cosets(const IntMatrix& m);

}  // namespace extrans
