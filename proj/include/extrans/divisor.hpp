#pragma once

#include <vector>

#include "extrans/cone.hpp"
#include "extrans/fan.hpp"

namespace extrans {

struct ExtendedVector {
  int index = 0;         // j in S
  Mask cone = 0;         // smallest cone containing the ray of j
  QVec coeffs;           // aligned with indices_of(cone)
  QVec xi;               // in L (x) Q, D_i . xi per the pairing table
};

struct DivisorClassData {
  Mask extended = 0;
  std::vector<ExtendedVector> xi;
  std::vector<int> h2_basis;  // characters whose projected classes form the basis
  QMatrix theta;              // h2 x r, coordinates of the projection to H^2
  PolyCone extended_ample_cone;  // closure, in L^vee (x) Q
  PolyCone ample_cone;           // in H^2 coordinates
  PolyCone mori_cone;            // in L (x) Q, inside the annihilator of D_S

  QVec theta_of(const QVec& x) const { return multiply(theta, x); }
};

/// Throws ExtendedVectorOutsideSupport.
DivisorClassData divisor_class_data(const GitPresentation& p, const AnticoneFamily& family,
                                    const StackyFan& fan);

/// closure of the intersection over minimal anticones J of cone{D_j}_{j in J}
PolyCone extended_ample_cone(const GitPresentation& p, const AnticoneFamily& family);

}  // namespace extrans
