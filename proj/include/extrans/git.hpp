#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extrans/linalg.hpp"

namespace extrans {

/// Index sets over at most 24 characters, bit i = character i.
using Mask = std::uint32_t;
inline constexpr int kMaxCharacters = 24;

inline bool has(Mask s, int i) { return (s >> i) & 1u; }
inline int popcount(Mask s) { return __builtin_popcount(s); }
inline Mask full_mask(int m) { return m == 32 ? ~0u : ((1u << m) - 1u); }
Mask mask_of(const std::vector<int>& indices);
std::vector<int> indices_of(Mask s);
std::string mask_to_string(Mask s);  // "{0,2,5}"

/// Torus rank r, characters D_1..D_m in Z^r, stability omega in Q^r.
struct GitPresentation {
  int r = 0;
  std::vector<IntVec> characters;
  QVec omega;
  std::vector<std::string> labels;  // optional, one per character

  int m() const { return static_cast<int>(characters.size()); }
  /// Throws InvalidArgument on shape errors.
  void check_shape() const;
  /// m x r integer matrix with rows D_i.
  IntMatrix character_matrix() const;
  std::vector<QVec> character_vectors(Mask subset) const;
  std::string label(int i) const;
  GitPresentation with_omega(const QVec& w) const;
};

GitPresentation make_presentation(int r, const std::vector<std::vector<long>>& characters,
                                  const QVec& omega);

/// Is omega a strictly positive combination of {D_i}_{i in I}?
bool is_anticone_lp(const GitPresentation& p, Mask subset);

struct AnticoneFamily {
  int m = 0;
  std::vector<Mask> minimal;  // sorted by (size, mask)

  bool contains(Mask subset) const;  // upward closure of minimal
  Mask common() const;               // intersection of the minimal anticones
  bool operator==(const AnticoneFamily&) const = default;
};

/// Exhaustive scan, pruned above anticones already found, then an upward
/// closure check (complete for m <= 10, otherwise one-step extensions plus
/// a fixed-seed sample). Throws NotUpwardClosed.
AnticoneFamily anticones(const GitPresentation& p);

struct ValidationReport {
  bool full_set_anticone = false;
  bool upward_closed = false;
  bool full_dimensional = false;
  bool simplicial = false;
  std::vector<std::string> failures;
  AnticoneFamily family;  // filled when the scan itself succeeded
  bool ok() const { return failures.empty(); }
};

ValidationReport validate(const GitPresentation& p);

Mask extended_set(const AnticoneFamily& family);

/// Throws ValidationFailed with the collected messages unless validate passes.
AnticoneFamily validated_anticones(const GitPresentation& p);

}  // namespace extrans
