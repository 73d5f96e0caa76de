#pragma once

#include <string>
#include <vector>

#include "dephasing/model.hpp"

namespace dephasing {

inline constexpr int kMaxVerifySpins = 5;

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Cross-checks the signature machinery against exhaustive enumeration on a
/// small instance (K, N <= 5):
///
///   lemma_equivalence    signature(k) == signature(k') iff the difference
///                        vector cancels for every environment sign pattern
///   energy_bruteforce    preserves_coherence iff E_kn == E_k'n for all n
///   conjugation          signature(~k) == -signature(k); complement
///                        permutes the classes
///   partition_totality   classes disjoint, cover 2^K, distinct signatures
///   case_theorem         distance <= 2 pairs: preserved iff the pair's row
///                        symmetry holds
///   collective_structure (identical nonzero rows only) partition groups by
///                        Hamming weight
///
/// Throws LimitError for larger instances.
std::vector<CheckResult> verify_small_instance(const InteractionMatrix& g);

}  // namespace dephasing
