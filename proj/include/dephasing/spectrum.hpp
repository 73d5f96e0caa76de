#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dephasing/model.hpp"

namespace dephasing {

/// Per-register-state coupling fingerprint: values[j] = sum_i (-1)^{k_i} g_ij.
///
/// Row k of S = AGB is S_kn = sum_j (-1)^{n_j} values[j], so two register
/// states see identical energies for every environment configuration exactly
/// when their signatures are equal.
struct Signature {
  std::vector<Rational> values;

  Signature operator-() const;
  friend Signature operator-(const Signature& a, const Signature& b);
  bool is_zero() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const noexcept;
};

/// E_kn = (1/2) sum_i (-1)^{k_i} sum_j (-1)^{n_j} g_ij.
Rational energy(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& n);

/// h_i^{(n)} = sum_j (-1)^{n_j} g_ij for 1-based row `i`.
Rational h_vector(const InteractionMatrix& g, int i, const BasisIndex& n);

Signature signature(const InteractionMatrix& g, const BasisIndex& k);

/// S_kn, evaluated through the signature of k. Equal to 2 * energy(g, k, n).
Rational s_entry(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& n);

/// sum_j (-1)^{n_j} values[j] for one environment configuration.
Rational signed_sum(std::span<const Rational> values, const BasisIndex& n);

/// True iff sum_j (-1)^{n_j} x_j vanishes for all 2^N sign patterns.
/// Exponential; meant as an oracle for small N (<= 20).
bool forall_env_zero(std::span<const Rational> x);

}  // namespace dephasing
