#pragma once

// Shared generators and brute-force oracles for the test binaries. The
// oracles deliberately avoid the library's BasisIndex/signature code paths.

#include <bitset>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dephasing/model.hpp"

namespace dephasing::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 6, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(Rational::Integer(num(rng)), Rational::Integer(den(rng)));
}

inline Rational random_nonzero_rational(Rng& rng) {
  for (;;) {
    Rational r = random_rational(rng);
    if (!r.is_zero()) return r;
  }
}

inline std::vector<Rational> random_row(Rng& rng, int n) {
  std::vector<Rational> row;
  for (int j = 0; j < n; ++j) row.push_back(random_rational(rng));
  return row;
}

inline std::vector<Rational> random_nonzero_row(Rng& rng, int n) {
  for (;;) {
    auto row = random_row(rng, n);
    for (const auto& v : row) {
      if (!v.is_zero()) return row;
    }
  }
}

inline InteractionMatrix random_matrix(Rng& rng, int k, int n) {
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < k; ++i) rows.push_back(random_row(rng, n));
  return InteractionMatrix::from_rows(rows);
}

inline std::vector<std::vector<Rational>> rows_of(const InteractionMatrix& g) {
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < g.register_size(); ++i) rows.emplace_back(g.row(i).begin(), g.row(i).end());
  return rows;
}

inline std::vector<Rational> negated(std::vector<Rational> row) {
  for (auto& v : row) v = -v;
  return row;
}

/// MSB-first digit string of `value`, computed through std::bitset.
inline std::string digits(std::uint64_t value, int width) {
  return std::bitset<64>(value).to_string().substr(static_cast<std::size_t>(64 - width));
}

/// Direct double loop over E_kn = 1/2 sum_i sum_j (-1)^{k_i} (-1)^{n_j} g_ij.
inline Rational naive_energy(const InteractionMatrix& g, std::uint64_t k, std::uint64_t n) {
  const std::string kd = digits(k, g.register_size());
  const std::string nd = digits(n, g.env_size());
  Rational total;
  for (int i = 0; i < g.register_size(); ++i) {
    for (int j = 0; j < g.env_size(); ++j) {
      int s = (kd[static_cast<std::size_t>(i)] == '1' ? -1 : 1) * (nd[static_cast<std::size_t>(j)] == '1' ? -1 : 1);
      total += Rational(s) * g.coupling(i, j);
    }
  }
  return total / Rational(2);
}

/// Exhaustive no-decoherence condition: E_kn == E_k'n for all 2^N values of n.
inline bool energies_agree_everywhere(const InteractionMatrix& g, std::uint64_t k, std::uint64_t k2) {
  const std::uint64_t env_dim = std::uint64_t{1} << g.env_size();
  for (std::uint64_t n = 0; n < env_dim; ++n) {
    if (naive_energy(g, k, n) != naive_energy(g, k2, n)) return false;
  }
  return true;
}

inline int hamming(std::uint64_t a, std::uint64_t b) {
  return static_cast<int>(std::bitset<64>(a ^ b).count());
}

inline EnvState random_env(Rng& rng, int width, std::size_t max_terms = 0) {
  const std::uint64_t dim = std::uint64_t{1} << width;
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::bernoulli_distribution keep(0.6);
  std::vector<EnvTerm> terms;
  for (std::uint64_t n = 0; n < dim; ++n) {
    if (!keep(rng) && !(terms.empty() && n + 1 == dim)) continue;
    if (max_terms && terms.size() == max_terms) break;
    terms.push_back({BasisIndex(n, width), {amp(rng), amp(rng)}});
  }
  return EnvState::normalized(width, std::move(terms));
}

}  // namespace dephasing::testing
