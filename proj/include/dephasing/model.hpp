#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dephasing/errors.hpp"
#include "dephasing/rational.hpp"

namespace dephasing {

/// Largest register for which the 2^K basis may be enumerated.
inline constexpr int kMaxRegisterSpins = 24;
/// Largest environment for which the 2^N basis may be enumerated.
inline constexpr int kMaxEnumeratedEnvSpins = 20;
/// Largest register for which a full density matrix is materialized.
inline constexpr int kMaxDensitySpins = 12;
/// Widest bit string a BasisIndex can hold.
inline constexpr int kMaxIndexWidth = 63;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kPositivityTolerance = -1e-9;

/// A computational-basis label of `width` spins.
///
/// Bit positions are 1-based and most-significant first: for value 5 with
/// width 3 the string is "101", so bit(1) = 1, bit(2) = 0, bit(3) = 1.
/// Every other module reads bits through bit()/sign() only.
class BasisIndex {
 public:
  /// Throws LimitError for a width outside 1..63 and IndexError when
  /// value >= 2^width.
  BasisIndex(std::uint64_t value, int width);

  /// Parses an MSB-first binary string such as "0110".
  static BasisIndex from_bits(std::string_view bits);

  std::uint64_t value() const { return value_; }
  int width() const { return width_; }

  /// Digit at 1-based position `i`; throws IndexError outside 1..width.
  int bit(int i) const;
  /// (-1)^bit(i).
  int sign(int i) const { return bit(i) == 0 ? 1 : -1; }

  /// Bitwise complement within the width, i.e. 2^width - value - 1.
  BasisIndex complement() const;
  int zeros() const;
  std::string bits() const;

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;

 private:
  std::uint64_t value_;
  int width_;
};

inline int bit(const BasisIndex& idx, int i) { return idx.bit(i); }
inline int sign(const BasisIndex& idx, int i) { return idx.sign(i); }

/// The K x N coupling matrix G between register spins (rows) and
/// environment spins (columns). Entries are exact rationals.
class InteractionMatrix {
 public:
  /// `entries` is row-major with K*N elements. Throws LimitError when K is
  /// outside 1..24 or N < 1, DimensionError when the entry count is wrong.
  InteractionMatrix(int register_size, int env_size, std::vector<Rational> entries);

  static InteractionMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int register_size() const { return register_size_; }
  int env_size() const { return env_size_; }

  /// Zero-based row/column access.
  const Rational& coupling(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * env_size_ + col];
  }
  std::span<const Rational> row(int row) const {
    return {entries_.data() + static_cast<std::size_t>(row) * env_size_,
            static_cast<std::size_t>(env_size_)};
  }

  InteractionMatrix operator+(const InteractionMatrix& rhs) const;
  friend bool operator==(const InteractionMatrix&, const InteractionMatrix&) = default;

 private:
  int register_size_;
  int env_size_;
  std::vector<Rational> entries_;
};

/// Parses {"K": int, "N": int, "g": [[rational, ...], ...]} where a rational
/// is ["num", "den"] or a decimal string ("0.25" is exactly 1/4).
/// Throws ParseError, NonFiniteError, DimensionError or LimitError.
InteractionMatrix parse_interaction_matrix(std::string_view json_text);
/// Inverse of parse_interaction_matrix; rationals are written as
/// ["num", "den"] pairs.
std::string serialize_interaction_matrix(const InteractionMatrix& g);

struct EnvTerm {
  BasisIndex index;
  std::complex<double> amplitude;
};

/// Sparse pure state of the N environment spins, sum_n b_n |n>.
/// Terms are kept sorted by index; zero amplitudes are dropped.
class EnvState {
 public:
  /// Throws DimensionError on width mismatches, IndexError on repeated
  /// indices, NonFiniteError on NaN/inf amplitudes and StateError when the
  /// norm deviates from one by more than 1e-12.
  EnvState(int width, std::vector<EnvTerm> terms);

  /// Rescales `terms` to unit norm before validating.
  static EnvState normalized(int width, std::vector<EnvTerm> terms);
  /// Equal-weight superposition of all 2^width configurations (width <= 20).
  static EnvState uniform(int width);
  static EnvState basis(const BasisIndex& n);

  int width() const { return width_; }
  std::span<const EnvTerm> terms() const { return terms_; }
  double norm() const;

 private:
  int width_;
  std::vector<EnvTerm> terms_;
};

/// Parses {"N": int, "terms": [{"n": int, "re": float, "im": float}]}.
EnvState parse_env_state(std::string_view json_text);
std::string serialize_env_state(const EnvState& env);

class RegisterDensity;
namespace detail {
RegisterDensity make_density_unchecked(int register_size, Eigen::MatrixXcd rho);
}

/// Reduced density matrix of the K-spin register.
class RegisterDensity {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
  /// (smallest eigenvalue >= -1e-9). K is capped at 12.
  RegisterDensity(int register_size, Eigen::MatrixXcd rho);

  /// rho_kk' = a_k conj(a_k'); `amplitudes` is rescaled to unit norm.
  static RegisterDensity pure(int register_size, std::span<const std::complex<double>> amplitudes);

  int register_size() const { return register_size_; }
  Eigen::Index dimension() const { return rho_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  std::complex<double> operator()(Eigen::Index k, Eigen::Index k2) const { return rho_(k, k2); }

  std::complex<double> trace() const { return rho_.trace(); }
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  RegisterDensity(int register_size, Eigen::MatrixXcd rho, Unchecked);
  // Evolution output is a Schur product of two PSD matrices and skips the
  // O(d^3) positivity check.
  friend RegisterDensity detail::make_density_unchecked(int, Eigen::MatrixXcd);

  int register_size_;
  Eigen::MatrixXcd rho_;
};

}  // namespace dephasing
