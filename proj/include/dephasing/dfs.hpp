#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dephasing/model.hpp"
#include "dephasing/spectrum.hpp"

namespace dephasing {

/// One decoherence-free subspace: all register basis states sharing a
/// signature. Members are sorted ascending.
struct DfsClass {
  Signature signature;
  std::vector<std::uint64_t> members;
};

/// The register basis split into signature classes. Classes are ordered by
/// size (descending), then by smallest member (ascending).
struct DfsPartition {
  int register_size = 0;
  std::vector<DfsClass> classes;

  /// labels()[k] is the index of the class containing k.
  std::vector<std::size_t> labels() const;
};

/// True iff r_kk'(t) = 1 for all t and every environment state, which is the
/// case exactly when the two signatures coincide.
bool preserves_coherence(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2);

DfsPartition dfs_partition(const InteractionMatrix& g);

/// Classes by Hamming weight: element l holds every k with exactly l zeros,
/// in ascending order. Sizes are binom(K, l).
std::vector<std::vector<std::uint64_t>> collective_partition(int register_size);

/// True when `partition` groups states exactly by their number of zeros.
bool is_hamming_partition(const DfsPartition& partition);

/// 2^K - k - 1, the bitwise complement.
BasisIndex conjugate_index(const BasisIndex& k);

/// Image of a class under conjugate_index, sorted. Throws UsageError when
/// `members` is not one of the partition's classes.
std::vector<std::uint64_t> conjugate_class(const DfsPartition& partition, std::span<const std::uint64_t> members);
std::vector<std::uint64_t> conjugate_class(const InteractionMatrix& g, std::span<const std::uint64_t> members);

// ---------------------------------------------------------------------------
// Two-bit pair analysis.
//
// For k, k' differing in at most two digits the no-decoherence condition
// reduces to a statement about one or two rows of G:
//
//   EqualSigns     k = ..1..1..  k' = ..0..0..   rows l1, l2 opposite
//   OppositeSigns  k = ..0..1..  k' = ..1..0..   rows l1, l2 equal
//   FirstZero      single digit differs at l > 1  row l vanishes
//   SecondZero     single digit differs at l = 1  row l vanishes
//
// The single-digit cases only differ in which of the two slots the differing
// digit occupies; both require the differing row to vanish.
// ---------------------------------------------------------------------------

enum class PairTag { EqualSigns, OppositeSigns, FirstZero, SecondZero, Identical, TooFar };

struct PairCase {
  PairTag tag;
  int l1 = 0;             // first differing position (1-based), 0 if none
  std::optional<int> l2;  // second differing position when two differ

  friend bool operator==(const PairCase&, const PairCase&) = default;
};

enum class SymmetryKind { RowsOpposite, RowsEqual, RowZero };

/// A row relation of G. Rows are 1-based; l2 is unused for RowZero.
struct GSymmetry {
  SymmetryKind kind;
  int l1;
  int l2 = 0;

  friend bool operator==(const GSymmetry&, const GSymmetry&) = default;
};

PairCase pair_case(const BasisIndex& k, const BasisIndex& k2);

/// Throws UsageError for Identical and TooFar.
GSymmetry required_symmetry(const PairCase& pair);

/// Exact row test. Throws IndexError for rows outside 1..K.
bool check_symmetry(const InteractionMatrix& g, const GSymmetry& sym);

/// Number of two-dimensional pair DFSs a single symmetry yields: 2^{K-2} for
/// each two-digit case, 2^{K-1} for the single-digit cases.
std::uint64_t count_pair_dfs(int register_size, PairTag tag);

/// Every unordered pair (k < k') whose digit pattern falls under `sym`:
/// for RowsOpposite the pairs differing exactly at l1, l2 with equal digits
/// there; for RowsEqual the pairs differing exactly at l1, l2 with unequal
/// digits; for RowZero the pairs differing only at l1.
std::vector<std::pair<std::uint64_t, std::uint64_t>> pattern_pairs(int register_size, const GSymmetry& sym);

/// All row relations that hold in G, ordered by kind then rows.
std::vector<GSymmetry> row_symmetries(const InteractionMatrix& g);

std::string to_string(PairTag tag);
std::string to_string(SymmetryKind kind);
std::string to_string(const GSymmetry& sym);

// ---------------------------------------------------------------------------

struct SymmetryInventory {
  GSymmetry symmetry;
  std::uint64_t pattern_pairs;
};

struct DfsReport {
  int register_size = 0;
  int env_size = 0;
  DfsPartition partition;
  std::uint64_t largest_dim = 0;
  bool collective = false;
  std::vector<SymmetryInventory> symmetries;
  /// conjugation[i] is the class that class i maps to under complement.
  std::vector<std::size_t> conjugation;
  /// largest_dim * sqrt(K) / 2^K, set only for collective partitions.
  std::optional<double> collective_ratio;
};

DfsReport dfs_report(const InteractionMatrix& g);

/// {"K", "N", "classes": [{"members", "dim", "signature"}], "collective",
///  "symmetries", "conjugation", "largest_dim"[, "collective_ratio"]}
std::string serialize_report(const DfsReport& report, int indent = 2);

}  // namespace dephasing
