#include "dephasing/dfs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <boost/functional/hash.hpp>
#include <nlohmann/json.hpp>

namespace dephasing {

namespace {

void require_register(const InteractionMatrix& g, const BasisIndex& k) {
  if (k.width() != g.register_size()) {
    throw DimensionError("register index width " + std::to_string(k.width()) +
                         " != K=" + std::to_string(g.register_size()));
  }
}

void require_partitionable(int register_size) {
  if (register_size < 1 || register_size > kMaxRegisterSpins) {
    throw LimitError("register size K=" + std::to_string(register_size) + " outside 1.." +
                     std::to_string(kMaxRegisterSpins));
  }
}

struct Int64VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    return boost::hash_range(v.begin(), v.end());
  }
};

// G scaled by the lcm of its denominators, when every column's absolute sum
// fits comfortably in int64. Signatures then become integer vectors.
std::optional<std::vector<std::int64_t>> integer_couplings(const InteractionMatrix& g) {
  using Integer = Rational::Integer;
  const int rows = g.register_size();
  const int cols = g.env_size();
  Integer scale = 1;
  for (int i = 0; i < rows; ++i) {
    for (const auto& c : g.row(i)) scale = boost::multiprecision::lcm(scale, c.den());
  }
  const Integer limit = Integer(1) << 61;
  std::vector<std::int64_t> out(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int j = 0; j < cols; ++j) {
    Integer column_abs = 0;
    for (int i = 0; i < rows; ++i) {
      const Rational& c = g.coupling(i, j);
      Integer v = c.num() * (scale / c.den());
      column_abs += boost::multiprecision::abs(v);
      if (column_abs >= limit) return std::nullopt;
      out[static_cast<std::size_t>(i) * cols + j] = v.convert_to<std::int64_t>();
    }
  }
  return out;
}

// labels[k] for every register state, classes numbered in discovery order.
std::vector<std::uint32_t> label_states(const InteractionMatrix& g, std::size_t& class_count) {
  const int width = g.register_size();
  const std::uint64_t dim = std::uint64_t{1} << width;
  std::vector<std::uint32_t> labels(dim);

  if (auto ints = integer_couplings(g)) {
    const auto cols = static_cast<std::size_t>(g.env_size());
    // Walk the register basis in Gray-code order; each step flips one digit
    // and shifts the signature by twice the corresponding row.
    std::vector<std::int64_t> sig(cols, 0);
    for (int i = 0; i < width; ++i) {
      for (std::size_t j = 0; j < cols; ++j) sig[j] += (*ints)[static_cast<std::size_t>(i) * cols + j];
    }
    std::unordered_map<std::vector<std::int64_t>, std::uint32_t, Int64VectorHash> ids;
    auto visit = [&](std::uint64_t k) {
      auto [it, inserted] = ids.try_emplace(sig, static_cast<std::uint32_t>(ids.size()));
      labels[k] = it->second;
    };
    visit(0);
    for (std::uint64_t step = 1; step < dim; ++step) {
      const int lsb = std::countr_zero(step);
      const std::uint64_t gray = step ^ (step >> 1);
      const std::size_t row = static_cast<std::size_t>(width - 1 - lsb);
      const bool now_one = (gray >> lsb) & 1U;
      for (std::size_t j = 0; j < cols; ++j) {
        std::int64_t twice = 2 * (*ints)[row * cols + j];
        sig[j] += now_one ? -twice : twice;
      }
      visit(gray);
    }
    class_count = ids.size();
    return labels;
  }

  std::unordered_map<Signature, std::uint32_t, SignatureHash> ids;
  for (std::uint64_t k = 0; k < dim; ++k) {
    auto [it, inserted] =
        ids.try_emplace(signature(g, BasisIndex(k, width)), static_cast<std::uint32_t>(ids.size()));
    labels[k] = it->second;
  }
  class_count = ids.size();
  return labels;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return out;
}

void require_row(const InteractionMatrix& g, int l) {
  if (l < 1 || l > g.register_size()) {
    throw IndexError("row " + std::to_string(l) + " outside 1.." + std::to_string(g.register_size()));
  }
}

}  // namespace

std::vector<std::size_t> DfsPartition::labels() const {
  std::vector<std::size_t> out(std::size_t{1} << register_size);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (auto k : classes[c].members) out[k] = c;
  }
  return out;
}

bool preserves_coherence(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2) {
  require_register(g, k);
  require_register(g, k2);
  if (k == k2) return true;
  return signature(g, k) == signature(g, k2);
}

DfsPartition dfs_partition(const InteractionMatrix& g) {
  const int width = g.register_size();
  require_partitionable(width);
  std::size_t class_count = 0;
  auto labels = label_states(g, class_count);

  std::vector<std::vector<std::uint64_t>> members(class_count);
  for (std::uint64_t k = 0; k < labels.size(); ++k) members[labels[k]].push_back(k);
  for (auto& m : members) std::sort(m.begin(), m.end());
  std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  DfsPartition partition{width, {}};
  partition.classes.reserve(members.size());
  for (auto& m : members) {
    Signature sig = signature(g, BasisIndex(m.front(), width));
    partition.classes.push_back({std::move(sig), std::move(m)});
  }
  return partition;
}

std::vector<std::vector<std::uint64_t>> collective_partition(int register_size) {
  require_partitionable(register_size);
  std::vector<std::vector<std::uint64_t>> classes(static_cast<std::size_t>(register_size) + 1);
  const std::uint64_t dim = std::uint64_t{1} << register_size;
  for (std::uint64_t k = 0; k < dim; ++k) {
    classes[static_cast<std::size_t>(register_size - std::popcount(k))].push_back(k);
  }
  return classes;
}

bool is_hamming_partition(const DfsPartition& partition) {
  const int width = partition.register_size;
  if (partition.classes.size() != static_cast<std::size_t>(width) + 1) return false;
  for (const auto& c : partition.classes) {
    const int zeros = width - std::popcount(c.members.front());
    for (auto k : c.members) {
      if (width - std::popcount(k) != zeros) return false;
    }
    if (c.members.size() != binomial(width, zeros)) return false;
  }
  return true;
}

BasisIndex conjugate_index(const BasisIndex& k) { return k.complement(); }

std::vector<std::uint64_t> conjugate_class(const DfsPartition& partition, std::span<const std::uint64_t> members) {
  std::vector<std::uint64_t> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  auto match = std::find_if(partition.classes.begin(), partition.classes.end(),
                            [&](const DfsClass& c) { return c.members == sorted; });
  if (match == partition.classes.end()) throw UsageError("members do not form a class of the partition");
  std::vector<std::uint64_t> image;
  image.reserve(sorted.size());
  for (auto k : sorted) image.push_back(conjugate_index(BasisIndex(k, partition.register_size)).value());
  std::sort(image.begin(), image.end());
  return image;
}

std::vector<std::uint64_t> conjugate_class(const InteractionMatrix& g, std::span<const std::uint64_t> members) {
  if (members.empty()) throw UsageError("empty class");
  const int width = g.register_size();
  // A valid class is every state sharing the first member's signature.
  Signature sig = signature(g, BasisIndex(members.front(), width));
  std::vector<std::uint64_t> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw UsageError("repeated class member");
  std::vector<std::uint64_t> expected;
  const std::uint64_t dim = std::uint64_t{1} << width;
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (signature(g, BasisIndex(k, width)) == sig) expected.push_back(k);
  }
  if (expected != sorted) throw UsageError("members do not form a class of the partition");
  std::vector<std::uint64_t> image;
  image.reserve(sorted.size());
  for (auto k : sorted) image.push_back(conjugate_index(BasisIndex(k, width)).value());
  std::sort(image.begin(), image.end());
  return image;
}

PairCase pair_case(const BasisIndex& k, const BasisIndex& k2) {
  if (k.width() != k2.width()) throw DimensionError("pair widths differ");
  if (k == k2) return {PairTag::Identical, 0, std::nullopt};
  std::vector<int> differing;
  for (int i = 1; i <= k.width(); ++i) {
    if (k.bit(i) != k2.bit(i)) differing.push_back(i);
  }
  if (differing.size() > 2) return {PairTag::TooFar, differing[0], differing[1]};
  if (differing.size() == 2) {
    const int l1 = differing[0];
    const int l2 = differing[1];
    return {k.bit(l1) == k.bit(l2) ? PairTag::EqualSigns : PairTag::OppositeSigns, l1, l2};
  }
  const int l = differing[0];
  return {l > 1 ? PairTag::FirstZero : PairTag::SecondZero, l, std::nullopt};
}

GSymmetry required_symmetry(const PairCase& pair) {
  switch (pair.tag) {
    case PairTag::EqualSigns:
      return {SymmetryKind::RowsOpposite, pair.l1, pair.l2.value()};
    case PairTag::OppositeSigns:
      return {SymmetryKind::RowsEqual, pair.l1, pair.l2.value()};
    case PairTag::FirstZero:
    case PairTag::SecondZero:
      return {SymmetryKind::RowZero, pair.l1, 0};
    case PairTag::Identical:
    case PairTag::TooFar:
      break;
  }
  throw UsageError("no row symmetry is attached to a " + to_string(pair.tag) + " pair");
}

bool check_symmetry(const InteractionMatrix& g, const GSymmetry& sym) {
  require_row(g, sym.l1);
  auto a = g.row(sym.l1 - 1);
  if (sym.kind == SymmetryKind::RowZero) {
    return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v.is_zero(); });
  }
  require_row(g, sym.l2);
  auto b = g.row(sym.l2 - 1);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sym.kind == SymmetryKind::RowsEqual ? a[j] != b[j] : a[j] != -b[j]) return false;
  }
  return true;
}

std::uint64_t count_pair_dfs(int register_size, PairTag tag) {
  if (register_size > kMaxRegisterSpins) {
    throw LimitError("register size K=" + std::to_string(register_size) + " exceeds " +
                     std::to_string(kMaxRegisterSpins));
  }
  switch (tag) {
    case PairTag::EqualSigns:
    case PairTag::OppositeSigns:
      if (register_size < 2) throw LimitError("two-digit cases need K >= 2");
      return std::uint64_t{1} << (register_size - 2);
    case PairTag::FirstZero:
    case PairTag::SecondZero:
      if (register_size < 1) throw LimitError("single-digit cases need K >= 1");
      return std::uint64_t{1} << (register_size - 1);
    case PairTag::Identical:
    case PairTag::TooFar:
      break;
  }
  throw UsageError("no pair count is defined for a " + to_string(tag) + " pair");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> pattern_pairs(int register_size, const GSymmetry& sym) {
  require_partitionable(register_size);
  auto mask_of = [&](int position) {
    if (position < 1 || position > register_size) {
      throw IndexError("row " + std::to_string(position) + " outside 1.." + std::to_string(register_size));
    }
    return std::uint64_t{1} << (register_size - position);
  };
  const std::uint64_t dim = std::uint64_t{1} << register_size;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (sym.kind == SymmetryKind::RowZero) {
    const std::uint64_t m = mask_of(sym.l1);
    for (std::uint64_t k = 0; k < dim; ++k) {
      if (!(k & m)) pairs.emplace_back(k, k | m);
    }
    return pairs;
  }
  if (sym.l1 == sym.l2) throw UsageError("two-row symmetry needs distinct rows");
  const std::uint64_t m1 = mask_of(sym.l1);
  const std::uint64_t m2 = mask_of(sym.l2);
  const std::uint64_t both = m1 | m2;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t k2 = k ^ both;
    if (k2 < k) continue;
    const bool equal_digits = ((k & m1) != 0) == ((k & m2) != 0);
    if (equal_digits == (sym.kind == SymmetryKind::RowsOpposite)) pairs.emplace_back(k, k2);
  }
  return pairs;
}

std::vector<GSymmetry> row_symmetries(const InteractionMatrix& g) {
  std::vector<GSymmetry> out;
  const int rows = g.register_size();
  for (auto kind : {SymmetryKind::RowsOpposite, SymmetryKind::RowsEqual}) {
    for (int l1 = 1; l1 <= rows; ++l1) {
      for (int l2 = l1 + 1; l2 <= rows; ++l2) {
        GSymmetry sym{kind, l1, l2};
        if (check_symmetry(g, sym)) out.push_back(sym);
      }
    }
  }
  for (int l = 1; l <= rows; ++l) {
    GSymmetry sym{SymmetryKind::RowZero, l, 0};
    if (check_symmetry(g, sym)) out.push_back(sym);
  }
  return out;
}

std::string to_string(PairTag tag) {
  switch (tag) {
    case PairTag::EqualSigns: return "EqualSigns";
    case PairTag::OppositeSigns: return "OppositeSigns";
    case PairTag::FirstZero: return "FirstZero";
    case PairTag::SecondZero: return "SecondZero";
    case PairTag::Identical: return "Identical";
    case PairTag::TooFar: return "TooFar";
  }
  return "?";
}

std::string to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::RowsOpposite: return "RowsOpposite";
    case SymmetryKind::RowsEqual: return "RowsEqual";
    case SymmetryKind::RowZero: return "RowZero";
  }
  return "?";
}

std::string to_string(const GSymmetry& sym) {
  if (sym.kind == SymmetryKind::RowZero) return "RowZero(" + std::to_string(sym.l1) + ")";
  return to_string(sym.kind) + "(" + std::to_string(sym.l1) + "," + std::to_string(sym.l2) + ")";
}

DfsReport dfs_report(const InteractionMatrix& g) {
  DfsReport report;
  report.register_size = g.register_size();
  report.env_size = g.env_size();
  report.partition = dfs_partition(g);
  report.largest_dim = report.partition.classes.front().members.size();
  report.collective = is_hamming_partition(report.partition);
  for (const auto& sym : row_symmetries(g)) {
    report.symmetries.push_back({sym, pattern_pairs(g.register_size(), sym).size()});
  }
  const auto labels = report.partition.labels();
  for (const auto& c : report.partition.classes) {
    report.conjugation.push_back(labels[conjugate_index(BasisIndex(c.members.front(), g.register_size())).value()]);
  }
  if (report.collective) {
    const double k = g.register_size();
    report.collective_ratio = static_cast<double>(report.largest_dim) * std::sqrt(k) / std::ldexp(1.0, g.register_size());
  }
  return report;
}

std::string serialize_report(const DfsReport& report, int indent) {
  using nlohmann::json;
  json classes = json::array();
  for (const auto& c : report.partition.classes) {
    json sig = json::array();
    for (const auto& v : c.signature.values) sig.push_back(json::array({v.num().str(), v.den().str()}));
    classes.push_back({{"members", c.members}, {"dim", c.members.size()}, {"signature", std::move(sig)}});
  }
  json symmetries = json::array();
  for (const auto& s : report.symmetries) {
    json rows = s.symmetry.kind == SymmetryKind::RowZero ? json::array({s.symmetry.l1})
                                                         : json::array({s.symmetry.l1, s.symmetry.l2});
    symmetries.push_back({{"kind", to_string(s.symmetry.kind)}, {"rows", std::move(rows)},
                          {"pattern_pairs", s.pattern_pairs}});
  }
  json conjugation = json::array();
  for (std::size_t i = 0; i < report.conjugation.size(); ++i) conjugation.push_back({i, report.conjugation[i]});

  json doc;
  doc["K"] = report.register_size;
  doc["N"] = report.env_size;
  doc["classes"] = std::move(classes);
  doc["largest_dim"] = report.largest_dim;
  doc["collective"] = report.collective;
  if (report.collective_ratio) doc["collective_ratio"] = *report.collective_ratio;
  doc["symmetries"] = std::move(symmetries);
  doc["conjugation"] = std::move(conjugation);
  return doc.dump(indent);
}

}  // namespace dephasing
