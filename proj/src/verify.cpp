#include "dephasing/verify.hpp"

#include <algorithm>
#include <set>

#include "dephasing/dfs.hpp"
#include "dephasing/spectrum.hpp"

namespace dephasing {

namespace {

std::string pair_text(std::uint64_t k, std::uint64_t k2) {
  return "(" + std::to_string(k) + "," + std::to_string(k2) + ")";
}

bool all_rows_equal_nonzero(const InteractionMatrix& g) {
  for (int i = 1; i < g.register_size(); ++i) {
    if (!std::equal(g.row(i).begin(), g.row(i).end(), g.row(0).begin())) return false;
  }
  return std::any_of(g.row(0).begin(), g.row(0).end(), [](const Rational& v) { return !v.is_zero(); });
}

}  // namespace

std::vector<CheckResult> verify_small_instance(const InteractionMatrix& g) {
  const int width = g.register_size();
  const int env = g.env_size();
  if (width > kMaxVerifySpins || env > kMaxVerifySpins) {
    throw LimitError("oracle verification needs K, N <= " + std::to_string(kMaxVerifySpins) + "; got K=" +
                     std::to_string(width) + ", N=" + std::to_string(env));
  }
  const std::uint64_t dim = std::uint64_t{1} << width;
  const std::uint64_t env_dim = std::uint64_t{1} << env;

  std::vector<Signature> sigs;
  for (std::uint64_t k = 0; k < dim; ++k) sigs.push_back(signature(g, BasisIndex(k, width)));

  std::vector<CheckResult> results;

  {
    CheckResult r{"lemma_equivalence", true, ""};
    for (std::uint64_t k = 0; k < dim && r.passed; ++k) {
      for (std::uint64_t k2 = k + 1; k2 < dim; ++k2) {
        // c^T G with c_i = (-1)^{k_i} - (-1)^{k'_i}, summed row by row.
        std::vector<Rational> diff(static_cast<std::size_t>(env));
        for (int i = 1; i <= width; ++i) {
          int c = BasisIndex(k, width).sign(i) - BasisIndex(k2, width).sign(i);
          if (c == 0) continue;
          for (int j = 0; j < env; ++j) diff[static_cast<std::size_t>(j)] += Rational(c) * g.coupling(i - 1, j);
        }
        if (forall_env_zero(diff) != (sigs[k] == sigs[k2])) {
          r = {r.name, false, "mismatch at pair " + pair_text(k, k2)};
          break;
        }
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"energy_bruteforce", true, ""};
    for (std::uint64_t k = 0; k < dim && r.passed; ++k) {
      for (std::uint64_t k2 = k + 1; k2 < dim; ++k2) {
        bool all_equal = true;
        for (std::uint64_t n = 0; n < env_dim && all_equal; ++n) {
          all_equal = energy(g, BasisIndex(k, width), BasisIndex(n, env)) ==
                      energy(g, BasisIndex(k2, width), BasisIndex(n, env));
        }
        if (all_equal != preserves_coherence(g, BasisIndex(k, width), BasisIndex(k2, width))) {
          r = {r.name, false, "mismatch at pair " + pair_text(k, k2)};
          break;
        }
      }
    }
    results.push_back(r);
  }

  const DfsPartition partition = dfs_partition(g);

  {
    CheckResult r{"conjugation", true, ""};
    for (std::uint64_t k = 0; k < dim; ++k) {
      if (sigs[dim - k - 1] != -sigs[k]) {
        r = {r.name, false, "signature of complement of " + std::to_string(k) + " is not negated"};
        break;
      }
    }
    std::set<std::vector<std::uint64_t>> images;
    for (const auto& c : partition.classes) {
      if (!r.passed) break;
      auto image = conjugate_class(partition, c.members);
      bool is_class = std::any_of(partition.classes.begin(), partition.classes.end(),
                                  [&](const DfsClass& other) { return other.members == image; });
      if (!is_class) r = {r.name, false, "complement of a class is not a class"};
      images.insert(std::move(image));
    }
    if (r.passed && images.size() != partition.classes.size()) r = {r.name, false, "complement is not a bijection"};
    results.push_back(r);
  }

  {
    CheckResult r{"partition_totality", true, ""};
    std::vector<int> seen(dim, 0);
    std::uint64_t total = 0;
    for (const auto& c : partition.classes) {
      total += c.members.size();
      for (auto k : c.members) {
        ++seen[k];
        if (sigs[k] != c.signature) r = {r.name, false, "state " + std::to_string(k) + " in wrong class"};
      }
    }
    if (total != dim || std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) {
      r = {r.name, false, "classes do not partition the register basis"};
    }
    for (std::size_t a = 0; a < partition.classes.size(); ++a) {
      for (std::size_t b = a + 1; b < partition.classes.size(); ++b) {
        if (partition.classes[a].signature == partition.classes[b].signature) {
          r = {r.name, false, "two classes share a signature"};
        }
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"case_theorem", true, ""};
    for (std::uint64_t k = 0; k < dim && r.passed; ++k) {
      for (std::uint64_t k2 = k + 1; k2 < dim; ++k2) {
        BasisIndex a(k, width);
        BasisIndex b(k2, width);
        PairCase pc = pair_case(a, b);
        if (pc.tag == PairTag::TooFar) continue;
        if (check_symmetry(g, required_symmetry(pc)) != preserves_coherence(g, a, b)) {
          r = {r.name, false, "mismatch at pair " + pair_text(k, k2)};
          break;
        }
      }
    }
    results.push_back(r);
  }

  if (all_rows_equal_nonzero(g)) {
    CheckResult r{"collective_structure", is_hamming_partition(partition), ""};
    if (!r.passed) r.detail = "identical rows but partition is not by Hamming weight";
    results.push_back(r);
  }
  return results;
}

}  // namespace dephasing
