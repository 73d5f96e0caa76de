#include "dephasing/spectrum.hpp"

#include <boost/functional/hash.hpp>

namespace dephasing {

namespace {

void require_register_width(const InteractionMatrix& g, const BasisIndex& k) {
  if (k.width() != g.register_size()) {
    throw DimensionError("register index width " + std::to_string(k.width()) +
                         " != K=" + std::to_string(g.register_size()));
  }
}

void require_env_width(const InteractionMatrix& g, const BasisIndex& n) {
  if (n.width() != g.env_size()) {
    throw DimensionError("environment index width " + std::to_string(n.width()) +
                         " != N=" + std::to_string(g.env_size()));
  }
}

}  // namespace

Signature Signature::operator-() const {
  Signature out{values};
  for (auto& v : out.values) v = -v;
  return out;
}

Signature operator-(const Signature& a, const Signature& b) {
  if (a.values.size() != b.values.size()) throw DimensionError("signature length mismatch");
  Signature out{a.values};
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] -= b.values[j];
  return out;
}

bool Signature::is_zero() const {
  for (const auto& v : values) {
    if (!v.is_zero()) return false;
  }
  return true;
}

std::size_t SignatureHash::operator()(const Signature& s) const noexcept {
  std::size_t seed = s.values.size();
  for (const auto& v : s.values) boost::hash_combine(seed, v.hash());
  return seed;
}

Rational energy(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& n) {
  require_register_width(g, k);
  require_env_width(g, n);
  Rational total;
  for (int i = 1; i <= g.register_size(); ++i) {
    Rational row_sum;
    for (int j = 1; j <= g.env_size(); ++j) {
      const Rational& c = g.coupling(i - 1, j - 1);
      if (n.sign(j) > 0) {
        row_sum += c;
      } else {
        row_sum -= c;
      }
    }
    if (k.sign(i) > 0) {
      total += row_sum;
    } else {
      total -= row_sum;
    }
  }
  return total * Rational(Rational::Integer(1), Rational::Integer(2));
}

Rational h_vector(const InteractionMatrix& g, int i, const BasisIndex& n) {
  if (i < 1 || i > g.register_size()) {
    throw IndexError("row " + std::to_string(i) + " outside 1.." + std::to_string(g.register_size()));
  }
  require_env_width(g, n);
  return signed_sum(g.row(i - 1), n);
}

Signature signature(const InteractionMatrix& g, const BasisIndex& k) {
  require_register_width(g, k);
  Signature sig{std::vector<Rational>(static_cast<std::size_t>(g.env_size()))};
  for (int i = 1; i <= g.register_size(); ++i) {
    auto row = g.row(i - 1);
    bool plus = k.sign(i) > 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (plus) {
        sig.values[j] += row[j];
      } else {
        sig.values[j] -= row[j];
      }
    }
  }
  return sig;
}

Rational signed_sum(std::span<const Rational> values, const BasisIndex& n) {
  if (static_cast<std::size_t>(n.width()) != values.size()) {
    throw DimensionError("environment index width does not match vector length");
  }
  Rational total;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (n.sign(static_cast<int>(j) + 1) > 0) {
      total += values[j];
    } else {
      total -= values[j];
    }
  }
  return total;
}

Rational s_entry(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& n) {
  require_env_width(g, n);
  return signed_sum(signature(g, k).values, n);
}

bool forall_env_zero(std::span<const Rational> x) {
  if (x.empty()) return true;
  if (x.size() > static_cast<std::size_t>(kMaxEnumeratedEnvSpins)) {
    throw LimitError("forall_env_zero enumerates 2^N patterns; N=" + std::to_string(x.size()) +
                     " exceeds " + std::to_string(kMaxEnumeratedEnvSpins));
  }
  int width = static_cast<int>(x.size());
  std::uint64_t count = std::uint64_t{1} << width;
  for (std::uint64_t n = 0; n < count; ++n) {
    if (!signed_sum(x, BasisIndex(n, width)).is_zero()) return false;
  }
  return true;
}

}  // namespace dephasing
