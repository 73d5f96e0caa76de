#include <doctest.h>

#include "dephasing/spectrum.hpp"
#include "support.hpp"

using namespace dephasing;
using testing::Rng;

namespace {

InteractionMatrix rows(std::vector<std::vector<std::int64_t>> ints) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : ints) out.emplace_back(r.begin(), r.end());
  return InteractionMatrix::from_rows(out);
}

Signature sig(std::vector<std::int64_t> v) { return Signature{{v.begin(), v.end()}}; }

}  // namespace

TEST_CASE("energy of a single coupling") {
  auto g = rows({{2}});
  CHECK(energy(g, BasisIndex(0, 1), BasisIndex(0, 1)) == Rational(1));
  CHECK(energy(g, BasisIndex(1, 1), BasisIndex(0, 1)) == Rational(-1));
  CHECK(energy(g, BasisIndex(0, 1), BasisIndex(1, 1)) == Rational(-1));
  CHECK(energy(g, BasisIndex(1, 1), BasisIndex(1, 1)) == Rational(1));
}

TEST_CASE("energy cancels for opposite register digits") {
  CHECK(energy(rows({{1}, {1}}), BasisIndex(1, 2), BasisIndex(0, 1)).is_zero());
}

TEST_CASE("energy matches the double-loop oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = testing::random_matrix(rng, 3, 3);
    for (std::uint64_t k = 0; k < 8; ++k) {
      for (std::uint64_t n = 0; n < 8; ++n) {
        CHECK(energy(g, BasisIndex(k, 3), BasisIndex(n, 3)) == testing::naive_energy(g, k, n));
      }
    }
  }
}

TEST_CASE("energy width errors") {
  auto g = rows({{1, 2}});
  CHECK_THROWS_AS(energy(g, BasisIndex(0, 2), BasisIndex(0, 2)), DimensionError);
  CHECK_THROWS_AS(energy(g, BasisIndex(0, 1), BasisIndex(0, 1)), DimensionError);
}

TEST_CASE("h_vector") {
  auto g = rows({{1, 2}});
  CHECK(h_vector(g, 1, BasisIndex(0, 2)) == Rational(3));
  CHECK(h_vector(g, 1, BasisIndex(2, 2)) == Rational(1));
  CHECK_THROWS_AS(h_vector(g, 2, BasisIndex(0, 2)), IndexError);
  CHECK_THROWS_AS(h_vector(g, 0, BasisIndex(0, 2)), IndexError);

  // E_kn = 1/2 sum_i (-1)^{k_i} h_i^{(n)}
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int k_size = std::uniform_int_distribution<int>(1, 5)(rng);
    int n_size = std::uniform_int_distribution<int>(1, 5)(rng);
    auto m = testing::random_matrix(rng, k_size, n_size);
    BasisIndex k(rng() >> (64 - k_size), k_size);
    BasisIndex n(rng() >> (64 - n_size), n_size);
    Rational total;
    for (int i = 1; i <= k_size; ++i) total += Rational(sign(k, i)) * h_vector(m, i, n);
    CHECK(total / Rational(2) == energy(m, k, n));
  }
}

TEST_CASE("signature examples") {
  auto g = rows({{1, 2}, {1, 2}});
  CHECK(signature(g, BasisIndex(0, 2)) == sig({2, 4}));
  CHECK(signature(g, BasisIndex(1, 2)) == sig({0, 0}));
  CHECK(signature(g, BasisIndex(2, 2)) == sig({0, 0}));
  CHECK(signature(g, BasisIndex(3, 2)) == sig({-2, -4}));

  Rng rng(29);
  auto m = testing::random_matrix(rng, 4, 3);
  Signature expected{std::vector<Rational>(3)};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) expected.values[static_cast<std::size_t>(j)] += m.coupling(i, j);
  }
  CHECK(signature(m, BasisIndex(0, 4)) == expected);
  CHECK(signature(m, BasisIndex(15, 4)) == -expected);
}

TEST_CASE("equal signatures iff equal energies for every environment configuration") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int k_size = std::uniform_int_distribution<int>(1, 5)(rng);
    int n_size = std::uniform_int_distribution<int>(1, 5)(rng);
    // Small integer couplings so that coincidences actually occur.
    std::vector<std::vector<Rational>> r;
    for (int i = 0; i < k_size; ++i) {
      std::vector<Rational> row;
      for (int j = 0; j < n_size; ++j) row.emplace_back(std::uniform_int_distribution<int>(-1, 1)(rng));
      r.push_back(row);
    }
    auto g = InteractionMatrix::from_rows(r);
    const std::uint64_t dim = std::uint64_t{1} << k_size;
    for (std::uint64_t k = 0; k < dim; ++k) {
      for (std::uint64_t k2 = k; k2 < dim; ++k2) {
        bool same = signature(g, BasisIndex(k, k_size)) == signature(g, BasisIndex(k2, k_size));
        CHECK(same == testing::energies_agree_everywhere(g, k, k2));
      }
    }
  }
}

TEST_CASE("s_entry") {
  CHECK(s_entry(rows({{2}}), BasisIndex(0, 1), BasisIndex(0, 1)) == Rational(2));

  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    int k_size = std::uniform_int_distribution<int>(1, 6)(rng);
    int n_size = std::uniform_int_distribution<int>(1, 6)(rng);
    auto g = testing::random_matrix(rng, k_size, n_size);
    BasisIndex k(rng() >> (64 - k_size), k_size);
    BasisIndex n(rng() >> (64 - n_size), n_size);
    CHECK(s_entry(g, k, n) == Rational(2) * energy(g, k, n));
    CHECK(s_entry(g, k.complement(), n) == -s_entry(g, k, n));
  }
}

TEST_CASE("forall_env_zero") {
  CHECK(forall_env_zero(std::vector<Rational>(3)));
  CHECK_FALSE(forall_env_zero(std::vector<Rational>{Rational(1), Rational(-1)}));
  CHECK_THROWS_AS(forall_env_zero(std::vector<Rational>(21)), LimitError);

  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<Rational> x(static_cast<std::size_t>(n));
    // Mostly-zero vectors so that both outcomes are exercised.
    for (auto& v : x) {
      if (std::bernoulli_distribution(0.15)(rng)) v = testing::random_rational(rng);
    }
    bool all_zero = std::all_of(x.begin(), x.end(), [](const Rational& v) { return v.is_zero(); });
    CHECK(forall_env_zero(x) == all_zero);
  }
}

TEST_CASE("energy is linear in the couplings") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = testing::random_matrix(rng, 3, 4);
    auto b = testing::random_matrix(rng, 3, 4);
    auto sum = a + b;
    for (std::uint64_t k = 0; k < 8; ++k) {
      BasisIndex kk(k, 3);
      BasisIndex n(rng() >> 60, 4);
      CHECK(energy(sum, kk, n) == energy(a, kk, n) + energy(b, kk, n));
      CHECK(energy(a, kk.complement(), n) == -energy(a, kk, n));
    }
  }
}

TEST_CASE("signature difference is c^T G") {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = testing::random_matrix(rng, 4, 3);
    BasisIndex k(rng() >> 60, 4);
    BasisIndex k2(rng() >> 60, 4);
    std::vector<Rational> expected(3);
    for (int i = 1; i <= 4; ++i) {
      int c = sign(k, i) - sign(k2, i);
      for (int j = 0; j < 3; ++j) expected[static_cast<std::size_t>(j)] += Rational(c) * g.coupling(i - 1, j);
    }
    CHECK((signature(g, k) - signature(g, k2)).values == expected);
  }
}
