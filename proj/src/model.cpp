#include "dephasing/model.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dephasing {

using nlohmann::json;

// ---------------------------------------------------------------- BasisIndex

BasisIndex::BasisIndex(std::uint64_t value, int width) : value_(value), width_(width) {
  if (width < 1 || width > kMaxIndexWidth) {
    throw LimitError("basis index width " + std::to_string(width) + " outside 1.." +
                     std::to_string(kMaxIndexWidth));
  }
  if (value >> width != 0) {
    throw IndexError("basis index " + std::to_string(value) + " does not fit in " +
                     std::to_string(width) + " bits");
  }
}

BasisIndex BasisIndex::from_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxIndexWidth)) {
    throw ParseError("bit string must hold 1.." + std::to_string(kMaxIndexWidth) + " digits");
  }
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("invalid bit string '" + std::string(bits) + "'");
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BasisIndex(value, static_cast<int>(bits.size()));
}

int BasisIndex::bit(int i) const {
  if (i < 1 || i > width_) {
    throw IndexError("bit position " + std::to_string(i) + " outside 1.." + std::to_string(width_));
  }
  return static_cast<int>((value_ >> (width_ - i)) & 1U);
}

BasisIndex BasisIndex::complement() const {
  std::uint64_t mask = (std::uint64_t{1} << width_) - 1;
  return BasisIndex(~value_ & mask, width_);
}

int BasisIndex::zeros() const { return width_ - std::popcount(value_); }

std::string BasisIndex::bits() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 1; i <= width_; ++i) out[static_cast<std::size_t>(i - 1)] = bit(i) ? '1' : '0';
  return out;
}

// --------------------------------------------------------- InteractionMatrix

InteractionMatrix::InteractionMatrix(int register_size, int env_size, std::vector<Rational> entries)
    : register_size_(register_size), env_size_(env_size), entries_(std::move(entries)) {
  if (register_size < 1 || register_size > kMaxRegisterSpins) {
    throw LimitError("register size K=" + std::to_string(register_size) + " outside 1.." +
                     std::to_string(kMaxRegisterSpins));
  }
  if (env_size < 1) throw LimitError("environment size N must be positive");
  if (entries_.size() != static_cast<std::size_t>(register_size) * static_cast<std::size_t>(env_size)) {
    throw DimensionError("expected " + std::to_string(register_size) + "x" + std::to_string(env_size) +
                         " couplings, got " + std::to_string(entries_.size()));
  }
}

InteractionMatrix InteractionMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DimensionError("interaction matrix needs at least one entry");
  std::vector<Rational> flat;
  std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("ragged interaction matrix rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return InteractionMatrix(static_cast<int>(rows.size()), static_cast<int>(cols), std::move(flat));
}

InteractionMatrix InteractionMatrix::operator+(const InteractionMatrix& rhs) const {
  if (register_size_ != rhs.register_size_ || env_size_ != rhs.env_size_) {
    throw DimensionError("adding interaction matrices of different shapes");
  }
  std::vector<Rational> sum(entries_.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = entries_[i] + rhs.entries_[i];
  return InteractionMatrix(register_size_, env_size_, std::move(sum));
}

namespace {

bool looks_non_finite(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
  return text.find("nan") != std::string::npos || text.find("inf") != std::string::npos;
}

Rational parse_rational_literal(const std::string& text) {
  if (looks_non_finite(text)) throw NonFiniteError("non-finite coupling '" + text + "'");
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Rational parse_rational(const json& node) {
  if (node.is_array()) {
    if (node.size() != 2 || !node[0].is_string() || !node[1].is_string()) {
      throw ParseError("rational pair must be [\"num\", \"den\"]");
    }
    auto num = parse_rational_literal(node[0].get<std::string>());
    auto den = parse_rational_literal(node[1].get<std::string>());
    if (num.den() != 1 || den.den() != 1) throw ParseError("rational pair components must be integers");
    if (den.is_zero()) throw ParseError("rational pair with zero denominator");
    return num / den;
  }
  if (node.is_string()) return parse_rational_literal(node.get<std::string>());
  if (node.is_number_integer()) return Rational::parse(node.dump());
  if (node.is_number_float()) {
    if (!std::isfinite(node.get<double>())) throw NonFiniteError("non-finite coupling");
    throw ParseError("floating-point couplings must be given as decimal strings");
  }
  throw ParseError("coupling must be a [num, den] pair or a decimal string");
}

int parse_positive_int(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const auto& node = doc.at(key);
  if (!node.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  auto value = node.get<std::int64_t>();
  if (value < 1 || value > 1'000'000) {
    throw LimitError(std::string("field '") + key + "' out of range: " + std::to_string(value));
  }
  return static_cast<int>(value);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

InteractionMatrix parse_interaction_matrix(std::string_view json_text) {
  json doc = parse_document(json_text);
  if (!doc.is_object()) throw ParseError("interaction matrix document must be a JSON object");
  int k = parse_positive_int(doc, "K");
  int n = parse_positive_int(doc, "N");
  if (k > kMaxRegisterSpins) {
    throw LimitError("register size K=" + std::to_string(k) + " exceeds " + std::to_string(kMaxRegisterSpins));
  }
  if (!doc.contains("g") || !doc["g"].is_array()) throw ParseError("missing array field 'g'");
  const auto& rows = doc["g"];
  if (rows.size() != static_cast<std::size_t>(k)) {
    throw DimensionError("row count " + std::to_string(rows.size()) + " != K=" + std::to_string(k));
  }
  std::vector<Rational> entries;
  entries.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError("row " + std::to_string(i + 1) + " is not an array");
    if (rows[i].size() != static_cast<std::size_t>(n)) {
      throw DimensionError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                           " entries, expected N=" + std::to_string(n));
    }
    for (const auto& cell : rows[i]) entries.push_back(parse_rational(cell));
  }
  return InteractionMatrix(k, n, std::move(entries));
}

std::string serialize_interaction_matrix(const InteractionMatrix& g) {
  json rows = json::array();
  for (int i = 0; i < g.register_size(); ++i) {
    json row = json::array();
    for (const auto& c : g.row(i)) row.push_back(json::array({c.num().str(), c.den().str()}));
    rows.push_back(std::move(row));
  }
  json doc;
  doc["K"] = g.register_size();
  doc["N"] = g.env_size();
  doc["g"] = std::move(rows);
  return doc.dump();
}

// ------------------------------------------------------------------ EnvState

EnvState::EnvState(int width, std::vector<EnvTerm> terms) : width_(width) {
  if (width < 1 || width > kMaxIndexWidth) {
    throw LimitError("environment width " + std::to_string(width) + " outside 1.." +
                     std::to_string(kMaxIndexWidth));
  }
  for (const auto& t : terms) {
    if (t.index.width() != width) throw DimensionError("environment term width does not match N");
    if (!std::isfinite(t.amplitude.real()) || !std::isfinite(t.amplitude.imag())) {
      throw NonFiniteError("non-finite environment amplitude");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const EnvTerm& a, const EnvTerm& b) { return a.index.value() < b.index.value(); });
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].index == terms[i - 1].index) {
      throw IndexError("repeated environment index " + std::to_string(terms[i].index.value()));
    }
  }
  std::erase_if(terms, [](const EnvTerm& t) { return t.amplitude == std::complex<double>(0.0, 0.0); });
  terms_ = std::move(terms);
  if (double n = norm(); std::abs(n - 1.0) > kNormTolerance) {
    throw StateError("environment state norm " + std::to_string(n) + " differs from 1");
  }
}

EnvState EnvState::normalized(int width, std::vector<EnvTerm> terms) {
  double total = 0.0;
  for (const auto& t : terms) total += std::norm(t.amplitude);
  if (!(total > 0.0) || !std::isfinite(total)) throw StateError("cannot normalize a zero or non-finite state");
  double scale = 1.0 / std::sqrt(total);
  for (auto& t : terms) t.amplitude *= scale;
  return EnvState(width, std::move(terms));
}

EnvState EnvState::uniform(int width) {
  if (width < 1 || width > kMaxEnumeratedEnvSpins) {
    throw LimitError("uniform environment needs 1 <= N <= " + std::to_string(kMaxEnumeratedEnvSpins));
  }
  std::uint64_t count = std::uint64_t{1} << width;
  double amp = 1.0 / std::sqrt(static_cast<double>(count));
  std::vector<EnvTerm> terms;
  terms.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) terms.push_back({BasisIndex(n, width), {amp, 0.0}});
  return EnvState(width, std::move(terms));
}

EnvState EnvState::basis(const BasisIndex& n) { return EnvState(n.width(), {{n, {1.0, 0.0}}}); }

double EnvState::norm() const {
  // Squared norm, which is what the unit-norm contract constrains.
  double total = 0.0;
  for (const auto& t : terms_) total += std::norm(t.amplitude);
  return total;
}

EnvState parse_env_state(std::string_view json_text) {
  json doc = parse_document(json_text);
  if (!doc.is_object()) throw ParseError("environment document must be a JSON object");
  int width = parse_positive_int(doc, "N");
  if (width > kMaxIndexWidth) throw LimitError("environment width exceeds " + std::to_string(kMaxIndexWidth));
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ParseError("missing array field 'terms'");
  std::vector<EnvTerm> terms;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("n") || !t["n"].is_number_integer()) {
      throw ParseError("environment term needs an integer 'n'");
    }
    auto n = t["n"].get<std::int64_t>();
    if (n < 0) throw IndexError("negative environment index");
    double re = t.value("re", 0.0);
    double im = t.value("im", 0.0);
    terms.push_back({BasisIndex(static_cast<std::uint64_t>(n), width), {re, im}});
  }
  return EnvState(width, std::move(terms));
}

std::string serialize_env_state(const EnvState& env) {
  json terms = json::array();
  for (const auto& t : env.terms()) {
    terms.push_back({{"n", t.index.value()}, {"re", t.amplitude.real()}, {"im", t.amplitude.imag()}});
  }
  json doc;
  doc["N"] = env.width();
  doc["terms"] = std::move(terms);
  return doc.dump();
}

// ----------------------------------------------------------- RegisterDensity

namespace {

void check_density_shape(int register_size, const Eigen::MatrixXcd& rho) {
  if (register_size < 1 || register_size > kMaxDensitySpins) {
    throw LimitError("density matrices are limited to 1 <= K <= " + std::to_string(kMaxDensitySpins));
  }
  Eigen::Index dim = Eigen::Index{1} << register_size;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!rho.allFinite()) throw NonFiniteError("non-finite density matrix entry");
}

}  // namespace

RegisterDensity::RegisterDensity(int register_size, Eigen::MatrixXcd rho)
    : register_size_(register_size), rho_(std::move(rho)) {
  check_density_shape(register_size_, rho_);
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
    throw StateError("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > kNormTolerance) {
    throw StateError("density matrix trace differs from 1");
  }
  if (min_eigenvalue() < kPositivityTolerance) throw StateError("density matrix is not positive semidefinite");
}

RegisterDensity::RegisterDensity(int register_size, Eigen::MatrixXcd rho, Unchecked)
    : register_size_(register_size), rho_(std::move(rho)) {
  check_density_shape(register_size_, rho_);
}

RegisterDensity RegisterDensity::pure(int register_size, std::span<const std::complex<double>> amplitudes) {
  if (register_size < 1 || register_size > kMaxDensitySpins) {
    throw LimitError("density matrices are limited to 1 <= K <= " + std::to_string(kMaxDensitySpins));
  }
  Eigen::Index dim = Eigen::Index{1} << register_size;
  if (static_cast<Eigen::Index>(amplitudes.size()) != dim) {
    throw DimensionError("expected " + std::to_string(dim) + " register amplitudes");
  }
  Eigen::VectorXcd a(dim);
  for (Eigen::Index k = 0; k < dim; ++k) a(k) = amplitudes[static_cast<std::size_t>(k)];
  double n = a.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw StateError("cannot normalize a zero or non-finite register state");
  a /= n;
  Eigen::MatrixXcd rho = a * a.adjoint();
  // Exact Hermiticity; the outer product can differ from its adjoint in the last ulp.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return RegisterDensity(register_size, std::move(rho));
}

double RegisterDensity::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace detail {

RegisterDensity make_density_unchecked(int register_size, Eigen::MatrixXcd rho) {
  return RegisterDensity(register_size, std::move(rho), RegisterDensity::Unchecked{});
}

}  // namespace detail

}  // namespace dephasing
