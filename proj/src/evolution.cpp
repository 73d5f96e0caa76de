#include "dephasing/evolution.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <unordered_map>

namespace dephasing {

namespace {

void require_env(const InteractionMatrix& g, const EnvState& env0) {
  if (env0.width() != g.env_size()) {
    throw DimensionError("environment state width " + std::to_string(env0.width()) +
                         " != N=" + std::to_string(g.env_size()));
  }
}

void require_register(const InteractionMatrix& g, const BasisIndex& k) {
  if (k.width() != g.register_size()) {
    throw DimensionError("register index width " + std::to_string(k.width()) +
                         " != K=" + std::to_string(g.register_size()));
  }
}

void require_finite_time(double t) {
  if (!std::isfinite(t)) throw NonFiniteError("time must be finite");
}

const Rational kHalf(Rational::Integer(1), Rational::Integer(2));

}  // namespace

PairDephasing::PairDephasing(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2,
                             const EnvState& env0)
    : PairDephasing((require_register(g, k), require_register(g, k2), require_env(g, env0),
                     signature(g, k) - signature(g, k2)),
                    env0) {}

PairDephasing::PairDephasing(const Signature& delta, const EnvState& env0) {
  if (delta.values.size() != static_cast<std::size_t>(env0.width())) {
    throw DimensionError("signature length does not match environment width");
  }
  // Gaps are formed exactly and only converted to double once merged.
  std::map<Rational, double> merged;
  bool zero = delta.is_zero();
  for (const auto& term : env0.terms()) {
    double w = std::norm(term.amplitude);
    total_weight_ += w;
    if (zero) {
      merged[Rational()] += w;
    } else {
      merged[kHalf * signed_sum(delta.values, term.index)] += w;
    }
  }
  gaps_.reserve(merged.size());
  for (const auto& [gap, weight] : merged) gaps_.push_back({gap.to_double(), weight});
}

std::complex<double> PairDephasing::rate(double t) const {
  require_finite_time(t);
  std::complex<double> sum(0.0, 0.0);
  for (const auto& g : gaps_) {
    if (g.gap == 0.0) {
      sum += g.weight;
    } else {
      sum += g.weight * std::polar(1.0, -g.gap * t);
    }
  }
  return sum / total_weight_;
}

EnvState branch_state(const InteractionMatrix& g, const BasisIndex& k, const EnvState& env0, double t) {
  require_register(g, k);
  require_env(g, env0);
  require_finite_time(t);
  Signature sig = signature(g, k);
  std::vector<EnvTerm> terms;
  terms.reserve(env0.terms().size());
  for (const auto& term : env0.terms()) {
    double e = (kHalf * signed_sum(sig.values, term.index)).to_double();
    std::complex<double> phase = (e == 0.0 || t == 0.0) ? std::complex<double>(1.0, 0.0) : std::polar(1.0, -e * t);
    terms.push_back({term.index, phase * term.amplitude});
  }
  return EnvState(env0.width(), std::move(terms));
}

std::complex<double> decoherence_rate(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2,
                                      const EnvState& env0, double t) {
  PairDephasing pair(g, k, k2, env0);
  if (k == k2) {
    require_finite_time(t);
    return {1.0, 0.0};
  }
  return pair.rate(t);
}

RegisterDensity evolve_density(const InteractionMatrix& g, const RegisterDensity& rho0, const EnvState& env0,
                               double t) {
  require_env(g, env0);
  require_finite_time(t);
  if (rho0.register_size() != g.register_size()) {
    throw DimensionError("density matrix register size " + std::to_string(rho0.register_size()) +
                         " != K=" + std::to_string(g.register_size()));
  }
  const int width = g.register_size();
  const auto dim = static_cast<std::uint64_t>(rho0.dimension());

  // r depends on k only through its signature, so the rate is evaluated
  // once per pair of distinct signatures.
  std::unordered_map<Signature, std::size_t, SignatureHash> class_of;
  std::vector<Signature> class_sig;
  std::vector<std::size_t> label(dim);
  for (std::uint64_t k = 0; k < dim; ++k) {
    Signature sig = signature(g, BasisIndex(k, width));
    auto [it, inserted] = class_of.try_emplace(sig, class_sig.size());
    if (inserted) class_sig.push_back(std::move(sig));
    label[k] = it->second;
  }
  const std::size_t classes = class_sig.size();
  std::vector<std::complex<double>> rate(classes * classes, {1.0, 0.0});
  for (std::size_t a = 0; a < classes; ++a) {
    for (std::size_t b = a + 1; b < classes; ++b) {
      auto r = PairDephasing(class_sig[a] - class_sig[b], env0).rate(t);
      rate[a * classes + b] = r;
      rate[b * classes + a] = std::conj(r);
    }
  }

  const Eigen::MatrixXcd& in = rho0.matrix();
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (std::uint64_t k = 0; k < dim; ++k) {
    auto kk = static_cast<Eigen::Index>(k);
    out(kk, kk) = in(kk, kk).real();
    for (std::uint64_t k2 = k + 1; k2 < dim; ++k2) {
      auto jj = static_cast<Eigen::Index>(k2);
      std::complex<double> v = in(kk, jj) * rate[label[k] * classes + label[k2]];
      out(kk, jj) = v;
      out(jj, kk) = std::conj(v);
    }
  }
  return detail::make_density_unchecked(width, std::move(out));
}

RateSeries rate_series(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2, const EnvState& env0,
                       std::span<const double> t_grid) {
  PairDephasing pair(g, k, k2, env0);
  RateSeries series{k, k2, {}};
  series.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    require_finite_time(t);
    series.samples.push_back({t, k == k2 ? std::complex<double>(1.0, 0.0) : pair.rate(t)});
  }
  return series;
}

std::vector<double> time_grid(double t_max, int steps) {
  if (!std::isfinite(t_max) || !(t_max > 0.0)) throw StateError("t_max must be positive and finite");
  if (steps < 1) throw StateError("t_steps must be at least 1");
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) grid[static_cast<std::size_t>(j)] = j * t_max / steps;
  return grid;
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

void write_rate_csv(std::ostream& out, const RateSeries& series) {
  out << "t,re_r,im_r,abs_r\n";
  for (const auto& s : series.samples) {
    out << format_double(s.t) << ',' << format_double(s.r.real()) << ',' << format_double(s.r.imag()) << ','
        << format_double(std::abs(s.r)) << '\n';
  }
}

}  // namespace dephasing
