#pragma once

#include <complex>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dephasing/model.hpp"
#include "dephasing/spectrum.hpp"

namespace dephasing {

struct RateSample {
  double t;
  std::complex<double> r;
};

/// r_kk'(t) sampled on a time grid.
struct RateSeries {
  BasisIndex k;
  BasisIndex k2;
  std::vector<RateSample> samples;
};

/// Decoherence rate of one register pair against a fixed environment state,
/// with the energy gaps E_kn - E_k'n resolved exactly once and cached as
/// doubles. Evaluating at a new time only costs the phase sum.
class PairDephasing {
 public:
  PairDephasing(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2, const EnvState& env0);
  /// `delta` is signature(k) - signature(k2).
  PairDephasing(const Signature& delta, const EnvState& env0);

  /// sum_n |b_n|^2 exp(-i (E_kn - E_k'n) t). Terms with equal gaps are
  /// merged, and the weights are renormalized to sum to one so that a pair
  /// with no gaps returns exactly 1.
  std::complex<double> rate(double t) const;

  /// True when every gap vanishes, i.e. r(t) = 1 for all t.
  bool gap_free() const { return gaps_.empty() || (gaps_.size() == 1 && gaps_.front().gap == 0.0); }

 private:
  struct Gap {
    double gap;
    double weight;
  };
  std::vector<Gap> gaps_;
  double total_weight_ = 0.0;
};

/// |eps_k(t)> = sum_n exp(-i E_kn t) b_n |n>.
EnvState branch_state(const InteractionMatrix& g, const BasisIndex& k, const EnvState& env0, double t);

/// r_kk'(t) = sum_n exp(-i (E_kn - E_k'n) t) |b_n|^2.
std::complex<double> decoherence_rate(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2,
                                      const EnvState& env0, double t);

/// rho_kk'(t) = rho_kk'(0) r_kk'(t). Register size capped at 12.
RegisterDensity evolve_density(const InteractionMatrix& g, const RegisterDensity& rho0, const EnvState& env0,
                               double t);

RateSeries rate_series(const InteractionMatrix& g, const BasisIndex& k, const BasisIndex& k2, const EnvState& env0,
                       std::span<const double> t_grid);

/// t_j = j * t_max / steps for j = 0..steps.
std::vector<double> time_grid(double t_max, int steps);

/// Shortest decimal text that round-trips to `value` (at most 17 digits).
std::string format_double(double value);

/// Header `t,re_r,im_r,abs_r`, one row per sample.
void write_rate_csv(std::ostream& out, const RateSeries& series);

}  // namespace dephasing
