#include "simdiag/random.hpp"

#include <cmath>
#include <numbers>

namespace simdiag {

double NormalSampler::uniform() {
  // (k + 1) / 2^53 for k in [0, 2^53): never zero, so log() below is finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Matrix random_gaussian(std::size_t n, Field field, NormalSampler& sampler, bool unit_frobenius, Precision prec) {
  Matrix out(n, prec, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_set_d(out.re(i, j).raw(), sampler.normal(), kRound);
      if (field == Field::complex) mpfr_set_d(out.im_mut(i, j).raw(), sampler.normal(), kRound);
    }
  if (unit_frobenius) {
    Real scale = norm_frobenius(out);
    for (Real& x : out.re_data()) mpfr_div(x.raw(), x.raw(), scale.raw(), kRound);
    for (Real& x : out.im_data()) mpfr_div(x.raw(), x.raw(), scale.raw(), kRound);
  }
  return out;
}

Matrix random_gaussian(std::size_t n, Field field, std::uint64_t seed, bool unit_frobenius, Precision prec) {
  NormalSampler sampler(seed);
  return random_gaussian(n, field, sampler, unit_frobenius, prec);
}

Spectrum random_spectrum(std::size_t n, Field field, NormalSampler& sampler, Precision prec) {
  std::vector<Complex> values;
  values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double re = sampler.normal();
    const double im = field == Field::complex ? sampler.normal() : 0.0;
    values.emplace_back(re, im, prec);
  }
  return Spectrum(std::move(values));
}

}  // namespace simdiag
