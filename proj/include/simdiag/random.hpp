#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "simdiag/matrix.hpp"
#include "simdiag/spectrum.hpp"

namespace simdiag {

/// Seeded normal sampler with a fixed pipeline: std::mt19937_64 (whose output
/// sequence the C++ standard pins down), 53-bit uniforms in (0, 1], and
/// Box–Muller at double precision. Both Box–Muller variates are used, cosine
/// branch first.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1] with 53 random bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// n x n matrix of i.i.d. standard normal entries (complex: independent real
/// and imaginary parts), optionally rescaled to Frobenius norm 1 at working precision.
Matrix random_gaussian(std::size_t n, Field field, NormalSampler& sampler, bool unit_frobenius, Precision prec);
Matrix random_gaussian(std::size_t n, Field field, std::uint64_t seed, bool unit_frobenius, Precision prec);

/// Diagonal of i.i.d. standard normal entries.
Spectrum random_spectrum(std::size_t n, Field field, NormalSampler& sampler, Precision prec);

}  // namespace simdiag
