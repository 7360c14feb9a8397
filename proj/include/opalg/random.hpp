#pragma once

#include <cstdint>
#include <random>

#include "opalg/linalg.hpp"

namespace opalg {

/// SplitMix64 finalizer; used to derive independent streams from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator. Streams are addressed by (seed, stream index) so a task's
/// randomness does not depend on which worker runs it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double normal();
  double uniform();
  Complex complex_normal();  // E|z|^2 = 1
  /// Child generator for sub-task `index`.
  Rng split(std::uint64_t index) const;

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Complex Ginibre matrix with unit-variance entries.
CMatrix gaussian_matrix(int n, Rng& rng);
CMatrix gaussian_hermitian(int n, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_unitary(int n, Rng& rng);

}  // namespace opalg
