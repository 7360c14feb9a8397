#include "opalg/random.hpp"

#include <cmath>

namespace opalg {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(mix_seed(seed, stream)), engine_(seed_) {}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return uniform_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

Rng Rng::split(std::uint64_t index) const { return Rng(seed_, index); }

CMatrix gaussian_matrix(int n, Rng& rng) {
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = rng.complex_normal();
  }
  return m;
}

CMatrix gaussian_hermitian(int n, Rng& rng) {
  const CMatrix g = gaussian_matrix(n, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix haar_unitary(int n, Rng& rng) {
  const CMatrix g = gaussian_matrix(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

}  // namespace opalg
