#include "opalg/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opalg/errors.hpp"
#include "opalg/parallel.hpp"
#include "opalg/random.hpp"

namespace opalg {
namespace {

constexpr std::uint64_t kDistStream = 0xd157;
constexpr std::uint64_t kAscentStream = 0xa5c0;
constexpr std::uint64_t kContractionStream = 0xc047;
constexpr std::uint64_t kOracleStream = 0x0a4c;
constexpr std::uint64_t kKnStream = 0x4b4e;
constexpr std::uint64_t kChainStream = 0xc4a1;

struct TopPair {
  double sigma = 0.0;
  CVector u;
  CVector v;
};

TopPair top_singular_pair(const CMatrix& r) {
  // Top eigenpair of R*R is cheaper than a full SVD at these sizes.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r.adjoint() * r);
  const Eigen::Index last = r.cols() - 1;
  TopPair out;
  out.sigma = std::sqrt(std::max(0.0, es.eigenvalues()(last)));
  out.v = es.eigenvectors().col(last);
  if (out.sigma > 0.0) {
    out.u = r * out.v / out.sigma;
  } else {
    out.u = CVector::Zero(r.rows());
    out.u(0) = 1.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distance to a subspace in operator norm.

class SmoothedDistance {
 public:
  SmoothedDistance(const CMatrix& t, const OperatorSubspace& v) : t_(t), v_(v), n_(static_cast<int>(t.rows())) {}

  int dim() const { return 2 * v_.dim(); }

  CMatrix residual(const Eigen::VectorXd& x) const { return t_ - v_.combine(to_complex(x)); }

  CVector to_complex(const Eigen::VectorXd& x) const {
    const int d = v_.dim();
    CVector c(d);
    for (int k = 0; k < d; ++k) c(k) = Complex(x(k), x(d + k));
    return c;
  }

  Eigen::VectorXd to_real(const CVector& c) const {
    const int d = v_.dim();
    Eigen::VectorXd x(2 * d);
    for (int k = 0; k < d; ++k) {
      x(k) = c(k).real();
      x(d + k) = c(k).imag();
    }
    return x;
  }

  // mu * log sum exp(lambda_i / mu) over eigenvalues of R*R; fills the gradient
  // and the softmax-weighted spectral projector G.
  double eval(const Eigen::VectorXd& x, double mu, Eigen::VectorXd* grad, CMatrix* g_out = nullptr) const {
    const CMatrix r = residual(x);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.adjoint() * r);
    const auto& lam = es.eigenvalues();
    const double lmax = lam(n_ - 1);
    Eigen::VectorXd w(n_);
    for (int i = 0; i < n_; ++i) w(i) = std::exp((lam(i) - lmax) / mu);
    const double z = w.sum();
    w /= z;
    const double f = lmax + mu * std::log(z);
    if (grad != nullptr || g_out != nullptr) {
      const CMatrix g = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
      if (grad != nullptr) {
        // d f = -2 Re tr(V_k G R*) dx_k + 2 Im tr(V_k G R*) dy_k
        const CMatrix m = g * r.adjoint();
        const CVector z_k = v_.columns().transpose() * CMatrix(m.transpose()).reshaped();
        const int d = v_.dim();
        grad->resize(2 * d);
        for (int k = 0; k < d; ++k) {
          (*grad)(k) = -2.0 * z_k(k).real();
          (*grad)(d + k) = 2.0 * z_k(k).imag();
        }
      }
      if (g_out != nullptr) *g_out = g;
    }
    return f;
  }

  // Dual certificate: Y = (R G) projected orthogonally to V.
  double dual_bound(const CMatrix& r, const CMatrix& g) const {
    CMatrix y = r * g;
    y -= v_.project(y);
    const double tn = trace_norm(y);
    if (tn <= 0.0) return 0.0;
    return std::abs(hs_inner(t_, y)) / tn;
  }

 private:
  const CMatrix& t_;
  const OperatorSubspace& v_;
  int n_;
};

struct BfgsResult {
  Eigen::VectorXd x;
  int iterations = 0;
};

BfgsResult bfgs_minimize(const SmoothedDistance& obj, Eigen::VectorXd x, double mu, int max_iters) {
  const int dim = obj.dim();
  Eigen::VectorXd g;
  double f = obj.eval(x, mu, &g);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
  bool scaled = false;
  int it = 0;
  int stall = 0;
  for (; it < max_iters; ++it) {
    Eigen::VectorXd p = -h * g;
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      h.setIdentity();
      p = -g;
      slope = g.dot(p);
      if (!(slope < 0.0)) break;
    }
    double step = 1.0;
    Eigen::VectorXd x_new;
    Eigen::VectorXd g_new;
    double f_new = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = x + step * p;
      f_new = obj.eval(x_new, mu, &g_new);
      if (f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-300 && sy > 1e-14 * s.norm() * y.norm()) {
      if (!scaled) {
        h *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(dim, dim);
      h = (ident - rho * s * y.transpose()) * h * (ident - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    const double decrease = f - f_new;
    x = std::move(x_new);
    g = std::move(g_new);
    f = f_new;
    if (decrease <= 1e-15 * std::max(1.0, std::abs(f))) {
      if (++stall >= 3) break;
    } else {
      stall = 0;
    }
  }
  return BfgsResult{std::move(x), it};
}

// ---------------------------------------------------------------------------
// Ascent of ||WT - TW|| over block unitaries of a *-algebra.

class BlockAscent {
 public:
  BlockAscent(const BlockStructure& bs, const CMatrix& t)
      : bs_(bs), tp_(bs.unitary.adjoint() * t * bs.unitary), scale_(std::max(1.0, t.norm())) {}

  double value(const std::vector<CMatrix>& parts, TopPair* pair = nullptr) const {
    const CMatrix w = assemble_block_diagonal(bs_, parts);
    const CMatrix r = w * tp_ - tp_ * w;
    TopPair tp = top_singular_pair(r);
    const double s = tp.sigma;
    if (pair != nullptr) *pair = std::move(tp);
    return s;
  }

  // Singular triples of WT - TW from the eigen-decomposition of R*R.
  struct Spectrum {
    CMatrix r;
    Eigen::VectorXd sig;  // descending
    CMatrix v;            // matching right singular vectors

    double sigma(Eigen::Index i) const { return sig(i); }

    double smoothed(double mu) const {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < sig.size(); ++i) acc += std::exp((sig(i) - sig(0)) / mu);
      return sig(0) + mu * std::log(acc);
    }

    // (d f_mu / d R)^* = sum_i p_i v_i u_i^*, p = softmax(sigma / mu).
    CMatrix gradient_adjoint(double mu) const {
      CMatrix out = CMatrix::Zero(r.cols(), r.rows());
      double total = 0.0;
      for (Eigen::Index i = 0; i < sig.size(); ++i) total += std::exp((sig(i) - sig(0)) / mu);
      for (Eigen::Index i = 0; i < sig.size(); ++i) {
        const double p = std::exp((sig(i) - sig(0)) / mu) / total;
        if (p < 1e-16 || sig(i) <= 0.0) continue;
        const CVector u = r * v.col(i) / sig(i);
        out += p * v.col(i) * u.adjoint();
      }
      if (sig(0) <= 0.0) {
        // R = 0: any rank-one direction will do.
        out(0, 0) = 1.0;
      }
      return out;
    }
  };

  Spectrum spectrum(const std::vector<CMatrix>& parts) const {
    Spectrum sp;
    const CMatrix w = assemble_block_diagonal(bs_, parts);
    sp.r = w * tp_ - tp_ * w;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sp.r.adjoint() * sp.r);
    const Eigen::Index n = sp.r.cols();
    sp.sig.resize(n);
    sp.v.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      sp.sig(i) = std::sqrt(std::max(0.0, es.eigenvalues()(n - 1 - i)));
      sp.v.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return sp;
  }

  struct Outcome {
    std::vector<CMatrix> parts;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
  };

  // Maximizes the smoothed norm f_mu(R) = mu log sum_i exp(sigma_i(R) / mu),
  // R = WT - TW. f_mu is convex in W, so replacing W by the blockwise polar
  // maximizer of its linearization never decreases it. Using every singular
  // pair (not just the top one) matters at the optimum, where the top singular
  // value is typically multiple and the rank-one step crawls. mu shrinks once
  // the gain per step drops below 1e-3 mu; the true norm of the best iterate
  // is what gets reported.
  Outcome run(std::vector<CMatrix> parts, const NumericConfig& cfg) const {
    Spectrum sp = spectrum(parts);
    double best = sp.sigma(0);
    std::vector<CMatrix> best_parts = parts;
    double mu = 0.05 * std::max(best, 1e-300);
    const double floor = 1e-12 * scale_;
    int it = 0;
    bool converged = false;
    for (; it < cfg.opt_max_iters; ++it) {
      const CMatrix g_adj = sp.gradient_adjoint(mu);
      const CMatrix k = tp_ * g_adj - g_adj * tp_;
      const auto l = block_partial_traces(bs_, k, false);
      for (std::size_t b = 0; b < parts.size(); ++b) parts[b] = polar_unitary(l[b]).adjoint();
      Spectrum next = spectrum(parts);
      const double gain = next.smoothed(mu) - sp.smoothed(mu);
      sp = std::move(next);
      if (sp.sigma(0) > best) {
        best = sp.sigma(0);
        best_parts = parts;
      }
      if (gain < 1e-3 * mu) {
        mu *= 0.2;
        if (mu < floor) {
          converged = true;
          break;
        }
      }
    }
    return Outcome{std::move(best_parts), best, it, converged};
  }

  CMatrix to_original(const std::vector<CMatrix>& parts) const {
    return bs_.unitary * assemble_block_diagonal(bs_, parts) * bs_.unitary.adjoint();
  }

 private:
  const BlockStructure& bs_;
  CMatrix tp_;
  double scale_;
};

// Ascent of ||WT - TW|| / ||W|| over a (possibly non-selfadjoint) subspace.
struct ContractionOutcome {
  double value = 0.0;
  CMatrix witness;
  int iterations = 0;
};

double ratio_value(const CMatrix& t, const CMatrix& w, TopPair* num, TopPair* den) {
  TopPair a = top_singular_pair(w * t - t * w);
  TopPair b = top_singular_pair(w);
  const double r = b.sigma > 0.0 ? a.sigma / b.sigma : 0.0;
  if (num != nullptr) *num = std::move(a);
  if (den != nullptr) *den = std::move(b);
  return r;
}

ContractionOutcome contraction_ascent(const CMatrix& t, const OperatorSubspace& c,
                                      const std::vector<CVector>& starts, const NumericConfig& cfg) {
  ContractionOutcome best;
  best.value = -1.0;
  const double scale = std::max(1.0, t.norm());
  for (const auto& start : starts) {
    CVector coeff = start / start.norm();
    TopPair num;
    TopPair den;
    double f = ratio_value(t, c.combine(coeff), &num, &den);
    int it = 0;
    for (; it < cfg.opt_max_iters; ++it) {
      if (num.sigma <= 0.0 || den.sigma <= 0.0) break;
      const CMatrix vu = num.v * num.u.adjoint();
      const CMatrix kt = (t * vu - vu * t) / num.sigma - den.v * den.u.adjoint() / den.sigma;
      const CVector tr = c.columns().transpose() * CMatrix(kt.transpose()).reshaped();
      const CVector grad = tr.conjugate();
      const double gnorm = grad.norm();
      if (gnorm <= 1e-14) break;
      bool moved = false;
      for (double step = cfg.opt_step; step > 1e-10; step *= 0.5) {
        CVector cand = coeff + step * grad / gnorm;
        cand /= cand.norm();
        TopPair cn;
        TopPair cd;
        const double fc = ratio_value(t, c.combine(cand), &cn, &cd);
        if (fc > f + 1e-4 * step * f * gnorm / std::max(1.0, gnorm)) {
          coeff = std::move(cand);
          num = std::move(cn);
          den = std::move(cd);
          moved = fc > f + 1e-13 * scale;
          f = fc;
          break;
        }
      }
      if (!moved) break;
    }
    best.iterations += it;
    if (f > best.value) {
      best.value = f;
      const CMatrix w = c.combine(coeff);
      best.witness = w / op_norm(w);
    }
  }
  return best;
}

void require_compatible(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                        const NumericConfig& cfg, const char* what) {
  require_square_finite(t, what);
  if (t.rows() != a.ambient_dim() || a.ambient_dim() != ambient.ambient_dim()) {
    throw InvalidInput(std::string(what) + ": dimension mismatch");
  }
  if (!ambient.selfadjoint || !ambient.unital) {
    throw InvalidInput(std::string(what) + ": ambient algebra must be a unital *-algebra");
  }
  if (!subspace_contains(ambient.space, a.space, cfg.eq_tol)) {
    throw InvalidInput(std::string(what) + ": algebra is not contained in the ambient algebra");
  }
}

// The *-algebra whose unitary group is the unitary group of (A, ambient)'.
struct CommutantData {
  MatrixAlgebra commutant;
  bool selfadjoint = true;
  MatrixAlgebra unitary_algebra;
};

CommutantData commutant_data(const MatrixAlgebra& a, const MatrixAlgebra& ambient, const NumericConfig& cfg) {
  CommutantData out;
  out.commutant = relative_commutant(a.basis(), ambient, cfg);
  out.selfadjoint = closed_under_adjoint(out.commutant.space, cfg.eq_tol);
  if (out.selfadjoint) {
    out.unitary_algebra = out.commutant;
    out.unitary_algebra.selfadjoint = true;
  } else {
    // A unitary commuting with A also commutes with A*.
    std::vector<CMatrix> both = a.basis();
    for (const auto& b : a.basis()) both.push_back(b.adjoint());
    out.unitary_algebra = relative_commutant(both, ambient, cfg);
  }
  return out;
}

}  // namespace

CMatrix random_unit_element(const OperatorSubspace& space, Rng& rng) {
  CVector c(space.dim());
  for (int k = 0; k < space.dim(); ++k) c(k) = rng.complex_normal();
  CMatrix x = space.combine(c);
  const double nrm = x.norm();
  return nrm > 0.0 ? CMatrix(x / nrm) : x;
}

DistanceReport dist_opnorm(const CMatrix& t, const OperatorSubspace& v, const NumericConfig& cfg) {
  require_square_finite(t, "dist_opnorm");
  if (t.rows() != v.ambient_dim()) throw InvalidInput("dist_opnorm: dimension mismatch");
  const double tol_gap = 1e-6 * std::max(1.0, op_norm(t));

  DistanceReport rep;
  if (v.dim() == 0) {
    rep.value = rep.lower = rep.upper = op_norm(t);
    rep.witness = CMatrix::Zero(t.rows(), t.cols());
    rep.converged = true;
    return rep;
  }

  const SmoothedDistance obj(t, v);
  const Eigen::VectorXd hs_start = obj.to_real(v.coefficients(t));
  Rng rng(cfg.rng_seed, kDistStream);

  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = 0.0;
  Eigen::VectorXd best_x = hs_start;
  int iterations = 0;
  constexpr int kMaxStarts = 4;
  const int per_stage = std::max(50, cfg.opt_max_iters / 2);

  for (int start = 0; start < kMaxStarts; ++start) {
    Eigen::VectorXd x = hs_start;
    if (start > 0) {
      const double spread = 0.5 * std::max(best_upper, 1e-12);
      for (int i = 0; i < x.size(); ++i) x(i) += spread * rng.normal();
    }
    const double lam0 = std::pow(op_norm(obj.residual(x)), 2);
    if (lam0 <= 1e-300) {
      best_upper = 0.0;
      best_x = x;
      break;
    }
    for (double rel_mu = 1e-2; rel_mu >= 1e-13; rel_mu *= 0.1) {
      const BfgsResult res = bfgs_minimize(obj, x, rel_mu * lam0, per_stage);
      x = res.x;
      iterations += res.iterations;
      const CMatrix r = obj.residual(x);
      const double upper = op_norm(r);
      if (upper < best_upper) {
        best_upper = upper;
        best_x = x;
      }
      CMatrix g;
      obj.eval(x, rel_mu * lam0, nullptr, &g);
      best_lower = std::max(best_lower, obj.dual_bound(r, g));
    }
    if (best_upper - best_lower <= tol_gap) break;
  }

  rep.value = best_upper;
  rep.upper = best_upper;
  rep.lower = std::min(best_lower, best_upper);
  rep.witness = v.combine(obj.to_complex(best_x));
  rep.iterations = iterations;
  rep.converged = rep.upper - rep.lower <= tol_gap;
  return rep;
}

DerivationReport d_n(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                     const NumericConfig& cfg) {
  cfg.validate();
  require_compatible(t, a, ambient, cfg, "d_n");
  const CommutantData cd = commutant_data(a, ambient, cfg);
  const BlockStructure bs = wedderburn(cd.unitary_algebra, cfg);
  const BlockAscent ascent(bs, t);

  DerivationReport out;
  out.commutant_selfadjoint = cd.selfadjoint;
  double best = -1.0;
  std::vector<CMatrix> best_parts;
  bool best_converged = false;
  int iterations = 0;
  for (int r = 0; r < cfg.opt_restarts; ++r) {
    Rng rng(cfg.rng_seed, kAscentStream + static_cast<std::uint64_t>(r));
    auto outcome = ascent.run(haar_block_unitaries(bs, rng), cfg);
    iterations += outcome.iterations;
    if (outcome.value > best) {
      best = outcome.value;
      best_parts = std::move(outcome.parts);
      best_converged = outcome.converged;
    }
  }
  out.unitary_value = best;
  CMatrix witness = ascent.to_original(best_parts);
  double value = best;

  if (!cd.selfadjoint) {
    std::vector<CVector> starts{cd.commutant.space.coefficients(witness)};
    Rng rng(cfg.rng_seed, kContractionStream);
    for (int r = 0; r < cfg.opt_restarts; ++r) {
      CVector c(cd.commutant.dim());
      for (int k = 0; k < c.size(); ++k) c(k) = rng.complex_normal();
      starts.push_back(std::move(c));
    }
    const ContractionOutcome co = contraction_ascent(t, cd.commutant.space, starts, cfg);
    iterations += co.iterations;
    out.contraction_value = co.value;
    if (co.value > value) {
      value = co.value;
      witness = co.witness;
    }
  }

  const MatrixAlgebra bicommutant = relative_commutant(cd.commutant.basis(), ambient, cfg);
  double upper = 2.0 * dist_opnorm(t, a.space, cfg).upper;
  if (!subspace_equal(bicommutant.space, a.space, cfg.eq_tol)) {
    upper = std::min(upper, 2.0 * dist_opnorm(t, bicommutant.space, cfg).upper);
  }

  out.report.value = value;
  out.report.lower = value;
  out.report.upper = upper;
  out.report.witness = std::move(witness);
  out.report.iterations = iterations;
  out.report.converged = best_converged;
  return out;
}

DerivationReport d_an(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                      const NumericConfig& cfg) {
  DerivationReport out = d_n(t, a, ambient, cfg);
  out.approximate_alias = true;
  return out;
}

double d_n_sampling_oracle(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                           int num_samples, const NumericConfig& cfg) {
  require_compatible(t, a, ambient, cfg, "d_n_sampling_oracle");
  const CommutantData cd = commutant_data(a, ambient, cfg);
  const BlockStructure bs = wedderburn(cd.unitary_algebra, cfg);
  const BlockAscent ascent(bs, t);
  Rng rng(cfg.rng_seed, kOracleStream);
  double best = 0.0;
  for (int i = 0; i < num_samples; ++i) best = std::max(best, ascent.value(haar_block_unitaries(bs, rng)));
  return best;
}

KnEstimate kn_lower_estimate(const MatrixAlgebra& a, const MatrixAlgebra& ambient, int num_samples,
                             const NumericConfig& cfg, int jobs) {
  KnEstimate out;
  const NormalityResult nr = is_normal(a, ambient, cfg);
  if (!nr.normal && nr.witness) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    out.non_normal_witness = nr.witness;
    return out;
  }
  struct Sample {
    CMatrix t;
    double dist = 0.0;
    double dn = 0.0;
  };
  const Rng root(cfg.rng_seed, kKnStream);
  const auto samples = parallel_map(static_cast<std::size_t>(std::max(0, num_samples)), jobs, [&](std::size_t i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    Sample s;
    s.t = random_unit_element(ambient.space, rng);
    s.dist = dist_opnorm(s.t, a.space, cfg).value;
    s.dn = d_n(s.t, a, ambient, cfg).report.value;
    return s;
  });
  for (const auto& s : samples) {
    out.max_dist_excess = std::max(out.max_dist_excess, s.dist - s.dn);
    if (s.dn < 1e-8) {
      if (s.dist > cfg.eq_tol) {
        out.infinite = true;
        out.value = std::numeric_limits<double>::infinity();
        out.non_normal_witness = s.t;
        return out;
      }
      ++out.samples_skipped;
      continue;
    }
    ++out.samples_used;
    out.value = std::max(out.value, s.dist / s.dn);
  }
  return out;
}

CompositionCheck composition_inequality_check(const MatrixAlgebra& a, const MatrixAlgebra& d,
                                              const MatrixAlgebra& ambient, double k_ad, double k_db,
                                              int samples, const NumericConfig& cfg) {
  if (!subspace_contains(d.space, a.space, cfg.eq_tol) || !subspace_contains(ambient.space, d.space, cfg.eq_tol)) {
    throw InvalidInput("composition_inequality_check: algebras are not nested");
  }
  CompositionCheck out;
  out.bound_factor = k_db + k_ad * (2.0 * k_db + 1.0);
  const Rng root(cfg.rng_seed, kChainStream);
  for (int i = 0; i < samples; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const CMatrix t = random_unit_element(ambient.space, rng);
    const double dist = dist_opnorm(t, a.space, cfg).value;
    const double dn = d_n(t, a, ambient, cfg).report.value;
    ++out.samples;
    if (dist > out.bound_factor * dn + cfg.eq_tol) ++out.violations;
    if (dn > 1e-8) out.max_ratio = std::max(out.max_ratio, dist / dn);
  }
  return out;
}

}  // namespace opalg
