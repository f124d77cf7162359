#include "qcap/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcap {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kEigClampTol = 1e-10;

double entropy_nats(const std::vector<double>& probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

double from_nats(double nats, LogBase base) {
  return base == LogBase::Bits ? nats / std::log(2.0) : nats;
}

CMat CMat::identity(std::size_t dim) {
  CMat m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = Complex(1.0);
  return m;
}

CMat& CMat::operator+=(const CMat& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("CMat: dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("CMat: dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

CMat& CMat::operator*=(double s) {
  for (auto& x : a_) x *= s;
  return *this;
}

CMat CMat::matmul(const CMat& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("CMat: dimension mismatch");
  CMat out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex aik = (*this)(i, k);
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += aik * other(k, j);
    }
  return out;
}

CMat CMat::dagger() const {
  CMat out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

Complex CMat::trace() const {
  Complex t(0.0);
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

Ket::Ket(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() < 2 || amp_.size() > 4)
    throw std::invalid_argument("Ket: dimension must be 2, 3 or 4");
  double norm2 = 0.0;
  for (const auto& a : amp_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTol)
    throw std::invalid_argument("Ket: amplitudes not normalized");
}

bool Ket::is_real(double tol) const {
  for (const auto& a : amp_)
    if (std::abs(a.imag()) > tol) return false;
  return true;
}

DensityMatrix::DensityMatrix(CMat m) : m_(std::move(m)) {
  if (m_.dim() < 2 || m_.dim() > 4)
    throw std::invalid_argument("DensityMatrix: dimension must be 2, 3 or 4");
  if (m_.hermiticity_defect() > kNormTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > kNormTol)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  const Spectrum spec = eig_hermitian_raw(m_);
  for (double lambda : spec.eigenvalues)
    if (lambda < -kEigClampTol)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

Ket ket_from_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("ket_from_angle: non-finite angle");
  return Ket({Complex(std::cos(theta)), Complex(std::sin(theta))});
}

Complex inner_product(const Ket& phi, const Ket& psi) {
  if (phi.dim() != psi.dim())
    throw std::invalid_argument("inner_product: dimension mismatch");
  Complex s(0.0);
  for (std::size_t i = 0; i < phi.dim(); ++i) s += std::conj(phi[i]) * psi[i];
  return s;
}

DensityMatrix density_from_ket(const Ket& psi) {
  CMat m(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(std::move(m));
}

DensityMatrix mix(const SignalEnsemble& ensemble) {
  if (ensemble.priors.size() != ensemble.states.size() || ensemble.priors.empty())
    throw std::invalid_argument("mix: empty or inconsistent ensemble");
  double total = 0.0;
  for (double q : ensemble.priors) {
    if (q < 0.0) throw std::invalid_argument("mix: negative prior");
    total += q;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw std::invalid_argument("mix: priors do not sum to 1");
  const std::size_t dim = ensemble.states.front().dim();
  CMat m(dim);
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    if (ensemble.states[k].dim() != dim)
      throw std::invalid_argument("mix: states of differing dimension");
    m += ensemble.priors[k] * CMat(ensemble.states[k].mat());
  }
  return DensityMatrix(std::move(m));
}

Ket tensor(const Ket& a, const Ket& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw std::invalid_argument("tensor: both factors must be qubits");
  std::vector<Complex> out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out[2 * i + j] = a[i] * b[j];
  return Ket(std::move(out));
}

namespace {

// Closed-form eigensystem of a 2x2 Hermitian matrix. Eigenvectors come from
// the diagonalizing rotation (half-angle form); the naive (beta, lambda -
// alpha) solution cancels catastrophically when beta is tiny.
Spectrum eig2(const CMat& m) {
  const double alpha = m(0, 0).real();
  const double delta = m(1, 1).real();
  const Complex beta = m(0, 1);
  const double absb = std::abs(beta);

  Spectrum spec;
  if (absb < 1e-300) {
    spec.eigenvalues = {alpha, delta};
    spec.eigenvectors = {Ket({Complex(1.0), Complex(0.0)}),
                         Ket({Complex(0.0), Complex(1.0)})};
  } else {
    const double half_sum = 0.5 * (alpha + delta);
    const double w = std::hypot(0.5 * (alpha - delta), absb);
    spec.eigenvalues = {half_sum + w, half_sum - w};

    const double theta = 0.5 * std::atan2(2.0 * absb, alpha - delta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex phase = beta / absb;
    spec.eigenvectors = {Ket({Complex(c), s * std::conj(phase)}),
                         Ket({-s * phase, Complex(c)})};
  }
  if (spec.eigenvalues[0] < spec.eigenvalues[1]) {
    std::swap(spec.eigenvalues[0], spec.eigenvalues[1]);
    std::swap(spec.eigenvectors[0], spec.eigenvectors[1]);
  }
  return spec;
}

double offdiag_norm(const CMat& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi for complex Hermitian matrices. Each rotation annihilates one
// off-diagonal pair; V accumulates the eigenvectors as columns.
Spectrum eig_jacobi(CMat a) {
  const std::size_t n = a.dim();
  CMat v = CMat::identity(n);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a) < 1e-12) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double absapq = std::abs(apq);
        if (absapq < 1e-300) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * absapq, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex phase = apq / absapq;

        // Two-sided rotation R^dagger A R with
        // R = [[c, -s e^{i phi}], [s e^{-i phi}, c]] on rows/cols (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + s * std::conj(phase) * vkq;
          v(k, q) = -s * phase * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  Spectrum spec;
  for (std::size_t idx : order) {
    spec.eigenvalues.push_back(a(idx, idx).real());
    std::vector<Complex> col(n);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      col[k] = v(k, idx);
      norm2 += std::norm(col[k]);
    }
    const double norm = std::sqrt(norm2);
    for (auto& x : col) x /= norm;
    spec.eigenvectors.push_back(Ket(std::move(col)));
  }
  return spec;
}

}  // namespace

Spectrum eig_hermitian_raw(const CMat& m) {
  if (m.dim() < 2) throw std::invalid_argument("eig_hermitian: dimension too small");
  if (m.hermiticity_defect() > 1e-10)
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  return m.dim() == 2 ? eig2(m) : eig_jacobi(m);
}

Spectrum eig_hermitian(const DensityMatrix& m) { return eig_hermitian_raw(m.mat()); }

double von_neumann_entropy(const DensityMatrix& m, LogBase base) {
  Spectrum spec = eig_hermitian(m);
  std::vector<double> probs;
  probs.reserve(spec.eigenvalues.size());
  for (double lambda : spec.eigenvalues) {
    if (lambda < 0.0) {
      if (lambda < -kEigClampTol)
        throw std::invalid_argument("von_neumann_entropy: invalid spectrum");
      lambda = 0.0;
    }
    if (lambda > 1.0) {
      if (lambda > 1.0 + kEigClampTol)
        throw std::invalid_argument("von_neumann_entropy: invalid spectrum");
      lambda = 1.0;
    }
    probs.push_back(lambda);
  }
  return from_nats(entropy_nats(probs), base);
}

}  // namespace qcap
