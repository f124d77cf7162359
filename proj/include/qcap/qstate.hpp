// Minimal complex linear algebra for 2-4 dimensional Hilbert spaces:
// polarization kets, density matrices, tensor products, Hermitian
// eigendecomposition and von Neumann entropy.
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qcap {

using Complex = std::complex<double>;

// Information unit for entropies and capacities. All internal computation is
// in natural log; conversion happens once on output.
enum class LogBase { Bits, Nats };

// Convert a natural-log quantity to the requested base.
double from_nats(double nats, LogBase base);

// Small dense complex matrix, row-major. Dimensions of interest are 2..4 but
// the container itself is size-agnostic.
class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t dim) : dim_(dim), a_(dim * dim, Complex(0.0)) {}

  static CMat identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return a_[r * dim_ + c];
  }

  CMat& operator+=(const CMat& other);
  CMat& operator-=(const CMat& other);
  CMat& operator*=(double s);

  friend CMat operator+(CMat lhs, const CMat& rhs) { return lhs += rhs; }
  friend CMat operator-(CMat lhs, const CMat& rhs) { return lhs -= rhs; }
  friend CMat operator*(double s, CMat m) { return m *= s; }

  CMat matmul(const CMat& other) const;
  CMat dagger() const;
  Complex trace() const;

  // Largest entrywise deviation from the Hermitian condition M = M^dagger.
  double hermiticity_defect() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> a_;
};

// Normalized pure state. Construction enforces unit norm (1e-12) and a
// dimension in {2, 3, 4}.
class Ket {
 public:
  explicit Ket(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amp_.size(); }
  const Complex& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<Complex>& amplitudes() const { return amp_; }

  // True if every amplitude has negligible imaginary part (linear
  // polarization).
  bool is_real(double tol = 1e-12) const;

 private:
  std::vector<Complex> amp_;
};

// Hermitian, positive semidefinite, trace-1 matrix. All three conditions are
// checked at construction (Hermiticity and trace to 1e-12, eigenvalues down
// to -1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(CMat m);

  std::size_t dim() const { return m_.dim(); }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return m_(r, c);
  }
  const CMat& mat() const { return m_; }

 private:
  CMat m_;
};

// Transmitter alphabet: prior probabilities paired with signal states.
struct SignalEnsemble {
  std::vector<double> priors;
  std::vector<DensityMatrix> states;

  std::size_t size() const { return priors.size(); }
};

// Full eigensystem of a Hermitian matrix, eigenvalues sorted descending with
// matching orthonormal eigenvectors.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Ket> eigenvectors;
};

// Linear polarization state cos(theta)|0> + sin(theta)|1>.
Ket ket_from_angle(double theta);

// Scalar product <phi|psi> = sum_i conj(phi_i) psi_i.
//
// Note on sign conventions: some texts print <psi2|1> = j/sqrt(2) for
// psi2 = (|0> + j|1>)/sqrt(2); this convention yields -j/sqrt(2) for that
// ordering (and j/sqrt(2) for <1|psi2>). Only |.|^2 enters any capacity, so
// the sign never matters downstream.
Complex inner_product(const Ket& phi, const Ket& psi);

// Rank-1 projector |psi><psi|.
DensityMatrix density_from_ket(const Ket& psi);

// Average density matrix sum_k q_k rho_k. Priors must be nonnegative and sum
// to 1 within 1e-12.
DensityMatrix mix(const SignalEnsemble& ensemble);

// Kronecker product of two qubit kets, ordering (a0 b0, a0 b1, a1 b0, a1 b1).
Ket tensor(const Ket& a, const Ket& b);

// Eigendecomposition of a Hermitian matrix. Dimension 2 uses the closed-form
// quadratic; dimension >= 3 runs cyclic Jacobi sweeps until the off-diagonal
// norm drops below 1e-12.
Spectrum eig_hermitian_raw(const CMat& m);
Spectrum eig_hermitian(const DensityMatrix& m);

// S(rho) = -sum_i lambda_i log lambda_i with 0 log 0 := 0. Eigenvalues within
// 1e-10 of [0, 1] are clamped onto the interval first.
double von_neumann_entropy(const DensityMatrix& m, LogBase base);

}  // namespace qcap
