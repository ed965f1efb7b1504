#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace poscone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Raised when an iterative kernel fails to converge within its cap.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlockShape {
  int dim = 0;
  double weight = 0.0;
};

/// A finite tracial matrix algebra: a direct sum of complex matrix blocks
/// carrying the state tau(a) = sum_i weight_i * tr(a_i) / dim_i.
/// Weights are strictly positive and sum to one, so tau(1) = 1 and tau is
/// faithful.
class TracialAlgebra {
 public:
  explicit TracialAlgebra(std::vector<BlockShape> blocks);

  /// Single full matrix block M_n with tau = tr/n.
  static TracialAlgebra matrix(int dim);

  const std::vector<BlockShape>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_dim(int i) const { return blocks_[i].dim; }
  double block_weight(int i) const { return blocks_[i].weight; }

  /// Real dimension of the space of Hermitian elements, sum of dim_i^2.
  int hermitian_dim() const;

  /// Total number of matrix rows across blocks.
  int total_dim() const;

  friend bool operator==(const TracialAlgebra& a, const TracialAlgebra& b);
  friend bool operator!=(const TracialAlgebra& a, const TracialAlgebra& b) {
    return !(a == b);
  }

 private:
  std::vector<BlockShape> blocks_;
};

/// Throws std::invalid_argument unless both arguments live in the same algebra.
void require_same_algebra(const TracialAlgebra& a, const TracialAlgebra& b);

/// A general element of the algebra: one dense complex matrix per block.
class AlgebraElement {
 public:
  AlgebraElement(TracialAlgebra algebra, std::vector<Matrix> blocks);

  static AlgebraElement zero(const TracialAlgebra& algebra);
  static AlgebraElement identity(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int i) const { return blocks_[i]; }
  Matrix& block(int i) { return blocks_[i]; }
  int block_count() const { return static_cast<int>(blocks_.size()); }

  AlgebraElement adjoint() const;
  bool is_zero(double tol = 0.0) const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return a += b;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    return a -= b;
  }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }

  /// Blockwise matrix product.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  TracialAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

/// A self-adjoint element. Construction symmetrizes the input, (a + a*)/2,
/// so round-trip noise never produces an invalid value.
class HermitianElement {
 public:
  explicit HermitianElement(AlgebraElement a);

  static HermitianElement zero(const TracialAlgebra& algebra);
  static HermitianElement identity(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return element_.algebra(); }
  const AlgebraElement& element() const { return element_; }
  const Matrix& block(int i) const { return element_.block(i); }
  int block_count() const { return element_.block_count(); }

  HermitianElement& operator+=(const HermitianElement& rhs);
  HermitianElement& operator-=(const HermitianElement& rhs);
  HermitianElement& operator*=(double s);

  friend HermitianElement operator+(HermitianElement a, const HermitianElement& b) {
    return a += b;
  }
  friend HermitianElement operator-(HermitianElement a, const HermitianElement& b) {
    return a -= b;
  }
  friend HermitianElement operator*(double s, HermitianElement a) { return a *= s; }
  friend HermitianElement operator*(HermitianElement a, double s) { return a *= s; }
  friend HermitianElement operator-(HermitianElement a) { return a *= -1.0; }

 private:
  AlgebraElement element_;
};

/// Eigenvalues (ascending) and a unitary eigenbasis, one pair per block.
struct SpectralDecomposition {
  std::vector<Eigen::VectorXd> eigenvalues;
  std::vector<Matrix> eigenvectors;

  double min_eigenvalue() const;
  double max_abs_eigenvalue() const;
};

/// A positive invertible element together with its certified spectral data.
/// The decomposition is computed once at construction and reused by every
/// derived matrix function.
class PositiveElement {
 public:
  /// Eigendecomposes x and certifies positivity; throws std::domain_error if
  /// the smallest eigenvalue is not strictly positive.
  static PositiveElement certify(const HermitianElement& x);

  static PositiveElement identity(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return value_.algebra(); }
  const HermitianElement& value() const { return value_; }
  double spectral_floor() const { return floor_; }
  const SpectralDecomposition& spectral() const { return spectral_; }

  /// a^t through the cached eigenbasis.
  PositiveElement power(double t) const;
  PositiveElement sqrt() const { return power(0.5); }
  PositiveElement inverse() const { return power(-1.0); }

  /// ln(a), Hermitian.
  HermitianElement log() const;

  /// Applies f to the spectrum; f must be finite there.
  HermitianElement apply(const std::function<double(double)>& f) const;

 private:
  PositiveElement(HermitianElement value, SpectralDecomposition spectral, double floor)
      : value_(std::move(value)), spectral_(std::move(spectral)), floor_(floor) {}

  friend PositiveElement expm(const HermitianElement& x);
  friend std::optional<PositiveElement> is_positive(const HermitianElement& x,
                                                    double floor);

  HermitianElement value_;
  SpectralDecomposition spectral_;
  double floor_;
};

/// tau of a general element.
Complex trace(const AlgebraElement& a);
double trace(const HermitianElement& a);

/// tau-inner product of Hermitian elements, <x,y>_2 = tau(xy).
double inner2(const HermitianElement& x, const HermitianElement& y);

/// 2-norm tau(z*z)^{1/2}; defined for every element of the algebra.
double norm2(const AlgebraElement& z);
double norm2(const HermitianElement& x);

/// Cyclic Jacobi eigensolver for Hermitian elements. Eigenvalues come back
/// sorted ascending per block. Throws NumericalError if a block fails to
/// reach off-diagonal norm <= 1e-14 * ||x||_F within 100 sweeps.
SpectralDecomposition eig_hermitian(const HermitianElement& x);

/// U f(Lambda) U*; throws std::domain_error when f is not finite on the
/// spectrum (ln of a non-positive element, for instance).
HermitianElement fun_hermitian(const HermitianElement& x,
                               const std::function<double(double)>& f);

/// e^x with its spectral certificate attached.
PositiveElement expm(const HermitianElement& x);

/// A scalar function together with its derivative, as needed by the
/// first divided difference.
struct RealScalarFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

RealScalarFunction exp_function();

/// First divided difference of f at x applied to y: in the eigenbasis of x
/// entry (i,j) of y is scaled by (f(l_i) - f(l_j)) / (l_i - l_j), switching
/// to f'((l_i + l_j)/2) when |l_i - l_j| < 1e-7 * (1 + |l_i| + |l_j|).
/// Equals d/dt f(x + t y) at t = 0.
HermitianElement divided_difference_apply(const RealScalarFunction& f,
                                          const HermitianElement& x,
                                          const HermitianElement& y);

/// Certifies x as positive when its least eigenvalue is >= floor.
std::optional<PositiveElement> is_positive(const HermitianElement& x,
                                           double floor = 1e-12);

/// Gaussian Hermitian element: i.i.d. standard complex Gaussian entries,
/// symmetrized, scaled. Deterministic for a given generator state.
HermitianElement random_hermitian(const TracialAlgebra& algebra, double scale,
                                  std::mt19937_64& rng);

/// xy - yx.
AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);

}  // namespace poscone
