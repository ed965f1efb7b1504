#include "poscone/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace poscone {

namespace {

constexpr int kJacobiMaxSweeps = 100;
constexpr double kJacobiOffTol = 1e-14;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One cyclic sweep of complex Jacobi rotations on a Hermitian block.
// Accumulates the rotations into u.
void jacobi_sweep(Matrix& a, Matrix& u, double skip_threshold) {
  const int n = static_cast<int>(a.rows());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const Complex apq = a(p, q);
      const double r = std::abs(apq);
      if (r <= skip_threshold) continue;

      const Complex phase = apq / r;  // e^{i phi}
      const double diff = a(p, p).real() - a(q, q).real();
      double t;
      if (diff == 0.0) {
        t = 1.0;
      } else {
        const double tau = diff / (2.0 * r);
        t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      }
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      // Columns p,q of the rotation: V(p,p)=c, V(q,p)=s conj(phase),
      // V(p,q)=-s phase, V(q,q)=c; apply A <- V* A V, U <- U V.
      const Complex sp = s * phase;
      const Complex spc = s * std::conj(phase);
      for (int k = 0; k < n; ++k) {
        const Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp + spc * akq;
        a(k, q) = -sp * akp + c * akq;
      }
      for (int k = 0; k < n; ++k) {
        const Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk + sp * aqk;
        a(q, k) = -spc * apk + c * aqk;
      }
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      a(p, p) = Complex(a(p, p).real(), 0.0);
      a(q, q) = Complex(a(q, q).real(), 0.0);
      for (int k = 0; k < n; ++k) {
        const Complex ukp = u(k, p), ukq = u(k, q);
        u(k, p) = c * ukp + spc * ukq;
        u(k, q) = -sp * ukp + c * ukq;
      }
    }
  }
}

void eig_block(const Matrix& x, Eigen::VectorXd& values, Matrix& vectors) {
  const int n = static_cast<int>(x.rows());
  Matrix a = x;
  Matrix u = Matrix::Identity(n, n);
  const double scale = a.norm();
  const double tol = kJacobiOffTol * scale;
  const double skip = scale > 0.0 ? tol / (4.0 * n * n) : 0.0;

  bool converged = off_diagonal_norm(a) <= tol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    jacobi_sweep(a, u, skip);
    converged = off_diagonal_norm(a) <= tol;
  }
  if (!converged)
    throw NumericalError("jacobi eigensolver failed to converge in 100 sweeps");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  values.resize(n);
  vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    vectors.col(k) = u.col(order[k]);
  }
}

HermitianElement assemble_from_spectrum(const TracialAlgebra& algebra,
                                        const SpectralDecomposition& spec,
                                        const std::function<double(double)>& f,
                                        const char* context) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.eigenvalues.size());
  for (size_t b = 0; b < spec.eigenvalues.size(); ++b) {
    const auto& vals = spec.eigenvalues[b];
    const auto& u = spec.eigenvectors[b];
    Eigen::VectorXcd fl(vals.size());
    for (int i = 0; i < vals.size(); ++i) {
      const double fv = f(vals[i]);
      if (!std::isfinite(fv))
        throw std::domain_error(std::string(context) +
                                ": function not finite on the spectrum");
      fl[i] = fv;
    }
    blocks.push_back(u * fl.asDiagonal() * u.adjoint());
  }
  return HermitianElement(AlgebraElement(algebra, std::move(blocks)));
}

}  // namespace

TracialAlgebra::TracialAlgebra(std::vector<BlockShape> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("algebra needs at least one block");
  double total = 0.0;
  for (const auto& b : blocks_) {
    if (b.dim < 1) throw std::invalid_argument("block dimension must be positive");
    if (!(b.weight > 0.0)) throw std::invalid_argument("block weight must be positive");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("trace weights must sum to one");
}

TracialAlgebra TracialAlgebra::matrix(int dim) {
  return TracialAlgebra({BlockShape{dim, 1.0}});
}

int TracialAlgebra::hermitian_dim() const {
  int d = 0;
  for (const auto& b : blocks_) d += b.dim * b.dim;
  return d;
}

int TracialAlgebra::total_dim() const {
  int d = 0;
  for (const auto& b : blocks_) d += b.dim;
  return d;
}

bool operator==(const TracialAlgebra& a, const TracialAlgebra& b) {
  if (a.blocks_.size() != b.blocks_.size()) return false;
  for (size_t i = 0; i < a.blocks_.size(); ++i)
    if (a.blocks_[i].dim != b.blocks_[i].dim ||
        a.blocks_[i].weight != b.blocks_[i].weight)
      return false;
  return true;
}

void require_same_algebra(const TracialAlgebra& a, const TracialAlgebra& b) {
  if (a != b) throw std::invalid_argument("algebra mismatch");
}

AlgebraElement::AlgebraElement(TracialAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != algebra_.block_count())
    throw std::invalid_argument("block count does not match the algebra");
  for (int i = 0; i < algebra_.block_count(); ++i) {
    const int d = algebra_.block_dim(i);
    if (blocks_[i].rows() != d || blocks_[i].cols() != d)
      throw std::invalid_argument("block shape does not match the algebra");
  }
}

AlgebraElement AlgebraElement::zero(const TracialAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (const auto& b : algebra.blocks()) blocks.push_back(Matrix::Zero(b.dim, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const TracialAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (const auto& b : algebra.blocks())
    blocks.push_back(Matrix::Identity(b.dim, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& m : blocks_) blocks.push_back(m.adjoint());
  return AlgebraElement(algebra_, std::move(blocks));
}

bool AlgebraElement::is_zero(double tol) const {
  for (const auto& m : blocks_)
    if (m.norm() > tol) return false;
  return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_algebra(algebra_, rhs.algebra_);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_algebra(algebra_, rhs.algebra_);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a.algebra(), b.algebra());
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (size_t i = 0; i < a.blocks().size(); ++i)
    blocks.push_back(a.block(static_cast<int>(i)) * b.block(static_cast<int>(i)));
  return AlgebraElement(a.algebra(), std::move(blocks));
}

HermitianElement::HermitianElement(AlgebraElement a) : element_(std::move(a)) {
  for (int i = 0; i < element_.block_count(); ++i) {
    Matrix& m = element_.block(i);
    m = 0.5 * (m + m.adjoint().eval());
  }
}

HermitianElement HermitianElement::zero(const TracialAlgebra& algebra) {
  return HermitianElement(AlgebraElement::zero(algebra));
}

HermitianElement HermitianElement::identity(const TracialAlgebra& algebra) {
  return HermitianElement(AlgebraElement::identity(algebra));
}

HermitianElement& HermitianElement::operator+=(const HermitianElement& rhs) {
  element_ += rhs.element_;
  return *this;
}

HermitianElement& HermitianElement::operator-=(const HermitianElement& rhs) {
  element_ -= rhs.element_;
  return *this;
}

HermitianElement& HermitianElement::operator*=(double s) {
  element_ *= Complex(s, 0.0);
  return *this;
}

double SpectralDecomposition::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : eigenvalues)
    if (v.size() > 0) m = std::min(m, v.minCoeff());
  return m;
}

double SpectralDecomposition::max_abs_eigenvalue() const {
  double m = 0.0;
  for (const auto& v : eigenvalues)
    for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

Complex trace(const AlgebraElement& a) {
  Complex t = 0.0;
  const auto& alg = a.algebra();
  for (int i = 0; i < alg.block_count(); ++i)
    t += alg.block_weight(i) * a.block(i).trace() / double(alg.block_dim(i));
  return t;
}

double trace(const HermitianElement& a) { return trace(a.element()).real(); }

double inner2(const HermitianElement& x, const HermitianElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  const auto& alg = x.algebra();
  double t = 0.0;
  for (int i = 0; i < alg.block_count(); ++i) {
    // tr(xy) is real for Hermitian factors.
    const Complex b = (x.block(i) * y.block(i)).trace();
    t += alg.block_weight(i) * b.real() / double(alg.block_dim(i));
  }
  return t;
}

double norm2(const AlgebraElement& z) {
  const auto& alg = z.algebra();
  double t = 0.0;
  for (int i = 0; i < alg.block_count(); ++i)
    t += alg.block_weight(i) * z.block(i).squaredNorm() / double(alg.block_dim(i));
  return std::sqrt(std::max(0.0, t));
}

double norm2(const HermitianElement& x) { return norm2(x.element()); }

SpectralDecomposition eig_hermitian(const HermitianElement& x) {
  SpectralDecomposition spec;
  spec.eigenvalues.resize(x.block_count());
  spec.eigenvectors.resize(x.block_count());
  for (int i = 0; i < x.block_count(); ++i)
    eig_block(x.block(i), spec.eigenvalues[i], spec.eigenvectors[i]);
  return spec;
}

HermitianElement fun_hermitian(const HermitianElement& x,
                               const std::function<double(double)>& f) {
  return assemble_from_spectrum(x.algebra(), eig_hermitian(x), f, "fun_hermitian");
}

PositiveElement PositiveElement::certify(const HermitianElement& x) {
  SpectralDecomposition spec = eig_hermitian(x);
  const double floor = spec.min_eigenvalue();
  if (!(floor > 0.0))
    throw std::domain_error("element is not positive definite");
  return PositiveElement(x, std::move(spec), floor);
}

PositiveElement PositiveElement::identity(const TracialAlgebra& algebra) {
  return certify(HermitianElement::identity(algebra));
}

PositiveElement PositiveElement::power(double t) const {
  SpectralDecomposition spec;
  spec.eigenvalues.reserve(spectral_.eigenvalues.size());
  spec.eigenvectors.reserve(spectral_.eigenvectors.size());
  std::vector<Matrix> blocks;
  for (size_t b = 0; b < spectral_.eigenvalues.size(); ++b) {
    const auto& vals = spectral_.eigenvalues[b];
    const auto& u = spectral_.eigenvectors[b];
    const int n = static_cast<int>(vals.size());
    Eigen::VectorXd pv(n);
    for (int i = 0; i < n; ++i) pv[i] = std::pow(vals[i], t);
    // power is monotone on the positive axis; t < 0 reverses the order
    Eigen::VectorXd sorted(n);
    Matrix su(n, n);
    for (int i = 0; i < n; ++i) {
      const int src = t >= 0.0 ? i : n - 1 - i;
      sorted[i] = pv[src];
      su.col(i) = u.col(src);
    }
    blocks.push_back(su * sorted.cast<Complex>().asDiagonal() * su.adjoint());
    spec.eigenvalues.push_back(std::move(sorted));
    spec.eigenvectors.push_back(std::move(su));
  }
  HermitianElement value(AlgebraElement(algebra(), std::move(blocks)));
  const double floor = spec.min_eigenvalue();
  return PositiveElement(std::move(value), std::move(spec), floor);
}

HermitianElement PositiveElement::log() const {
  return assemble_from_spectrum(algebra(), spectral_,
                                [](double v) { return std::log(v); }, "log");
}

HermitianElement PositiveElement::apply(const std::function<double(double)>& f) const {
  return assemble_from_spectrum(algebra(), spectral_, f, "apply");
}

PositiveElement expm(const HermitianElement& x) {
  SpectralDecomposition spec = eig_hermitian(x);
  SpectralDecomposition pos_spec;
  std::vector<Matrix> blocks;
  for (size_t b = 0; b < spec.eigenvalues.size(); ++b) {
    const auto& vals = spec.eigenvalues[b];
    const auto& u = spec.eigenvectors[b];
    Eigen::VectorXd ev(vals.size());
    for (int i = 0; i < vals.size(); ++i) ev[i] = std::exp(vals[i]);
    blocks.push_back(u * ev.cast<Complex>().asDiagonal() * u.adjoint());
    pos_spec.eigenvalues.push_back(std::move(ev));
    pos_spec.eigenvectors.push_back(u);
  }
  HermitianElement value(AlgebraElement(x.algebra(), std::move(blocks)));
  const double floor = pos_spec.min_eigenvalue();
  return PositiveElement(std::move(value), std::move(pos_spec), floor);
}

RealScalarFunction exp_function() {
  return RealScalarFunction{[](double v) { return std::exp(v); },
                            [](double v) { return std::exp(v); }};
}

HermitianElement divided_difference_apply(const RealScalarFunction& f,
                                          const HermitianElement& x,
                                          const HermitianElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  const SpectralDecomposition spec = eig_hermitian(x);
  std::vector<Matrix> blocks;
  for (int b = 0; b < x.block_count(); ++b) {
    const auto& vals = spec.eigenvalues[b];
    const auto& u = spec.eigenvectors[b];
    const int n = static_cast<int>(vals.size());
    Matrix yt = u.adjoint() * y.block(b) * u;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double li = vals[i], lj = vals[j];
        double dd;
        if (std::abs(li - lj) < 1e-7 * (1.0 + std::abs(li) + std::abs(lj)))
          dd = f.derivative(0.5 * (li + lj));
        else
          dd = (f.value(li) - f.value(lj)) / (li - lj);
        yt(i, j) *= dd;
      }
    }
    blocks.push_back(u * yt * u.adjoint());
  }
  return HermitianElement(AlgebraElement(x.algebra(), std::move(blocks)));
}

std::optional<PositiveElement> is_positive(const HermitianElement& x, double floor) {
  SpectralDecomposition spec = eig_hermitian(x);
  const double least = spec.min_eigenvalue();
  if (least < floor) return std::nullopt;
  return PositiveElement(x, std::move(spec), least);
}

HermitianElement random_hermitian(const TracialAlgebra& algebra, double scale,
                                  std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double isq2 = 1.0 / std::sqrt(2.0);
  std::vector<Matrix> blocks;
  for (const auto& b : algebra.blocks()) {
    Matrix g(b.dim, b.dim);
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j)
        g(i, j) = Complex(gauss(rng), gauss(rng)) * isq2;
    blocks.push_back(scale * 0.5 * (g + g.adjoint().eval()));
  }
  return HermitianElement(AlgebraElement(algebra, std::move(blocks)));
}

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  return x * y - y * x;
}

}  // namespace poscone
