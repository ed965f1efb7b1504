#include "poscone/geometry.hpp"

#include <cmath>

namespace poscone {

namespace {

// s x s for Hermitian s; the workhorse congruence with p^{±1/2}.
HermitianElement sandwich(const AlgebraElement& s, const HermitianElement& x) {
  return HermitianElement(s * x.element() * s);
}

// sinh(z)/z, stable near zero.
double sinhc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

// Scales entry (i,j) of y, expressed in the eigenbasis of x, by
// multiplier(l_i, l_j).
HermitianElement scale_in_eigenbasis(const HermitianElement& x,
                                     const HermitianElement& y,
                                     const std::function<double(double, double)>& m) {
  require_same_algebra(x.algebra(), y.algebra());
  const SpectralDecomposition spec = eig_hermitian(x);
  std::vector<Matrix> blocks;
  for (int b = 0; b < x.block_count(); ++b) {
    const auto& vals = spec.eigenvalues[b];
    const auto& u = spec.eigenvectors[b];
    const int n = static_cast<int>(vals.size());
    Matrix yt = u.adjoint() * y.block(b) * u;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) yt(i, j) *= m(vals[i], vals[j]);
    blocks.push_back(u * yt * u.adjoint());
  }
  return HermitianElement(AlgebraElement(x.algebra(), std::move(blocks)));
}

}  // namespace

double metric_inner(const PositiveElement& a, const HermitianElement& x,
                    const HermitianElement& y) {
  require_same_algebra(a.algebra(), x.algebra());
  require_same_algebra(a.algebra(), y.algebra());
  const AlgebraElement isq = a.power(-0.5).value().element();
  return inner2(sandwich(isq, x), sandwich(isq, y));
}

double metric_norm(const PositiveElement& a, const HermitianElement& x) {
  return std::sqrt(std::max(0.0, metric_inner(a, x, x)));
}

Geodesic::Geodesic(PositiveElement start, HermitianElement generator)
    : start_(std::move(start)),
      generator_(std::move(generator)),
      generator_spec_(eig_hermitian(generator_)),
      sqrt_start_(start_.power(0.5).value().element()),
      inv_sqrt_start_(start_.power(-0.5).value().element()) {}

Geodesic Geodesic::through(const PositiveElement& p, const PositiveElement& q) {
  require_same_algebra(p.algebra(), q.algebra());
  const AlgebraElement isq = p.power(-0.5).value().element();
  const PositiveElement middle = PositiveElement::certify(sandwich(isq, q.value()));
  return Geodesic(p, middle.log());
}

Geodesic Geodesic::from_velocity(const PositiveElement& p, const HermitianElement& v) {
  require_same_algebra(p.algebra(), v.algebra());
  const AlgebraElement isq = p.power(-0.5).value().element();
  return Geodesic(p, sandwich(isq, v));
}

PositiveElement Geodesic::evaluate(double t) const {
  std::vector<Matrix> blocks;
  for (int b = 0; b < generator_.block_count(); ++b) {
    const auto& vals = generator_spec_.eigenvalues[b];
    const auto& u = generator_spec_.eigenvectors[b];
    Eigen::VectorXd e(vals.size());
    for (int i = 0; i < vals.size(); ++i) e[i] = std::exp(t * vals[i]);
    blocks.push_back(u * e.cast<Complex>().asDiagonal() * u.adjoint());
  }
  HermitianElement eth(AlgebraElement(generator_.algebra(), std::move(blocks)));
  return PositiveElement::certify(sandwich(sqrt_start_, eth));
}

HermitianElement Geodesic::derivative(double t) const {
  std::vector<Matrix> blocks;
  for (int b = 0; b < generator_.block_count(); ++b) {
    const auto& vals = generator_spec_.eigenvalues[b];
    const auto& u = generator_spec_.eigenvectors[b];
    Eigen::VectorXd e(vals.size());
    for (int i = 0; i < vals.size(); ++i) e[i] = vals[i] * std::exp(t * vals[i]);
    blocks.push_back(u * e.cast<Complex>().asDiagonal() * u.adjoint());
  }
  HermitianElement heth(AlgebraElement(generator_.algebra(), std::move(blocks)));
  return sandwich(sqrt_start_, heth);
}

double Geodesic::speed() const { return norm2(generator_); }

PositiveElement exp_map(const PositiveElement& p, const HermitianElement& v) {
  require_same_algebra(p.algebra(), v.algebra());
  const AlgebraElement sq = p.power(0.5).value().element();
  const AlgebraElement isq = p.power(-0.5).value().element();
  const PositiveElement ew = expm(sandwich(isq, v));
  return PositiveElement::certify(sandwich(sq, ew.value()));
}

HermitianElement log_map(const PositiveElement& p, const PositiveElement& q) {
  require_same_algebra(p.algebra(), q.algebra());
  const AlgebraElement sq = p.power(0.5).value().element();
  const AlgebraElement isq = p.power(-0.5).value().element();
  const PositiveElement middle = PositiveElement::certify(sandwich(isq, q.value()));
  return sandwich(sq, middle.log());
}

double dist(const PositiveElement& a, const PositiveElement& b) {
  require_same_algebra(a.algebra(), b.algebra());
  const AlgebraElement isq = a.power(-0.5).value().element();
  const PositiveElement middle = PositiveElement::certify(sandwich(isq, b.value()));
  return norm2(middle.log());
}

HermitianElement dexp(const HermitianElement& x, const HermitianElement& y) {
  return divided_difference_apply(exp_function(), x, y);
}

double emi_slack(const HermitianElement& x, const HermitianElement& y) {
  const AlgebraElement e_minus_x = expm(-x).value().element();
  const AlgebraElement z = e_minus_x * dexp(x, y).element();
  return norm2(z) - norm2(y);
}

HermitianElement t_operator(const HermitianElement& x, const HermitianElement& y) {
  return scale_in_eigenbasis(
      x, y, [](double li, double lj) { return sinhc(0.5 * (li - lj)); });
}

HermitianElement t_operator_inverse(const HermitianElement& x,
                                    const HermitianElement& z) {
  return scale_in_eigenbasis(
      x, z, [](double li, double lj) { return 1.0 / sinhc(0.5 * (li - lj)); });
}

HermitianElement curvature(const PositiveElement& a, const HermitianElement& x,
                           const HermitianElement& y, const HermitianElement& z) {
  require_same_algebra(a.algebra(), x.algebra());
  require_same_algebra(a.algebra(), y.algebra());
  require_same_algebra(a.algebra(), z.algebra());
  const AlgebraElement ai = a.inverse().value().element();
  const AlgebraElement inner =
      commutator(commutator(ai * x.element(), ai * y.element()), ai * z.element());
  return HermitianElement(-0.25 * (a.value().element() * inner));
}

double sectional_numerator(const PositiveElement& a, const HermitianElement& x,
                           const HermitianElement& y) {
  return metric_inner(a, curvature(a, x, y, y), x);
}

HermitianElement jacobi_rhs(const HermitianElement& x, const HermitianElement& k) {
  const AlgebraElement& xm = x.element();
  const AlgebraElement x2 = xm * xm;
  const AlgebraElement r =
      k.element() * x2 + x2 * k.element() - 2.0 * (xm * k.element() * xm);
  return HermitianElement(0.25 * r);
}

JacobiSolution jacobi_integrate(const HermitianElement& x, const HermitianElement& k0,
                                const HermitianElement& kdot0, double t_end,
                                double step) {
  require_same_algebra(x.algebra(), k0.algebra());
  require_same_algebra(x.algebra(), kdot0.algebra());
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");

  const int n = std::max(1, static_cast<int>(std::llround(t_end / step)));
  const double h = t_end / n;

  const SpectralDecomposition xspec = eig_hermitian(x);
  const AlgebraElement x2 = x.element() * x.element();
  const auto rhs = [&](const AlgebraElement& k) {
    return 0.25 *
           (k * x2 + x2 * k - 2.0 * (x.element() * k * x.element()));
  };

  JacobiSolution sol{x, {}, {}, {}};
  sol.grid.reserve(n + 1);
  sol.k_values.reserve(n + 1);
  sol.j_values.reserve(n + 1);

  const auto half_frame = [&](double t) {
    // e^{t x / 2} from the cached eigenbasis of x
    std::vector<Matrix> blocks;
    for (int b = 0; b < x.block_count(); ++b) {
      const auto& vals = xspec.eigenvalues[b];
      const auto& u = xspec.eigenvectors[b];
      Eigen::VectorXd e(vals.size());
      for (int i = 0; i < vals.size(); ++i) e[i] = std::exp(0.5 * t * vals[i]);
      blocks.push_back(u * e.cast<Complex>().asDiagonal() * u.adjoint());
    }
    return AlgebraElement(x.algebra(), std::move(blocks));
  };

  AlgebraElement k = k0.element();
  AlgebraElement v = kdot0.element();
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    sol.grid.push_back(t);
    HermitianElement kh(k);
    sol.j_values.push_back(sandwich(half_frame(t), kh));
    sol.k_values.push_back(std::move(kh));
    if (i == n) break;

    const AlgebraElement a1 = v;
    const AlgebraElement b1 = rhs(k);
    const AlgebraElement a2 = v + 0.5 * h * b1;
    const AlgebraElement b2 = rhs(k + 0.5 * h * a1);
    const AlgebraElement a3 = v + 0.5 * h * b2;
    const AlgebraElement b3 = rhs(k + 0.5 * h * a2);
    const AlgebraElement a4 = v + h * b3;
    const AlgebraElement b4 = rhs(k + h * a3);
    k += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    v += (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
  }
  return sol;
}

double angle(const PositiveElement& p, const HermitianElement& u,
             const HermitianElement& v) {
  const double nu = metric_norm(p, u);
  const double nv = metric_norm(p, v);
  if (nu == 0.0 || nv == 0.0)
    throw std::invalid_argument("angle of a zero tangent vector is undefined");
  const double c = std::clamp(metric_inner(p, u, v) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

TriangleReport triangle_report(const PositiveElement& a, const PositiveElement& b,
                               const PositiveElement& c) {
  TriangleReport rep{};
  rep.side[0] = dist(b, c);
  rep.side[1] = dist(a, c);
  rep.side[2] = dist(a, b);
  for (double s : rep.side)
    if (s <= 1e-14) throw std::invalid_argument("triangle has coincident vertices");
  rep.angle[0] = angle(a, log_map(a, b), log_map(a, c));
  rep.angle[1] = angle(b, log_map(b, a), log_map(b, c));
  rep.angle[2] = angle(c, log_map(c, a), log_map(c, b));
  rep.angle_sum = rep.angle[0] + rep.angle[1] + rep.angle[2];
  return rep;
}

double curve_length(std::span<const PositiveElement> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("curve length needs at least two samples");
  double total = 0.0;
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const HermitianElement chord = samples[i + 1].value() - samples[i].value();
    const PositiveElement midpoint = PositiveElement::certify(
        0.5 * (samples[i].value() + samples[i + 1].value()));
    total += metric_norm(midpoint, chord);
  }
  return total;
}

double lower_bound_slack(const HermitianElement& x, const HermitianElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  return dist(expm(x), expm(y)) - norm2(x - y);
}

std::vector<std::pair<double, double>> convexity_profile(const Geodesic& g1,
                                                         const Geodesic& g2,
                                                         std::span<const double> grid) {
  std::vector<std::pair<double, double>> profile;
  profile.reserve(grid.size());
  for (double t : grid) profile.emplace_back(t, dist(g1.evaluate(t), g2.evaluate(t)));
  return profile;
}

PositiveElement geodesic_symmetry(const PositiveElement& p, const PositiveElement& q) {
  require_same_algebra(p.algebra(), q.algebra());
  const AlgebraElement qi = q.inverse().value().element();
  return PositiveElement::certify(
      HermitianElement(p.value().element() * qi * p.value().element()));
}

bool is_invertible(const AlgebraElement& g) {
  for (int b = 0; b < g.block_count(); ++b) {
    const Matrix& m = g.block(b);
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    const Matrix x = m.partialPivLu().solve(id);
    if (!x.allFinite() ||
        (m * x - id).norm() > 1e-8 * std::max(1.0, m.norm() * x.norm()))
      return false;
  }
  return true;
}

PositiveElement congruence(const AlgebraElement& g, const PositiveElement& a) {
  require_same_algebra(g.algebra(), a.algebra());
  if (!is_invertible(g))
    throw std::domain_error("congruence by a singular element");
  return PositiveElement::certify(
      HermitianElement(g * a.value().element() * g.adjoint()));
}

}  // namespace poscone
