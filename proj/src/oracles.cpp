#include "poscone/oracles.hpp"

#include <cmath>

namespace poscone::oracles {

namespace {

double metric_norm_spectral(const PositiveElement& at, const HermitianElement& chord) {
  const AlgebraElement isq = at.power(-0.5).value().element();
  const HermitianElement pulled(isq * chord.element() * isq);
  return norm2(pulled);
}

}  // namespace

HermitianElement dexp_quadrature(const HermitianElement& x, const HermitianElement& y,
                                 int panels) {
  require_same_algebra(x.algebra(), y.algebra());
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("Simpson quadrature needs an even panel count");

  const double h = 1.0 / panels;
  const auto integrand = [&](double t) {
    const AlgebraElement left = expm(t * x).value().element();
    const AlgebraElement right = expm((1.0 - t) * x).value().element();
    return left * y.element() * right;
  };

  AlgebraElement sum = integrand(0.0) + integrand(1.0);
  for (int i = 1; i < panels; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
  return HermitianElement((h / 3.0) * sum);
}

AlgebraElement finite_difference_derivative(
    const std::function<AlgebraElement(double)>& f, double t, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  return (1.0 / (2.0 * h)) * (f(t + h) - f(t - h));
}

double dist_spectral(const PositiveElement& a, const PositiveElement& b) {
  const AlgebraElement isq = a.power(-0.5).value().element();
  const HermitianElement pulled(isq * b.value().element() * isq);
  const PositiveElement middle = PositiveElement::certify(pulled);
  return norm2(middle.log());
}

double path_length_sampler(const std::function<PositiveElement(double)>& curve,
                           int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::vector<PositiveElement> points;
  points.reserve(samples);
  for (int i = 0; i < samples; ++i)
    points.push_back(curve(double(i) / (samples - 1)));

  double total = 0.0;
  for (int i = 0; i + 1 < samples; ++i) {
    const HermitianElement chord = points[i + 1].value() - points[i].value();
    const PositiveElement midpoint = PositiveElement::certify(
        0.5 * (points[i].value() + points[i + 1].value()));
    total += metric_norm_spectral(midpoint, chord);
  }
  return total;
}

PositiveElement projection_bruteforce(const std::vector<HermitianElement>& basis,
                                      const PositiveElement& r, double grid_radius,
                                      int refinement_rounds) {
  const int k = static_cast<int>(basis.size());
  if (k < 1 || k > 4)
    throw std::invalid_argument("brute-force projection handles 1 to 4 coordinates");
  for (const auto& b : basis) require_same_algebra(r.algebra(), b.algebra());

  const auto candidate = [&](const std::vector<double>& c) {
    HermitianElement exponent = HermitianElement::zero(r.algebra());
    for (int i = 0; i < k; ++i) exponent += c[i] * basis[i];
    return expm(exponent);
  };
  const auto objective = [&](const std::vector<double>& c) {
    return dist_spectral(r, candidate(c));
  };

  std::vector<double> center(k, 0.0);
  double best = objective(center);
  double radius = grid_radius;

  // dense grid scans, recentered and shrunk each round
  constexpr int kPointsPerAxis = 9;
  for (int round = 0; round < refinement_rounds; ++round) {
    std::vector<double> best_c = center;
    std::vector<int> idx(k, 0);
    while (true) {
      std::vector<double> c(k);
      for (int i = 0; i < k; ++i)
        c[i] = center[i] + radius * (2.0 * idx[i] / (kPointsPerAxis - 1) - 1.0);
      const double value = objective(c);
      if (value < best) {
        best = value;
        best_c = c;
      }
      int axis = 0;
      while (axis < k && ++idx[axis] == kPointsPerAxis) idx[axis++] = 0;
      if (axis == k) break;
    }
    center = best_c;
    radius *= 0.35;
  }

  // cyclic coordinate polish by golden-section on each axis
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double span = radius / 0.35;
  for (int cycle = 0; cycle < 40 && span > 1e-9; ++cycle) {
    for (int axis = 0; axis < k; ++axis) {
      double lo = center[axis] - span, hi = center[axis] + span;
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      auto eval = [&](double v) {
        std::vector<double> c = center;
        c[axis] = v;
        return objective(c);
      };
      double f1 = eval(x1), f2 = eval(x2);
      for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = eval(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = eval(x2);
        }
      }
      center[axis] = 0.5 * (lo + hi);
    }
    span *= 0.5;
  }
  return candidate(center);
}

}  // namespace poscone::oracles
