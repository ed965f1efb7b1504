#include "poscone/projection.hpp"

#include <cmath>
#include <limits>

namespace poscone {

namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kStepFloor = 1e-12;
constexpr double kMaxDistance = 50.0;

HermitianElement sandwich(const AlgebraElement& s, const HermitianElement& x) {
  return HermitianElement(s * x.element() * s);
}

}  // namespace

ProjectionResult project(const ConvexSubmanifold& m, const PositiveElement& r,
                         const ProjectionOptions& options) {
  require_same_algebra(m.algebra(), r.algebra());
  const Subspace& h = m.subspace();

  PositiveElement p =
      options.initial ? *options.initial : expm(h.project(r.log()));
  if (dist(r, p) > kMaxDistance)
    throw std::domain_error(
        "input is too far from the submanifold for double precision");

  double last_step = std::numeric_limits<double>::infinity();
  int iterations = 0;
  for (; iterations <= options.max_iter; ++iterations) {
    const AlgebraElement sqrt_p = p.power(0.5).value().element();
    const AlgebraElement inv_sqrt_p = p.power(-0.5).value().element();

    // w = p^{-1/2} log_map(p, r) p^{-1/2} = ln(p^{-1/2} r p^{-1/2});
    // distances and residuals all read off w.
    const PositiveElement pulled =
        PositiveElement::certify(sandwich(inv_sqrt_p, r.value()));
    const HermitianElement w = pulled.log();
    const double distance = norm2(w);

    double residual = 0.0;
    for (const auto& basis : h.basis())
      residual = std::max(residual, std::abs(inner2(w, basis)));
    const HermitianElement gradient_pulled = h.project(w);
    const double gradient_norm = norm2(gradient_pulled);

    const double tol = options.tol_scale * (1.0 + distance);
    if (residual <= tol && (gradient_norm <= kStepFloor || last_step <= kStepFloor)) {
      return ProjectionResult{p, sandwich(sqrt_p, w), residual, iterations, true};
    }
    if (iterations == options.max_iter) {
      return ProjectionResult{p, sandwich(sqrt_p, w), residual, iterations, false};
    }

    // Armijo backtracking on phi = dist^2 along p -> exp_map(p, s * grad)
    const double phi_old = distance * distance;
    double step = 1.0;
    PositiveElement candidate = p;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      // stepping inside M: candidate = p^{1/2} e^{s P_H(w)} p^{1/2},
      // re-expressed through an exponent of H so roundoff never drifts the
      // iterate off the set
      const PositiveElement stepped = PositiveElement::certify(
          sandwich(sqrt_p, expm(step * gradient_pulled).value()));
      candidate = expm(h.project(stepped.log()));
      const double phi_new = dist(r, candidate) * dist(r, candidate);
      if (phi_new <= phi_old - kArmijoSlope * step * gradient_norm * gradient_norm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // no observable decrease left; the attempted step is below the floor,
      // so this is convergence exactly when the residual already passes
      return ProjectionResult{p, sandwich(sqrt_p, w), residual, iterations + 1,
                              residual <= tol};
    }
    last_step = step * gradient_norm;
    p = candidate;
  }
  // unreachable; the loop returns from inside
  throw NumericalError("projection loop exited abnormally");
}

double contractivity_slack(const ConvexSubmanifold& m, const PositiveElement& r,
                           const PositiveElement& s,
                           const ProjectionOptions& options) {
  const ProjectionResult pr = project(m, r, options);
  const ProjectionResult ps = project(m, s, options);
  if (!pr.converged || !ps.converged)
    throw NumericalError("projection did not converge");
  return dist(r, s) - dist(pr.foot, ps.foot);
}

SymmetricFactorization factor_symmetric(const ConvexSubmanifold& m,
                                        const HermitianElement& z,
                                        const ProjectionOptions& options) {
  require_same_algebra(m.algebra(), z.algebra());
  const PositiveElement ez = expm(z);
  const ProjectionResult result = project(m, ez, options);
  if (!result.converged)
    throw NumericalError("projection did not converge during factorization");

  const HermitianElement y = 0.5 * m.subspace().project(result.foot.log());
  const AlgebraElement e_minus_y = expm(-y).value().element();
  const PositiveElement middle = PositiveElement::certify(
      HermitianElement(e_minus_y * ez.value().element() * e_minus_y));
  const HermitianElement w = middle.log();

  const AlgebraElement e_y = expm(y).value().element();
  const AlgebraElement rebuilt = e_y * expm(w).value().element() * e_y;
  const double recon =
      norm2(rebuilt - ez.value().element()) / norm2(ez.value());
  const double orth = norm2(m.subspace().project(w));
  return SymmetricFactorization{y, w, recon, orth, result.iterations};
}

MasaFactorization factor_masa(const TracialAlgebra& algebra,
                              const HermitianElement& x,
                              const ProjectionOptions& options) {
  require_same_algebra(algebra, x.algebra());
  const ConvexSubmanifold masa =
      ConvexSubmanifold::certify(diagonal_subspace(algebra));
  const SymmetricFactorization sym = factor_symmetric(masa, x, options);
  const PositiveElement d = expm(sym.y);

  double diag_residual = 0.0;
  for (int b = 0; b < sym.w.block_count(); ++b)
    for (int i = 0; i < sym.w.block(b).rows(); ++i)
      diag_residual = std::max(diag_residual, std::abs(sym.w.block(b)(i, i)));
  return MasaFactorization{d, sym.w, sym.reconstruction_residual, diag_residual,
                           sym.iterations};
}

IwasawaFactorization factor_iwasawa(const ConvexSubmanifold& m,
                                    const AlgebraElement& g,
                                    const ProjectionOptions& options) {
  require_same_algebra(m.algebra(), g.algebra());
  if (!is_invertible(g))
    throw std::domain_error("iwasawa factorization of a singular element");
  const PositiveElement gg =
      PositiveElement::certify(HermitianElement(g * g.adjoint()));

  const SymmetricFactorization sym = factor_symmetric(m, gg.log(), options);
  const HermitianElement x = sym.y;
  const HermitianElement y = 0.5 * sym.w;

  const AlgebraElement u =
      expm(-y).value().element() * (expm(-x).value().element() * g);
  const AlgebraElement rebuilt =
      expm(x).value().element() * (expm(y).value().element() * u);
  const double recon = norm2(rebuilt - g) / norm2(g);
  const double unit =
      norm2(u * u.adjoint() - AlgebraElement::identity(g.algebra()));
  return IwasawaFactorization{x, y, u, recon, unit, sym.iterations};
}

}  // namespace poscone
