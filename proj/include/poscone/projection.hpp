#pragma once

#include "poscone/convexity.hpp"

namespace poscone {

/// Outcome of the orthogonal projection onto M. The pair (foot, velocity)
/// lies in the normal bundle: exp_map(foot, velocity) recovers the input and
/// velocity is metric-orthogonal to every tangent direction of M at the foot.
struct ProjectionResult {
  PositiveElement foot;
  HermitianElement velocity;       // log_map(foot, input)
  double orthogonality_residual;   // max_h |<velocity, p^{1/2} h p^{1/2}>_p|
  int iterations;
  bool converged;
};

struct ProjectionOptions {
  /// Residual tolerance scale; the test at iterate p is
  /// residual <= tol_scale * (1 + dist(r, p)).
  double tol_scale = 1e-10;
  int max_iter = 500;
  /// Optional custom starting foot (must lie in M); defaults to
  /// e^{P_H ln r}, which is exact in commuting configurations.
  std::optional<PositiveElement> initial;
};

/// Distance-minimizing projection onto M = e^H: Riemannian gradient descent
/// on phi(p) = dist^2(r, p) along M with Armijo backtracking. phi is convex
/// along the geodesics of M, so the unique stationary point is the foot.
/// Non-convergence is reported through the result, never silently.
/// Throws std::domain_error when r is hopelessly far away (dist > 50).
ProjectionResult project(const ConvexSubmanifold& m, const PositiveElement& r,
                         const ProjectionOptions& options = {});

/// dist(r, s) - dist(Pi_M r, Pi_M s); nonnegative up to tolerance because the
/// projection is contractive. Throws NumericalError when a projection fails.
double contractivity_slack(const ConvexSubmanifold& m, const PositiveElement& r,
                           const PositiveElement& s,
                           const ProjectionOptions& options = {});

/// e^z = e^y e^w e^y with y in H and w tau-orthogonal to H; e^{2y} is the
/// projection of e^z onto M.
struct SymmetricFactorization {
  HermitianElement y;
  HermitianElement w;
  double reconstruction_residual;  // ||e^z - e^y e^w e^y||_2 / ||e^z||_2
  double orthogonality_residual;   // ||P_H w||_2
  int iterations;
};

SymmetricFactorization factor_symmetric(const ConvexSubmanifold& m,
                                        const HermitianElement& z,
                                        const ProjectionOptions& options = {});

/// e^x = d e^v d against the diagonal masa: d positive diagonal, v with zero
/// diagonal.
struct MasaFactorization {
  PositiveElement d;
  HermitianElement v;
  double reconstruction_residual;  // ||e^x - d e^v d||_2 / ||e^x||_2
  double diagonal_residual;        // largest |diagonal entry of v|
  int iterations;
};

MasaFactorization factor_masa(const TracialAlgebra& algebra,
                              const HermitianElement& x,
                              const ProjectionOptions& options = {});

/// g = e^x e^y u with x in H, y in the tau-orthogonal supplement of H and u
/// unitary; obtained from the symmetric factorization of g g*.
struct IwasawaFactorization {
  HermitianElement x;
  HermitianElement y;
  AlgebraElement u;
  double reconstruction_residual;  // ||g - e^x e^y u||_2 / ||g||_2
  double unitarity_residual;       // ||u u* - 1||_2
  int iterations;
};

IwasawaFactorization factor_iwasawa(const ConvexSubmanifold& m,
                                    const AlgebraElement& g,
                                    const ProjectionOptions& options = {});

}  // namespace poscone
