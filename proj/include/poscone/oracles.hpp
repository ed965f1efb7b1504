#pragma once

#include <functional>
#include <string>

#include "poscone/algebra.hpp"

// Reference implementations used by tests and the verify suites. Everything
// here is built directly on the algebra layer, independent of the code paths
// it cross-checks, so agreement is evidence rather than tautology.

namespace poscone::oracles {

/// Composite Simpson evaluation of the integral of e^{tx} y e^{(1-t)x} over
/// [0,1]. panels must be even and at least 2.
HermitianElement dexp_quadrature(const HermitianElement& x, const HermitianElement& y,
                                 int panels);

/// Central difference (f(t+h) - f(t-h)) / 2h for an element-valued curve.
AlgebraElement finite_difference_derivative(
    const std::function<AlgebraElement(double)>& f, double t, double h);

/// Geodesic distance computed from scratch through spectral calculus.
double dist_spectral(const PositiveElement& a, const PositiveElement& b);

/// Discretized length of a curve of positive elements on a uniform grid of
/// the given sample count: chord norms in the metric at linear midpoints.
double path_length_sampler(const std::function<PositiveElement(double)>& curve,
                           int samples);

/// Brute-force minimizer of dist(r, e^{sum c_i h_i}) over the coordinates of
/// a small subspace basis (at most 4 generators): iteratively refined dense
/// grid scan followed by a cyclic coordinate polish.
PositiveElement projection_bruteforce(const std::vector<HermitianElement>& basis,
                                      const PositiveElement& r,
                                      double grid_radius = 3.0,
                                      int refinement_rounds = 6);

/// The outcome of one verified property sweep.
struct OracleReport {
  std::string name;
  int instances = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::uint64_t worst_seed = 0;
};

}  // namespace poscone::oracles
