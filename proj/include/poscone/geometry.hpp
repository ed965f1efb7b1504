#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "poscone/algebra.hpp"

namespace poscone {

/// Riemannian inner product at a: <x,y>_a = tau(x a^{-1} y a^{-1}).
/// At a = 1 this is inner2. Invariant under congruence by invertibles.
double metric_inner(const PositiveElement& a, const HermitianElement& x,
                    const HermitianElement& y);
double metric_norm(const PositiveElement& a, const HermitianElement& x);

/// The geodesic through p with either a prescribed endpoint at t = 1 or a
/// prescribed initial velocity. Evaluation uses the closed form
/// p^{1/2} e^{t h} p^{1/2} with h = ln(p^{-1/2} q p^{-1/2}) respectively
/// h = p^{-1/2} v p^{-1/2}; p^{±1/2} and the eigenbasis of h are cached at
/// construction, so evaluation at many parameters is cheap.
class Geodesic {
 public:
  static Geodesic through(const PositiveElement& p, const PositiveElement& q);
  static Geodesic from_velocity(const PositiveElement& p, const HermitianElement& v);

  PositiveElement evaluate(double t) const;
  HermitianElement derivative(double t) const;

  const PositiveElement& start() const { return start_; }
  /// The Hermitian generator h; the curve is p^{1/2} e^{t h} p^{1/2}.
  const HermitianElement& generator() const { return generator_; }
  /// Constant speed ||h||_2 of the curve in the trace metric.
  double speed() const;

 private:
  Geodesic(PositiveElement start, HermitianElement generator);

  PositiveElement start_;
  HermitianElement generator_;
  SpectralDecomposition generator_spec_;
  AlgebraElement sqrt_start_;
  AlgebraElement inv_sqrt_start_;
};

/// Exp_p(v) = p^{1/2} e^{p^{-1/2} v p^{-1/2}} p^{1/2}.
PositiveElement exp_map(const PositiveElement& p, const HermitianElement& v);

/// Exp_p^{-1}(q) = p^{1/2} ln(p^{-1/2} q p^{-1/2}) p^{1/2}.
HermitianElement log_map(const PositiveElement& p, const PositiveElement& q);

/// Geodesic distance tau(ln(a^{-1/2} b a^{-1/2})^2)^{1/2}.
double dist(const PositiveElement& a, const PositiveElement& b);

/// Derivative of the exponential map, dexp_x(y) = d/dt e^{x+ty}|_{t=0};
/// evaluated through the first divided difference of exp at x.
HermitianElement dexp(const HermitianElement& x, const HermitianElement& y);

/// ||e^{-x} dexp_x(y)||_2 - ||y||_2. Nonnegative up to roundoff: the
/// exponential map increases the trace metric.
double emi_slack(const HermitianElement& x, const HermitianElement& y);

/// T_x(y) = e^{-x/2} dexp_x(y) e^{-x/2}. In the eigenbasis of x the entry
/// (i,j) of y is scaled by sinh(d/2)/(d/2) with d = l_i - l_j. Symmetric for
/// inner2; its inverse is a contraction of the 2-norm.
HermitianElement t_operator(const HermitianElement& x, const HermitianElement& y);
HermitianElement t_operator_inverse(const HermitianElement& x,
                                    const HermitianElement& z);

/// Curvature tensor R_a(x,y)z = -1/4 a [[a^{-1}x, a^{-1}y], a^{-1}z].
/// Antisymmetric in (x,y); the sectional numerator <R_a(x,y)y, x>_a is never
/// positive.
HermitianElement curvature(const PositiveElement& a, const HermitianElement& x,
                           const HermitianElement& y, const HermitianElement& z);

/// <R_a(x,y)y, x>_a, the (unnormalized) sectional curvature numerator.
double sectional_numerator(const PositiveElement& a, const HermitianElement& x,
                           const HermitianElement& y);

/// Jacobi field along e^{tx} in the symmetrized frame K(t) = e^{-tx/2} J e^{-tx/2},
/// where the field satisfies 4 K'' = K x^2 + x^2 K - 2 x K x.
struct JacobiSolution {
  HermitianElement generator;
  std::vector<double> grid;
  std::vector<HermitianElement> k_values;
  std::vector<HermitianElement> j_values;
};

/// Classical fixed-step RK4 for the transformed Jacobi equation.
JacobiSolution jacobi_integrate(const HermitianElement& x,
                                const HermitianElement& k0,
                                const HermitianElement& kdot0, double t_end,
                                double step);

/// Right side of the transformed Jacobi equation, (K x^2 + x^2 K - 2 x K x)/4.
HermitianElement jacobi_rhs(const HermitianElement& x, const HermitianElement& k);

/// Angle between tangent vectors at p, in [0, pi]. The cosine is clamped to
/// [-1, 1] before acos. Throws on a zero vector.
double angle(const PositiveElement& p, const HermitianElement& u,
             const HermitianElement& v);

struct TriangleReport {
  std::array<double, 3> side;   // side[i] opposite to vertex i
  std::array<double, 3> angle;  // inner angle at vertex i
  double angle_sum;
};

/// Side lengths and inner angles of the geodesic triangle (a, b, c); the
/// angle sum never exceeds pi. Throws on coincident vertices.
TriangleReport triangle_report(const PositiveElement& a, const PositiveElement& b,
                               const PositiveElement& c);

/// Discretized length of a sampled path: chord norms measured in the metric
/// at the linear midpoints. Needs at least two samples.
double curve_length(std::span<const PositiveElement> samples);

/// dist(e^x, e^y) - ||x - y||_2; nonnegative up to roundoff.
double lower_bound_slack(const HermitianElement& x, const HermitianElement& y);

/// Samples t -> dist(g1(t), g2(t)); the sampled function is convex.
std::vector<std::pair<double, double>> convexity_profile(const Geodesic& g1,
                                                         const Geodesic& g2,
                                                         std::span<const double> grid);

/// Geodesic symmetry sigma_p(q) = p q^{-1} p; reverses geodesics through p.
PositiveElement geodesic_symmetry(const PositiveElement& p, const PositiveElement& q);

/// Certifies invertibility by solving g X = 1 and checking the residual.
bool is_invertible(const AlgebraElement& g);

/// I_g(a) = g a g* for invertible g; an isometry of the trace metric.
/// Invertibility is certified by solving and checking the residual; throws
/// std::domain_error for a singular g.
PositiveElement congruence(const AlgebraElement& g, const PositiveElement& a);

}  // namespace poscone
