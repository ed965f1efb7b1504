#pragma once

#include <optional>
#include <span>
#include <variant>

#include "poscone/geometry.hpp"

namespace poscone {

/// A closed self-adjoint subspace H of the Hermitian part of the algebra,
/// held as a tau-orthonormal basis. M = e^H is the associated exponential set.
class Subspace {
 public:
  /// Gram-Schmidt under inner2. Numerically dependent generators are dropped
  /// at relative residual 1e-10; throws if everything drops out.
  static Subspace orthonormalize(const TracialAlgebra& algebra,
                                 std::span<const HermitianElement> generators);

  /// The zero subspace; the supplement of the full Hermitian part.
  static Subspace empty(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  const std::vector<HermitianElement>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

  /// tau-orthogonal projector P_H.
  HermitianElement project(const HermitianElement& x) const;

 private:
  Subspace(TracialAlgebra algebra, std::vector<HermitianElement> basis)
      : algebra_(std::move(algebra)), basis_(std::move(basis)) {}

  TracialAlgebra algebra_;
  std::vector<HermitianElement> basis_;
};

/// Counterexample to the double-bracket condition: [x,[x,y]] is not in H.
struct ClosureWitness {
  HermitianElement x;
  HermitianElement y;
  HermitianElement offending;  // [x,[x,y]]
  double residual;             // ||offending - P_H offending||_2
};

/// Checks [x,[x,y]] in H for all x,y in H via the polarized bilinear form on
/// basis triples: B(h_i,h_j;h_k) = [h_i,[h_j,h_k]] + [h_j,[h_i,h_k]]. Passing
/// is exact for the quadratic condition by bilinearity. On failure, the
/// lexicographically smallest witnessing triple is reported.
std::optional<ClosureWitness> check_double_bracket(const Subspace& h, double tol = 1e-9);

/// The exponential set M = e^H of a subspace whose double-bracket closure has
/// been certified; e^H is geodesically convex exactly for such subspaces.
class ConvexSubmanifold {
 public:
  /// Runs check_double_bracket; throws std::domain_error (with the witness
  /// description) when the subspace is not closed under double brackets.
  static ConvexSubmanifold certify(Subspace h, double tol = 1e-9);

  /// Witness-returning variant for callers that want the counterexample.
  static std::variant<ConvexSubmanifold, ClosureWitness> try_certify(
      Subspace h, double tol = 1e-9);

  const Subspace& subspace() const { return subspace_; }
  const TracialAlgebra& algebra() const { return subspace_.algebra(); }
  bool closure_certified() const { return closure_certified_; }

 private:
  ConvexSubmanifold(Subspace h, bool certified)
      : subspace_(std::move(h)), closure_certified_(certified) {}

  Subspace subspace_;
  bool closure_certified_;
};

/// a is in e^H iff ln(a) is in H, tested as
/// ||ln a - P_H ln a||_2 <= tol * (1 + ||ln a||_2).
bool membership(const ConvexSubmanifold& m, const PositiveElement& a,
                double tol = 1e-8);

/// Metric-orthogonal projector onto T_pM = p^{1/2} H p^{1/2}:
/// Q_p(v) = p^{1/2} P_H(p^{-1/2} v p^{-1/2}) p^{1/2}. Idempotent and
/// self-adjoint for the metric at p.
class TangentProjector {
 public:
  TangentProjector(const ConvexSubmanifold& m, const PositiveElement& p);

  HermitianElement apply(const HermitianElement& v) const;
  const PositiveElement& base() const { return base_; }

 private:
  Subspace subspace_;
  PositiveElement base_;
  AlgebraElement sqrt_base_;
  AlgebraElement inv_sqrt_base_;
};

/// Throws std::domain_error unless p is a member of M (within tol).
TangentProjector tangent_at(const ConvexSubmanifold& m, const PositiveElement& p,
                            double membership_tol = 1e-8);

/// The tau-orthogonal supplement S with A_h = H + S; dimensions add up to the
/// Hermitian dimension of the algebra.
Subspace orthogonal_supplement(const Subspace& h);

/// Membership of a b a for a, b in M; the numerical face of convexity.
bool aba_closure_test(const ConvexSubmanifold& m, const PositiveElement& a,
                      const PositiveElement& b, double tol = 1e-8);

/// Complex-linear extension of P_H; on the Hermitian part of a subalgebra it
/// is the trace-compatible conditional expectation.
AlgebraElement conditional_expectation(const Subspace& h, const AlgebraElement& a);

/// Named subspaces. diagonal, block_diagonal, full and single_generator are
/// closed under double brackets by construction.
Subspace diagonal_subspace(const TracialAlgebra& algebra);
Subspace full_subspace(const TracialAlgebra& algebra);
Subspace single_generator_subspace(const HermitianElement& x);
Subspace span_subspace(const TracialAlgebra& algebra,
                       std::span<const HermitianElement> generators);

/// Hermitian part of the block-diagonal subalgebra given by a partition of
/// the global coordinates 0..total_dim-1. Every coordinate must appear in
/// exactly one group, and no group may straddle an algebra block.
Subspace block_diagonal_subspace(const TracialAlgebra& algebra,
                                 const std::vector<std::vector<int>>& groups);

/// Orthonormal basis of the Hermitian part of the whole algebra.
std::vector<HermitianElement> hermitian_basis(const TracialAlgebra& algebra);

}  // namespace poscone
