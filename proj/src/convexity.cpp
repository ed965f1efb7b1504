#include "poscone/convexity.hpp"

#include <cmath>
#include <sstream>

namespace poscone {

namespace {

HermitianElement double_bracket(const HermitianElement& x, const HermitianElement& y) {
  // [x,[x,y]] is Hermitian for Hermitian x, y
  return HermitianElement(
      commutator(x.element(), commutator(x.element(), y.element())));
}

HermitianElement polarized_bracket(const HermitianElement& a, const HermitianElement& b,
                                   const HermitianElement& c) {
  return HermitianElement(
      commutator(a.element(), commutator(b.element(), c.element())) +
      commutator(b.element(), commutator(a.element(), c.element())));
}

}  // namespace

Subspace Subspace::orthonormalize(const TracialAlgebra& algebra,
                                  std::span<const HermitianElement> generators) {
  if (generators.empty())
    throw std::invalid_argument("subspace needs at least one generator");
  std::vector<HermitianElement> basis;
  for (const auto& g : generators) {
    require_same_algebra(algebra, g.algebra());
    const double original = norm2(g);
    HermitianElement r = g;
    // two Gram-Schmidt passes keep the basis orthonormal to roundoff
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) r -= inner2(r, b) * b;
    const double left = norm2(r);
    if (left <= 1e-10 * (1.0 + original)) continue;  // dependent generator
    basis.push_back((1.0 / left) * r);
  }
  if (basis.empty())
    throw std::invalid_argument("all generators are numerically zero");
  return Subspace(algebra, std::move(basis));
}

Subspace Subspace::empty(const TracialAlgebra& algebra) {
  return Subspace(algebra, {});
}

HermitianElement Subspace::project(const HermitianElement& x) const {
  require_same_algebra(algebra_, x.algebra());
  HermitianElement p = HermitianElement::zero(algebra_);
  for (const auto& b : basis_) p += inner2(x, b) * b;
  return p;
}

std::optional<ClosureWitness> check_double_bracket(const Subspace& h, double tol) {
  const auto& basis = h.basis();
  const int n = h.dimension();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const HermitianElement b = polarized_bracket(basis[i], basis[j], basis[k]);
        const double residual = norm2(b - h.project(b));
        if (residual > tol) {
          // translate the failing triple into an (x, y) pair with
          // [x,[x,y]] outside H
          const HermitianElement x =
              i == j ? basis[i] : basis[i] + basis[j];
          const HermitianElement& y = basis[k];
          const HermitianElement off = double_bracket(x, y);
          return ClosureWitness{x, y, off, norm2(off - h.project(off))};
        }
      }
    }
  }
  return std::nullopt;
}

ConvexSubmanifold ConvexSubmanifold::certify(Subspace h, double tol) {
  auto result = try_certify(std::move(h), tol);
  if (auto* witness = std::get_if<ClosureWitness>(&result)) {
    std::ostringstream msg;
    msg << "subspace is not closed under double brackets (residual "
        << witness->residual << ")";
    throw std::domain_error(msg.str());
  }
  return std::get<ConvexSubmanifold>(std::move(result));
}

std::variant<ConvexSubmanifold, ClosureWitness> ConvexSubmanifold::try_certify(
    Subspace h, double tol) {
  if (auto witness = check_double_bracket(h, tol)) return *witness;
  return ConvexSubmanifold(std::move(h), true);
}

bool membership(const ConvexSubmanifold& m, const PositiveElement& a, double tol) {
  require_same_algebra(m.algebra(), a.algebra());
  const HermitianElement ln_a = a.log();
  const double residual = norm2(ln_a - m.subspace().project(ln_a));
  return residual <= tol * (1.0 + norm2(ln_a));
}

TangentProjector::TangentProjector(const ConvexSubmanifold& m, const PositiveElement& p)
    : subspace_(m.subspace()),
      base_(p),
      sqrt_base_(p.power(0.5).value().element()),
      inv_sqrt_base_(p.power(-0.5).value().element()) {}

HermitianElement TangentProjector::apply(const HermitianElement& v) const {
  const HermitianElement pulled(inv_sqrt_base_ * v.element() * inv_sqrt_base_);
  const HermitianElement projected = subspace_.project(pulled);
  return HermitianElement(sqrt_base_ * projected.element() * sqrt_base_);
}

TangentProjector tangent_at(const ConvexSubmanifold& m, const PositiveElement& p,
                            double membership_tol) {
  if (!membership(m, p, membership_tol))
    throw std::domain_error("base point is not a member of the submanifold");
  return TangentProjector(m, p);
}

Subspace orthogonal_supplement(const Subspace& h) {
  const auto full = hermitian_basis(h.algebra());
  std::vector<HermitianElement> generators;
  for (const auto& e : full) {
    HermitianElement r = e - h.project(e);
    if (norm2(r) > 1e-10) generators.push_back(std::move(r));
  }
  if (generators.empty()) return Subspace::empty(h.algebra());
  return Subspace::orthonormalize(h.algebra(), generators);
}

bool aba_closure_test(const ConvexSubmanifold& m, const PositiveElement& a,
                      const PositiveElement& b, double tol) {
  if (!membership(m, a, tol) || !membership(m, b, tol))
    throw std::invalid_argument("aba test expects members of the submanifold");
  const PositiveElement aba = PositiveElement::certify(HermitianElement(
      a.value().element() * b.value().element() * a.value().element()));
  return membership(m, aba, tol);
}

AlgebraElement conditional_expectation(const Subspace& h, const AlgebraElement& a) {
  require_same_algebra(h.algebra(), a.algebra());
  const HermitianElement re(0.5 * (a + a.adjoint()));
  const HermitianElement im(Complex(0.0, -0.5) * (a - a.adjoint()));
  return h.project(re).element() + Complex(0.0, 1.0) * h.project(im).element();
}

std::vector<HermitianElement> hermitian_basis(const TracialAlgebra& algebra) {
  std::vector<HermitianElement> basis;
  const double isq2 = 1.0 / std::sqrt(2.0);
  for (int b = 0; b < algebra.block_count(); ++b) {
    const int d = algebra.block_dim(b);
    auto unit = [&](const Matrix& m) {
      auto e = AlgebraElement::zero(algebra);
      e.block(b) = m;
      return HermitianElement(std::move(e));
    };
    for (int i = 0; i < d; ++i) {
      Matrix m = Matrix::Zero(d, d);
      m(i, i) = 1.0;
      basis.push_back(unit(m));
    }
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        Matrix re = Matrix::Zero(d, d);
        re(i, j) = isq2;
        re(j, i) = isq2;
        basis.push_back(unit(re));
        Matrix im = Matrix::Zero(d, d);
        im(i, j) = Complex(0.0, isq2);
        im(j, i) = Complex(0.0, -isq2);
        basis.push_back(unit(im));
      }
    }
  }
  return basis;
}

Subspace diagonal_subspace(const TracialAlgebra& algebra) {
  std::vector<HermitianElement> generators;
  for (int b = 0; b < algebra.block_count(); ++b) {
    const int d = algebra.block_dim(b);
    for (int i = 0; i < d; ++i) {
      auto e = AlgebraElement::zero(algebra);
      e.block(b)(i, i) = 1.0;
      generators.push_back(HermitianElement(std::move(e)));
    }
  }
  return Subspace::orthonormalize(algebra, generators);
}

Subspace full_subspace(const TracialAlgebra& algebra) {
  return Subspace::orthonormalize(algebra, hermitian_basis(algebra));
}

Subspace single_generator_subspace(const HermitianElement& x) {
  return Subspace::orthonormalize(x.algebra(), std::vector<HermitianElement>{x});
}

Subspace span_subspace(const TracialAlgebra& algebra,
                       std::span<const HermitianElement> generators) {
  return Subspace::orthonormalize(algebra, generators);
}

Subspace block_diagonal_subspace(const TracialAlgebra& algebra,
                                 const std::vector<std::vector<int>>& groups) {
  const int total = algebra.total_dim();
  std::vector<int> block_of(total), offset_of(total), seen(total, 0);
  {
    int pos = 0;
    for (int b = 0; b < algebra.block_count(); ++b)
      for (int i = 0; i < algebra.block_dim(b); ++i, ++pos) {
        block_of[pos] = b;
        offset_of[pos] = i;
      }
  }
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("empty partition group");
    for (int idx : g) {
      if (idx < 0 || idx >= total)
        throw std::invalid_argument("partition index out of range");
      if (seen[idx]++) throw std::invalid_argument("partition index repeated");
      if (block_of[idx] != block_of[g.front()])
        throw std::invalid_argument("partition group straddles algebra blocks");
    }
  }
  for (int idx = 0; idx < total; ++idx)
    if (!seen[idx]) throw std::invalid_argument("partition does not cover every index");

  std::vector<HermitianElement> generators;
  for (const auto& g : groups) {
    const int b = block_of[g.front()];
    for (size_t s = 0; s < g.size(); ++s) {
      for (size_t t = s; t < g.size(); ++t) {
        const int i = offset_of[g[s]], j = offset_of[g[t]];
        auto e = AlgebraElement::zero(algebra);
        if (s == t) {
          e.block(b)(i, i) = 1.0;
          generators.push_back(HermitianElement(std::move(e)));
        } else {
          e.block(b)(i, j) = 1.0;
          e.block(b)(j, i) = 1.0;
          generators.push_back(HermitianElement(std::move(e)));
          auto f = AlgebraElement::zero(algebra);
          f.block(b)(i, j) = Complex(0.0, 1.0);
          f.block(b)(j, i) = Complex(0.0, -1.0);
          generators.push_back(HermitianElement(std::move(f)));
        }
      }
    }
  }
  return Subspace::orthonormalize(algebra, generators);
}

}  // namespace poscone
