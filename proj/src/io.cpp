#include "poscone/io.hpp"

#include <fstream>

namespace poscone::io {

json algebra_to_json(const TracialAlgebra& algebra) {
  json blocks = json::array();
  for (const auto& b : algebra.blocks())
    blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  return json{{"blocks", std::move(blocks)}};
}

TracialAlgebra algebra_from_json(const json& j) {
  std::vector<BlockShape> blocks;
  for (const auto& b : j.at("blocks"))
    blocks.push_back(BlockShape{b.at("dim").get<int>(), b.at("weight").get<double>()});
  return TracialAlgebra(std::move(blocks));
}

json blocks_to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (int b = 0; b < a.block_count(); ++b) {
    const Matrix& m = a.block(b);
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json re_row = json::array(), im_row = json::array();
      for (int j2 = 0; j2 < m.cols(); ++j2) {
        re_row.push_back(m(i, j2).real());
        im_row.push_back(m(i, j2).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    blocks.push_back({{"re", std::move(re)}, {"im", std::move(im)}});
  }
  return blocks;
}

AlgebraElement blocks_from_json(const TracialAlgebra& algebra, const json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != algebra.block_count())
    throw std::invalid_argument("element blocks do not match the algebra");
  std::vector<Matrix> blocks;
  for (int b = 0; b < algebra.block_count(); ++b) {
    const int d = algebra.block_dim(b);
    const auto& re = j[b].at("re");
    const auto& im = j[b].at("im");
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
      throw std::invalid_argument("block row count does not match the algebra");
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d)
        throw std::invalid_argument("block column count does not match the algebra");
      for (int c = 0; c < d; ++c)
        m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(algebra, std::move(blocks));
}

json element_to_json(const AlgebraElement& a) {
  return json{{"algebra", algebra_to_json(a.algebra())},
              {"blocks", blocks_to_json(a)}};
}

AlgebraElement element_from_json(const json& j) {
  const TracialAlgebra algebra = algebra_from_json(j.at("algebra"));
  return blocks_from_json(algebra, j.at("blocks"));
}

HermitianElement hermitian_from_json(const json& j) {
  return HermitianElement(element_from_json(j));
}

PositiveElement positive_from_json(const json& j) {
  return PositiveElement::certify(hermitian_from_json(j));
}

json subspace_to_json(const Subspace& h) {
  json generators = json::array();
  for (const auto& b : h.basis()) generators.push_back(blocks_to_json(b.element()));
  return json{{"algebra", algebra_to_json(h.algebra())},
              {"generators", std::move(generators)}};
}

Subspace subspace_from_json(const json& j) {
  const TracialAlgebra algebra = algebra_from_json(j.at("algebra"));
  std::vector<HermitianElement> generators;
  for (const auto& g : j.at("generators"))
    generators.push_back(HermitianElement(blocks_from_json(algebra, g)));
  return Subspace::orthonormalize(algebra, generators);
}

json projection_to_json(const ProjectionResult& r) {
  return json{{"foot", element_to_json(r.foot.value().element())},
              {"velocity", element_to_json(r.velocity.element())},
              {"orthogonality_residual", r.orthogonality_residual},
              {"iterations", r.iterations},
              {"converged", r.converged}};
}

json symmetric_factorization_to_json(const SymmetricFactorization& f) {
  const PositiveElement foot = expm(2.0 * f.y);
  return json{{"foot", element_to_json(foot.value().element())},
              {"y", element_to_json(f.y.element())},
              {"w", element_to_json(f.w.element())},
              {"residuals",
               {{"reconstruction", f.reconstruction_residual},
                {"orthogonality", f.orthogonality_residual}}},
              {"iterations", f.iterations}};
}

json masa_factorization_to_json(const MasaFactorization& f) {
  return json{{"d", element_to_json(f.d.value().element())},
              {"v", element_to_json(f.v.element())},
              {"residuals",
               {{"reconstruction", f.reconstruction_residual},
                {"diagonal", f.diagonal_residual}}},
              {"iterations", f.iterations}};
}

json iwasawa_factorization_to_json(const IwasawaFactorization& f) {
  return json{{"x", element_to_json(f.x.element())},
              {"y", element_to_json(f.y.element())},
              {"u", element_to_json(f.u)},
              {"residuals",
               {{"reconstruction", f.reconstruction_residual},
                {"unitarity", f.unitarity_residual}}},
              {"iterations", f.iterations}};
}

json closure_witness_to_json(const ClosureWitness& w) {
  return json{{"x", element_to_json(w.x.element())},
              {"y", element_to_json(w.y.element())},
              {"offending", element_to_json(w.offending.element())},
              {"residual", w.residual}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace poscone::io
