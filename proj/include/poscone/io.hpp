#pragma once

#include <string>

#include <json.hpp>

#include "poscone/convexity.hpp"
#include "poscone/projection.hpp"

namespace poscone::io {

using nlohmann::json;

// Element files carry their algebra: one dim/weight record per block and
// row-major re/im entries per block. Doubles round-trip bit-exactly.

json algebra_to_json(const TracialAlgebra& algebra);
TracialAlgebra algebra_from_json(const json& j);

json blocks_to_json(const AlgebraElement& a);
AlgebraElement blocks_from_json(const TracialAlgebra& algebra, const json& j);

json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const json& j);
HermitianElement hermitian_from_json(const json& j);
PositiveElement positive_from_json(const json& j);

json subspace_to_json(const Subspace& h);
/// Parses generators and orthonormalizes them.
Subspace subspace_from_json(const json& j);

json projection_to_json(const ProjectionResult& r);
json symmetric_factorization_to_json(const SymmetricFactorization& f);
json masa_factorization_to_json(const MasaFactorization& f);
json iwasawa_factorization_to_json(const IwasawaFactorization& f);
json closure_witness_to_json(const ClosureWitness& w);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace poscone::io
