#pragma once

#include "bmat/canonical.hpp"
#include "bmat/classes.hpp"
#include "bmat/core.hpp"
#include "bmat/densify_jl.hpp"

#include <json.hpp>

#include <string>

namespace bmat {

/// Matrix file layout: {"rows": n, "cols": m, "data": [[re, im], ...]} with
/// data row-major. Doubles round-trip exactly (shortest decimal form).
nlohmann::json matrix_to_json(const ComplexMatrix& A);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const ComplexMatrix& A);

nlohmann::json tolerance_to_json(const ToleranceConfig& cfg);
/// Missing keys keep their defaults; unknown keys are an IoError.
ToleranceConfig tolerance_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const StructureReport& rep);
nlohmann::json result_to_json(const DensifyResult& res);
nlohmann::json canonical_to_json(const CanonicalPairForm& cpf);

}  // namespace bmat
