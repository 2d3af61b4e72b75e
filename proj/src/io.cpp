#include "bmat/io.hpp"

#include <cmath>
#include <fstream>

namespace bmat {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& A) {
    json data = json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            data.push_back({A(i, j).real(), A(i, j).imag()});
    return json{{"rows", A.rows()}, {"cols", A.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw IoError("matrix: expected an object with rows, cols, data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw IoError("matrix: rows and cols must be integers");
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 1 || cols < 1) throw IoError("matrix: rows and cols must be positive");
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != static_cast<size_t>(rows * cols))
        throw IoError("matrix: data length must equal rows * cols");
    ComplexMatrix A(rows, cols);
    size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jj = 0; jj < cols; ++jj, ++k) {
            const auto& e = data[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw IoError("matrix: each entry must be a [re, im] number pair");
            A(i, jj) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    if (!all_finite(A)) throw IoError("matrix: entries must be finite");
    return A;
}

ComplexMatrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_matrix(const std::string& path, const ComplexMatrix& A) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << matrix_to_json(A).dump(2) << "\n";
    if (!out) throw IoError("write failed for " + path);
}

json tolerance_to_json(const ToleranceConfig& cfg) {
    return json{{"eq_tol", cfg.eq_tol},
                {"rank_tol", cfg.rank_tol},
                {"gap_tol", cfg.gap_tol},
                {"cluster_tol", cfg.cluster_tol}};
}

ToleranceConfig tolerance_from_json(const json& j) {
    if (!j.is_object()) throw IoError("tolerances: expected an object");
    ToleranceConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number())
            throw IoError("tolerances: " + it.key() + " must be a number");
        const double v = it.value().get<double>();
        if (it.key() == "eq_tol")
            cfg.eq_tol = v;
        else if (it.key() == "rank_tol")
            cfg.rank_tol = v;
        else if (it.key() == "gap_tol")
            cfg.gap_tol = v;
        else if (it.key() == "cluster_tol")
            cfg.cluster_tol = v;
        else
            throw IoError("tolerances: unknown key " + it.key());
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw IoError(std::string("tolerances: ") + e.what());
    }
    return cfg;
}

json report_to_json(const StructureReport& rep) {
    json ms = json::array();
    for (StructureClass c : rep.memberships) ms.push_back(to_string(c));
    return json{{"res_J", rep.res_J},
                {"res_L", rep.res_L},
                {"res_G", rep.res_G},
                {"res_N", rep.res_N},
                {"memberships", std::move(ms)}};
}

namespace {
// JSON has no inf; report the log-discriminant of a repeated spectrum as null
json finite_or_null(double v) {
    if (std::isfinite(v)) return json(v);
    return json(nullptr);
}
}  // namespace

json result_to_json(const DensifyResult& res) {
    return json{{"perturbed", matrix_to_json(res.perturbed)},
                {"distance", res.distance},
                {"class_residual", res.class_residual},
                {"discriminant_mag", res.discriminant_mag},
                {"log_discriminant", finite_or_null(res.log_discriminant)},
                {"min_gap", finite_or_null(res.min_gap)},
                {"c_used", {res.c_used.real(), res.c_used.imag()}}};
}

json canonical_to_json(const CanonicalPairForm& cpf) {
    json blocks = json::array();
    for (const CanonicalBlock& b : cpf.blocks)
        blocks.push_back(json{{"size", b.size},
                              {"eigenvalue", {b.eigenvalue.real(), b.eigenvalue.imag()}},
                              {"real_eigenvalue", b.real_eigenvalue},
                              {"eta", b.eta}});
    json etas = json::array();
    for (int e : cpf.etas()) etas.push_back(e);
    json sizes = json::array();
    for (int s : cpf.block_sizes()) sizes.push_back(s);
    return json{{"T", matrix_to_json(cpf.T)},
                {"J", matrix_to_json(cpf.J)},
                {"blocks", std::move(blocks)},
                {"block_sizes", std::move(sizes)},
                {"eta", std::move(etas)},
                {"residual_A", cpf.residual_A},
                {"residual_B", cpf.residual_B},
                {"cond_T", cpf.cond_T}};
}

}  // namespace bmat
