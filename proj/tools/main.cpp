#include "bmat/canonical.hpp"
#include "bmat/cayley.hpp"
#include "bmat/classes.hpp"
#include "bmat/core.hpp"
#include "bmat/densify_jl.hpp"
#include "bmat/densify_n.hpp"
#include "bmat/generate.hpp"
#include "bmat/io.hpp"
#include "bmat/product.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

namespace {

using bmat::ComplexMatrix;
using nlohmann::json;

struct Options {
    std::string a_path;
    std::string b_path;
    std::string klass = "J";
    double eps = 0.1;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string config_path;
    double eq_tol = -1.0, rank_tol = -1.0, gap_tol = -1.0, cluster_tol = -1.0;
    bool inverse = false;  // cayley direction

    // generate-specific
    std::string kind;
    Eigen::Index n = 2;
    std::string out_a = "A.json";
    std::string out_b = "B.json";
    std::string in_a, in_b;
    bool skew = false;
    double cond_bound = 100.0;

    CLI::App* parsed = nullptr;  // the active subcommand, for flag-presence checks

    bool given(const std::string& flag) const {
        return parsed != nullptr && parsed->get_option_no_throw(flag) != nullptr &&
               parsed->count(flag) > 0;
    }
};

void add_common_flags(CLI::App* sub, Options& o) {
    sub->add_option("--eps", o.eps, "perturbation budget");
    sub->add_option("--class", o.klass, "structure class J|L|G|N")
        ->check(CLI::IsMember({"J", "L", "G", "N"}));
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--threads", o.threads, "parallel candidate trials");
    sub->add_option("--config", o.config_path, "JSON config; flags override its keys");
    sub->add_option("--eq-tol", o.eq_tol, "residual threshold for structure equations");
    sub->add_option("--rank-tol", o.rank_tol, "relative singular value cutoff");
    sub->add_option("--gap-tol", o.gap_tol, "minimum distinct-eigenvalue separation");
    sub->add_option("--cluster-tol", o.cluster_tol, "eigenvalue clustering radius");
}

// Layering: defaults < config file < explicit flags.
bmat::ToleranceConfig resolve_config(Options& o) {
    json jc;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw bmat::IoError("cannot open config " + o.config_path);
        try {
            in >> jc;
        } catch (const json::exception& e) {
            throw bmat::IoError(o.config_path + ": " + e.what());
        }
        if (!jc.is_object()) throw bmat::IoError("config: expected a JSON object");
    }
    bmat::ToleranceConfig cfg;
    json jtol = json::object();
    for (const char* key : {"eq_tol", "rank_tol", "gap_tol", "cluster_tol"})
        if (jc.contains(key)) jtol[key] = jc[key];
    if (!jtol.empty()) cfg = bmat::tolerance_from_json(jtol);
    if (jc.contains("eps") && !o.given("--eps")) o.eps = jc["eps"].get<double>();
    if (jc.contains("seed") && !o.given("--seed")) o.seed = jc["seed"].get<std::uint64_t>();
    if (jc.contains("threads") && !o.given("--threads")) o.threads = jc["threads"].get<int>();
    if (jc.contains("class") && !o.given("--class")) o.klass = jc["class"].get<std::string>();
    if (o.eq_tol >= 0.0) cfg.eq_tol = o.eq_tol;
    if (o.rank_tol >= 0.0) cfg.rank_tol = o.rank_tol;
    if (o.gap_tol >= 0.0) cfg.gap_tol = o.gap_tol;
    if (o.cluster_tol >= 0.0) cfg.cluster_tol = o.cluster_tol;
    cfg.validate();
    return cfg;
}

json base_report(const std::string& command, const Options& o,
                 const bmat::ToleranceConfig& cfg) {
    json inputs = json::array();
    if (!o.a_path.empty()) inputs.push_back(o.a_path);
    if (!o.b_path.empty()) inputs.push_back(o.b_path);
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"seed", o.seed},
                {"tolerances", bmat::tolerance_to_json(cfg)}};
}

int cmd_classify(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    auto rep = bmat::classify(A, P, cfg);
    report = base_report("classify", o, cfg);
    report["result"] = bmat::report_to_json(rep);
    return rep.memberships.empty() ? 3 : 0;
}

int cmd_densify(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    report = base_report("densify", o, cfg);
    report["class"] = o.klass;
    report["eps"] = o.eps;
    bmat::DensifyResult res;
    if (o.klass == "J")
        res = bmat::densify_J(A, P, o.eps, cfg, o.threads);
    else if (o.klass == "L")
        res = bmat::densify_L(A, P, o.eps, cfg, o.threads);
    else if (o.klass == "G")
        res = bmat::densify_G(A, P, o.eps, cfg);
    else
        res = bmat::densify_N(A, P, o.eps, cfg, o.threads);
    report["result"] = bmat::result_to_json(res);
    return 0;
}

int cmd_split(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    auto [S, K] = bmat::toeplitz_split(A, P);
    report = base_report("split", o, cfg);
    report["result"] = json{{"S", bmat::matrix_to_json(S)},
                            {"K", bmat::matrix_to_json(K)},
                            {"reconstruction_error",
                             bmat::two_norm(ComplexMatrix(S + K - A))}};
    return 0;
}

int cmd_project(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    if (o.klass != "J" && o.klass != "L")
        throw bmat::PreconditionError("project: --class must be J or L");
    ComplexMatrix Pr = (o.klass == "J") ? bmat::project_J(A, P) : bmat::project_L(A, P);
    report = base_report("project", o, cfg);
    report["class"] = o.klass;
    report["result"] = json{{"projected", bmat::matrix_to_json(Pr)},
                            {"distance", bmat::two_norm(ComplexMatrix(A - Pr))}};
    return 0;
}

int cmd_canonical(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    const bool hermitized = P.kind == bmat::ProductKind::SkewHermitian;
    if (hermitized) P = bmat::hermitize(P);
    auto cpf = bmat::canonical_pair_form(A, P, cfg);
    report = base_report("canonical", o, cfg);
    report["result"] = bmat::canonical_to_json(cpf);
    report["result"]["hermitized"] = hermitized;
    return 0;
}

int cmd_cayley(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    bmat::CayleyParams prm;
    ComplexMatrix out = o.inverse ? bmat::cayley_to_selfadjoint(A, P, prm, cfg)
                                  : bmat::cayley_to_unitary(A, P, prm, cfg);
    report = base_report("cayley", o, cfg);
    report["direction"] = o.inverse ? "to_selfadjoint" : "to_unitary";
    report["result"] = json{{"transformed", bmat::matrix_to_json(out)},
                            {"w", {prm.w.real(), prm.w.imag()}},
                            {"alpha", {prm.alpha.real(), prm.alpha.imag()}}};
    return 0;
}

int cmd_sum4(Options& o, json& report) {
    auto cfg = resolve_config(o);
    ComplexMatrix A = bmat::read_matrix(o.a_path);
    auto P = bmat::make_product(bmat::read_matrix(o.b_path), cfg);
    auto parts = bmat::sum_of_four(A, P, cfg);
    report = base_report("sum4", o, cfg);
    json jp = json::array();
    ComplexMatrix sum = ComplexMatrix::Zero(A.rows(), A.cols());
    for (const auto& M : parts) {
        jp.push_back(bmat::matrix_to_json(M));
        sum += M;
    }
    report["result"] = json{{"parts", std::move(jp)},
                            {"reconstruction_error", bmat::two_norm(ComplexMatrix(sum - A))}};
    return 0;
}

int cmd_generate(Options& o, json& report) {
    auto cfg = resolve_config(o);
    bmat::GeneratedPair gp;
    if (o.kind == "jordan_pair") {
        gp = bmat::gen_jordan_pair(o.n, o.seed);
    } else if (o.kind == "unitary_example") {
        gp = bmat::gen_unitary_example(o.n, o.seed);
    } else if (o.kind == "normal_example") {
        gp = bmat::gen_normal_example(o.n, o.seed, o.skew);
    } else if (o.kind == "random_congruence") {
        ComplexMatrix A, B;
        if (!o.in_a.empty() && !o.in_b.empty()) {
            A = bmat::read_matrix(o.in_a);
            B = bmat::read_matrix(o.in_b);
        } else {
            // no input pair: scramble a fresh jordan_pair from a split seed
            bmat::Rng rng(o.seed);
            auto basep = bmat::gen_jordan_pair(o.n, rng.next_u64());
            A = basep.A;
            B = basep.B;
        }
        gp = bmat::gen_random_congruence(A, B, o.seed + 1, o.cond_bound);
    } else {
        throw bmat::IoError("generate: unknown kind " + o.kind);
    }
    bmat::write_matrix(o.out_a, gp.A);
    bmat::write_matrix(o.out_b, gp.B);
    report = base_report("generate", o, cfg);
    report["result"] = json{{"kind", o.kind},
                            {"n", gp.A.rows()},
                            {"a_path", o.out_a},
                            {"b_path", o.out_b},
                            {"cond_T", bmat::cond_2(gp.T)}};
    return 0;
}

int dispatch(const std::function<int(json&)>& body, json& report) {
    try {
        return body(report);
    } catch (const bmat::IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const bmat::DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const bmat::UnsupportedFormError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const bmat::SingularMatrixError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const bmat::DensifyFailure& f) {
        std::cerr << "convergence failure: " << f.what() << "\n";
        report["result"] = json{{"error", f.what()}, {"best", bmat::result_to_json(f.best)}};
        return 5;
    } catch (const bmat::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 4;
    } catch (const bmat::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 5;
    } catch (const bmat::StructureError& e) {
        std::cerr << "structure certification failed: " << e.what() << "\n";
        return 5;
    } catch (const bmat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"indefinite scalar product structure toolkit"};
    app.require_subcommand(1);

    Options o;
    auto* classify = app.add_subcommand("classify", "membership in J/L/G/N");
    auto* densify = app.add_subcommand("densify", "certified diagonalizable perturbation");
    auto* split = app.add_subcommand("split", "selfadjoint + skewadjoint parts");
    auto* project = app.add_subcommand("project", "nearest selfadjoint or skewadjoint");
    auto* canonical = app.add_subcommand("canonical", "canonical pair form of A in J(B)");
    auto* cayley = app.add_subcommand("cayley", "Cayley transform J(B) <-> G(B)");
    auto* sum4 = app.add_subcommand("sum4", "four diagonalizable structured summands");
    auto* generate = app.add_subcommand("generate", "test pair files");

    for (CLI::App* sub : {classify, densify, split, project, canonical, cayley, sum4}) {
        sub->add_option("A", o.a_path, "matrix file")->required();
        sub->add_option("B", o.b_path, "scalar product matrix file")->required();
        add_common_flags(sub, o);
    }
    cayley->add_flag("--inverse", o.inverse, "map G(B) back to J(B)");

    add_common_flags(generate, o);
    generate->add_option("--kind", o.kind, "jordan_pair|unitary_example|normal_example|random_congruence")
        ->required();
    generate->add_option("--n", o.n, "matrix size");
    generate->add_option("--out-a", o.out_a, "output path for A");
    generate->add_option("--out-b", o.out_b, "output path for B");
    generate->add_option("--in-a", o.in_a, "input A for random_congruence");
    generate->add_option("--in-b", o.in_b, "input B for random_congruence");
    generate->add_flag("--skew", o.skew, "skew-Hermitian B for normal_example");
    generate->add_option("--cond-bound", o.cond_bound, "congruence condition bound");

    CLI11_PARSE(app, argc, argv);

    o.parsed = app.get_subcommands().front();
    std::function<int(json&)> body;
    if (classify->parsed())
        body = [&](json& r) { return cmd_classify(o, r); };
    else if (densify->parsed())
        body = [&](json& r) { return cmd_densify(o, r); };
    else if (split->parsed())
        body = [&](json& r) { return cmd_split(o, r); };
    else if (project->parsed())
        body = [&](json& r) { return cmd_project(o, r); };
    else if (canonical->parsed())
        body = [&](json& r) { return cmd_canonical(o, r); };
    else if (cayley->parsed())
        body = [&](json& r) { return cmd_cayley(o, r); };
    else if (sum4->parsed())
        body = [&](json& r) { return cmd_sum4(o, r); };
    else
        body = [&](json& r) { return cmd_generate(o, r); };

    json report;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = dispatch(body, report);
    const auto t1 = std::chrono::steady_clock::now();
    if (!report.empty()) {
        report["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                .count();
        std::cout << report.dump(2) << "\n";
    }
    return code;
}
