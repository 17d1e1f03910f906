#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "planted/certificate.hpp"
#include "planted/sdp.hpp"
#include "planted/spectral.hpp"
#include "planted/stat_limits.hpp"
#include "planted/test_outcome.hpp"

namespace planted {

inline nlohmann::ordered_json outcome_to_json(const TestOutcome& t) {
    nlohmann::ordered_json j;
    j["test"] = t.test_name;
    j["statistic"] = t.statistic;
    j["threshold"] = t.threshold;
    j["decision"] = t.decision ? 1 : 0;
    j["reliable"] = t.reliable;
    for (const auto& [key, val] : t.info) j[key] = val;
    return j;
}

inline nlohmann::ordered_json regime_to_json(const RegimeReport& r) {
    nlohmann::ordered_json j;
    j["density"] = r.density.str();
    j["density_value"] = r.density.value();
    j["witness_size"] = r.witness_size;
    j["density_ratio"] = r.density_ratio;
    j["size_ratio_25"] = r.size_ratio_25;
    j["size_ratio_12"] = r.size_ratio_12;
    j["regime"] = to_string(r.regime);
    j["verdict"] = to_string(r.verdict);
    return j;
}

inline nlohmann::ordered_json second_moment_to_json(const SecondMomentReport& r) {
    nlohmann::ordered_json j;
    j["log_expected_count"] = r.log_expected_count;
    j["ratio_bound"] = r.ratio_bound;
    j["log_ratio_bound"] = r.log_ratio_bound;
    j["log_delta_bar"] = r.log_delta_bar;
    auto& terms = j["per_u"] = nlohmann::ordered_json::array();
    for (const SecondMomentTerm& t : r.per_u) {
        terms.push_back({{"u", t.u}, {"e_profile", t.e_profile}, {"g", t.g}, {"log_g", t.log_g}});
    }
    return j;
}

inline nlohmann::ordered_json identification_to_json(const IdentificationResult& r,
                                                     bool per_vertex = true) {
    nlohmann::ordered_json j;
    j["selected"] = r.selected;
    j["refined"] = r.refined;
    j["threshold"] = r.threshold;
    j["threshold_log_base"] = "natural";
    j["skipped"] = r.skipped;
    if (per_vertex) {
        auto& scores = j["per_vertex_scores"] = nlohmann::ordered_json::array();
        for (const VertexScore& s : r.per_vertex) {
            scores.push_back({{"vertex", s.vertex}, {"d", s.score}});
        }
    }
    return j;
}

inline nlohmann::ordered_json residuals_to_json(const SdpResiduals& r) {
    return nlohmann::ordered_json{{"psd", r.psd},
                                  {"box", r.box},
                                  {"total_sum", r.total_sum},
                                  {"row_traces", r.row_traces},
                                  {"col_traces", r.col_traces}};
}

inline nlohmann::ordered_json certificate_to_json(const NullCertificate& c) {
    nlohmann::ordered_json j;
    j["case"] = c.case_one ? 1 : 2;
    j["u"] = c.u;
    j["a"] = c.a;
    j["b"] = c.b;
    j["c"] = c.c;
    j["u_clipped"] = c.u_clipped;
    j["objective"] = c.objective;
    j["feasible"] = c.feasible;
    j["total_sum_exact"] = c.total_sum_exact;
    j["row_traces_exact"] = c.row_traces_exact;
    j["lambda_1_h"] = c.lambda_1_h;
    j["lambda_k_h"] = c.lambda_k_h;
    j["residuals"] = residuals_to_json(c.residuals);
    if (std::isfinite(c.ratio_stated)) {
        j["ratio_stated"] = c.ratio_stated;
        j["ratio_proof"] = c.ratio_proof;
    }
    return j;
}

inline nlohmann::ordered_json balance_to_json(const BalanceCertificate& b) {
    return nlohmann::ordered_json{
        {"epsilon", b.epsilon},   {"mu", b.mu},
        {"strict_epsilon", b.strict_epsilon}, {"strict_mu", b.strict_mu},
        {"lambda_minus", b.lambda_minus},     {"lambda_1", b.lambda_1},
        {"lambda_2", b.lambda_2}, {"lambda_n", b.lambda_n}};
}

inline nlohmann::ordered_json laplacian_to_json(const LaplacianReport& r) {
    return nlohmann::ordered_json{{"psd_ok", r.psd_ok},
                                  {"kernel_exact", r.kernel_exact},
                                  {"min_eigenvalue", r.min_eigenvalue},
                                  {"lambda_2", r.lambda_2},
                                  {"ratio", r.ratio}};
}

// Dense matrix dump: 16-byte header (magic "PSGY", u32 n, u32 k, u32
// reserved), then row-major 64-bit floats.
inline void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& y, int n, int k) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write: " + path);
    const char magic[4] = {'P', 'S', 'G', 'Y'};
    std::uint32_t hdr[3] = {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k), 0};
    out.write(magic, 4);
    out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            const double v = y(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    }
}

struct MatrixDump {
    Eigen::MatrixXd matrix;
    int n = 0;
    int k = 0;
};

inline MatrixDump read_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read: " + path);
    char magic[4];
    std::uint32_t hdr[3];
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (!in || std::string(magic, 4) != "PSGY")
        throw std::invalid_argument("bad matrix dump header: " + path);
    MatrixDump dump;
    dump.n = static_cast<int>(hdr[0]);
    dump.k = static_cast<int>(hdr[1]);
    const Eigen::Index dim = static_cast<Eigen::Index>(dump.n) * dump.k;
    dump.matrix.resize(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            double v;
            in.read(reinterpret_cast<char*>(&v), sizeof(v));
            dump.matrix(i, j) = v;
        }
    }
    if (!in) throw std::invalid_argument("truncated matrix dump: " + path);
    return dump;
}

}  // namespace planted
