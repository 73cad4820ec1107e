#include "dbrlab/moments.hpp"

namespace dbrlab {

std::string Provenance::str() const {
    switch (kind) {
        case ProvenanceKind::Point: return "point";
        case ProvenanceKind::Measure: return "measure:" + grid;
        case ProvenanceKind::Synthetic: return "synthetic";
    }
    return "synthetic";
}

Provenance Provenance::parse(const std::string& text) {
    if (text == "point") return {ProvenanceKind::Point, {}};
    if (text == "synthetic") return {ProvenanceKind::Synthetic, {}};
    if (text.rfind("measure:", 0) == 0) return {ProvenanceKind::Measure, text.substr(8)};
    throw DomainError("unknown moment-table provenance '" + text + "'");
}

MomentTable measure_moments(const Weight& w, const DiskGrid& grid, std::size_t order) {
    const std::size_t side = order + 1;
    auto values = integrate_many(grid, side * side, [&](Complex z, std::span<Complex> out) {
        const double wz = eval(w, z);
        const Complex zbar = std::conj(z);
        Complex zj = wz;
        for (std::size_t j = 0; j < side; ++j) {
            Complex term = zj;
            for (std::size_t k = 0; k < side; ++k) {
                out[j * side + k] = term;
                term *= zbar;
            }
            zj *= z;
        }
    });
    MomentTable table(order, Provenance{ProvenanceKind::Measure, grid.id()});
    for (std::size_t j = 0; j < side; ++j)
        for (std::size_t k = 0; k < side; ++k) table(j, k) = values[j * side + k];
    return table;
}

MomentTable to_complex_table(const ExactMomentTable& exact) {
    MomentTable out(exact.order(), exact.provenance);
    for (std::size_t j = 0; j <= exact.order(); ++j)
        for (std::size_t k = 0; k <= exact.order(); ++k) out(j, k) = to_complex(exact(j, k));
    return out;
}

nlohmann::json to_json(const MomentTable& M) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (std::size_t j = 0; j <= M.order(); ++j) {
        nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
        for (std::size_t k = 0; k <= M.order(); ++k) {
            rr.push_back(M(j, k).real());
            ii.push_back(M(j, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return {{"order", M.order()}, {"re", std::move(re)}, {"im", std::move(im)}, {"provenance", M.provenance.str()}};
}

MomentTable moment_table_from_json(const nlohmann::json& j) {
    const auto order = j.at("order").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != order + 1 || im.size() != order + 1) throw DomainError("moment table JSON: row count does not match order");
    MomentTable M(order, Provenance::parse(j.at("provenance").get<std::string>()));
    for (std::size_t r = 0; r <= order; ++r) {
        if (re[r].size() != order + 1 || im[r].size() != order + 1)
            throw DomainError("moment table JSON: column count does not match order");
        for (std::size_t c = 0; c <= order; ++c) M(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
    }
    return M;
}

}  // namespace dbrlab
