#include "dbrlab/weight_spec.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "dbrlab/errors.hpp"

namespace dbrlab {

namespace {

double parse_number(std::string_view token) {
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw WeightSpecError("malformed number in weight spec", std::string(token));
    return value;
}

Complex parse_point(std::string_view token) {
    const auto comma = token.find(',');
    if (comma == std::string_view::npos || token.find(',', comma + 1) != std::string_view::npos)
        throw WeightSpecError("expected <re>,<im> in weight spec", std::string(token));
    return {parse_number(token.substr(0, comma)), parse_number(token.substr(comma + 1))};
}

}  // namespace

std::string format_number(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

Weight parse_weight_spec(std::string_view spec) {
    if (spec == "uniform") return Weight::uniform();
    if (spec == "modsq") return Weight::custom([](Complex z) { return std::norm(z); }, {}, "modsq");

    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw WeightSpecError("unknown weight spec", std::string(spec));
    const auto head = spec.substr(0, colon);
    const auto rest = spec.substr(colon + 1);

    if (head == "harm") {
        const Complex zeta = parse_point(rest);
        if (std::abs(zeta) == 0.0) throw WeightSpecError("boundary point must be nonzero", std::string(rest));
        return Weight::harmonic_boundary(zeta / std::abs(zeta));
    }
    if (head == "log") {
        const Complex zeta = parse_point(rest);
        if (!(std::abs(zeta) < 1.0)) throw WeightSpecError("log weight needs a point inside the unit disk", std::string(rest));
        return Weight::log_green(zeta);
    }
    if (head == "scaled") {
        const auto second = rest.find(':');
        if (second == std::string_view::npos) throw WeightSpecError("expected scaled:<c>:<spec>", std::string(spec));
        const auto factor_token = rest.substr(0, second);
        const double c = parse_number(factor_token);
        if (!(c > 0.0)) throw WeightSpecError("scale factor must be positive", std::string(factor_token));
        return Weight::scaled(c, parse_weight_spec(rest.substr(second + 1)));
    }
    throw WeightSpecError("unknown weight kind", std::string(head));
}

}  // namespace dbrlab
