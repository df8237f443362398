#include "spreadopt/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spreadopt {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& message) {
    throw std::domain_error("config line " + std::to_string(line_no) + ": " + message);
}

double parse_double(std::string_view token, std::size_t line_no) {
    token = trim(token);
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        fail(line_no, "malformed number '" + std::string(token) + "'");
    return value;
}

std::int64_t parse_int(std::string_view token, std::size_t line_no) {
    token = trim(token);
    std::int64_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        fail(line_no, "malformed integer '" + std::string(token) + "'");
    return value;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line_no) {
    token = trim(token);
    std::uint64_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        fail(line_no, "malformed unsigned integer '" + std::string(token) + "'");
    return value;
}

bool parse_bool(std::string_view token, std::size_t line_no) {
    token = trim(token);
    if (token == "true" || token == "1") return true;
    if (token == "false" || token == "0") return false;
    fail(line_no, "malformed boolean '" + std::string(token) + "' (want true/false)");
}

std::vector<double> parse_list(std::string_view value, std::size_t line_no) {
    std::vector<double> out;
    while (true) {
        const std::size_t comma = value.find(',');
        out.push_back(parse_double(value.substr(0, comma), line_no));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

GridSpec parse_grid_config(std::istream& in) {
    GridSpec spec = default_grid_spec();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const std::size_t hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;

        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string key(trim(view.substr(0, eq)));
        const std::string_view value = trim(view.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

        if (key == "strikes") {
            spec.strikes = parse_list(value, line_no);
        } else if (key == "rhos") {
            spec.rhos = parse_list(value, line_no);
        } else if (key == "maturities") {
            spec.maturities = parse_list(value, line_no);
        } else if (key == "s1") {
            spec.base_market.s1_0 = parse_double(value, line_no);
        } else if (key == "s2") {
            spec.base_market.s2_0 = parse_double(value, line_no);
        } else if (key == "sigma1") {
            spec.base_market.sigma1 = parse_double(value, line_no);
        } else if (key == "sigma2") {
            spec.base_market.sigma2 = parse_double(value, line_no);
        } else if (key == "r") {
            spec.base_market.r = parse_double(value, line_no);
        } else if (key == "pairs") {
            spec.mc.n_pairs = parse_int(value, line_no);
        } else if (key == "seed") {
            spec.mc.seed = parse_uint(value, line_no);
        } else if (key == "antithetic") {
            spec.mc.antithetic = parse_bool(value, line_no);
        } else if (key == "batch_size") {
            spec.mc.batch_size = parse_int(value, line_no);
        } else if (key == "reuse_draws") {
            spec.reuse_draws = parse_bool(value, line_no);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    spec.validate();
    return spec;
}

}  // namespace spreadopt
