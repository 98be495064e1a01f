#pragma once

/**
 * @file report.hpp
 * @brief Price reports and their CSV form.
 *
 * Report CSV columns, in order:
 *   config_id,zeta,sigma,K2,lambda,price,parity_gap,c_minus_p,mc_price,mc_stderr,iterations,seconds
 * Prices (price, parity_gap, c_minus_p, mc_price) are printed with 4
 * decimals, every other number with 6 significant digits. Absent values are
 * empty fields.
 */

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "iteration.hpp"
#include "montecarlo.hpp"

namespace asianjd {

struct ReportRow {
    std::string config_id;
    int zeta = 1;
    double sigma = 0.0;
    double K2 = 0.0;
    double lambda = 0.0;
    std::optional<double> price;
    double parity_gap = 0.0;
    std::optional<double> c_minus_p;
    std::optional<double> mc_price;
    std::optional<double> mc_stderr;
    std::optional<int> iterations;
    double seconds = 0.0;
};

struct PriceReport {
    ReportRow row;
    std::optional<IterationReport> iteration;
    std::optional<MCResult> mc;
    std::string config_echo;  ///< to_text() of the configuration that produced the row
};

inline constexpr std::string_view kReportHeader =
    "config_id,zeta,sigma,K2,lambda,price,parity_gap,c_minus_p,mc_price,mc_stderr,iterations,seconds";

namespace detail {

inline std::string fmt_price(double x) {
    char b[64];
    std::snprintf(b, sizeof b, "%.4f", x);
    return b;
}

inline std::string fmt_general(double x) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

inline std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                            : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::optional<double> opt_double(const std::string& field, const std::string& name) {
    if (field.empty()) return std::nullopt;
    return parse_double(name, field);
}

}  // namespace detail

inline std::string to_csv(const ReportRow& r) {
    using detail::fmt_general;
    using detail::fmt_price;
    auto opt = [](const std::optional<double>& v, auto fmt) { return v ? fmt(*v) : std::string(); };
    std::string s = r.config_id;
    s += ',' + std::to_string(r.zeta);
    s += ',' + fmt_general(r.sigma);
    s += ',' + fmt_general(r.K2);
    s += ',' + fmt_general(r.lambda);
    s += ',' + opt(r.price, fmt_price);
    s += ',' + fmt_price(r.parity_gap);
    s += ',' + opt(r.c_minus_p, fmt_price);
    s += ',' + opt(r.mc_price, fmt_price);
    s += ',' + opt(r.mc_stderr, fmt_general);
    s += ',' + (r.iterations ? std::to_string(*r.iterations) : std::string());
    s += ',' + fmt_general(r.seconds);
    return s;
}

inline ReportRow parse_csv_row(std::string_view line) {
    const auto f = detail::split_csv(line);
    if (f.size() != 12)
        throw ConfigError("report row: expected 12 fields, got " + std::to_string(f.size()));
    ReportRow r;
    r.config_id = f[0];
    r.zeta = static_cast<int>(detail::parse_integer("zeta", f[1]));
    r.sigma = detail::parse_double("sigma", f[2]);
    r.K2 = detail::parse_double("K2", f[3]);
    r.lambda = detail::parse_double("lambda", f[4]);
    r.price = detail::opt_double(f[5], "price");
    r.parity_gap = detail::parse_double("parity_gap", f[6]);
    r.c_minus_p = detail::opt_double(f[7], "c_minus_p");
    r.mc_price = detail::opt_double(f[8], "mc_price");
    r.mc_stderr = detail::opt_double(f[9], "mc_stderr");
    if (!f[10].empty()) r.iterations = static_cast<int>(detail::parse_integer("iterations", f[10]));
    r.seconds = detail::parse_double("seconds", f[11]);
    return r;
}

inline std::string to_csv(const std::vector<ReportRow>& rows) {
    std::string s(kReportHeader);
    s += '\n';
    for (const auto& r : rows) s += to_csv(r) + '\n';
    return s;
}

/// Per-iteration table: n, E_n, E_n/E_{n-1} (empty for n = 0), seconds.
inline std::string iteration_csv(const IterationReport& rep) {
    std::string s = "n,E_n,ratio,seconds\n";
    for (std::size_t n = 0; n < rep.deltas.size(); ++n) {
        s += std::to_string(n) + ',' + detail::fmt_general(rep.deltas[n]) + ',';
        if (n > 0) s += detail::fmt_general(rep.ratios()[n - 1]);
        s += ',' + detail::fmt_general(n < rep.seconds.size() ? rep.seconds[n] : 0.0) + '\n';
    }
    return s;
}

/// Parse a full report table; the header line is required.
inline std::vector<ReportRow> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kReportHeader)
        throw ConfigError("report: missing or unexpected header");
    std::vector<ReportRow> rows;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(parse_csv_row(line));
    return rows;
}

}  // namespace asianjd
