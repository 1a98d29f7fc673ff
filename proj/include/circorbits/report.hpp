/*
 * Copyright 2026 The circorbits Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CIRCORBITS_REPORT_HPP
#define CIRCORBITS_REPORT_HPP

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <circorbits/errors.hpp>
#include <circorbits/fixtures.hpp>
#include <circorbits/numeric.hpp>
#include <circorbits/quantum.hpp>

namespace circorbits {

enum class Format { csv, markdown, json };

inline Format parse_format(std::string_view s)
{
    if (s == "csv") {
        return Format::csv;
    }
    if (s == "markdown" || s == "md") {
        return Format::markdown;
    }
    if (s == "json") {
        return Format::json;
    }
    throw ParseError("unknown format '" + std::string(s) + "' (csv, markdown, json)");
}

// %.12g survives a parse/format round trip unchanged.
inline std::string format_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_rational(const Rational &q)
{
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    return den == 1 ? to_string(num) : to_string(num) + "/" + to_string(den);
}

inline constexpr std::string_view variance_header = "family,n,l,formula_num,formula_den,mc_estimate,error,samples,seed";

inline std::string format_variance_csv(const VarianceReport &r)
{
    std::ostringstream out;
    out << variance_header << '\n';
    const std::string na(no_closed_form);
    for (const auto &row : r.rows) {
        out << r.family << ',' << r.n << ',' << row.l << ',';
        if (row.formula) {
            out << to_string(boost::multiprecision::numerator(*row.formula)) << ','
                << to_string(boost::multiprecision::denominator(*row.formula));
        } else {
            out << na << ',' << na;
        }
        out << ',' << (row.mc_estimate ? format_real(*row.mc_estimate) : na) << ','
            << (row.error ? format_real(*row.error) : na) << ',' << r.samples << ',' << r.seed << '\n';
    }
    return out.str();
}

inline VarianceReport parse_variance_csv(std::string_view text)
{
    VarianceReport r;
    bool header_seen = false;
    for (const auto &[number, line] : detail::data_lines(text)) {
        const auto where = "line " + std::to_string(number) + ": ";
        if (!header_seen) {
            if (line != variance_header) {
                throw ParseError(where + "expected header '" + std::string(variance_header) + "'");
            }
            header_seen = true;
            continue;
        }
        const auto f = detail::split(line, ',');
        if (f.size() != 9) {
            throw ParseError(where + "expected 9 fields");
        }
        const auto real = [&](std::string_view s) -> std::optional<double> {
            if (s == no_closed_form) {
                return std::nullopt;
            }
            try {
                std::size_t used = 0;
                const std::string str(s);
                const double v = std::stod(str, &used);
                if (used == str.size()) {
                    return v;
                }
            } catch (const std::exception &) {
            }
            throw ParseError(where + "bad number '" + std::string(s) + "'");
        };
        const auto unsigned_field = [&](std::string_view s) {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
                throw ParseError(where + "bad count '" + std::string(s) + "'");
            }
            return std::stoull(std::string(s));
        };
        const std::string family(f[0]);
        const int n = detail::parse_int(f[1], number);
        if (r.rows.empty()) {
            r.family = family;
            r.n = n;
            r.samples = unsigned_field(f[7]);
            r.seed = unsigned_field(f[8]);
        } else if (family != r.family || n != r.n || unsigned_field(f[7]) != r.samples
                   || unsigned_field(f[8]) != r.seed) {
            throw ParseError(where + "a report covers a single graph and run");
        }
        VarianceRow row;
        row.l = detail::parse_int(f[2], number);
        if (f[3] != no_closed_form || f[4] != no_closed_form) {
            row.formula = Rational(detail::parse_bigint(f[3], number), detail::parse_bigint(f[4], number));
        }
        row.mc_estimate = real(f[5]);
        row.error = real(f[6]);
        r.rows.push_back(std::move(row));
    }
    if (!header_seen) {
        throw ParseError("missing header '" + std::string(variance_header) + "'");
    }
    return r;
}

inline std::string format_variance_markdown(const VarianceReport &r)
{
    std::ostringstream out;
    out << "### C_" << r.n << "^+(" << r.family.substr(0, r.family.find('-')) << ','
        << r.family.substr(r.family.find('-') + 1) << ")\n\n";
    if (r.samples > 0) {
        out << "samples: " << r.samples << ", seed: " << r.seed << "\n\n";
    }
    out << "| l | <\\|a_l\\|^2> | numerics | error |\n";
    out << "|---|---|---|---|\n";
    for (const auto &row : r.rows) {
        out << "| " << row.l << " | " << (row.formula ? format_rational(*row.formula) : "n/a") << " | "
            << (row.mc_estimate ? format_real(*row.mc_estimate) : "") << " | "
            << (row.error ? format_real(*row.error) : "") << " |\n";
    }
    return out.str();
}

inline nlohmann::ordered_json variance_json(const VarianceReport &r)
{
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto &row : r.rows) {
        nlohmann::ordered_json e;
        e["l"] = row.l;
        e["formula"] = row.formula ? nlohmann::ordered_json(format_rational(*row.formula)) : nullptr;
        e["mc_estimate"] = row.mc_estimate ? nlohmann::ordered_json(*row.mc_estimate) : nullptr;
        e["error"] = row.error ? nlohmann::ordered_json(*row.error) : nullptr;
        j["rows"].push_back(std::move(e));
    }
    return j;
}

inline std::string render(const VarianceReport &r, Format f)
{
    switch (f) {
        case Format::csv:
            return format_variance_csv(r);
        case Format::markdown:
            return format_variance_markdown(r);
        case Format::json:
            return variance_json(r).dump(2) + "\n";
    }
    return {};
}

inline std::string format_count_markdown(const std::vector<CountRecord> &records)
{
    std::ostringstream out;
    out << "| family | n | l | class | count |\n|---|---|---|---|---|\n";
    for (const auto &r : records) {
        out << "| " << r.family << " | " << r.n << " | " << r.l << " | " << r.cls << " | "
            << (r.count ? to_string(*r.count) : std::string(no_closed_form)) << " |\n";
    }
    return out.str();
}

// Counts are emitted as strings so big values survive JSON readers.
inline nlohmann::ordered_json count_json(const std::vector<CountRecord> &records)
{
    auto j = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        nlohmann::ordered_json e;
        e["family"] = r.family;
        e["n"] = r.n;
        e["l"] = r.l;
        e["class"] = r.cls;
        e["count"] = r.count ? nlohmann::ordered_json(to_string(*r.count)) : nullptr;
        j.push_back(std::move(e));
    }
    return j;
}

inline std::string render(const std::vector<CountRecord> &records, Format f)
{
    switch (f) {
        case Format::csv:
            return format_count_records(records);
        case Format::markdown:
            return format_count_markdown(records);
        case Format::json:
            return count_json(records).dump(2) + "\n";
    }
    return {};
}

} // namespace circorbits

#endif
