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

#ifndef CIRCORBITS_FIXTURES_HPP
#define CIRCORBITS_FIXTURES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <circorbits/errors.hpp>
#include <circorbits/numeric.hpp>

namespace circorbits {

// One line of a golden count file: family,n,l,class,count. A missing count
// ("n/a") marks a class without a closed form.
struct CountRecord {
    std::string family;
    int n = 0;
    int l = 0;
    std::string cls;
    std::optional<BigInt> count;

    auto key() const
    {
        return std::tie(family, n, l, cls);
    }
    friend bool operator==(const CountRecord &, const CountRecord &) = default;
};

inline constexpr std::string_view count_header = "family,n,l,class,count";
inline constexpr std::string_view no_closed_form = "n/a";

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

// Non-empty, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<int, std::string_view>> data_lines(std::string_view text)
{
    std::vector<std::pair<int, std::string_view>> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        const auto raw = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        ++number;
        const auto line = trim(raw);
        if (!line.empty() && line.front() != '#') {
            out.emplace_back(number, line);
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline int parse_int(std::string_view s, int line)
{
    try {
        std::size_t used = 0;
        const std::string str(s);
        const int v = std::stoi(str, &used);
        if (used != str.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + std::string(s) + "'");
    }
}

inline BigInt parse_bigint(std::string_view s, int line)
{
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string_view::npos) {
        throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + std::string(s) + "'");
    }
    return BigInt(std::string(s));
}

} // namespace detail

inline std::vector<CountRecord> parse_count_records(std::string_view text)
{
    std::vector<CountRecord> out;
    bool header_seen = false;
    for (const auto &[number, line] : detail::data_lines(text)) {
        if (!header_seen) {
            if (line != count_header) {
                throw ParseError("line " + std::to_string(number) + ": expected header '" + std::string(count_header)
                                 + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = detail::split(line, ',');
        if (fields.size() != 5) {
            throw ParseError("line " + std::to_string(number) + ": expected 5 fields, got "
                             + std::to_string(fields.size()));
        }
        CountRecord r;
        r.family = std::string(fields[0]);
        r.n = detail::parse_int(fields[1], number);
        r.l = detail::parse_int(fields[2], number);
        r.cls = std::string(fields[3]);
        if (fields[4] != no_closed_form) {
            r.count = detail::parse_bigint(fields[4], number);
        }
        out.push_back(std::move(r));
    }
    if (!header_seen) {
        throw ParseError("missing header '" + std::string(count_header) + "'");
    }
    return out;
}

inline std::string format_count_records(const std::vector<CountRecord> &records)
{
    std::ostringstream out;
    out << count_header << '\n';
    for (const auto &r : records) {
        out << r.family << ',' << r.n << ',' << r.l << ',' << r.cls << ','
            << (r.count ? to_string(*r.count) : std::string(no_closed_form)) << '\n';
    }
    return out.str();
}

// Pseudo orbit member lists: "n l class orbit orbit ..." per pseudo orbit.
struct MemberRecord {
    int n = 0;
    int l = 0;
    std::string cls;
    std::vector<std::string> orbits;
};

inline std::vector<MemberRecord> parse_member_records(std::string_view text)
{
    std::vector<MemberRecord> out;
    for (const auto &[number, line] : detail::data_lines(text)) {
        std::vector<std::string_view> fields;
        for (const auto f : detail::split(line, ' ')) {
            if (!f.empty()) {
                fields.push_back(f);
            }
        }
        if (fields.size() < 4) {
            throw ParseError("line " + std::to_string(number) + ": expected 'n l class orbit...'");
        }
        MemberRecord r;
        r.n = detail::parse_int(fields[0], number);
        r.l = detail::parse_int(fields[1], number);
        r.cls = std::string(fields[2]);
        for (std::size_t i = 3; i < fields.size(); ++i) {
            r.orbits.emplace_back(fields[i]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Printed variance tables: the pseudo orbit class sizes and the exact value
// for each listed (family, n, l), plus the published numerical estimate.
struct VarianceFixture {
    std::string family;
    int n = 0;
    int l = 0;
    BigInt p0;
    std::map<int, BigInt> phat;
    Rational value;
    // Absent when written without numerics.
    std::optional<double> reference_numerics;
};

inline constexpr std::string_view variance_fixture_header
    = "family,n,l,p0,p1,p2,formula_num,formula_den,reference_numerics";

inline std::vector<VarianceFixture> parse_variance_fixtures(std::string_view text)
{
    std::vector<VarianceFixture> out;
    bool header_seen = false;
    for (const auto &[number, line] : detail::data_lines(text)) {
        if (!header_seen) {
            if (line != variance_fixture_header) {
                throw ParseError("line " + std::to_string(number) + ": unexpected variance fixture header");
            }
            header_seen = true;
            continue;
        }
        const auto f = detail::split(line, ',');
        if (f.size() != 9) {
            throw ParseError("line " + std::to_string(number) + ": expected 9 fields");
        }
        VarianceFixture v;
        v.family = std::string(f[0]);
        v.n = detail::parse_int(f[1], number);
        v.l = detail::parse_int(f[2], number);
        v.p0 = detail::parse_bigint(f[3], number);
        for (int k = 1; k <= 2; ++k) {
            const auto field = f[static_cast<std::size_t>(3 + k)];
            if (!field.empty()) {
                v.phat[k] = detail::parse_bigint(field, number);
            }
        }
        v.value = Rational(detail::parse_bigint(f[6], number), detail::parse_bigint(f[7], number));
        try {
            if (f[8] != no_closed_form) {
                v.reference_numerics = std::stod(std::string(f[8]));
            }
        } catch (const std::exception &) {
            throw ParseError("line " + std::to_string(number) + ": bad number '" + std::string(f[8]) + "'");
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace circorbits

#endif
