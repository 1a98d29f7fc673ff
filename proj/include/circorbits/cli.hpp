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

#ifndef CIRCORBITS_CLI_HPP
#define CIRCORBITS_CLI_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <circorbits/counting.hpp>
#include <circorbits/embedded_data.hpp>
#include <circorbits/errors.hpp>
#include <circorbits/fixtures.hpp>
#include <circorbits/graph.hpp>
#include <circorbits/orbits.hpp>
#include <circorbits/quantum.hpp>
#include <circorbits/report.hpp>

namespace circorbits::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

inline constexpr double default_budget = 1e7;

struct GraphSpec {
    int n = 0;
    int a1 = 0;
    int a2 = 0;
};

// "n,a1,a2"
inline GraphSpec parse_graph_spec(std::string_view s)
{
    const auto f = detail::split(s, ',');
    if (f.size() != 3) {
        throw ParseError("graph spec must be n,a1,a2, got '" + std::string(s) + "'");
    }
    return GraphSpec{detail::parse_int(f[0], 1), detail::parse_int(f[1], 1), detail::parse_int(f[2], 1)};
}

struct LengthRange {
    int lo = 0;
    int hi = 0;
};

// "6" or "2..7"
inline LengthRange parse_length_range(std::string_view s)
{
    LengthRange r;
    if (const auto dots = s.find(".."); dots != std::string_view::npos) {
        r.lo = detail::parse_int(detail::trim(s.substr(0, dots)), 1);
        r.hi = detail::parse_int(detail::trim(s.substr(dots + 2)), 1);
    } else {
        r.lo = r.hi = detail::parse_int(detail::trim(s), 1);
    }
    if (r.lo < 0 || r.hi < r.lo) {
        throw ParseError("bad length range '" + std::string(s) + "'");
    }
    return r;
}

enum class ClassFilter { all, po, none, enc2_0, other };

inline ClassFilter parse_class_filter(std::string_view s)
{
    if (s == "all") {
        return ClassFilter::all;
    }
    if (s == "po") {
        return ClassFilter::po;
    }
    if (s == "none") {
        return ClassFilter::none;
    }
    if (s == "enc2_0") {
        return ClassFilter::enc2_0;
    }
    if (s == "other") {
        return ClassFilter::other;
    }
    throw ParseError("unknown class '" + std::string(s) + "' (all, po, none, enc2_0, other)");
}

inline bool admits(ClassFilter f, std::string_view cls)
{
    switch (f) {
        case ClassFilter::all:
            return true;
        case ClassFilter::po:
            return cls == "po";
        case ClassFilter::none:
            return cls == "none";
        case ClassFilter::enc2_0:
            return cls.starts_with("enc2_0_N");
        case ClassFilter::other:
            return cls == "other";
    }
    return false;
}

enum class Command { count, enumerate, classify, variance, verify, tables };

struct RunConfig {
    Command command = Command::count;
    std::optional<GraphSpec> graph;
    std::optional<LengthRange> lengths;
    ClassFilter cls = ClassFilter::all;
    std::uint64_t samples = default_samples;
    std::uint64_t seed = default_seed;
    double k_max = KRange{}.hi;
    SignAssignment signs;
    Format format = Format::csv;
    std::optional<std::string> output;
    bool check = false;
    double threshold = 2e-3;
    double budget = default_budget;
    std::optional<std::string> fixtures;
    int max_l = 12;
    std::string table;
    std::optional<std::string> pseudo_orbit;
};

inline void require_budget(const CirculantGraph &g, int l, double budget)
{
    const double estimate = estimated_enumeration_size(g, l);
    if (estimate > budget) {
        throw BudgetExceeded("enumerating " + g.name() + " up to length " + std::to_string(l) + " needs about "
                             + format_real(estimate) + " candidate circuits, over the budget of "
                             + format_real(budget) + " (raise --budget)");
    }
}

// Closed-form class counts at (g, l): "po" always; the pseudo orbit classes
// only for the two covered families with l <= n, otherwise marked as having
// no closed form.
inline std::vector<CountRecord> formula_counts(const CirculantGraph &g, int l, ClassFilter filter)
{
    std::vector<CountRecord> out;
    const auto family = family_token(g);
    const auto add = [&](std::string cls, std::optional<BigInt> count) {
        if (admits(filter, cls)) {
            out.push_back(CountRecord{family, g.n(), l, std::move(cls), std::move(count)});
        }
    };
    if (l >= 1) {
        add("po", po_count_general(g.n(), l, g.a1(), g.gap()));
    }
    const auto fam = family_of(g);
    const bool covered = fam && l >= 1 && l <= g.n();
    if (covered && *fam == Family::first) {
        // Every primitive pseudo orbit on this family is free of self-intersections.
        add("none", pso_count_family1(g.n(), l));
        add("enc2_0_N1", BigInt(0));
        add("other", BigInt(0));
    } else if (covered) {
        add("none", pso0_family2(g.n(), l));
        const auto top = std::max<std::int64_t>(1, max_n_2encounters(g.n(), l));
        for (std::int64_t k = 1; k <= top; ++k) {
            add("enc2_0_N" + std::to_string(k), psoN_family2(g.n(), l, k));
        }
        add("other", std::nullopt);
    } else {
        add("none", std::nullopt);
        add("enc2_0_N1", std::nullopt);
        add("other", std::nullopt);
    }
    return out;
}

// Class name -> number of enumerated primitive pseudo orbits of length l.
inline std::map<std::string, BigInt> enumerated_class_counts(const CirculantGraph &g, int l)
{
    std::map<std::string, BigInt> counts;
    for (const auto &p : enumerate_primitive_psos(g, l, PsoOptions{true})) {
        counts[classify(p).class_name()] += 1;
    }
    return counts;
}

inline int highest_encounter_count(const std::map<std::string, BigInt> &counts)
{
    int top = 0;
    for (const auto &[cls, count] : counts) {
        if (cls.starts_with("enc2_0_N")) {
            top = std::max(top, std::stoi(cls.substr(8)));
        }
    }
    return top;
}

// Enumerated counts at (g, l), rows laid out like formula_counts.
inline std::vector<CountRecord> enumerated_counts(const CirculantGraph &g, int l, ClassFilter filter)
{
    std::vector<CountRecord> out;
    const auto family = family_token(g);
    const auto add = [&](std::string cls, BigInt count) {
        if (admits(filter, cls)) {
            out.push_back(CountRecord{family, g.n(), l, std::move(cls), std::move(count)});
        }
    };
    if (l >= 1 && admits(filter, "po")) {
        add("po", BigInt(enumerate_primitive_pos(g, l).size()));
    }
    if (filter == ClassFilter::po) {
        return out;
    }
    auto counts = enumerated_class_counts(g, l);
    int top = std::max(1, highest_encounter_count(counts));
    if (family_of(g) == Family::second && l <= g.n()) {
        top = std::max<int>(top, static_cast<int>(max_n_2encounters(g.n(), l)));
    }
    add("none", counts["none"]);
    for (int k = 1; k <= top; ++k) {
        add("enc2_0_N" + std::to_string(k), counts["enc2_0_N" + std::to_string(k)]);
    }
    add("other", counts["other"]);
    return out;
}

// "03 0125" or "03,0125"; vertex strings are bare digits for n <= 10 and
// dot-separated otherwise.
inline PseudoOrbit parse_pseudo_orbit(const CirculantGraph &g, std::string_view s)
{
    std::string cleaned;
    for (const char c : s) {
        cleaned += (c == ',' || c == '(' || c == ')') ? ' ' : c;
    }
    std::vector<PeriodicOrbit> orbits;
    for (const auto token : detail::split(cleaned, ' ')) {
        if (token.empty()) {
            continue;
        }
        std::vector<Vertex> vertices;
        if (g.n() <= 10) {
            for (const char c : token) {
                if (c < '0' || c > '9') {
                    throw ParseError("bad vertex string '" + std::string(token) + "'");
                }
                vertices.push_back(c - '0');
            }
        } else {
            for (const auto v : detail::split(token, '.')) {
                vertices.push_back(detail::parse_int(v, 1));
            }
        }
        orbits.push_back(make_orbit(g, vertices));
    }
    return PseudoOrbit::from_orbits(std::move(orbits));
}

namespace detail {

inline std::string csv_quote(const std::string &s)
{
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

inline std::string graph_heading(const CirculantGraph &g)
{
    return g.name();
}

} // namespace detail

struct ListingGroup {
    std::string cls;
    std::vector<std::string> members;
};

struct Listing {
    std::string family;
    int n = 0;
    int l = 0;
    std::vector<ListingGroup> groups;
};

inline Listing enumerate_listing(const CirculantGraph &g, int l, ClassFilter filter)
{
    Listing listing{family_token(g), g.n(), l, {}};
    if (filter == ClassFilter::po) {
        ListingGroup group{"po", {}};
        if (l >= 1) {
            for (const auto &o : enumerate_primitive_pos(g, l)) {
                group.members.push_back("(" + to_string(o, g.n()) + ")");
            }
        }
        listing.groups.push_back(std::move(group));
        return listing;
    }
    std::map<std::string, std::vector<std::string>> by_class;
    for (const auto &p : enumerate_primitive_psos(g, l, PsoOptions{true})) {
        by_class[classify(p).class_name()].push_back(to_string(p, g.n()));
    }
    std::vector<std::string> order{"none"};
    for (const auto &[cls, members] : by_class) {
        if (cls.starts_with("enc2_0_N")) {
            order.push_back(cls);
        }
    }
    order.push_back("other");
    for (const auto &cls : order) {
        if (admits(filter, cls)) {
            listing.groups.push_back(ListingGroup{cls, by_class[cls]});
        }
    }
    return listing;
}

inline std::string render(const std::vector<Listing> &listings, const CirculantGraph &g, Format f)
{
    std::ostringstream out;
    switch (f) {
        case Format::csv:
            out << "family,n,l,class,pseudo_orbit\n";
            for (const auto &listing : listings) {
                for (const auto &group : listing.groups) {
                    for (const auto &m : group.members) {
                        out << listing.family << ',' << listing.n << ',' << listing.l << ',' << group.cls << ','
                            << detail::csv_quote(m) << '\n';
                    }
                }
            }
            for (const auto &listing : listings) {
                for (const auto &group : listing.groups) {
                    out << "# l=" << listing.l << ' ' << group.cls << ": " << group.members.size() << '\n';
                }
            }
            break;
        case Format::markdown:
            for (const auto &listing : listings) {
                out << "### " << detail::graph_heading(g) << ", l = " << listing.l << "\n\n";
                for (const auto &group : listing.groups) {
                    out << "**" << group.cls << "** (" << group.members.size() << "): ";
                    for (std::size_t i = 0; i < group.members.size(); ++i) {
                        out << (i > 0 ? ", " : "") << group.members[i];
                    }
                    out << "\n\n";
                }
            }
            break;
        case Format::json: {
            auto j = nlohmann::ordered_json::array();
            for (const auto &listing : listings) {
                nlohmann::ordered_json e;
                e["family"] = listing.family;
                e["n"] = listing.n;
                e["l"] = listing.l;
                e["classes"] = nlohmann::ordered_json::object();
                for (const auto &group : listing.groups) {
                    e["classes"][group.cls] = group.members;
                }
                j.push_back(std::move(e));
            }
            out << j.dump(2) << '\n';
            break;
        }
    }
    return out.str();
}

// Printed-table layouts ------------------------------------------------------

inline constexpr int table_n_first = 5;
inline constexpr int table_n_last = 10;

// Variance table rows for C_n^+(1,2) or C_n^+(1,3): every l in
// 1..n with a nonzero variance, optionally with numerics from an MC run.
inline std::vector<VarianceFixture> variance_tables(Family family, std::uint64_t samples, std::uint64_t seed,
                                                    double k_max)
{
    std::vector<VarianceFixture> rows;
    const int a2 = family == Family::first ? 2 : 3;
    for (int n = table_n_first; n <= table_n_last; ++n) {
        const auto g = make_graph(n, 1, a2);
        std::optional<McResult> mc;
        if (samples > 0) {
            McOptions options;
            options.samples = samples;
            options.seed = seed;
            options.k_range.hi = k_max;
            mc = mc_variance(MetricGraph::random(g, seed), options);
        }
        for (int l = 1; l <= n; ++l) {
            const auto counts = class_counts(family, n, l);
            const auto value = variance_formula(l, counts.none, counts.two_encounters);
            if (value == 0) {
                continue;
            }
            VarianceFixture row;
            row.family = family_token(1, a2);
            row.n = n;
            row.l = l;
            row.p0 = counts.none;
            for (int k = 1; k <= 2; ++k) {
                const auto it = counts.two_encounters.find(k);
                row.phat[k] = it == counts.two_encounters.end() ? BigInt(0) : it->second;
            }
            row.value = value;
            if (mc) {
                row.reference_numerics = mc->mean_abs2[static_cast<std::size_t>(l)];
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline std::string render(const std::vector<VarianceFixture> &rows, Format f)
{
    std::ostringstream out;
    const std::string na(no_closed_form);
    switch (f) {
        case Format::csv:
            out << variance_fixture_header << '\n';
            for (const auto &r : rows) {
                out << r.family << ',' << r.n << ',' << r.l << ',' << to_string(r.p0) << ','
                    << to_string(r.phat.at(1)) << ',' << to_string(r.phat.at(2)) << ','
                    << to_string(boost::multiprecision::numerator(r.value)) << ','
                    << to_string(boost::multiprecision::denominator(r.value)) << ','
                    << (r.reference_numerics ? format_real(*r.reference_numerics) : na) << '\n';
            }
            break;
        case Format::markdown: {
            int current = -1;
            for (const auto &r : rows) {
                if (r.n != current) {
                    current = r.n;
                    out << (current == rows.front().n ? "" : "\n") << "| n=" << r.n
                        << " | l | P_0 | P^_1 | P^_2 | <\\|a_l\\|^2> | numerics | error |\n"
                        << "|---|---|---|---|---|---|---|---|\n";
                }
                const double exact = r.value.convert_to<double>();
                out << "| | " << r.l << " | " << to_string(r.p0) << " | " << to_string(r.phat.at(1)) << " | "
                    << to_string(r.phat.at(2)) << " | " << format_rational(r.value) << " | "
                    << (r.reference_numerics ? format_real(*r.reference_numerics) : "") << " | "
                    << (r.reference_numerics ? format_real(exact - *r.reference_numerics) : "") << " |\n";
            }
            break;
        }
        case Format::json: {
            auto j = nlohmann::ordered_json::array();
            for (const auto &r : rows) {
                nlohmann::ordered_json e;
                e["family"] = r.family;
                e["n"] = r.n;
                e["l"] = r.l;
                e["p0"] = to_string(r.p0);
                e["p1"] = to_string(r.phat.at(1));
                e["p2"] = to_string(r.phat.at(2));
                e["formula"] = format_rational(r.value);
                e["numerics"] = r.reference_numerics ? nlohmann::ordered_json(*r.reference_numerics) : nullptr;
                j.push_back(std::move(e));
            }
            out << j.dump(2) << '\n';
            break;
        }
    }
    return out.str();
}

// Orbit count grid: ten graph families, eight values of n each starting at
// a2 + 1, and orbit lengths 2..15.
inline const std::vector<std::pair<int, int>> &orbit_grid_families()
{
    static const std::vector<std::pair<int, int>> families{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6},
                                                           {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}};
    return families;
}

inline std::vector<CountRecord> orbit_grid()
{
    std::vector<CountRecord> out;
    for (const auto &[a1, a2] : orbit_grid_families()) {
        for (int n = a2 + 1; n <= a2 + 8; ++n) {
            for (int l = 2; l <= 15; ++l) {
                out.push_back(CountRecord{family_token(a1, a2), n, l, "po", po_count_general(n, l, a1, a2 - a1)});
            }
        }
    }
    return out;
}

inline std::string orbit_grid_markdown(const std::vector<CountRecord> &records)
{
    std::ostringstream out;
    std::string family;
    int n = -1;
    for (const auto &r : records) {
        if (r.family != family) {
            family = r.family;
            n = -1;
            out << (out.tellp() > 0 ? "\n" : "") << "#### " << family << "\n\n| n |";
            for (int l = 2; l <= 15; ++l) {
                out << " l=" << l << " |";
            }
            out << "\n|---|";
            for (int l = 2; l <= 15; ++l) {
                out << "---|";
            }
        }
        if (r.n != n) {
            n = r.n;
            out << "\n| " << n << " |";
        }
        out << ' ' << (r.count ? to_string(*r.count) : std::string(no_closed_form)) << " |";
    }
    out << '\n';
    return out.str();
}

// Class count grid: enumerated class counts on C_n^+(1,3), n = 5..10, l = 1..n,
// always with N = 1 and N = 2 columns.
inline std::vector<CountRecord> class_grid()
{
    std::vector<CountRecord> out;
    for (int n = table_n_first; n <= table_n_last; ++n) {
        const auto g = make_graph(n, 1, 3);
        for (int l = 1; l <= n; ++l) {
            auto counts = enumerated_class_counts(g, l);
            for (const auto *cls : {"none", "enc2_0_N1", "enc2_0_N2", "other"}) {
                out.push_back(CountRecord{"1-3", n, l, cls, counts[cls]});
            }
        }
    }
    return out;
}

// Verification ---------------------------------------------------------------

class Checker {
public:
    explicit Checker(std::ostream &out) : out_(out) {}

    void record(bool ok, const std::string &what)
    {
        ++checks_;
        if (!ok) {
            ++failures_;
        }
        out_ << (ok ? "PASS " : "FAIL ") << what << '\n';
    }

    int checks() const noexcept
    {
        return checks_;
    }
    int failures() const noexcept
    {
        return failures_;
    }

private:
    std::ostream &out_;
    int checks_ = 0;
    int failures_ = 0;
};

namespace detail {

inline CirculantGraph graph_of_family(const std::string &family, int n)
{
    const auto parts = circorbits::detail::split(family, '-');
    if (parts.size() != 2) {
        throw ParseError("bad family token '" + family + "'");
    }
    return make_graph(n, circorbits::detail::parse_int(parts[0], 1), circorbits::detail::parse_int(parts[1], 1));
}

inline std::string cell(int l, const std::string &cls, const std::string &source, const BigInt &got,
                        const BigInt &want)
{
    return "l=" + std::to_string(l) + " " + cls + " " + source + "=" + to_string(got) + " expected " + to_string(want);
}

} // namespace detail

// Checks fixture records group by group (one (family, n) per line of output).
// "po" cells are compared with the formula and the trace recursion, plus
// enumeration when l <= max_l; pseudo orbit class cells with enumeration and,
// where one exists, the closed form.
inline void verify_records(const std::vector<CountRecord> &records, int max_l, double budget, Checker &checker,
                           std::ostream &err)
{
    std::map<std::pair<std::string, int>, std::vector<const CountRecord *>> groups;
    std::vector<std::pair<std::string, int>> order;
    for (const auto &r : records) {
        const auto key = std::make_pair(r.family, r.n);
        if (!groups.contains(key)) {
            order.push_back(key);
        }
        groups[key].push_back(&r);
    }
    for (const auto &key : order) {
        const auto g = detail::graph_of_family(key.first, key.second);
        if (!is_connected(g)) {
            err << "warning: " << g.name() << " is not a connected graph\n";
        }
        const auto &group = groups[key];
        int top = 0;
        for (const auto *r : group) {
            top = std::max(top, r->l);
        }
        std::vector<BigInt> trace;
        if (top >= 1) {
            trace = trace_po_table(g, top);
        }
        std::map<int, std::map<std::string, BigInt>> class_counts_cache;
        std::vector<std::string> problems;
        int cells = 0;
        bool enumerated_po = false;
        for (const auto *r : group) {
            if (!r->count) {
                continue;
            }
            ++cells;
            const BigInt &want = *r->count;
            if (r->cls == "po") {
                const auto formula = po_count_general(g.n(), r->l, g.a1(), g.gap());
                if (formula != want) {
                    problems.push_back(detail::cell(r->l, r->cls, "formula", formula, want));
                }
                const auto &tr = trace[static_cast<std::size_t>(r->l)];
                if (tr != want) {
                    problems.push_back(detail::cell(r->l, r->cls, "trace", tr, want));
                }
                if (r->l <= max_l && estimated_enumeration_size(g, r->l) <= budget) {
                    enumerated_po = true;
                    const BigInt e(enumerate_primitive_pos(g, r->l).size());
                    if (e != want) {
                        problems.push_back(detail::cell(r->l, r->cls, "enumeration", e, want));
                    }
                }
                continue;
            }
            require_budget(g, r->l, budget);
            if (!class_counts_cache.contains(r->l)) {
                class_counts_cache[r->l] = enumerated_class_counts(g, r->l);
            }
            const auto &counts = class_counts_cache[r->l];
            const auto it = counts.find(r->cls);
            const BigInt e = it == counts.end() ? BigInt(0) : it->second;
            if (e != want) {
                problems.push_back(detail::cell(r->l, r->cls, "enumeration", e, want));
            }
            for (const auto &f : formula_counts(g, r->l, ClassFilter::all)) {
                if (f.cls == r->cls && f.count && *f.count != want) {
                    problems.push_back(detail::cell(r->l, r->cls, "formula", *f.count, want));
                }
            }
        }
        std::string what = key.first + " n=" + std::to_string(key.second) + ": " + std::to_string(cells) + " cells";
        if (enumerated_po) {
            what += ", enumeration up to l=" + std::to_string(std::min(top, max_l));
        }
        for (const auto &p : problems) {
            what += "\n     " + p;
        }
        checker.record(problems.empty(), what);
    }
}

// Three-way agreement on one graph: formula, trace recursion and enumeration
// for l in the range, plus the pseudo orbit classes where closed forms exist.
inline void verify_graph(const CirculantGraph &g, LengthRange range, double budget, Checker &checker,
                         std::ostream &err)
{
    if (!is_connected(g)) {
        err << "warning: " << g.name() << " is not a connected graph\n";
    }
    require_budget(g, range.hi, budget);
    const auto trace = trace_po_table(g, std::max(1, range.hi));
    for (int l = std::max(1, range.lo); l <= range.hi; ++l) {
        const auto formula = po_count_general(g.n(), l, g.a1(), g.gap());
        const BigInt e(enumerate_primitive_pos(g, l).size());
        const auto &tr = trace[static_cast<std::size_t>(l)];
        checker.record(formula == e && e == tr, g.name() + " l=" + std::to_string(l) + " po formula="
                                                    + to_string(formula) + " enumeration=" + to_string(e)
                                                    + " trace=" + to_string(tr));
        if (!family_of(g) || l > g.n()) {
            continue;
        }
        const auto enumerated = enumerated_counts(g, l, ClassFilter::all);
        for (const auto &f : formula_counts(g, l, ClassFilter::all)) {
            if (f.cls == "po" || !f.count) {
                continue;
            }
            BigInt e_count = 0;
            for (const auto &r : enumerated) {
                if (r.cls == f.cls) {
                    e_count = *r.count;
                }
            }
            checker.record(e_count == *f.count, g.name() + " l=" + std::to_string(l) + " " + f.cls + " formula="
                                                    + to_string(*f.count) + " enumeration=" + to_string(e_count));
        }
    }
}

// Command dispatch -----------------------------------------------------------

namespace detail {

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline CirculantGraph require_graph(const RunConfig &config)
{
    if (!config.graph) {
        throw ParseError("--graph n,a1,a2 is required");
    }
    return make_graph(config.graph->n, config.graph->a1, config.graph->a2);
}

inline LengthRange lengths_or(const RunConfig &config, LengthRange fallback)
{
    return config.lengths.value_or(fallback);
}

} // namespace detail

inline int run_count(const RunConfig &config, std::ostream &out)
{
    const auto g = detail::require_graph(config);
    const auto range = detail::lengths_or(config, {1, g.n()});
    std::vector<CountRecord> records;
    for (int l = range.lo; l <= range.hi; ++l) {
        auto rows = formula_counts(g, l, config.cls);
        records.insert(records.end(), rows.begin(), rows.end());
    }
    out << render(records, config.format);
    return exit_ok;
}

inline int run_classify(const RunConfig &config, std::ostream &out)
{
    const auto g = detail::require_graph(config);
    if (config.pseudo_orbit) {
        const auto p = parse_pseudo_orbit(g, *config.pseudo_orbit);
        const auto profile = classify(p);
        out << to_string(p, g.n()) << ' ' << profile.class_name() << '\n';
        return exit_ok;
    }
    const auto range = detail::lengths_or(config, {1, g.n()});
    require_budget(g, range.hi, config.budget);
    std::vector<CountRecord> records;
    for (int l = range.lo; l <= range.hi; ++l) {
        auto rows = enumerated_counts(g, l, config.cls);
        records.insert(records.end(), rows.begin(), rows.end());
    }
    out << render(records, config.format);
    return exit_ok;
}

inline int run_enumerate(const RunConfig &config, std::ostream &out)
{
    const auto g = detail::require_graph(config);
    const auto range = detail::lengths_or(config, {g.n(), g.n()});
    require_budget(g, range.hi, config.budget);
    std::vector<Listing> listings;
    for (int l = range.lo; l <= range.hi; ++l) {
        listings.push_back(enumerate_listing(g, l, config.cls));
    }
    out << render(listings, g, config.format);
    return exit_ok;
}

inline int run_variance(const RunConfig &config, std::ostream &out, std::ostream &err)
{
    const auto g = detail::require_graph(config);
    std::optional<McResult> mc;
    if (config.samples > 0) {
        McOptions options;
        options.samples = config.samples;
        options.seed = config.seed;
        options.k_range.hi = config.k_max;
        options.signs = config.signs;
        mc = mc_variance(MetricGraph::random(g, config.seed), options);
    }
    const auto report = make_variance_report(g, mc ? &*mc : nullptr);
    out << render(report, config.format);
    if (!config.check) {
        return exit_ok;
    }
    if (!family_of(g) || !mc) {
        throw ParseError("--check needs a covered family and --samples > 0");
    }
    int failures = 0;
    for (const auto &row : report.rows) {
        if (row.error && std::abs(*row.error) > config.threshold) {
            ++failures;
            err << "FAIL l=" << row.l << " |error| = " << format_real(std::abs(*row.error)) << " > "
                << format_real(config.threshold) << '\n';
        }
    }
    return failures == 0 ? exit_ok : exit_failure;
}

inline int run_verify(const RunConfig &config, std::ostream &out, std::ostream &err)
{
    Checker checker(out);
    if (config.graph) {
        const auto g = detail::require_graph(config);
        verify_graph(g, detail::lengths_or(config, {1, std::min(config.max_l, std::max(g.n(), 1))}), config.budget,
                     checker, err);
    } else if (config.fixtures) {
        verify_records(parse_count_records(detail::read_file(*config.fixtures)), config.max_l, config.budget, checker,
                       err);
    } else {
        verify_records(parse_count_records(embedded::orbit_counts_csv), config.max_l, config.budget, checker, err);
        verify_records(parse_count_records(embedded::class_counts_csv), config.max_l, config.budget, checker, err);
    }
    out << "verify: " << checker.checks() << " checks, " << checker.failures() << " failed\n";
    return checker.failures() == 0 ? exit_ok : exit_failure;
}

inline int run_tables(const RunConfig &config, std::ostream &out)
{
    const auto &t = config.table;
    if (t == "1" || t == "2") {
        const auto rows = variance_tables(t == "1" ? Family::first : Family::second, config.samples, config.seed,
                                          config.k_max);
        out << render(rows, config.format);
    } else if (t == "orbits" || t == "A" || t == "a") {
        const auto records = orbit_grid();
        out << (config.format == Format::markdown ? orbit_grid_markdown(records) : render(records, config.format));
    } else if (t == "classes" || t == "B" || t == "b") {
        out << render(class_grid(), config.format);
    } else {
        throw ParseError("--table must be one of 1, 2, orbits, classes");
    }
    return exit_ok;
}

inline int run(const RunConfig &config, std::ostream &out, std::ostream &err)
{
    std::ostringstream buffer;
    std::ostream &sink = config.output ? static_cast<std::ostream &>(buffer) : out;
    int status = exit_ok;
    switch (config.command) {
        case Command::count:
            status = run_count(config, sink);
            break;
        case Command::enumerate:
            status = run_enumerate(config, sink);
            break;
        case Command::classify:
            status = run_classify(config, sink);
            break;
        case Command::variance:
            status = run_variance(config, sink, err);
            break;
        case Command::verify:
            status = run_verify(config, sink, err);
            break;
        case Command::tables:
            status = run_tables(config, sink);
            break;
    }
    if (config.output) {
        std::ofstream file(*config.output, std::ios::binary);
        if (!file) {
            throw ParseError("cannot write '" + *config.output + "'");
        }
        file << buffer.str();
    }
    return status;
}

// Parses argv into a RunConfig and runs it. Library errors map onto the exit
// codes: verification failures 1, everything the user can fix 2.
inline int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Periodic orbit and pseudo orbit counts on directed circulant graphs"};
    app.require_subcommand(1);

    RunConfig config;
    std::string graph;
    std::string lengths;
    std::string cls = "all";
    std::string format = "csv";
    std::string sign_in = "a2";
    std::string sign_out = "a2";
    std::string output;
    std::string fixtures;

    const auto add_graph = [&](CLI::App *sub, bool required) {
        auto *opt = sub->add_option("--graph", graph, "graph spec n,a1,a2");
        if (required) {
            opt->required();
        }
    };
    const auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "csv, markdown or json")->capture_default_str();
        sub->add_option("--output,-o", output, "write to a file instead of stdout");
    };
    const auto add_enumeration = [&](CLI::App *sub) {
        sub->add_option("--l", lengths, "length or range lo..hi");
        sub->add_option("--class", cls, "all, po, none, enc2_0 or other")->capture_default_str();
        sub->add_option("--budget", config.budget, "cap on candidate circuits")->capture_default_str();
    };
    auto *count = app.add_subcommand("count", "closed-form counts");
    add_graph(count, true);
    add_common(count);
    count->add_option("--l", lengths, "length or range lo..hi");
    count->add_option("--class", cls, "all, po, none, enc2_0 or other")->capture_default_str();

    auto *enumerate = app.add_subcommand("enumerate", "list primitive pseudo orbits by class");
    add_graph(enumerate, true);
    add_common(enumerate);
    add_enumeration(enumerate);

    auto *classify_cmd = app.add_subcommand("classify", "class counts by enumeration, or the class of one pseudo orbit");
    add_graph(classify_cmd, true);
    add_common(classify_cmd);
    add_enumeration(classify_cmd);
    std::string pseudo_orbit;
    classify_cmd->add_option("--pseudo-orbit", pseudo_orbit, "orbit vertex strings, e.g. \"03 0125\"");

    auto *variance = app.add_subcommand("variance", "coefficient variance: exact and Monte-Carlo");
    add_graph(variance, true);
    add_common(variance);
    variance->add_option("--samples", config.samples, "k samples (0 skips the Monte-Carlo run)")
        ->capture_default_str();
    variance->add_option("--seed", config.seed, "seed for bond lengths and k")->capture_default_str();
    variance->add_option("--k-max", config.k_max, "k is drawn uniformly from [0, k-max]")->capture_default_str();
    variance->add_option("--sign-in", sign_in, "incoming arc of the -1 entry (a1 or a2)")->capture_default_str();
    variance->add_option("--sign-out", sign_out, "outgoing arc of the -1 entry (a1 or a2)")->capture_default_str();
    variance->add_flag("--check", config.check, "exit 1 when |error| exceeds the threshold");
    variance->add_option("--threshold", config.threshold, "tolerance for --check")->capture_default_str();

    auto *verify = app.add_subcommand("verify", "cross-check formulas, enumeration and the trace recursion");
    add_graph(verify, false);
    add_common(verify);
    verify->add_option("--l", lengths, "length or range lo..hi (with --graph)");
    verify->add_option("--fixtures", fixtures, "count file family,n,l,class,count");
    verify->add_option("--max-l", config.max_l, "longest length checked by enumeration")->capture_default_str();
    verify->add_option("--budget", config.budget, "cap on candidate circuits")->capture_default_str();

    auto *tables = app.add_subcommand("tables", "reproduce the variance tables and the count grids");
    add_common(tables);
    tables->add_option("--table", config.table, "1, 2, orbits (alias A) or classes (alias B)")->required();
    std::uint64_t table_samples = 0;
    tables->add_option("--samples", table_samples, "k samples for the numerics columns (0 skips them)")
        ->capture_default_str();
    tables->add_option("--seed", config.seed, "seed for bond lengths and k")->capture_default_str();
    tables->add_option("--k-max", config.k_max, "k is drawn uniformly from [0, k-max]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*count) {
            config.command = Command::count;
        } else if (*enumerate) {
            config.command = Command::enumerate;
        } else if (*classify_cmd) {
            config.command = Command::classify;
        } else if (*variance) {
            config.command = Command::variance;
        } else if (*verify) {
            config.command = Command::verify;
        } else {
            config.command = Command::tables;
            config.samples = table_samples;
        }
        if (!graph.empty()) {
            const auto spec = parse_graph_spec(graph);
            make_graph(spec.n, spec.a1, spec.a2);
            config.graph = spec;
        }
        if (!lengths.empty()) {
            config.lengths = parse_length_range(lengths);
        }
        config.cls = parse_class_filter(cls);
        config.format = parse_format(format);
        if (!output.empty()) {
            config.output = output;
        }
        if (!fixtures.empty()) {
            config.fixtures = fixtures;
        }
        if (!pseudo_orbit.empty()) {
            config.pseudo_orbit = pseudo_orbit;
        }
        const auto selector = [](const std::string &s) {
            if (s == "a1") {
                return 0;
            }
            if (s == "a2") {
                return 1;
            }
            throw ParseError("sign selectors are a1 or a2, got '" + s + "'");
        };
        config.signs = SignAssignment{selector(sign_in), selector(sign_out)};
        if (!(config.k_max > 0)) {
            throw ParseError("--k-max must be positive");
        }
        return run(config, out, err);
    } catch (const BudgetExceeded &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace circorbits::cli

#endif
