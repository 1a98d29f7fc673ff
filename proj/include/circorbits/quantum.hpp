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

#ifndef CIRCORBITS_QUANTUM_HPP
#define CIRCORBITS_QUANTUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <circorbits/counting.hpp>
#include <circorbits/errors.hpp>
#include <circorbits/graph.hpp>
#include <circorbits/numeric.hpp>
#include <circorbits/parallel.hpp>

namespace circorbits {

using Complex = std::complex<double>;

// The two families with closed-form pseudo orbit counts.
enum class Family { first, second };

inline std::optional<Family> family_of(const CirculantGraph &g)
{
    if (g.a1() == 1 && g.a2() == 2) {
        return Family::first;
    }
    if (g.a1() == 1 && g.a2() == 3) {
        return Family::second;
    }
    return std::nullopt;
}

// "a1-a2", the family column used in fixture and report files.
inline std::string family_token(int a1, int a2)
{
    return std::to_string(a1) + "-" + std::to_string(a2);
}

inline std::string family_token(const CirculantGraph &g)
{
    return family_token(g.a1(), g.a2());
}

namespace detail {

// Independent deterministic substreams keyed by (seed, stream, purpose).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint32_t purpose)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), purpose};
    return std::mt19937_64(seq);
}

// Uniform in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline constexpr std::uint32_t lengths_stream = 0x4c454e47u;
inline constexpr std::uint32_t k_stream = 0x4b56414cu;

// Neumaier compensated sum.
template <typename T>
struct CompensatedSum {
    T sum{};
    T carry{};

    void add(T x)
    {
        const T t = sum + x;
        if constexpr (std::is_same_v<T, double>) {
            carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        } else {
            const auto re = CompensatedSum<double>::step(sum.real(), x.real());
            const auto im = CompensatedSum<double>::step(sum.imag(), x.imag());
            carry += T(re, im);
        }
        sum = t;
    }
    T value() const
    {
        return sum + carry;
    }

    static double step(double s, double x)
    {
        const double t = s + x;
        return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    }
};

} // namespace detail

// A circulant graph with a positive length on every bond, indexed like
// CirculantGraph::bond_index.
class MetricGraph {
public:
    static MetricGraph with_lengths(const CirculantGraph &g, std::vector<double> lengths)
    {
        if (lengths.size() != g.bond_count()) {
            throw PreconditionError("expected " + std::to_string(g.bond_count()) + " bond lengths, got "
                                    + std::to_string(lengths.size()));
        }
        for (const double l : lengths) {
            if (!std::isfinite(l) || l <= 0) {
                throw PreconditionError("bond lengths must be finite and positive");
            }
        }
        return MetricGraph(g, std::move(lengths));
    }

    // Independent uniform draws from [lo, hi], one per bond.
    static MetricGraph random(const CirculantGraph &g, std::uint64_t seed, double lo = 0.9, double hi = 1.1)
    {
        auto rng = detail::make_stream(seed, 0, detail::lengths_stream);
        std::vector<double> lengths(g.bond_count());
        for (auto &l : lengths) {
            l = lo + (hi - lo) * detail::unit_uniform(rng);
        }
        return with_lengths(g, std::move(lengths));
    }

    const CirculantGraph &graph() const noexcept
    {
        return graph_;
    }
    std::span<const double> lengths() const noexcept
    {
        return lengths_;
    }
    double length(const Bond &b) const
    {
        return lengths_[graph_.bond_index(b)];
    }

private:
    MetricGraph(const CirculantGraph &g, std::vector<double> lengths) : graph_(g), lengths_(std::move(lengths)) {}

    CirculantGraph graph_;
    std::vector<double> lengths_;
};

// Which (incoming arc, outgoing arc) pair of each vertex carries the -1 of
// the 2x2 DFT block; 0 selects a1, 1 selects a2.
struct SignAssignment {
    int incoming = 1;
    int outgoing = 1;

    friend bool operator==(const SignAssignment &, const SignAssignment &) = default;
};

// B x B matrix, B = 2n, with S(b', b) = sigma_{b', b} when t(b) = o(b').
// Rows and columns follow the bond index 2v + arc selector.
struct BondScatteringMatrix {
    Eigen::MatrixXcd entries;
    SignAssignment signs;

    std::size_t dimension() const noexcept
    {
        return static_cast<std::size_t>(entries.rows());
    }
};

inline BondScatteringMatrix build_scattering(const CirculantGraph &g, SignAssignment signs = {})
{
    if ((signs.incoming != 0 && signs.incoming != 1) || (signs.outgoing != 0 && signs.outgoing != 1)) {
        throw PreconditionError("sign assignment selectors must be 0 or 1");
    }
    const auto size = static_cast<Eigen::Index>(g.bond_count());
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
    const double amplitude = 1.0 / std::numbers::sqrt2;
    for (Vertex v = 0; v < g.n(); ++v) {
        for (int in_sel = 0; in_sel < 2; ++in_sel) {
            const int in_arc = g.arcs()[static_cast<std::size_t>(in_sel)];
            const Bond incoming{g.step(v, -in_arc), in_arc};
            for (int out_sel = 0; out_sel < 2; ++out_sel) {
                const Bond outgoing{v, g.arcs()[static_cast<std::size_t>(out_sel)]};
                const bool flip = in_sel == signs.incoming && out_sel == signs.outgoing;
                s(static_cast<Eigen::Index>(g.bond_index(outgoing)), static_cast<Eigen::Index>(g.bond_index(incoming)))
                    = flip ? -amplitude : amplitude;
            }
        }
    }
    return BondScatteringMatrix{std::move(s), signs};
}

// max |M M^dagger - I| over all entries.
inline double unitarity_residual(const Eigen::MatrixXcd &m)
{
    const Eigen::MatrixXcd r = m * m.adjoint() - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return r.cwiseAbs().maxCoeff();
}

// S e^{i k L}: column b of S scaled by e^{i k L_b}.
inline Eigen::MatrixXcd evolution_matrix(const BondScatteringMatrix &s, const MetricGraph &mg, double k)
{
    if (s.dimension() != mg.graph().bond_count()) {
        throw PreconditionError("scattering matrix and metric graph disagree on the bond count");
    }
    Eigen::MatrixXcd a = s.entries;
    const auto lengths = mg.lengths();
    for (Eigen::Index b = 0; b < a.cols(); ++b) {
        a.col(b) *= std::polar(1.0, k * lengths[static_cast<std::size_t>(b)]);
    }
    return a;
}

// Coefficients a_0..a_B of det(z I - A) = sum_l a_l z^{B-l}, from a Householder
// reduction to upper Hessenberg form followed by the La Budde recurrence on
// the leading principal minors.
class CharPolySolver {
public:
    explicit CharPolySolver(Eigen::Index size) : hessenberg_(size), h_(size, size), minors_(size + 1) {}

    const std::vector<Complex> &solve(const Eigen::MatrixXcd &a)
    {
        const auto size = a.rows();
        if (size == 0) {
            minors_.assign(1, std::vector<Complex>{Complex(1.0)});
            return minors_.back();
        }
        hessenberg_.compute(a);
        h_ = hessenberg_.matrixH();
        minors_.resize(static_cast<std::size_t>(size) + 1);

        // minors_[i][j] is the coefficient of z^{i-j} in the i-th leading
        // principal minor of z I - H.
        minors_[0].assign(1, Complex(1.0));
        for (Eigen::Index i = 1; i <= size; ++i) {
            auto &p = minors_[static_cast<std::size_t>(i)];
            const auto &prev = minors_[static_cast<std::size_t>(i - 1)];
            p.assign(static_cast<std::size_t>(i) + 1, Complex(0.0));
            const Complex diag = h_(i - 1, i - 1);
            for (std::size_t j = 0; j < prev.size(); ++j) {
                p[j] += prev[j];
                p[j + 1] -= diag * prev[j];
            }
            Complex subdiag_product(1.0);
            for (Eigen::Index m = 1; m < i; ++m) {
                subdiag_product *= h_(i - m, i - m - 1);
                const Complex factor = h_(i - m - 1, i - 1) * subdiag_product;
                const auto &older = minors_[static_cast<std::size_t>(i - m - 1)];
                for (std::size_t j = 0; j < older.size(); ++j) {
                    p[j + static_cast<std::size_t>(m) + 1] -= factor * older[j];
                }
            }
        }
        return minors_.back();
    }

private:
    Eigen::HessenbergDecomposition<Eigen::MatrixXcd> hessenberg_;
    Eigen::MatrixXcd h_;
    std::vector<std::vector<Complex>> minors_;
};

inline std::vector<Complex> char_poly_coeffs(const Eigen::MatrixXcd &a)
{
    CharPolySolver solver(a.rows());
    return solver.solve(a);
}

inline std::vector<Complex> char_poly_coeffs(const BondScatteringMatrix &s, const MetricGraph &mg, double k)
{
    return char_poly_coeffs(evolution_matrix(s, mg, k));
}

inline constexpr std::uint64_t default_seed = 42;
inline constexpr std::uint64_t default_samples = 1'000'000;

struct KRange {
    double lo = 0.0;
    double hi = 1.0e6;
};

struct McOptions {
    std::uint64_t samples = default_samples;
    std::uint64_t seed = default_seed;
    KRange k_range;
    SignAssignment signs;
    // 0 picks worker_count().
    unsigned workers = 0;
};

struct McResult {
    // <|a_l|^2> and <a_l> for l = 0..B.
    std::vector<double> mean_abs2;
    std::vector<Complex> mean_coeff;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// Samples are processed in fixed chunks, each with its own substream, and
// the chunk sums are combined in chunk order. The result does not depend on
// the number of workers.
inline constexpr std::uint64_t mc_chunk_size = 4096;

} // namespace detail

// Averages |a_l(k)|^2 over k drawn uniformly from the k range.
inline McResult mc_variance(const MetricGraph &mg, const McOptions &options = {})
{
    if (options.samples < 1) {
        throw PreconditionError("mc_variance needs at least one sample");
    }
    if (!(options.k_range.hi >= options.k_range.lo)) {
        throw PreconditionError("k range must satisfy lo <= hi");
    }
    const auto s = build_scattering(mg.graph(), options.signs);
    const auto dim = static_cast<Eigen::Index>(s.dimension());
    const auto coeffs = static_cast<std::size_t>(dim) + 1;
    const auto chunks = (options.samples + detail::mc_chunk_size - 1) / detail::mc_chunk_size;

    struct ChunkSums {
        std::vector<detail::CompensatedSum<double>> abs2;
        std::vector<detail::CompensatedSum<Complex>> coeff;
    };
    std::vector<ChunkSums> partial(chunks);

    parallel_for(
        chunks,
        [&](std::size_t chunk) {
            auto rng = detail::make_stream(options.seed, chunk, detail::k_stream);
            CharPolySolver solver(dim);
            Eigen::MatrixXcd a(dim, dim);
            auto &sums = partial[chunk];
            sums.abs2.resize(coeffs);
            sums.coeff.resize(coeffs);
            const auto first = chunk * detail::mc_chunk_size;
            const auto last = std::min<std::uint64_t>(first + detail::mc_chunk_size, options.samples);
            const auto lengths = mg.lengths();
            for (auto i = first; i < last; ++i) {
                const double k = options.k_range.lo + (options.k_range.hi - options.k_range.lo) * detail::unit_uniform(rng);
                for (Eigen::Index b = 0; b < dim; ++b) {
                    a.col(b) = s.entries.col(b) * std::polar(1.0, k * lengths[static_cast<std::size_t>(b)]);
                }
                const auto &c = solver.solve(a);
                for (std::size_t l = 0; l < coeffs; ++l) {
                    sums.abs2[l].add(std::norm(c[l]));
                    sums.coeff[l].add(c[l]);
                }
            }
        },
        options.workers == 0 ? worker_count() : options.workers);

    McResult result;
    result.samples = options.samples;
    result.seed = options.seed;
    result.mean_abs2.resize(coeffs);
    result.mean_coeff.resize(coeffs);
    const double count = static_cast<double>(options.samples);
    for (std::size_t l = 0; l < coeffs; ++l) {
        detail::CompensatedSum<double> abs2;
        detail::CompensatedSum<Complex> coeff;
        for (const auto &p : partial) {
            abs2.add(p.abs2[l].value());
            coeff.add(p.coeff[l].value());
        }
        result.mean_abs2[l] = abs2.value() / count;
        result.mean_coeff[l] = coeff.value() / count;
    }
    return result;
}

// <|a_l|^2> = 2^{-l} (|P_0^l| + sum_N 2^N |P^_N^l|).
inline Rational variance_formula(int l, const BigInt &p0, const std::map<int, BigInt> &phat = {})
{
    if (l < 0) {
        throw PreconditionError("variance_formula needs l >= 0");
    }
    BigInt total = p0;
    for (const auto &[n_enc, count] : phat) {
        if (n_enc < 1) {
            throw PreconditionError("2-encounter counts are keyed by N >= 1");
        }
        total += (BigInt(1) << static_cast<unsigned>(n_enc)) * count;
    }
    return Rational(total, BigInt(1) << static_cast<unsigned>(l));
}

// Closed-form class sizes |P_0^l| and |P^_N^l| for 0 <= l <= n.
struct ClassCounts {
    BigInt none;
    std::map<int, BigInt> two_encounters;
};

inline ClassCounts class_counts(Family family, int n, int l)
{
    if (l == 0) {
        return ClassCounts{1, {}};
    }
    if (family == Family::first) {
        return ClassCounts{pso_count_family1(n, l), {}};
    }
    ClassCounts out{pso0_family2(n, l), {}};
    for (std::int64_t big_n = 1; big_n <= max_n_2encounters(n, l); ++big_n) {
        out.two_encounters[static_cast<int>(big_n)] = psoN_family2(n, l, big_n);
    }
    return out;
}

// Exact <|a_l|^2> for l = 0..2n. The upper half mirrors the lower half since
// a_l = a_B conj(a_{B-l}).
inline std::vector<Rational> variance_table(Family family, int n)
{
    if ((family == Family::first && n <= 2) || (family == Family::second && n <= 3)) {
        throw PreconditionError("n = " + std::to_string(n) + " is outside the family's range");
    }
    std::vector<Rational> table(2 * static_cast<std::size_t>(n) + 1);
    for (int l = 0; l <= n; ++l) {
        const auto counts = class_counts(family, n, l);
        table[static_cast<std::size_t>(l)] = variance_formula(l, counts.none, counts.two_encounters);
    }
    for (int l = n + 1; l <= 2 * n; ++l) {
        table[static_cast<std::size_t>(l)] = table[static_cast<std::size_t>(2 * n - l)];
    }
    return table;
}

struct VarianceRow {
    int l = 0;
    std::optional<Rational> formula;
    std::optional<double> mc_estimate;
    // formula - estimate
    std::optional<double> error;
};

struct VarianceReport {
    std::string family;
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<VarianceRow> rows;
};

// Joins the exact table (when the graph is in a covered family) with an
// optional Monte-Carlo run.
inline VarianceReport make_variance_report(const CirculantGraph &g, const McResult *mc)
{
    VarianceReport report;
    report.family = family_token(g);
    report.n = g.n();
    if (mc != nullptr) {
        report.samples = mc->samples;
        report.seed = mc->seed;
    }
    std::optional<std::vector<Rational>> exact;
    if (const auto family = family_of(g)) {
        exact = variance_table(*family, g.n());
    }
    for (int l = 0; l <= 2 * g.n(); ++l) {
        VarianceRow row;
        row.l = l;
        if (exact) {
            row.formula = (*exact)[static_cast<std::size_t>(l)];
        }
        if (mc != nullptr) {
            row.mc_estimate = mc->mean_abs2[static_cast<std::size_t>(l)];
        }
        if (row.formula && row.mc_estimate) {
            row.error = row.formula->convert_to<double>() - *row.mc_estimate;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace circorbits

#endif
