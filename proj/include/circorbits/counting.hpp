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

#ifndef CIRCORBITS_COUNTING_HPP
#define CIRCORBITS_COUNTING_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include <circorbits/errors.hpp>
#include <circorbits/numeric.hpp>

// Closed-form counts of primitive periodic orbits on C_n^+(a1, a1 + d) and of
// classified primitive pseudo orbits on C_n^+(1,2) and C_n^+(1,3). Everything
// is exact: prefactors such as n/l are rationals and every result is checked
// to be an integer.
namespace circorbits {

namespace detail {

inline BigInt require_integer(const Rational &value, const char *what)
{
    if (!is_integral(value)) {
        throw NonIntegerResultError(std::string(what) + " produced the non-integer " + value.str());
    }
    return numerator(value);
}

inline void require(bool condition, const std::string &message)
{
    if (!condition) {
        throw PreconditionError(message);
    }
}

inline Rational ratio(std::int64_t num, std::int64_t den)
{
    return Rational(num, den);
}

} // namespace detail

// Moebius function.
inline int mobius(std::int64_t w)
{
    detail::require(w >= 1, "mobius needs w >= 1");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= w; ++p) {
        if (w % p != 0) {
            continue;
        }
        w /= p;
        if (w % p == 0) {
            return 0;
        }
        sign = -sign;
    }
    if (w > 1) {
        sign = -sign;
    }
    return sign;
}

// C(top, bottom), read as zero whenever either argument is not a nonnegative
// integer or bottom > top.
inline BigInt binom_or_zero(const Rational &top, const Rational &bottom)
{
    if (!is_integral(top) || !is_integral(bottom) || top < 0 || bottom < 0 || bottom > top) {
        return 0;
    }
    return binomial(static_cast<std::int64_t>(numerator(top)), static_cast<std::int64_t>(numerator(bottom)));
}

// C_n^+(1,2), 0 < l <= n.
inline BigInt po_count_family1(std::int64_t n, std::int64_t l)
{
    detail::require(n > 2 && l > 0 && l <= n, "po_count_family1 needs n > 2 and 0 < l <= n");
    if (l == n) {
        return n % 2 == 1 ? 2 : 1;
    }
    const Rational value = detail::ratio(n, l) * Rational(binom_or_zero(l, n - l));
    return detail::require_integer(value, "po_count_family1");
}

// C_n^+(1,3), 0 < l <= n.
inline BigInt po_count_family2(std::int64_t n, std::int64_t l)
{
    detail::require(n > 3 && l > 0 && l <= n, "po_count_family2 needs n > 3 and 0 < l <= n");
    const Rational half_l = detail::ratio(l, 2);
    if (l == n) {
        const BigInt base = binom_or_zero(l, half_l) - binom_or_zero(half_l, detail::ratio(l, 4));
        return base + (n % 3 == 0 ? 1 : 2);
    }
    const BigInt bracket = binom_or_zero(l, detail::ratio(n - l, 2)) + binom_or_zero(l, detail::ratio(2 * n - l, 2))
                           - binom_or_zero(half_l, detail::ratio(2 * n - l, 4));
    return detail::require_integer(detail::ratio(n, l) * Rational(bracket), "po_count_family2");
}

// General C_n^+(a1, a1 + d), any l >= 1:
//   (n/l) sum_{m} sum_{w | gcd(m, l)} mu(w) C(l/w, (m n - a1 l)/(w d))
// with m running over ceil(a1 l / n) .. floor((a1 + d) l / n).
inline BigInt po_count_general(std::int64_t n, std::int64_t l, std::int64_t a1, std::int64_t d)
{
    detail::require(a1 >= 1 && d >= 1 && n > a1 + d && l >= 1, "po_count_general needs a1, d >= 1, n > a1 + d, l >= 1");
    BigInt sum = 0;
    const auto m_lo = ceil_div(a1 * l, n);
    const auto m_hi = floor_div((a1 + d) * l, n);
    for (auto m = m_lo; m <= m_hi; ++m) {
        for (const auto w : divisors(std::gcd(m, l))) {
            const int mu = mobius(w);
            if (mu == 0) {
                continue;
            }
            sum += mu * binom_or_zero(detail::ratio(l, w), detail::ratio(m * n - a1 * l, w * d));
        }
    }
    return detail::require_integer(detail::ratio(n, l) * Rational(sum), "po_count_general");
}

// Primitive pseudo orbits on C_n^+(1,2), 0 < l <= n. None of them
// self-intersect.
inline BigInt pso_count_family1(std::int64_t n, std::int64_t l)
{
    detail::require(n > 2 && l > 0 && l <= n, "pso_count_family1 needs n > 2 and 0 < l <= n");
    if (l == n) {
        return 2;
    }
    return detail::require_integer(detail::ratio(n, l) * Rational(binom_or_zero(l, n - l)), "pso_count_family1");
}

// Primitive pseudo orbits on C_n^+(1,3) with no self-intersection, 0 < l <= n.
inline BigInt pso0_family2(std::int64_t n, std::int64_t l)
{
    detail::require(n > 3 && l > 0 && l <= n, "pso0_family2 needs n > 3 and 0 < l <= n");
    if (l == n) {
        return n % 2 == 1 ? 2 : 4;
    }
    const Rational value = detail::ratio(n, l) * Rational(binom_or_zero(l, detail::ratio(n - l, 2)))
                           + detail::ratio(2 * n, l) * Rational(binom_or_zero(detail::ratio(l, 2), n - l));
    return detail::require_integer(value, "pso0_family2");
}

// Primitive pseudo orbits on C_n^+(1,3) whose only self-intersections are
// exactly N 2-encounters of length zero, 0 < l <= n, N >= 1:
//   2^N (n/N) C(l/2 - N, n - l + N) C(l/2 - N - 1, N - 1)
inline BigInt psoN_family2(std::int64_t n, std::int64_t l, std::int64_t N)
{
    detail::require(n > 3 && l > 0 && l <= n && N >= 1, "psoN_family2 needs n > 3, 0 < l <= n and N >= 1");
    const Rational half_l = detail::ratio(l, 2);
    const BigInt pairs = binom_or_zero(half_l - N, n - l + N);
    const BigInt placements = binom_or_zero(half_l - N - 1, N - 1);
    const Rational value = Rational(BigInt(1) << static_cast<unsigned>(N)) * detail::ratio(n, N) * Rational(pairs)
                           * Rational(placements);
    return detail::require_integer(value, "psoN_family2");
}

// Largest N for which psoN_family2(n, l, N) can be nonzero:
// floor((3l - 2n) / 4), clamped at 0.
inline std::int64_t max_n_2encounters(std::int64_t n, std::int64_t l)
{
    detail::require(n > 3 && l > 0 && l <= n, "max_n_2encounters needs n > 3 and 0 < l <= n");
    return std::max<std::int64_t>(0, floor_div(3 * l - 2 * n, 4));
}

} // namespace circorbits

#endif
