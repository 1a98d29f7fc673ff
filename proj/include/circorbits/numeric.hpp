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

#ifndef CIRCORBITS_NUMERIC_HPP
#define CIRCORBITS_NUMERIC_HPP

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace circorbits {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical residue in [0, n) for n > 0.
constexpr std::int64_t mod(std::int64_t a, std::int64_t n)
{
    const auto r = a % n;
    return r < 0 ? r + n : r;
}

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    assert(b > 0);
    const auto q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    assert(b > 0);
    const auto q = a / b;
    return (a % b != 0 && a > 0) ? q + 1 : q;
}

// Positive divisors of n >= 1 in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    assert(n >= 1);
    std::vector<std::int64_t> low, high;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            low.push_back(d);
            if (d != n / d) {
                high.push_back(n / d);
            }
        }
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

// C(top, bottom) for 0 <= bottom <= top, exact.
inline BigInt binomial(std::int64_t top, std::int64_t bottom)
{
    assert(0 <= bottom && bottom <= top);
    if (bottom > top - bottom) {
        bottom = top - bottom;
    }
    BigInt result = 1;
    for (std::int64_t i = 1; i <= bottom; ++i) {
        // Each partial product is itself a binomial coefficient, so the
        // division is exact.
        result *= top - bottom + i;
        result /= i;
    }
    return result;
}

inline bool is_integral(const Rational &q)
{
    return denominator(q) == 1;
}

inline std::string to_string(const BigInt &v)
{
    return v.str();
}

// Dense square matrix, row-major. Only what the trace recursion needs.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t size) : size_(size), data_(size * size, T(0)) {}

    static SquareMatrix identity(std::size_t size)
    {
        SquareMatrix m(size);
        for (std::size_t i = 0; i < size; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    std::size_t size() const noexcept
    {
        return size_;
    }

    T &operator()(std::size_t row, std::size_t col)
    {
        return data_[row * size_ + col];
    }
    const T &operator()(std::size_t row, std::size_t col) const
    {
        return data_[row * size_ + col];
    }

    T trace() const
    {
        T t(0);
        for (std::size_t i = 0; i < size_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    template <typename U>
    SquareMatrix<U> cast() const
    {
        SquareMatrix<U> out(size_);
        for (std::size_t i = 0; i < size_ * size_; ++i) {
            out(i / size_, i % size_) = U(data_[i]);
        }
        return out;
    }

    friend SquareMatrix operator*(const SquareMatrix &a, const SquareMatrix &b)
    {
        assert(a.size_ == b.size_);
        SquareMatrix c(a.size_);
        for (std::size_t i = 0; i < a.size_; ++i) {
            for (std::size_t k = 0; k < a.size_; ++k) {
                const T &aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < a.size_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend bool operator==(const SquareMatrix &, const SquareMatrix &) = default;

private:
    std::size_t size_ = 0;
    std::vector<T> data_;
};

} // namespace circorbits

#endif
