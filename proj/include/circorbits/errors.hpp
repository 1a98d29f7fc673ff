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

#ifndef CIRCORBITS_ERRORS_HPP
#define CIRCORBITS_ERRORS_HPP

#include <stdexcept>

namespace circorbits {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid C_n^+(a1, a2) parameters.
class GraphError : public Error {
public:
    using Error::Error;
};

class LoopError : public GraphError {
public:
    using GraphError::GraphError;
};

class MultiEdgeError : public GraphError {
public:
    using GraphError::GraphError;
};

class TooSmallError : public GraphError {
public:
    using GraphError::GraphError;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// The trace recursion produced a non-integer orbit count. Never expected on
// valid input.
class DivisionError : public Error {
public:
    using Error::Error;
};

// A closed-form count came out non-integral.
class NonIntegerResultError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace circorbits

#endif
