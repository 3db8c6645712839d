/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cgc {

// Base class for all library errors. CLI maps subclasses to exit codes.
struct error : std::runtime_error {
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

// Input could not be parsed (CLI exit code 2).
struct parse_error : error {
    explicit parse_error(const std::string &msg) : error("parse error: " + msg) {}
};

// A bounded search ran out of its iteration budget (CLI exit code 3).
struct budget_exhausted : error {
    explicit budget_exhausted(const std::string &msg) : error("budget exhausted: " + msg) {}
};

// A support/face query left the multiquadratic field (CLI exit code 4).
struct unsupported_direction : error {
    explicit unsupported_direction(const std::string &msg) : error("unsupported direction: " + msg) {}
};

// Face extraction would need a point outside the field.
struct irrational_face_point : error {
    explicit irrational_face_point(const std::string &msg) : error("irrational face point: " + msg) {}
};

// A direction argument that must be nonzero was zero.
struct zero_vector : error {
    explicit zero_vector(const std::string &msg) : error("zero vector: " + msg) {}
};

// A body constructor received an empty intersection.
struct empty_body : error {
    explicit empty_body(const std::string &msg) : error("empty body: " + msg) {}
};

// A cut set does not bound a polyhedron that an operation requires bounded.
struct unbounded_polyhedron : error {
    explicit unbounded_polyhedron(const std::string &msg) : error("unbounded polyhedron: " + msg) {}
};

// No positive rescaling of the direction makes its support value rational.
struct irrational_support : error {
    explicit irrational_support(const std::string &msg) : error("irrational support: " + msg) {}
};

// An internal invariant failed; indicates a bug, never expected input.
struct internal_error : error {
    explicit internal_error(const std::string &msg) : error("internal error: " + msg) {}
};

} // namespace cgc
