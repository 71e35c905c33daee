// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ff {

enum class ErrorCode {
    invalid_argument,
    io,
    format,
    missing_document,
    dimension_mismatch,
};

/// Base exception of the library. Every error carries a code so the C API can
/// translate it into a status value without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(ErrorCode::format, what) {}
};

class MissingDocument : public Error {
public:
    explicit MissingDocument(const std::string& doc)
        : Error(ErrorCode::missing_document, "missing document: " + doc), doc_(doc) {}

    const std::string& doc() const noexcept { return doc_; }

private:
    std::string doc_;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error(ErrorCode::dimension_mismatch, "dimension mismatch: " + std::to_string(expected) +
                                                   " vs " + std::to_string(actual)),
          expected_(expected), actual_(actual) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

}  // namespace ff
