// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace movi {

// Exit-code buckets the CLI maps exceptions onto.
// 0 success, 2 input/schema error, 3 endpoint error, 4 internal invariant violation.
enum class ErrorCode {
    input = 2,
    endpoint = 3,
    internal = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Zero or otherwise unusable tensor extents.
struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorCode::input, w) {}
};

// Mismatched extents between two operands.
struct ShapeError : Error {
    explicit ShapeError(const std::string& w) : Error(ErrorCode::input, w) {}
};

// Out-of-range scalar parameter (cutoffs, betas, step counts, ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& w) : Error(ErrorCode::input, w) {}
};

// Inverse transform produced a significant imaginary part; the spectrum was
// not conjugate-symmetric (usually a malformed filter).
struct ConjugateSymmetryError : Error {
    explicit ConjugateSymmetryError(const std::string& w) : Error(ErrorCode::internal, w) {}
};

// No trajectory could be extracted from planner output. Carries the text so
// the CLI can echo it.
struct TrajectoryParseError : Error {
    TrajectoryParseError(const std::string& w, std::string offending_text)
        : Error(ErrorCode::input, w), offending(std::move(offending_text)) {}
    std::string offending;
};

// A coordinate tuple was malformed (non-integer frame index and similar).
struct TupleError : Error {
    TupleError(const std::string& w, std::size_t offset) : Error(ErrorCode::input, w), position(offset) {}
    std::size_t position;
};

struct DegenerateTrackError : Error {
    explicit DegenerateTrackError(const std::string& w) : Error(ErrorCode::input, w) {}
};

struct EndpointError : Error {
    explicit EndpointError(const std::string& w) : Error(ErrorCode::endpoint, w) {}
};

// The endpoint answered but the reply carried no usable plan.
struct EmptyPlanError : Error {
    explicit EmptyPlanError(const std::string& w) : Error(ErrorCode::input, w) {}
};

// The judge reply contained no score in [0, 10].
struct JudgeParseError : Error {
    explicit JudgeParseError(const std::string& w) : Error(ErrorCode::input, w) {}
};

// An object label matched no prompt token; token/object alignment is implicit
// so this fails fast rather than guessing.
struct UnboundObjectError : Error {
    explicit UnboundObjectError(const std::string& w) : Error(ErrorCode::input, w) {}
};

struct IndexError : Error {
    explicit IndexError(const std::string& w) : Error(ErrorCode::input, w) {}
};

// A denoiser backend broke its output contract.
struct BackendError : Error {
    explicit BackendError(const std::string& w) : Error(ErrorCode::internal, w) {}
};

// Every rejection-sampling candidate was skipped.
struct RejectionError : Error {
    explicit RejectionError(const std::string& w) : Error(ErrorCode::internal, w) {}
};

// Structured file (trajectory JSON, binding overrides, tensor files) violated
// its schema. The message names the offending field.
struct SchemaError : Error {
    explicit SchemaError(const std::string& w) : Error(ErrorCode::input, w) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCode::input, w) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& w) : Error(ErrorCode::internal, w) {}
};

}  // namespace movi
