#pragma once

#include <stdexcept>
#include <string>

namespace emospace {

// Process exit codes shared by every surface of the tool.
enum class ExitCode : int {
    ok = 0,
    usage = 2,
    data_format = 3,
    numeric = 4,
    io = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ExitCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ExitCode code() const noexcept { return code_; }

  private:
    ExitCode code_;
};

// Bad flags, bad call arguments, violated call preconditions.
class UsageError : public Error {
  public:
    explicit UsageError(const std::string& msg) : Error(ExitCode::usage, msg) {}
};

// Malformed or inconsistent input data.
class FormatError : public Error {
  public:
    explicit FormatError(const std::string& msg)
        : Error(ExitCode::data_format, msg) {}
};

class DuplicateError : public FormatError {
  public:
    explicit DuplicateError(const std::string& msg) : FormatError(msg) {}
};

class DimensionError : public FormatError {
  public:
    explicit DimensionError(const std::string& msg) : FormatError(msg) {}
};

class OrderError : public FormatError {
  public:
    explicit OrderError(const std::string& msg) : FormatError(msg) {}
};

class RangeError : public FormatError {
  public:
    explicit RangeError(const std::string& msg) : FormatError(msg) {}
};

class ConflictError : public FormatError {
  public:
    explicit ConflictError(const std::string& msg) : FormatError(msg) {}
};

class EmptyInputError : public FormatError {
  public:
    explicit EmptyInputError(const std::string& msg) : FormatError(msg) {}
};

// A required category has no usable members (e.g. no in-vocabulary words).
class CoverageError : public FormatError {
  public:
    explicit CoverageError(const std::string& msg) : FormatError(msg) {}
};

// Fewer items available than requested.
class CountError : public FormatError {
  public:
    explicit CountError(const std::string& msg) : FormatError(msg) {}
};

class SizeError : public FormatError {
  public:
    explicit SizeError(const std::string& msg) : FormatError(msg) {}
};

// Numerically undefined or unstable situations.
class NumericError : public Error {
  public:
    explicit NumericError(const std::string& msg)
        : Error(ExitCode::numeric, msg) {}
};

class DegenerateVectorError : public NumericError {
  public:
    explicit DegenerateVectorError(const std::string& msg)
        : NumericError(msg) {}
};

class DegenerateStatError : public NumericError {
  public:
    explicit DegenerateStatError(const std::string& msg) : NumericError(msg) {}
};

class DivergenceError : public NumericError {
  public:
    DivergenceError(int epoch, const std::string& msg)
        : NumericError(msg), epoch_(epoch) {}
    int epoch() const noexcept { return epoch_; }

  private:
    int epoch_;
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& msg) : Error(ExitCode::io, msg) {}
};

}  // namespace emospace
