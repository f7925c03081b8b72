#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutofflab {

// Error taxonomy. Parameter/size/parse/domain errors are caller mistakes and
// map to CLI exit code 2; numerical errors are internal consistency failures
// and map to exit code 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : Error {
    using Error::Error;
};

struct SizeLimitError : ParameterError {
    using ParameterError::ParameterError;
};

struct DomainError : ParameterError {
    using ParameterError::ParameterError;
};

// Malformed input file; message carries the line number.
struct ParseError : ParameterError {
    using ParameterError::ParameterError;
};

// A structural invariant of a domain type is violated; message names the
// invariant and the offending entry.
struct InvariantError : ParameterError {
    using ParameterError::ParameterError;
};

// An operation was called on an object that does not satisfy its contract
// (e.g. a transitive-only condition on a non-transitive chain).
struct ContractError : ParameterError {
    using ParameterError::ParameterError;
};

struct NumericalError : Error {
    using Error::Error;
};

enum class TimeConvention { Continuous, Discrete };

const char* to_string(TimeConvention c);
TimeConvention time_convention_from_string(const std::string& s);

// Dense row-major matrix of doubles. Kept deliberately minimal: the numeric
// kernels operate on raw rows, Eigen is used only inside the eigensolver.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row(std::size_t r) { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const { return data_.data() + r * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Serializes v with 17 significant digits (round-trip exact for double).
std::string format_double(double v);

}  // namespace cutofflab
