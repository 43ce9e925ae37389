#pragma once

#include <stdexcept>
#include <string>

namespace relaxden {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size argument (vertex count, grid dimension) is zero or otherwise unusable.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

/// Array shapes disagree with each other or with the graph.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A vertex or edge index is out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Edge list or connectivity violates graph invariants.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Input is not symmetric (or otherwise breaks a kernel precondition).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Rank-deficient input where full column rank is required.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values in input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// The graph topology does not satisfy a solver precondition.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// Failure reading or writing a file; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Iterative inner solver ran out of iterations.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double achieved_gap, long iterations)
      : Error(what), achieved_gap_(achieved_gap), iterations_(iterations) {}

  double achieved_gap() const noexcept { return achieved_gap_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double achieved_gap_;
  long iterations_;
};

}  // namespace relaxden
