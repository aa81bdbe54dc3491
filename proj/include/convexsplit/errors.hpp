#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace convexsplit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Points of mismatched dimension, or a dimension outside the allowed range.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A caller-supplied argument violates a documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Text input could not be parsed.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Some subset of at most d+1 points is affinely dependent.
///
/// `witness` holds the offending indices into the sequence that was checked.
/// When the violation was found in a coordinate projection (super-general
/// position), `projection_dim` names the number of leading coordinates kept.
class GeneralPositionError : public Error {
public:
  GeneralPositionError(std::string what, std::vector<std::size_t> witness,
                       std::optional<std::size_t> projection_dim = std::nullopt)
      : Error(std::move(what)), witness_(std::move(witness)),
        projection_dim_(projection_dim) {}

  const std::vector<std::size_t>& witness() const noexcept { return witness_; }
  std::optional<std::size_t> projection_dim() const noexcept { return projection_dim_; }

private:
  std::vector<std::size_t> witness_;
  std::optional<std::size_t> projection_dim_;
};

/// A hyperplane handed to the crossing counter contains an edge of the path.
class EdgeOnHyperplaneError : public Error {
public:
  EdgeOnHyperplaneError(std::string what, std::size_t edge)
      : Error(std::move(what)), edge_(edge) {}

  /// Index i of the offending edge p_i p_{i+1}.
  std::size_t edge() const noexcept { return edge_; }

private:
  std::size_t edge_;
};

/// Curve sampling could not place a general-position point in some cell.
class SamplingError : public Error {
public:
  SamplingError(std::string what, std::size_t cell)
      : Error(std::move(what)), cell_(cell) {}

  std::size_t cell() const noexcept { return cell_; }

private:
  std::size_t cell_;
};

} // namespace convexsplit
