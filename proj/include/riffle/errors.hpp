#pragma once

#include <stdexcept>
#include <string>

namespace riffle {

// Input-side failures: bad files, bad ballots, unsatisfiable requests.
// The CLI maps these to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyProfile : InputError {
  EmptyProfile() : InputError("profile has no ballots") {}
};

struct InvalidBallot : InputError {
  long long row;
  InvalidBallot(long long row_index, const std::string& what)
      : InputError("ballot " + std::to_string(row_index) + ": " + what), row(row_index) {}
};

struct ParseError : InputError {
  long long line;
  ParseError(long long line_number, const std::string& what)
      : InputError("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
};

struct DimensionMismatch : ParseError {
  using ParseError::ParseError;
};

struct NonPermutationRow : ParseError {
  using ParseError::ParseError;
};

struct DimensionTooLarge : InputError {
  using InputError::InputError;
};

struct ZeroDispersion : InputError {
  ZeroDispersion() : InputError("residual matrix has zero dispersion (rank exhausted)") {}
};

struct EmptyCluster : InputError {
  explicit EmptyCluster(int alpha)
      : InputError("cluster alpha=" + std::to_string(alpha) + " is empty") {}
};

struct NoCoherentPrefix : InputError {
  NoCoherentPrefix() : InputError("first cluster is incoherent; no coherent group") {}
};

struct OutOfRange : InputError {
  using InputError::InputError;
};

struct InfeasibleAlpha : InputError {
  using InputError::InputError;
};

struct MissingAxis : InputError {
  using InputError::InputError;
};

// Broken internal invariants; these indicate a bug, not a data condition.
// The CLI maps these to exit code 2.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct OffLattice : InternalError {
  using InternalError::InternalError;
};

}  // namespace riffle
