#pragma once

#include <stdexcept>
#include <string>

namespace calogero {

// Process exit codes shared by the CLI and the error hierarchy.
// 0 ok, 2 resource cap exceeded, 3 degenerate JRW spectrum, 4 partial figure.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  resource_limit = 2,
  degenerate_spectrum = 3,
  partial_figure = 4,
};

class Error : public std::runtime_error {
public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const noexcept { return code_; }

private:
  ExitCode code_;
};

// An instance is beyond the configured desk-scale caps. Raised before any
// expensive allocation so the caller can lower the request or raise the cap.
class ResourceLimit : public Error {
public:
  explicit ResourceLimit(const std::string& what)
      : Error(ExitCode::resource_limit, what) {}
};

// The JRW sub-entropy formula is singular at equal eigenvalues; a gap below
// tolerance raises this instead of returning a catastrophically cancelled sum.
class DegenerateSpectrum : public Error {
public:
  explicit DegenerateSpectrum(const std::string& what)
      : Error(ExitCode::degenerate_spectrum, what) {}
};

// Sum of two Radical values with different radicands: always an indexing bug
// upstream, never a legitimate arithmetic request in this engine.
class MismatchedRadicand : public Error {
public:
  explicit MismatchedRadicand(const std::string& what)
      : Error(ExitCode::failure, what) {}
};

// Eigensolver failed to reach the off-diagonal tolerance within the sweep cap.
class ConvergenceFailure : public Error {
public:
  explicit ConvergenceFailure(const std::string& what)
      : Error(ExitCode::failure, what) {}
};

}  // namespace calogero
