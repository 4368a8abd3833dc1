#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace simcoder {

// Every structured failure in the library is an Error with a kind; the CLI
// maps kinds onto the documented exit codes.
enum class ErrorKind {
  // config / topology parsing
  MissingKey,
  BadValue,
  UnknownDataflow,
  BadRow,
  DuplicateLayerName,
  NonNumericField,
  // simulation
  InfeasibleTile,
  DivisionByZeroReference,
  EmptyCorpus,
  // agent
  NoExemplars,
  BadTaskFile,
  ProviderError,
  EmptyCompletion,
  NoCodeBlock,
  SandboxUnavailable,
  // operator surface
  IoError,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Exit codes documented in the CLI help: 0 success, 2 usage, 3 parse/input,
  // 4 simulation, 5 provider, 6 sandbox.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Usage:
        return 2;
      case ErrorKind::MissingKey:
      case ErrorKind::BadValue:
      case ErrorKind::UnknownDataflow:
      case ErrorKind::BadRow:
      case ErrorKind::DuplicateLayerName:
      case ErrorKind::NonNumericField:
      case ErrorKind::BadTaskFile:
      case ErrorKind::IoError:
        return 3;
      case ErrorKind::InfeasibleTile:
      case ErrorKind::DivisionByZeroReference:
      case ErrorKind::EmptyCorpus:
      case ErrorKind::NoExemplars:
        return 4;
      case ErrorKind::ProviderError:
      case ErrorKind::EmptyCompletion:
      case ErrorKind::NoCodeBlock:
        return 5;
      case ErrorKind::SandboxUnavailable:
        return 6;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
};

}  // namespace simcoder
