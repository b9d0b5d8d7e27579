// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nwatsp {

enum class Errc {
  // Rejected input (instance, partition, spec).
  NotStronglyConnected,
  NegativeWeight,
  SelfLoop,
  VertexOutOfRange,
  TooFewVertices,
  UnknownEdge,
  UnknownVertex,
  Unreachable,
  NotBalanced,
  NotConnected,
  VertexMissed,
  InvalidPartition,
  PartitionNotStronglyConnected,
  SinglePartError,
  BadSpec,
  TooLarge,
  // Internal invariant breaches. Each of these indicates a bug.
  Infeasible,
  IterationLimit,
  CutBelowOne,
  NoFeasibleCirculation,
  RebalancePathMissing,
  NoProgress,
  PotentialStalled,
  LightnessBreach,
  RestartLimitExceeded,
  InvariantBreach,
  // Environment.
  Io,
  Parse,
};

enum class ErrorCategory { InvalidInput, InvariantBreach, Io };

constexpr ErrorCategory category_of(Errc code) {
  switch (code) {
    case Errc::Infeasible:
    case Errc::IterationLimit:
    case Errc::CutBelowOne:
    case Errc::NoFeasibleCirculation:
    case Errc::RebalancePathMissing:
    case Errc::NoProgress:
    case Errc::PotentialStalled:
    case Errc::LightnessBreach:
    case Errc::RestartLimitExceeded:
    case Errc::InvariantBreach:
      return ErrorCategory::InvariantBreach;
    case Errc::Io:
    case Errc::Parse:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::InvalidInput;
  }
}

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  Errc code_;
};

}  // namespace nwatsp
