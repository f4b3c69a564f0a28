/*
 * Copyright 2026 The bireconf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bireconf {

enum class ErrorCode {
  OddCycle,
  InvalidState,
  BudgetExceeded,
  NotACover,
  CapacityExceeded,
  RedundantMarker,
  MixedBlock,
  PreconditionFailed,
  TooLarge,
  InvalidDecomposition,
  NotAClique,
  NoBag,
  NotDisjointCovers,
  NoCliqueBag,
  InvalidSequence,
  IllegalCopMove,
  NotIndependent,
  HypothesisFailed,
  EndpointsAdjacent,
  NotAWord,
  NotStrict,
  WrongSize,
  ParityMixed,
  InvalidSlide,
  Parse,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::OddCycle: return "OddCycle";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::RedundantMarker: return "RedundantMarker";
    case ErrorCode::MixedBlock: return "MixedBlock";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::NotAClique: return "NotAClique";
    case ErrorCode::NoBag: return "NoBag";
    case ErrorCode::NotDisjointCovers: return "NotDisjointCovers";
    case ErrorCode::NoCliqueBag: return "NoCliqueBag";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::IllegalCopMove: return "IllegalCopMove";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::EndpointsAdjacent: return "EndpointsAdjacent";
    case ErrorCode::NotAWord: return "NotAWord";
    case ErrorCode::NotStrict: return "NotStrict";
    case ErrorCode::WrongSize: return "WrongSize";
    case ErrorCode::ParityMixed: return "ParityMixed";
    case ErrorCode::InvalidSlide: return "InvalidSlide";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library. `index()` carries the offending step,
/// marker, or schedule position when the error is positional.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  [[nodiscard]] ErrorCode code() const { return code_; }
  [[nodiscard]] std::optional<std::size_t> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

class OddCycleError : public Error {
 public:
  explicit OddCycleError(std::vector<int> cycle)
      : Error(ErrorCode::OddCycle, "graph is not bipartite"), cycle_(std::move(cycle)) {}
  [[nodiscard]] const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t visited, std::size_t budget)
      : Error(ErrorCode::BudgetExceeded,
              "visited " + std::to_string(visited) + " states, budget " + std::to_string(budget)),
        visited_(visited) {}
  [[nodiscard]] std::size_t visited() const { return visited_; }

 private:
  std::size_t visited_;
};

}  // namespace bireconf
