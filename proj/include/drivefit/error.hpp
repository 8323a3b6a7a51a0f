// Copyright 2026 The DriveFit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRIVEFIT__ERROR_HPP_
#define DRIVEFIT__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace drivefit
{

enum class ErrorCode {
  kEmptyLog,
  kNonMonotonicTime,
  kSchemaMismatch,
  kInvalidRow,
  kDurationTooShort,
  kInvalidArgument,
  kEmptyPopulation,
  kDuplicateRideId,
  kRideNotFound,
  kUnknownMetric,
  kInvalidConfig,
  kStorageFailure,
};

inline std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kEmptyLog:
      return "EmptyLog";
    case ErrorCode::kNonMonotonicTime:
      return "NonMonotonicTime";
    case ErrorCode::kSchemaMismatch:
      return "SchemaMismatch";
    case ErrorCode::kInvalidRow:
      return "InvalidRow";
    case ErrorCode::kDurationTooShort:
      return "DurationTooShort";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kEmptyPopulation:
      return "EmptyPopulation";
    case ErrorCode::kDuplicateRideId:
      return "DuplicateRideId";
    case ErrorCode::kRideNotFound:
      return "RideNotFound";
    case ErrorCode::kUnknownMetric:
      return "UnknownMetric";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kStorageFailure:
      return "StorageFailure";
  }
  return "Unknown";
}

/// True for errors caused by caller input rather than by the process itself.
inline bool is_input_error(ErrorCode code) { return code != ErrorCode::kStorageFailure; }

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message)
  {
  }

  ErrorCode code() const noexcept { return code_; }
  /// The message without the error-name prefix that what() carries.
  const std::string & message() const noexcept { return message_; }

private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace drivefit

#endif  // DRIVEFIT__ERROR_HPP_
