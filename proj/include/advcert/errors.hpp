#pragma once

#include <stdexcept>
#include <string>

namespace advcert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputShapeError : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct UnsupportedActivationError : Error { using Error::Error; };
struct ClassIndexError : Error { using Error::Error; };
struct StationaryPointError : Error { using Error::Error; };
struct NoSignChangeError : Error { using Error::Error; };
struct BadBracketError : Error { using Error::Error; };
struct DerivativeVanishedError : Error { using Error::Error; };
struct InvalidEstimateError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct OracleFailure : Error { using Error::Error; };
struct BoundaryNotFound : Error { using Error::Error; };
struct RegionSamplingError : Error { using Error::Error; };
struct EmptyDatasetError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct TrainingError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace advcert
