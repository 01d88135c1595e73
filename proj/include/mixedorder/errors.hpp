#pragma once

#include <stdexcept>
#include <string>

namespace mixedorder {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};
struct NotPSD : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct BadSiteSet : Error {
  using Error::Error;
};
struct BadPartition : Error {
  using Error::Error;
};
struct BadProbability : Error {
  using Error::Error;
};
struct BadWeights : Error {
  using Error::Error;
};
struct BadAlpha : Error {
  using Error::Error;
};
struct BadGrid : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct CompletenessViolated : Error {
  using Error::Error;
};
struct DegeneratePurity : Error {
  using Error::Error;
};
struct SingularReference : Error {
  using Error::Error;
};
struct BadSchedule : Error {
  using Error::Error;
};
struct ConfigInvalid : Error {
  using Error::Error;
};
struct ResourceExceeded : Error {
  using Error::Error;
};

}  // namespace mixedorder
