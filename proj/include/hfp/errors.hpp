#pragma once

#include <stdexcept>
#include <string>

namespace hfp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition on a domain quantity.
struct DomainError : Error {
  using Error::Error;
};

/// An evaluation point landed within the guard radius of a pole image.
struct SingularityTooClose : Error {
  using Error::Error;
};

/// A rule or decomposition needs derivative data that was not supplied.
struct MissingDerivatives : Error {
  using Error::Error;
};

/// A strip evaluation needs a complex-plane evaluator that was not supplied.
struct MissingComplexEval : Error {
  using Error::Error;
};

/// The discrete transform is undersampled for the requested use.
struct SpectralResolutionTooLow : Error {
  using Error::Error;
};

/// Malformed run configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// A strip offset tau lies outside the admissible range.
struct TauOutOfRange : Error {
  using Error::Error;
};

/// Too few samples fall inside the fit window of a decay-rate fit.
struct InsufficientPoints : Error {
  using Error::Error;
};

}  // namespace hfp
