#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sectlab {

// Base class for every error the library reports. The CLI maps these to
// exit status 2 with the message; nothing else escapes as a crash.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad dimension, k out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A ray from an interior point never leaves the body.
class UnboundedBody : public Error {
 public:
  UnboundedBody() : Error("unbounded body") {}
  explicit UnboundedBody(const std::string& detail) : Error("unbounded body: " + detail) {}
};

// The origin (or the shift target of a translate) is not an interior point.
class OriginNotInterior : public Error {
 public:
  OriginNotInterior() : Error("origin not interior") {}
  explicit OriginNotInterior(const std::string& detail)
      : Error("origin not interior: " + detail) {}
};

// Singular or badly conditioned linear map / covariance.
class DegenerateBody : public Error {
 public:
  explicit DegenerateBody(const std::string& detail) : Error("degenerate body: " + detail) {}
};

class DegenerateRejection : public Error {
 public:
  explicit DegenerateRejection(double rate)
      : Error("degenerate rejection: acceptance rate " + std::to_string(rate)), rate_(rate) {}
  double acceptance_rate() const { return rate_; }

 private:
  double rate_;
};

// Adaptive quadrature did not reach its tolerance. Carries the ray
// direction that produced the integrand when the caller knows it.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, std::vector<double> direction = {})
      : Error(what), direction_(std::move(direction)) {}
  const std::vector<double>& direction() const { return direction_; }

 private:
  std::vector<double> direction_;
};

class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& detail) : Error("invalid spec: " + detail) {}
};

}  // namespace sectlab
