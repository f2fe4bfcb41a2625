#pragma once

#include <stdexcept>
#include <string>

namespace layerlab {

struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotElliptic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedKappa : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BadNodeCount : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadExponent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PointOnCurve : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownExperiment : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

} // namespace layerlab
