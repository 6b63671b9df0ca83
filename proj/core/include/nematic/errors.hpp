#pragma once

#include <stdexcept>
#include <string>

namespace nematic {

/// A solver produced nonfinite or runaway values.
class NumericAbort : public std::runtime_error {
 public:
  NumericAbort(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A required input file or snapshot is absent or unreadable.
class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input file exists but does not follow its declared format.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nematic
