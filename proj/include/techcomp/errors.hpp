#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace techcomp {

/// Base class for recoverable data errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingColumnError : public Error {
 public:
  explicit MissingColumnError(const std::string& col)
      : Error("missing required column: " + col), column(col) {}
  std::string column;
};

class EmptyWindowError : public Error {
 public:
  EmptyWindowError(int year, int width)
      : Error("empty patent window for year " + std::to_string(year) +
              " (width " + std::to_string(width) + ")"),
        year(year),
        width(width) {}
  int year;
  int width;
};

class EmptyMatrixError : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrumError : public Error {
 public:
  DegenerateSpectrumError(const std::string& msg, std::vector<double> eigs)
      : Error(msg), spectrum(std::move(eigs)) {}
  std::vector<double> spectrum;
};

class TechnologyTooSmallError : public Error {
 public:
  TechnologyTooSmallError(const std::string& tech, std::size_t component,
                          std::size_t required)
      : Error("technology " + tech + ": largest component has " +
              std::to_string(component) + " nodes, need " +
              std::to_string(required)),
        technology(tech) {}
  std::string technology;
};

class AllSamplesDegenerateError : public Error {
 public:
  explicit AllSamplesDegenerateError(const std::string& tech)
      : Error("technology " + tech + ": all sampled subnetworks degenerate"),
        technology(tech) {}
  std::string technology;
};

}  // namespace techcomp
