#pragma once

#include <stdexcept>
#include <string>

namespace psiac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact elimination hit a zero pivot column.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies outside the region a filter is valid for.
class OutOfRegion : public Error {
 public:
  using Error::Error;
};

class MeshTooCoarse : public Error {
 public:
  using Error::Error;
};

class UnstableStep : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace psiac
