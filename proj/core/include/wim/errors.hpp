#pragma once

#include <stdexcept>
#include <string>

namespace wim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSizeError : Error {
  using Error::Error;
};

struct InvalidShapeError : Error {
  using Error::Error;
};

/// Triangle inequality d_ik <= d_ij + d_jk failed for (i,j,k), 1-based in the message.
struct TriangleViolation : Error {
  int i, j, k;
  TriangleViolation(int i_, int j_, int k_)
      : Error("triangle inequality violated at triple (" + std::to_string(i_) + "," +
              std::to_string(j_) + "," + std::to_string(k_) + ")"),
        i(i_), j(j_), k(k_) {}
};

struct CapacityError : Error {
  using Error::Error;
};

struct WrongMethodError : Error {
  using Error::Error;
};

struct GeometryError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct UnsupportedModelError : Error {
  using Error::Error;
};

struct ShapeMismatchError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct FileNotFoundError : Error {
  using Error::Error;
};

}  // namespace wim
