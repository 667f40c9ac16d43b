#pragma once

#include <stdexcept>
#include <string>

namespace p3p {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coincident points, coincident bearings, or cosines outside [-1, 1].
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class CollinearPoints : public Error {
 public:
  using Error::Error;
};

// Leading quartic coefficient vanishes relative to the others.
class DegenerateLeading : public Error {
 public:
  using Error::Error;
};

// Every coefficient is (numerically) zero.
class NoPolynomial : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace p3p
