#pragma once

#include <stdexcept>
#include <string>

namespace sigprice {

// bad user input: malformed scenarios, alphabet mismatches, invalid parameters.
// the cli maps this to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a computation failed to converge or left its valid domain.
// the cli maps this to exit code 1.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sigprice
