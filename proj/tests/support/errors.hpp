#pragma once

#include <doctest.h>

#include "effdiag/error.hpp"

namespace effdiag::testing {

// Kind of the Error thrown by fn; fails the test when nothing is thrown.
ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Format;
}

}  // namespace effdiag::testing
