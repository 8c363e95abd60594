#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "skewdirac/error.hpp"

namespace skewdirac::testing {

inline void ExpectCode(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace skewdirac::testing
