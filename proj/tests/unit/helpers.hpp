#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "modspace/error.hpp"

inline void expect_code(modspace::ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << modspace::to_string(code);
  } catch (const modspace::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}
