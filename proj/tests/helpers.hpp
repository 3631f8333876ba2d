#pragma once

#include "shellax/complex.hpp"
#include "shellax/error.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

inline shellax::Complex complex_from(const std::string& text) {
  std::istringstream in(text);
  return shellax::parse_complex(in);
}

#define EXPECT_ERROR_KIND(stmt, k)                                            \
  do {                                                                        \
    try {                                                                     \
      stmt;                                                                   \
      ADD_FAILURE() << "expected " << shellax::to_string(k);                  \
    } catch (const shellax::Error& e) {                                       \
      EXPECT_EQ(e.kind(), k) << e.what();                                     \
    }                                                                         \
  } while (0)
