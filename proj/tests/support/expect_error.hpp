#pragma once

#include <gtest/gtest.h>

#include "umbral/error.hpp"

/// Runs `f` and requires an umbral::Error with the given code.
template <class F>
void expect_error(umbral::ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << umbral::to_string(code);
  } catch (const umbral::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

#include <ostream>

#include "umbral/series.hpp"

namespace umbral {

inline void PrintTo(const Poly& p, std::ostream* os) { *os << p.to_string(); }

inline void PrintTo(const Series& s, std::ostream* os) {
  *os << "[";
  for (int k = 0; k <= s.order(); ++k) *os << (k ? ", " : "") << s[k].to_string();
  *os << "]";
}

inline void PrintTo(const Rational& q, std::ostream* os) { *os << to_string(q); }

}  // namespace umbral
