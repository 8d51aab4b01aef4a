#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "resdecay/core.hpp"

namespace testing {

using resdecay::Complex;

inline double rel_diff(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

inline bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

inline bool same_bits(Complex a, Complex b) { return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag()); }

inline bool bitwise_zero(Complex z) { return same_bits(z, Complex{0.0, 0.0}); }

}  // namespace testing

#define CHECK_THROWS_KIND(expr, k)                     \
  do {                                                 \
    bool thrown_ = false;                              \
    try {                                              \
      (void)(expr);                                    \
    } catch (const resdecay::EngineError& e_) {        \
      thrown_ = true;                                  \
      CHECK_MESSAGE(e_.kind() == (k), e_.what());      \
    }                                                  \
    CHECK_MESSAGE(thrown_, "expected an EngineError"); \
  } while (0)
