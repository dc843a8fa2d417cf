#pragma once

#include <random>
#include <string>

#include "pcx/curves.hpp"

namespace fixtures {

// The quartic with a triple point at (theta:0:1), spelled out as text so that
// tests do not go through the construction module.
inline pcx::PlaneCurve quartic(pcx::Field f, const std::string& th, const std::string& l, const std::string& m) {
  const std::string text = "(" + l + ")^2*z*((" + th + ")*z - x)^3 + (" + th + ")^2*x*y^2*((" + m + ")*((" + th +
                           ")*z - x) - (" + th + ")*(" + l + ")*y)";
  return pcx::PlaneCurve::parse(f, text);
}

inline pcx::FieldValue small_value(pcx::Field f, std::mt19937_64& rng, long lo = -3, long hi = 3) {
  if (f->is_finite()) return pcx::FieldValue::from_index(f, static_cast<std::uint32_t>(rng() % f->order()));
  std::uniform_int_distribution<long> d(lo, hi);
  return pcx::FieldValue::from_integer(f, d(rng));
}

inline pcx::FieldValue nonzero_value(pcx::Field f, std::mt19937_64& rng) {
  for (;;) {
    pcx::FieldValue v = f->is_finite() ? small_value(f, rng) : [&] {
      std::uniform_int_distribution<long> n(-9, 9), d(1, 5);
      return pcx::FieldValue::from_rational(f, mpq_class(n(rng), d(rng)));
    }();
    if (!v.is_zero()) return v;
  }
}

}  // namespace fixtures
