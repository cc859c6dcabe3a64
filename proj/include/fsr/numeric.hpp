#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fsr {

// Exact arithmetic for tile counts, series coefficients and moduli.
// Counts overflow 64 bits quickly once pq gets large, so everything
// countable is kept exact and converted to double only at the edges.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Int& v) { return v.convert_to<double>(); }
inline double to_double(const Rat& v) { return v.convert_to<double>(); }

} // namespace fsr
