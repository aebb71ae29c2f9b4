#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "thresholdlab/errors.hpp"
#include "thresholdlab/lll.hpp"

namespace tlab {

// Variable-precision real; precision is set per computation.
using bigfloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;
using bigrat = boost::multiprecision::cpp_rational;

// Decimal digits needed to carry `bits` of mantissa plus guard room.
int digits_for_bits(int bits);

// Band endpoint sharpened to `bits` of precision by bisection from the
// double-precision seed.
bigfloat refine_endpoint(int kappa, int band, int bits);

struct min_poly_result {
    enum class field_tag { rational, quadratic_sqrt2 };
    std::vector<bigint> coefficients;  // ascending degree, primitive, leading > 0
    int degree = 0;
    double residual = 0;
    field_tag field = field_tag::rational;
};

// Lowest-degree primitive integer polynomial annihilating the value, found by
// lattice reduction on the rows [e_i | round(2^bits value^i)].
min_poly_result find_min_poly(const bigfloat& value, int max_degree, int bits);

// Coefficient a + b sqrt(2) of a polynomial over the quadratic field.
struct quad_coeff {
    bigrat a;
    bigrat b;
};

// |p(value)| for a polynomial with quadratic-sqrt2 (or plain rational)
// coefficients, evaluated at the value's own precision.
bigfloat verify_poly_root(const std::vector<quad_coeff>& coeffs, const bigfloat& value);
bigfloat verify_poly_root(const std::vector<bigint>& coeffs, const bigfloat& value);

// True when some p/q with p | a_0, q | a_d is a root (exact arithmetic).
bool has_rational_root(const std::vector<bigint>& coeffs);

}  // namespace tlab
