#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tlab {

using bigint = boost::multiprecision::cpp_int;

// In-place integral LLL reduction (delta = 3/4) of the row basis. Rows must
// be linearly independent.
void lll_reduce(std::vector<std::vector<bigint>>& basis);

}  // namespace tlab
