#pragma once

#include <complex>
#include <functional>

namespace resonance {

using complex = std::complex<double>;

/// Value and first derivative of an entire function at one point.
struct FunctionValue {
    complex value;
    complex derivative;
};

/// Handle to an entire function with analytic derivative. Implementations
/// may throw Error(Overflow) when the point lies outside their safe region.
using EntireFunction = std::function<FunctionValue(complex)>;

} // namespace resonance
