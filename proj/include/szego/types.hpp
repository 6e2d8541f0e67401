#pragma once

#include <complex>
#include <concepts>

namespace szego {

template <std::floating_point T>
using cplx = std::complex<T>;

}  // namespace szego
