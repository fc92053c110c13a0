#pragma once

#include <complex>

namespace kforge {

using cplx = std::complex<double>;

// log Gamma(z) via Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
// The imaginary part is only defined modulo 2 pi.
cplx lgamma_lanczos(cplx z);
cplx gamma_lanczos(cplx z);

// Stirling series after an upward shift; the second backend.
cplx lgamma_stirling(cplx z);

// true when z is within tol of 0, -1, -2, ...
bool near_gamma_pole(cplx z, double tol = 1e-9);

// Gamma_R(s) = pi^{-s/2} Gamma(s/2); throws PoleHit when s/2 is a pole
cplx gamma_R(cplx s);
cplx log_gamma_R(cplx s);

}  // namespace kforge
