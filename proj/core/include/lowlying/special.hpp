#pragma once

#include <complex>
#include <vector>

namespace lowlying::special {

using cdouble = std::complex<double>;

/// log Gamma(z) for complex z away from the poles (Lanczos, g = 7).
/// The imaginary part is only defined modulo 2*pi.
cdouble log_gamma(cdouble z);

cdouble gamma(cdouble z);

/// Upper incomplete gamma Gamma(w, x) = int_x^inf e^{-u} u^{w-1} du for
/// complex w and real x > 0. Series for x < Re(w) + 1, Legendre continued
/// fraction (modified Lentz) otherwise. Throws ConvergenceError if neither
/// converges within the iteration cap.
cdouble upper_incomplete_gamma(cdouble w, double x);

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; cached per n.
const QuadratureRule& gauss_legendre(int n);

}  // namespace lowlying::special
