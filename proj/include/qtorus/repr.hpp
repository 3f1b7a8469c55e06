#pragma once

#include <complex>
#include <functional>

#include "qtorus/generators.hpp"

namespace qtorus {

// Exact action of an additive-instance element on a rational test function
// of the gamma variables:  sum_m coeff_m * f(gamma + m * d * h).
RatFunc apply_exact(const SkewElement& x, const RatFunc& f);

// Black-box numeric function of the gamma variables (one complex value per
// shift slot, in slot order).
using NumFn = std::function<std::complex<double>(const std::vector<std::complex<double>>&)>;

struct NumericParams {
    std::complex<double> omega1{0.0, 0.0};  // torus realization moduli
    std::complex<double> omega2{1.0, 0.0};
    std::complex<double> hval{0.0, 0.0};    // additive realization shift unit
    std::vector<std::vector<std::complex<double>>> nu;  // per (i,s), feeds w/nu symbols
    double pole_guard = 1e-12;
};

// Analytic realization: u_{i,k} shifts gamma_{i,k} by i*omega1*d_i and
// v_{i,k} multiplies by exp(2 pi gamma_{i,k} / omega2); the additive
// instance shifts by h*d_i. Returns the composed function handle.
NumFn apply_numeric(const SkewElement& x, NumFn f, const NumericParams& p);

// Max relative residual of the finite-quantum-group EF relation applied to
// rational test functions at random complex points.
double uqg_numeric_residual_max(const GeneratorSet& g, std::uint64_t seed, int points);

}  // namespace qtorus
