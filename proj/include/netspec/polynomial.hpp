#pragma once

#include <complex>
#include <vector>

namespace netspec {

/// Polynomial with complex coefficients, lowest order first.
using ComplexPoly = std::vector<std::complex<double>>;

/// p(x) * (a0 + a1 x)
ComplexPoly multiply_linear(const ComplexPoly& p, std::complex<double> a0, std::complex<double> a1);
ComplexPoly multiply(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly add(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly scale(ComplexPoly p, std::complex<double> s);
std::complex<double> evaluate(const ComplexPoly& p, std::complex<double> x);

/// All roots via eigenvalues of the companion matrix. Leading coefficients
/// below `1e-14 * max|coef|` are dropped first, so an apparent degree drop
/// (e.g. the Poisson leading-eigenvalue polynomial) is handled.
std::vector<std::complex<double>> polynomial_roots(const ComplexPoly& p);

}  // namespace netspec
