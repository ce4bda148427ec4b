#include "netspec/polynomial.hpp"

#include "netspec/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace netspec {

ComplexPoly multiply_linear(const ComplexPoly& p, std::complex<double> a0, std::complex<double> a1)
{
    ComplexPoly out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += a0 * p[i];
        out[i + 1] += a1 * p[i];
    }
    return out;
}

ComplexPoly multiply(const ComplexPoly& a, const ComplexPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ComplexPoly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

ComplexPoly add(const ComplexPoly& a, const ComplexPoly& b)
{
    ComplexPoly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

ComplexPoly scale(ComplexPoly p, std::complex<double> s)
{
    for (auto& c : p) c *= s;
    return p;
}

std::complex<double> evaluate(const ComplexPoly& p, std::complex<double> x)
{
    std::complex<double> acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<std::complex<double>> polynomial_roots(const ComplexPoly& p)
{
    double biggest = 0.0;
    for (const auto& c : p) biggest = std::max(biggest, std::abs(c));
    if (biggest == 0.0) throw SpectrumError(ErrorKind::InvalidArgument, "zero polynomial");

    std::size_t degree = p.size() - 1;
    while (degree > 0 && std::abs(p[degree]) <= 1e-14 * biggest) --degree;
    if (degree == 0) return {};

    const auto d = static_cast<Eigen::Index>(degree);
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / p[degree];

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw SpectrumError(ErrorKind::NoConvergence, "companion eigenvalue solve failed");
    }
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

}  // namespace netspec
