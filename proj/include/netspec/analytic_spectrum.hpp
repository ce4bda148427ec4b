#pragma once

#include "netspec/degree_model.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace netspec {

enum class SolveMethod { ClosedForm, PolynomialRoots, DampedIteration };

std::string to_string(SolveMethod method);

/// Solution of the fixed-point equation h = (1/c) sum_r p_r d_r / (z - d_r h)
/// at one point of the closed upper half plane.
struct HSolution {
    std::complex<double> z;
    std::complex<double> h;
    double residual = 0.0;
    SolveMethod method = SolveMethod::ClosedForm;
};

struct BandEdges {
    double lower = 0.0;
    double upper = 0.0;
};

struct SpectralCurve {
    std::vector<double> z;
    std::vector<double> rho;
    double eta = 0.0;
    std::optional<BandEdges> band;
    double norm_defect = 0.0;   // |trapezoid integral of rho - 1|
    double first_moment = 0.0;
    double second_moment = 0.0;
};

struct NeighborWeight {
    double degree;
    double vi_sq;
};

struct HubPrediction {
    double k_n = 0.0;
    bool exists = false;
    std::optional<double> z_plus;
    std::optional<double> z_minus;
    double k_critical = 0.0;
    double band_upper = 0.0;
    /// Squared hub element of the normalized hub eigenvector; 0 without a hub eigenvalue.
    double vn_sq = 0.0;
    /// Expected squared element on a realized neighbor of the hub. Neighbors
    /// are reached along edges, so degrees are weighted by the excess distribution.
    double neighbor_vi_sq_mean = 0.0;
    std::vector<NeighborWeight> neighbor_profile;
};

/// Semicircle density of the normalized modularity matrix, radius 2/sqrt(c).
double semicircle_density(double z, double c);

/// Cauchy transform of x rho_c(x); branch chosen so the value vanishes at infinity.
std::complex<double> gamma_semicircle(std::complex<double> z, double c);

/// Solves for h(z). Without a hint the physical root is followed from far up
/// the imaginary axis down to z; with a hint (the previous grid point) the
/// admissible root nearest to it is taken. Real z is allowed and returns the
/// boundary value from above.
HSolution solve_h(const DegreeModel& model, std::complex<double> z,
                  std::optional<std::complex<double>> hint = std::nullopt);

/// rho(z) = -(c / (pi z)) Im h^2(z + i eta); at z == 0 uses -(1/pi) Im g(i eta).
double spectral_density(const DegreeModel& model, double z, double eta);

double default_eta(double z_min, double z_max, std::size_t points);

SpectralCurve density_grid(const DegreeModel& model, double z_min, double z_max, std::size_t points,
                           std::optional<double> eta = std::nullopt);

/// g(z) = (1 + c h^2) / z.
std::complex<double> stieltjes_g(const DegreeModel& model, std::complex<double> z);
/// g(z) = sum_r p_r / (z - d_r h), evaluated for a given h.
std::complex<double> stieltjes_g_from_h(const DegreeModel& model, std::complex<double> z,
                                        std::complex<double> h);

/// The critical point w* of Z(w) = w sqrt(Gamma_p(w) / c) on w > k_max.
/// This is both the critical hub degree and the preimage of the upper band edge.
double critical_hub_degree(const DegreeModel& model);

BandEdges band_edges(const DegreeModel& model);

/// Real h(z) for |z| beyond the band edge, from the inverse of Z(w).
double h_outside_band(const DegreeModel& model, double z);

/// Largest real z > band edge with (z - 1) h(z) = 1.
double leading_eigenvalue(const DegreeModel& model);
/// Same root by bisection on (z - 1) h(z) - 1 using h_outside_band; works for
/// any bounded model and is used as a cross-check of the polynomial route.
double leading_eigenvalue_bracketed(const DegreeModel& model);
/// <k^2> / <k>.
double leading_eigenvalue_approx(const DegreeModel& model);

/// dh/dz from implicit differentiation of the fixed-point equation at (z, h).
std::complex<double> h_derivative(const DegreeModel& model, std::complex<double> z, std::complex<double> h);

HubPrediction hub_eigenvalues(const DegreeModel& model, double k_n);
HubPrediction hub_eigenvector_profile(const DegreeModel& model, double k_n);

}  // namespace netspec
