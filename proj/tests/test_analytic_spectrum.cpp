#include <doctest.h>

#include "netspec/analytic_spectrum.hpp"
#include "netspec/error.hpp"
#include "oracles/fixed_point.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace netspec;
using cd = std::complex<double>;

namespace {

const DegreeModel two_degree = DegreeModel::from_atoms({{50.0, 0.25}, {100.0, 0.75}});
const DegreeModel poisson100 = DegreeModel::poisson(100.0);

// Reference numbers for the two-degree model, from a separate bracketing
// root-finder on the scalar equations.
constexpr double kTwoDegreeLeading = 93.89247244639844;
constexpr double kTwoDegreeCritical = 193.39664567550597;
constexpr double kTwoDegreeEdge = 19.506892693328115;

DegreeModel random_atomic(std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> deg(20.0, 300.0);
    std::uniform_real_distribution<double> w(0.05, 1.0);
    std::vector<Atom> atoms(static_cast<std::size_t>(count(gen)));
    double total = 0.0;
    for (auto& a : atoms) {
        a = {deg(gen), w(gen)};
        total += a.weight;
    }
    for (auto& a : atoms) a.weight /= total;
    return DegreeModel::from_atoms(atoms);
}

std::vector<std::pair<double, double>> pairs(const DegreeModel& m)
{
    std::vector<std::pair<double, double>> out;
    for (const Atom& a : m.atoms()) out.emplace_back(a.degree, a.weight);
    return out;
}

// Quadratic-formula root of c h^2 - z h + 1 = 0 with Im h <= 0 (decays like 1/z).
cd poisson_h(double c, cd z)
{
    const cd disc = std::sqrt(z * z - 4.0 * c);
    const cd a = (z - disc) / (2.0 * c);
    const cd b = (z + disc) / (2.0 * c);
    if (std::abs(a.imag() - b.imag()) > 1e-14 * std::abs(a)) return a.imag() < b.imag() ? a : b;
    return std::abs(a) < std::abs(b) ? a : b;
}

}  // namespace

TEST_CASE("semicircle density")
{
    CHECK(semicircle_density(0.0, 1.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-7));
    CHECK(semicircle_density(2.0 / std::sqrt(7.0), 7.0) == 0.0);
    CHECK(semicircle_density(3.0, 1.0) == 0.0);

    // x = r sin(theta) makes the integrand smooth, so the trapezoid rule converges fast.
    for (double c : {0.5, 1.0, 100.0}) {
        const double r = 2.0 / std::sqrt(c);
        const int steps = 2000;
        double sum = 0.0;
        for (int i = 0; i <= steps; ++i) {
            const double theta = -std::numbers::pi / 2 + std::numbers::pi * i / steps;
            const double f = semicircle_density(r * std::sin(theta), c) * r * std::cos(theta);
            sum += (i == 0 || i == steps ? 0.5 : 1.0) * f;
        }
        CHECK(std::abs(sum * std::numbers::pi / steps - 1.0) < 1e-8);
    }
}

TEST_CASE("semicircle cauchy transform")
{
    const cd g = gamma_semicircle(cd(3.0, 0.0), 1.0);
    CHECK(std::abs(g - (7.0 - 3.0 * std::sqrt(5.0)) / 2.0) < 1e-12);
    CHECK(g.real() == doctest::Approx(0.145898).epsilon(1e-6));

    // Numerical transform of x rho(x).
    const int steps = 4000;
    double sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double theta = -std::numbers::pi / 2 + std::numbers::pi * i / steps;
        const double x = 2.0 * std::sin(theta);
        const double f = x * semicircle_density(x, 1.0) / (3.0 - x) * 2.0 * std::cos(theta);
        sum += (i == 0 || i == steps ? 0.5 : 1.0) * f;
    }
    CHECK(std::abs(sum * std::numbers::pi / steps - g.real()) < 1e-9);

    for (double c : {0.3, 2.0, 50.0}) {
        const cd z = std::polar(1e6, 0.4);
        CHECK(std::abs(gamma_semicircle(z, c) * z * z * c - 1.0) < 1e-4);
    }

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int t = 0; t < 50; ++t) {
        const cd z(u(gen), u(gen));
        CHECK(std::abs(gamma_semicircle(std::conj(z), 1.7) - std::conj(gamma_semicircle(z, 1.7))) < 1e-12);
    }
}

TEST_CASE("solve_h special values")
{
    const HSolution out = solve_h(poisson100, cd(25.0, 0.0));
    CHECK(std::abs(out.h - 0.05) < 1e-15);
    CHECK(out.method == SolveMethod::ClosedForm);

    for (double c : {1.0, 9.0, 100.0}) {
        const HSolution edge = solve_h(DegreeModel::poisson(c), cd(2.0 * std::sqrt(c), 0.0));
        CHECK(std::abs(edge.h - 1.0 / std::sqrt(c)) < 1e-12);
    }
}

TEST_CASE("two-degree solution is a root of the cubic")
{
    const double c = 87.5;
    for (double x : {-30.0, -15.0, -3.0, 0.5, 7.0, 18.0, 19.4, 22.0, 40.0}) {
        for (double eta : {0.0, 1e-6, 0.3}) {
            const cd z(x, eta);
            const HSolution s = solve_h(two_degree, z);
            CHECK(s.method == SolveMethod::PolynomialRoots);
            const cd h = s.h;
            const cd cubic = c * h * (z - 50.0 * h) * (z - 100.0 * h) - 0.25 * 50.0 * (z - 100.0 * h)
                             - 0.75 * 100.0 * (z - 50.0 * h);
            const double scale = std::abs(z) * std::abs(z) + 1.0;
            CHECK(std::abs(cubic) / (c * scale) < 1e-10);
            CHECK(s.residual < 1e-10 * std::max(1.0, std::abs(h)));
        }
    }
}

TEST_CASE("single-atom solutions match the closed form at random points")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> cs(0.5, 200.0);
    std::uniform_real_distribution<double> frac(-1.5, 1.5);
    std::uniform_real_distribution<double> log_eta(-6.0, 0.0);
    for (int t = 0; t < 100; ++t) {
        const double c = cs(gen);
        const cd z(frac(gen) * 2.0 * std::sqrt(c), std::pow(10.0, log_eta(gen)));
        const cd expected = poisson_h(c, z);
        const cd h = solve_h(DegreeModel::poisson(c), z).h;
        CHECK(std::abs(h - expected) < 1e-10 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("polynomial and iterative routes agree with plain iteration off the axis")
{
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> re(-40.0, 40.0);
    std::uniform_real_distribution<double> im(2.0, 20.0);
    for (int t = 0; t < 30; ++t) {
        const DegreeModel m = random_atomic(gen);
        const cd z(re(gen), im(gen));
        const cd expected = oracle::iterate_h(pairs(m), z);
        CHECK(std::abs(solve_h(m, z).h - expected) < 1e-9 * std::abs(expected));
    }

    // More than twelve atoms takes the damped-iteration route.
    std::vector<Atom> many;
    for (int i = 0; i < 20; ++i) many.push_back({40.0 + 7.0 * i, 1.0 / 20.0});
    const DegreeModel wide = DegreeModel::from_atoms(many);
    const cd z(3.0, 4.0);
    const HSolution s = solve_h(wide, z);
    CHECK(s.method == SolveMethod::DampedIteration);
    CHECK(std::abs(s.h - oracle::iterate_h(pairs(wide), z)) < 1e-9 * std::abs(s.h));
}

TEST_CASE("density point values")
{
    const double rho0 = spectral_density(poisson100, 0.001, 1e-6);
    CHECK(std::abs(rho0 * std::numbers::pi * 10.0 - 1.0) < 1e-3);
    CHECK(spectral_density(poisson100, 25.0, 1e-6) < 1e-6);
    CHECK(spectral_density(poisson100, 0.0, 1e-6) == doctest::Approx(0.1 / std::numbers::pi).epsilon(1e-3));
    CHECK_THROWS_AS(spectral_density(poisson100, 1.0, 0.0), SpectrumError);
}

TEST_CASE("poisson density grid")
{
    const SpectralCurve curve = density_grid(poisson100, -25.0, 25.0, 2001, 1e-6);
    CHECK(curve.norm_defect < 2e-3);
    CHECK(std::abs(curve.second_moment - 100.0) < 1.0);
    double outside = 0.0;
    double pointwise = 0.0;
    for (std::size_t i = 0; i < curve.z.size(); ++i) {
        CHECK(curve.rho[i] >= 0.0);
        if (i > 0) CHECK(curve.z[i] > curve.z[i - 1]);
        if (curve.z[i] >= 21.0) outside = std::max(outside, curve.rho[i]);
        pointwise = std::max(pointwise, std::abs(curve.rho[i] - oracle::semicircle(curve.z[i], 100.0)));
    }
    CHECK(outside < 1e-4);
    CHECK(pointwise < 1e-3);
    REQUIRE(curve.band.has_value());
    CHECK(curve.band->upper == doctest::Approx(20.0));
    CHECK_THROWS_AS(density_grid(poisson100, -1.0, 1.0, 1), SpectrumError);
    CHECK_THROWS_AS(density_grid(poisson100, 1.0, -1.0, 10), SpectrumError);
}

TEST_CASE("two-degree density grid moments")
{
    const SpectralCurve curve = density_grid(two_degree, -25.0, 25.0, 2001);
    CHECK(curve.norm_defect < 5e-3);
    CHECK(std::abs(curve.first_moment) < 5e-3 * std::sqrt(87.5));
    CHECK(std::abs(curve.second_moment - 87.5) < 0.02 * 87.5);
    CHECK(curve.eta == doctest::Approx(default_eta(-25.0, 25.0, 2001)));
}

TEST_CASE("continuous model density")
{
    ContinuousSpec spec;
    spec.lo = 50.0;
    spec.hi = 150.0;
    const DegreeModel m = DegreeModel::with_continuous({}, spec);
    const SpectralCurve curve = density_grid(m, -30.0, 30.0, 2001);
    CHECK(curve.norm_defect < 5e-3);
    CHECK(std::abs(curve.second_moment - 100.0) < 2.0);
}

TEST_CASE("stieltjes transform")
{
    CHECK(std::abs(stieltjes_g(two_degree, cd(1e6, 0.0)) * 1e6 - 1.0) < 1e-6);
    const cd outside = stieltjes_g(poisson100, cd(23.0, 0.0));
    CHECK(outside.imag() == 0.0);
    CHECK(outside.real() > 0.0);

    const cd z(4.0, 0.5);
    const cd h = solve_h(two_degree, z).h;
    CHECK(std::abs(stieltjes_g(two_degree, z) - stieltjes_g_from_h(two_degree, z, h)) < 1e-12);
}

TEST_CASE("composition identity at random points")
{
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> re(-30.0, 30.0);
    std::uniform_real_distribution<double> log_im(-3.0, 1.0);
    for (int model = 0; model < 5; ++model) {
        const DegreeModel m = random_atomic(gen);
        const double c = mean_degree(m);
        for (int t = 0; t < 100; ++t) {
            const cd z(re(gen), std::pow(10.0, log_im(gen)));
            const cd h = solve_h(m, z).h;
            const cd lhs = c * h * h;
            CHECK(std::abs(lhs - cauchy_transform_p(m, z / h)) < 1e-9 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("band edges")
{
    const BandEdges p = band_edges(poisson100);
    CHECK(p.upper == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(p.lower == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK(band_edges(DegreeModel::poisson(1.0)).upper == doctest::Approx(2.0).epsilon(1e-12));

    const BandEdges b = band_edges(two_degree);
    CHECK(b.upper > 18.0);
    CHECK(b.upper < 21.0);
    CHECK(std::abs(b.upper - kTwoDegreeEdge) < 1e-9);
    CHECK(std::abs(critical_hub_degree(two_degree) - kTwoDegreeCritical) < 1e-8);
}

TEST_CASE("band edge agrees with where Im h vanishes")
{
    std::mt19937_64 gen(31);
    for (int t = 0; t < 6; ++t) {
        const DegreeModel m = random_atomic(gen);
        const double edge = band_edges(m).upper;
        auto inside = [&](double x) { return solve_h(m, cd(x, 1e-9)).h.imag() < -1e-5; };
        double lo = 0.5 * edge;
        double hi = 1.5 * edge;
        REQUIRE(inside(lo));
        REQUIRE(!inside(hi));
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            (inside(mid) ? lo : hi) = mid;
        }
        CHECK(std::abs(lo - edge) < 1e-4 * edge);
    }
}

TEST_CASE("square-root law at the band edge")
{
    for (const DegreeModel* m : {&two_degree, &poisson100}) {
        const double edge = band_edges(*m).upper;
        std::vector<double> lx;
        std::vector<double> ly;
        for (double delta = 1e-4; delta <= 1.0001e-2; delta *= std::pow(10.0, 0.25)) {
            lx.push_back(std::log(delta));
            ly.push_back(std::log(spectral_density(*m, edge - delta, 1e-12)));
        }
        const double n = static_cast<double>(lx.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(std::abs(slope - 0.5) < 0.05);
    }
}

TEST_CASE("leading eigenvalue")
{
    CHECK(leading_eigenvalue(poisson100) == 101.0);
    CHECK(leading_eigenvalue(DegreeModel::poisson(3.5)) == 4.5);
    CHECK(std::abs(h_outside_band(poisson100, 101.0) - 0.01) < 1e-14);

    const double exact = leading_eigenvalue(two_degree);
    CHECK(std::abs(exact - 93.893) < 1e-3);
    CHECK(std::abs(exact - kTwoDegreeLeading) < 1e-9);
    CHECK(std::abs(leading_eigenvalue_bracketed(two_degree) - kTwoDegreeLeading) < 1e-8);

    const double approx = leading_eigenvalue_approx(two_degree);
    CHECK(std::abs(approx - 92.857) < 1e-3);
    CHECK(leading_eigenvalue_approx(poisson100) == 100.0);
    const double gap = (exact - approx) / exact;
    CHECK(gap > 0.005);
    CHECK(gap < 0.015);

    std::mt19937_64 gen(37);
    for (int t = 0; t < 20; ++t) {
        const DegreeModel m = random_atomic(gen);
        CHECK(leading_eigenvalue(m) == doctest::Approx(leading_eigenvalue_bracketed(m)).epsilon(1e-9));
    }

    SUBCASE("not separated from the band")
    {
        for (double c : {0.5, 1.0}) {
            try {
                leading_eigenvalue(DegreeModel::poisson(c));
                FAIL("expected no-root");
            } catch (const SpectrumError& e) {
                CHECK(e.kind() == ErrorKind::NoRoot);
            }
        }
        CHECK_THROWS_AS(leading_eigenvalue_bracketed(DegreeModel::poisson(0.5)), SpectrumError);
    }
}

TEST_CASE("hub eigenvalues for the poisson model")
{
    const HubPrediction p = hub_eigenvalues(poisson100, 400.0);
    REQUIRE(p.exists);
    CHECK(std::abs(*p.z_plus - 400.0 / std::sqrt(300.0)) < 1e-9);
    CHECK(*p.z_minus == -*p.z_plus);
    CHECK(std::abs(p.k_critical - 200.0) < 1e-6);
    CHECK(std::abs(p.vn_sq - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(p.neighbor_vi_sq_mean - 1.0 / 900.0) < 1e-12);

    const HubPrediction big = hub_eigenvalues(poisson100, 1e6);
    CHECK(std::abs(*big.z_plus / 1e3 - 1.0) < 1e-3);

    const HubPrediction inside = hub_eigenvalues(poisson100, 150.0);
    CHECK(!inside.exists);
    CHECK(!inside.z_plus.has_value());

    try {
        hub_eigenvalues(poisson100, 100.0);
        FAIL("expected a pole error");
    } catch (const SpectrumError& e) {
        CHECK(e.kind() == ErrorKind::Pole);
    }
    CHECK_THROWS_AS(hub_eigenvector_profile(poisson100, 150.0), SpectrumError);
    CHECK(hub_eigenvector_profile(poisson100, 200.0 + 1e-3).vn_sq < 0.01);
}

TEST_CASE("hub predictions for atomic models")
{
    const HubPrediction p = hub_eigenvalues(two_degree, 400.0);
    REQUIRE(p.exists);
    CHECK(std::abs(p.k_critical - kTwoDegreeCritical) < 1e-8);
    CHECK(*p.z_plus >= p.band_upper);

    // The eigenvector weight uses h'(z); compare with a finite difference of h on the real axis.
    const double z = *p.z_plus;
    const double step = 1e-5;
    const double fd = (h_outside_band(two_degree, z + step) - h_outside_band(two_degree, z - step)) / (2 * step);
    const double analytic = h_derivative(two_degree, cd(z, 0.0), cd(z / 400.0, 0.0)).real();
    CHECK(std::abs(fd - analytic) < 1e-7 * std::abs(analytic));
    CHECK(p.vn_sq == doctest::Approx(1.0 / (1.0 - 400.0 * fd)).epsilon(1e-6));

    std::mt19937_64 gen(41);
    for (int t = 0; t < 10; ++t) {
        const DegreeModel m = random_atomic(gen);
        const double kc = critical_hub_degree(m);
        double previous = band_edges(m).upper;
        for (double f = 1.01; f < 4.0; f *= 1.2) {
            const HubPrediction h = hub_eigenvalues(m, kc * f);
            REQUIRE(h.exists);
            CHECK(*h.z_plus > previous);
            CHECK(h.vn_sq >= 0.0);
            CHECK(h.vn_sq <= 1.0);
            previous = *h.z_plus;
        }
    }
}
