#include <doctest.h>

#include "netspec/analytic_spectrum.hpp"
#include "netspec/empirical_eigen.hpp"
#include "netspec/error.hpp"
#include "oracles/jacobi.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace netspec;

namespace {

SampledNetwork small_network(std::uint64_t seed, std::size_t n = 200)
{
    const DegreeModel m = DegreeModel::from_atoms({{10.0, 0.3}, {25.0, 0.5}, {40.0, 0.2}});
    return sample_network(sample_degree_sequence(m, n, seed), seed);
}

}  // namespace

TEST_CASE("dense eigenvalues of small matrices")
{
    Eigen::MatrixXd x(2, 2);
    x << 0, 1, 1, 0;
    const EigenReport r = dense_symmetric_eigen(x, MatrixKind::Adjacency, true);
    CHECK(r.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
    REQUIRE(r.top_vector.has_value());
    CHECK(std::abs(std::abs((*r.top_vector)[0]) - std::sqrt(0.5)) < 1e-12);

    const Eigen::MatrixXd d = Eigen::VectorXd::LinSpaced(5, 5.0, 1.0).asDiagonal();
    const EigenReport rd = dense_symmetric_eigen(d, MatrixKind::Adjacency);
    for (int i = 0; i < 5; ++i) CHECK(rd.eigenvalues[static_cast<std::size_t>(i)] == doctest::Approx(i + 1.0));

    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 0.5, 0;
    CHECK_THROWS_AS(dense_symmetric_eigen(asym, MatrixKind::Adjacency), SpectrumError);
    CHECK_THROWS_AS(dense_symmetric_eigen(Eigen::MatrixXd::Identity(5, 5), MatrixKind::Adjacency, false, 4),
                    SpectrumError);
}

TEST_CASE("dense solver agrees with Jacobi rotations")
{
    std::mt19937_64 gen(101);
    std::normal_distribution<double> g;
    for (int t = 0; t < 5; ++t) {
        const int n = 50;
        Eigen::MatrixXd m(n, n);
        std::vector<double> flat(static_cast<std::size_t>(n * n));
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = g(gen);
                m(i, j) = m(j, i) = v;
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i * n + j)] = m(i, j);
        const auto expected = oracle::jacobi_eigenvalues(flat, n);
        const auto got = dense_symmetric_eigen(m, MatrixKind::Adjacency).eigenvalues;
        double worst = 0.0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(expected[static_cast<std::size_t>(i)] - got[static_cast<std::size_t>(i)]));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("trace and Frobenius identities, interleaving")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SampledNetwork net = small_network(seed);
        const Eigen::MatrixXd a = densify_adjacency(net);
        const Eigen::MatrixXd b = densify_modularity(ModularityView(net));
        const EigenReport ra = dense_symmetric_eigen(a, MatrixKind::Adjacency);
        const EigenReport rb = dense_symmetric_eigen(b, MatrixKind::Modularity);
        for (const auto* pair : {&ra, &rb}) {
            const Eigen::MatrixXd& m = pair == &ra ? a : b;
            const double sum = std::accumulate(pair->eigenvalues.begin(), pair->eigenvalues.end(), 0.0);
            double sq = 0.0;
            for (double v : pair->eigenvalues) sq += v * v;
            CHECK(std::abs(sum - m.trace()) < 1e-8 * std::max(1.0, m.cwiseAbs().sum() / m.rows()));
            CHECK(std::abs(sq - m.squaredNorm()) < 1e-8 * m.squaredNorm());
            CHECK(std::is_sorted(pair->eigenvalues.begin(), pair->eigenvalues.end()));
        }
        const std::size_t n = net.n();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ra.eigenvalues[i] >= rb.eigenvalues[i] - 1e-9);
            if (i > 0) CHECK(rb.eigenvalues[i] >= ra.eigenvalues[i - 1] - 1e-9);
        }
    }
}

TEST_CASE("lanczos on a rank-one operator")
{
    std::vector<double> k(300);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = 5.0 + static_cast<double>(i % 17);
    const double two_m = std::accumulate(k.begin(), k.end(), 0.0);
    LinearOperator op{k.size(), [&](std::span<const double> x, std::span<double> y) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * x[i];
                          for (std::size_t i = 0; i < k.size(); ++i) y[i] = k[i] * s / two_m;
                      }};
    const Eigenpair p = top_eigenpair(op, 1e-12);
    double kk = 0.0;
    for (double v : k) kk += v * v;
    CHECK(p.value == doctest::Approx(kk / two_m).epsilon(1e-12));
    double overlap = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) overlap += p.vector[i] * k[i];
    CHECK(std::abs(std::abs(overlap) / std::sqrt(kk) - 1.0) < 1e-10);
}

TEST_CASE("lanczos agrees with the dense solver")
{
    const DegreeModel m = DegreeModel::from_atoms({{50.0, 0.25}, {100.0, 0.75}});
    for (std::uint64_t seed : {3u, 4u}) {
        const SampledNetwork net = sample_network(sample_degree_sequence(m, 500, seed), seed);
        const ModularityView view(net);
        const EigenReport ra = dense_symmetric_eigen(densify_adjacency(net), MatrixKind::Adjacency);
        const EigenReport rb = dense_symmetric_eigen(densify_modularity(view), MatrixKind::Modularity);
        CHECK(std::abs(top_eigenpair(adjacency_operator(net), 1e-12).value - ra.eigenvalues.back()) < 1e-8);
        const Eigenpair top = top_eigenpair(modularity_operator(view), 1e-12, Extremal::LargestAlgebraic);
        CHECK(std::abs(top.value - rb.eigenvalues.back()) < 1e-8);
        CHECK(top.residual < 1e-8);
    }
}

TEST_CASE("lanczos refuses a tied dominant pair")
{
    LinearOperator swap{2, [](std::span<const double> x, std::span<double> y) {
                            y[0] = x[1];
                            y[1] = x[0];
                        }};
    try {
        top_eigenpair(swap, 1e-10);
        FAIL("expected stagnation");
    } catch (const SpectrumError& e) {
        CHECK(e.kind() == ErrorKind::Stagnation);
    }
    CHECK(top_eigenpair(swap, 1e-10, Extremal::LargestAlgebraic).value == doctest::Approx(1.0));
}

TEST_CASE("modularity top eigenvalue of a large poisson network sits at the band edge")
{
    const SampledNetwork net = sample_network(DegreeSequence::from_degrees(std::vector<double>(10000, 100.0)), 8);
    const ModularityView view(net);
    const double top = top_eigenpair(modularity_operator(view), 1e-9, Extremal::LargestAlgebraic).value;
    CHECK(std::abs(top - 20.0) < 0.5);
}

TEST_CASE("histogram normalization")
{
    std::mt19937_64 gen(2);
    std::normal_distribution<double> g;
    std::vector<double> v(5000);
    for (double& x : v) x = g(gen);
    const EnsembleHistogram h = make_histogram(v, -2.0, 2.0, 40);
    double mass = 0.0;
    for (double d : h.density) {
        CHECK(d >= 0.0);
        mass += d * h.width();
    }
    CHECK(std::abs(mass - 1.0) < 1e-12);
    for (std::size_t b = 1; b < h.bin_edges.size(); ++b) {
        CHECK(h.bin_edges[b] - h.bin_edges[b - 1] == doctest::Approx(0.1).epsilon(1e-12));
    }
    const auto outside = std::count_if(v.begin(), v.end(), [](double x) { return x < -2.0 || x > 2.0; });
    CHECK(h.outliers == static_cast<std::size_t>(outside));
    CHECK_THROWS_AS(make_histogram(v, 1.0, -1.0, 10), SpectrumError);
    CHECK_THROWS_AS(make_histogram(v, -1.0, 1.0, 0), SpectrumError);
}

TEST_CASE("ensembles are reproducible")
{
    const DegreeModel m = DegreeModel::from_atoms({{20.0, 0.5}, {40.0, 0.5}});
    EnsembleOptions serial;
    serial.threads = 1;
    EnsembleOptions parallel;
    parallel.threads = 4;
    const EmpiricalSpectrum one = empirical_spectrum(m, 150, 1, 20, 9, MatrixKind::Modularity, serial);
    const EmpiricalSpectrum two = empirical_spectrum(m, 150, 2, 20, 9, MatrixKind::Modularity, parallel);
    REQUIRE(two.eigenvalues.size() == 300);
    CHECK(std::equal(one.eigenvalues.begin(), one.eigenvalues.end(), two.eigenvalues.begin()));
    const EmpiricalSpectrum again = empirical_spectrum(m, 150, 2, 20, 9, MatrixKind::Modularity, serial);
    CHECK(again.eigenvalues == two.eigenvalues);
    CHECK(again.histogram.density == two.histogram.density);
    CHECK(two.histogram.replicates == 2);
    CHECK(two.histogram.base_seed == 9);

    // Range defaults to the analytic band widened by 2.
    const BandEdges band = band_edges(m);
    CHECK(two.histogram.bin_edges.front() == doctest::Approx(band.lower - 2.0));
    CHECK(two.histogram.bin_edges.back() == doctest::Approx(band.upper + 2.0));

    CHECK_THROWS_AS(empirical_spectrum(m, 150, 0, 20, 9, MatrixKind::Modularity), SpectrumError);
}

TEST_CASE("mean squared eigenvalue of B equals the mean degree")
{
    // Brute force: (1/n) sum_i beta_i^2 = (1/n) sum_ij B_ij^2, whose expectation is close to c.
    const DegreeModel m = DegreeModel::from_atoms({{30.0, 0.5}, {70.0, 0.5}});
    const EmpiricalSpectrum s = empirical_spectrum(m, 200, 20, 30, 4, MatrixKind::Modularity);
    double sq = 0.0;
    for (double v : s.eigenvalues) sq += v * v;
    sq /= static_cast<double>(s.eigenvalues.size());
    CHECK(std::abs(sq - 50.0) < 0.03 * 50.0);

    const SpectralCurve curve = density_grid(m, -25.0, 25.0, 2001);
    CHECK(std::abs(curve.second_moment - sq) < 0.03 * 50.0);
}

TEST_CASE("poisson histogram follows the semicircle")
{
    const EnsembleHistogram h = empirical_density(DegreeModel::poisson(100.0), 1000, 4, 40, 21, MatrixKind::Modularity);
    CHECK(l1_distance(h, DegreeModel::poisson(100.0)) < 0.05);
}

TEST_CASE("leading eigenvalue ensembles")
{
    const DegreeModel p = DegreeModel::poisson(100.0);
    const LeadingStats a = ensemble_leading(p, 2000, 10, 5, MatrixKind::Adjacency);
    CHECK(a.values.size() == 10);
    CHECK(std::abs(a.mean - 101.0) < 0.3);
    const LeadingStats b = ensemble_leading(p, 2000, 10, 5, MatrixKind::Modularity);
    CHECK(std::abs(b.mean - 20.0) < 0.3);

    const LeadingStats s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("hub vector statistics")
{
    const DegreeModel p = DegreeModel::poisson(100.0);
    EnsembleOptions options;
    options.hub_degree = 400.0;
    const SampledNetwork net = replicate_network(p, 1000, 3, 0, options);
    REQUIRE(net.n() == 1001);
    CHECK(net.degrees().degrees.back() == 400.0);
    const ModularityView view(net);
    const Eigenpair top = top_eigenpair(modularity_operator(view), 1e-10, Extremal::LargestAlgebraic);
    const HubVectorStats stats = hub_vector_stats(net, 1000, top.vector);
    const auto nbrs = net.neighbors(1000);
    const double rest = 1.0 - stats.vn_sq - stats.neighbor_mean_sq * static_cast<double>(nbrs.size());
    CHECK(stats.bulk_mean_sq * static_cast<double>(1000 - nbrs.size()) == doctest::Approx(rest).epsilon(1e-9));
    CHECK(stats.vn_sq == doctest::Approx(1.0 / 3.0).epsilon(0.15));
    CHECK(stats.bulk_mean_sq < 10.0 / 1000.0);
}
