#include "netspec/empirical_eigen.hpp"

#include "netspec/analytic_spectrum.hpp"
#include "netspec/error.hpp"
#include "netspec/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace netspec {

namespace {

constexpr std::size_t kMaxKrylov = 160;
constexpr int kMaxRestarts = 60;
constexpr std::uint64_t kStartVectorStream = 0x6c616e637a6f73ULL;

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Runs body(r) for r in [0, count) on a few threads. Results must be written to
// slot r by the body, so the reduction order never depends on scheduling.
template <typename Body>
void for_each_replicate(std::size_t count, unsigned threads, Body&& body)
{
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t r = 0; r < count; ++r) body(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t r = next++; r < count; r = next++) {
                try {
                    body(r);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(MatrixKind kind)
{
    return kind == MatrixKind::Adjacency ? "adjacency" : "modularity";
}

MatrixKind parse_matrix_kind(const std::string& name)
{
    if (name == "adjacency") return MatrixKind::Adjacency;
    if (name == "modularity") return MatrixKind::Modularity;
    throw SpectrumError(ErrorKind::InvalidArgument, "matrix kind must be adjacency or modularity, got '" + name + "'");
}

LinearOperator adjacency_operator(const SampledNetwork& network)
{
    return {network.n(), [&network](std::span<const double> x, std::span<double> y) {
                network.multiply_adjacency(x, y);
            }};
}

LinearOperator modularity_operator(const ModularityView& view)
{
    return {view.n(), [view](std::span<const double> x, std::span<double> y) { view.multiply(x, y); }};
}

EigenReport dense_symmetric_eigen(const Eigen::MatrixXd& matrix, MatrixKind kind, bool with_top_vector,
                                  std::size_t cap)
{
    if (matrix.rows() != matrix.cols()) throw SpectrumError(ErrorKind::InvalidArgument, "matrix must be square");
    if (static_cast<std::size_t>(matrix.rows()) > cap) {
        throw SpectrumError(ErrorKind::CapExceeded, "matrix exceeds dense cap " + std::to_string(cap));
    }
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw SpectrumError(ErrorKind::InvalidArgument, "matrix is not symmetric");
    }

    // Householder tridiagonalization followed by implicit symmetric QR.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        matrix, with_top_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SpectrumError(ErrorKind::NoConvergence, "dense symmetric eigensolver did not converge");
    }
    EigenReport report;
    report.kind = kind;
    const auto& values = solver.eigenvalues();
    report.eigenvalues.assign(values.data(), values.data() + values.size());
    if (with_top_vector && matrix.rows() > 0) {
        const Eigen::VectorXd v = solver.eigenvectors().col(matrix.rows() - 1);
        report.top_vector = std::vector<double>(v.data(), v.data() + v.size());
        report.residual = (matrix * v - values(matrix.rows() - 1) * v).norm();
    }
    return report;
}

Eigenpair top_eigenpair(const LinearOperator& op, double tol, Extremal which, std::uint64_t seed)
{
    if (!(tol > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "tolerance must be positive");
    const std::size_t n = op.n;
    if (n == 0) throw SpectrumError(ErrorKind::InvalidArgument, "empty operator");

    std::vector<double> start(n);
    CounterRng rng(seed, kStartVectorStream);
    for (double& x : start) x = rng.uniform01() - 0.5;

    const std::size_t krylov = std::min(n, kMaxKrylov);
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(krylov));
    std::vector<double> w(n);
    Eigenpair best;

    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        double norm = std::sqrt(dot(start, start));
        if (norm == 0.0) throw SpectrumError(ErrorKind::Stagnation, "start vector vanished");
        for (std::size_t i = 0; i < n; ++i) basis(static_cast<Eigen::Index>(i), 0) = start[i] / norm;

        std::vector<double> alpha;
        std::vector<double> beta;
        std::size_t steps = 0;
        double op_scale = 0.0;
        for (std::size_t j = 0; j < krylov; ++j) {
            auto col = basis.col(static_cast<Eigen::Index>(j));
            op.apply(std::span<const double>(col.data(), n), w);
            Eigen::Map<Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(n));
            const double a = col.dot(wv);
            alpha.push_back(a);
            op_scale = std::max(op_scale, std::abs(a));
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                const auto active = basis.leftCols(static_cast<Eigen::Index>(j + 1));
                const Eigen::VectorXd coeff = active.transpose() * wv;
                wv -= active * coeff;
            }
            ++steps;
            const double b = wv.norm();
            op_scale = std::max(op_scale, b);
            if (j + 1 == krylov || b <= 1e-12 * std::max(1.0, op_scale)) break;
            beta.push_back(b);
            basis.col(static_cast<Eigen::Index>(j + 1)) = wv / b;
        }

        const auto m = static_cast<Eigen::Index>(steps);
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
        const auto& theta = small.eigenvalues();
        Eigen::Index pick = m - 1;
        if (which == Extremal::LargestMagnitude) {
            if (std::abs(theta(0)) > std::abs(theta(m - 1))) pick = 0;
            if (m > 1 && std::abs(std::abs(theta(0)) - std::abs(theta(m - 1))) < tol * std::abs(theta(pick))
                && theta(0) < 0.0 && theta(m - 1) > 0.0) {
                throw SpectrumError(ErrorKind::Stagnation, "dominant eigenvalue not separated from its negative");
            }
        }

        const Eigen::VectorXd ritz = basis.leftCols(m) * small.eigenvectors().col(pick);
        best.value = theta(pick);
        best.vector.assign(ritz.data(), ritz.data() + ritz.size());
        best.restarts = restart;
        op.apply(best.vector, w);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += (w[i] - best.value * best.vector[i]) * (w[i] - best.value * best.vector[i]);
        best.residual = std::sqrt(res);
        if (best.residual <= tol * std::max(std::abs(best.value), 1e-300)) return best;
        start = best.vector;
    }
    throw SpectrumError(ErrorKind::Stagnation,
                        "restarted Lanczos stalled with residual " + std::to_string(best.residual));
}

EnsembleHistogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins)
{
    if (bins < 1 || !(hi > lo)) throw SpectrumError(ErrorKind::InvalidArgument, "histogram needs bins >= 1 and hi > lo");
    EnsembleHistogram hist;
    hist.bin_edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) hist.bin_edges[b] = lo + width * static_cast<double>(b);
    hist.bin_edges.back() = hi;
    std::vector<std::size_t> counts(bins, 0);
    std::size_t inside = 0;
    for (double v : values) {
        if (v < lo || v > hi) {
            ++hist.outliers;
            continue;
        }
        auto b = static_cast<std::size_t>((v - lo) / width);
        counts[std::min(b, bins - 1)]++;
        ++inside;
    }
    hist.density.resize(bins, 0.0);
    if (inside > 0) {
        for (std::size_t b = 0; b < bins; ++b) {
            hist.density[b] = static_cast<double>(counts[b]) / (static_cast<double>(inside) * width);
        }
    }
    return hist;
}

SampledNetwork replicate_network(const DegreeModel& model, std::size_t n, std::uint64_t base_seed, std::size_t r,
                                 const EnsembleOptions& options)
{
    const std::uint64_t seed = replicate_seed(base_seed, r);
    DegreeSequence degrees = sample_degree_sequence(model, n, seed, options.sampling);
    if (options.hub_degree) degrees = attach_hub(degrees, *options.hub_degree);
    return sample_network(degrees, seed);
}

EmpiricalSpectrum empirical_spectrum(const DegreeModel& model, std::size_t n, std::size_t replicates,
                                     std::size_t bins, std::uint64_t base_seed, MatrixKind kind,
                                     const EnsembleOptions& options)
{
    if (replicates < 1) throw SpectrumError(ErrorKind::InvalidArgument, "need at least one replicate");
    if (bins < 1) throw SpectrumError(ErrorKind::InvalidArgument, "need at least one bin");
    const std::size_t cap = dense_cap();
    if (n > cap) throw SpectrumError(ErrorKind::CapExceeded, "n exceeds dense cap " + std::to_string(cap));

    std::vector<std::vector<double>> spectra(replicates);
    for_each_replicate(replicates, options.threads, [&](std::size_t r) {
        const SampledNetwork net = replicate_network(model, n, base_seed, r, options);
        const Eigen::MatrixXd m = kind == MatrixKind::Adjacency ? densify_adjacency(net, cap)
                                                                : densify_modularity(ModularityView(net), cap);
        spectra[r] = dense_symmetric_eigen(m, kind, false, cap).eigenvalues;
    });

    EmpiricalSpectrum out;
    for (const auto& s : spectra) out.eigenvalues.insert(out.eigenvalues.end(), s.begin(), s.end());

    std::pair<double, double> range;
    if (options.range) {
        range = *options.range;
    } else {
        const BandEdges band = band_edges(model);
        range = {band.lower - 2.0, band.upper + 2.0};
    }
    out.histogram = make_histogram(out.eigenvalues, range.first, range.second, bins);
    out.histogram.replicates = replicates;
    out.histogram.n = n;
    out.histogram.base_seed = base_seed;
    return out;
}

EnsembleHistogram empirical_density(const DegreeModel& model, std::size_t n, std::size_t replicates,
                                    std::size_t bins, std::uint64_t base_seed, MatrixKind kind,
                                    const EnsembleOptions& options)
{
    return empirical_spectrum(model, n, replicates, bins, base_seed, kind, options).histogram;
}

double l1_distance(const EnsembleHistogram& histogram, const DegreeModel& model)
{
    constexpr std::size_t kSub = 16;
    const std::size_t bins = histogram.density.size();
    const double lo = histogram.bin_edges.front();
    const double hi = histogram.bin_edges.back();
    const SpectralCurve curve = density_grid(model, lo, hi, bins * kSub + 1);

    double distance = 0.0;
    double inside_mass = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        double mass = 0.0;
        for (std::size_t s = b * kSub; s < (b + 1) * kSub; ++s) {
            mass += 0.5 * (curve.rho[s] + curve.rho[s + 1]) * (curve.z[s + 1] - curve.z[s]);
        }
        inside_mass += mass;
        const double width = histogram.bin_edges[b + 1] - histogram.bin_edges[b];
        distance += std::abs(histogram.density[b] * width - mass);
    }
    return distance + std::max(0.0, 1.0 - inside_mass);
}

LeadingStats summarize(std::vector<double> values)
{
    LeadingStats stats;
    stats.values = std::move(values);
    const auto count = static_cast<double>(stats.values.size());
    if (stats.values.empty()) return stats;
    stats.mean = std::accumulate(stats.values.begin(), stats.values.end(), 0.0) / count;
    if (stats.values.size() > 1) {
        double ss = 0.0;
        for (double v : stats.values) ss += (v - stats.mean) * (v - stats.mean);
        stats.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    return stats;
}

LeadingStats ensemble_leading(const DegreeModel& model, std::size_t n, std::size_t replicates,
                              std::uint64_t base_seed, MatrixKind kind, const EnsembleOptions& options)
{
    if (replicates < 1) throw SpectrumError(ErrorKind::InvalidArgument, "need at least one replicate");
    std::vector<double> values(replicates);
    for_each_replicate(replicates, options.threads, [&](std::size_t r) {
        const SampledNetwork net = replicate_network(model, n, base_seed, r, options);
        const ModularityView view(net);
        const LinearOperator op = kind == MatrixKind::Adjacency ? adjacency_operator(net) : modularity_operator(view);
        values[r] = top_eigenpair(op, 1e-10, Extremal::LargestAlgebraic, replicate_seed(base_seed, r)).value;
    });
    return summarize(std::move(values));
}

HubVectorStats hub_vector_stats(const SampledNetwork& network, std::size_t hub_index,
                                std::span<const double> top_vector)
{
    if (hub_index >= network.n() || top_vector.size() != network.n()) {
        throw SpectrumError(ErrorKind::InvalidArgument, "hub index or vector length does not match the network");
    }
    const auto nbrs = network.neighbors(hub_index);
    std::vector<char> is_neighbor(network.n(), 0);
    for (std::size_t v : nbrs) is_neighbor[v] = 1;

    HubVectorStats stats;
    stats.vn_sq = top_vector[hub_index] * top_vector[hub_index];
    double nbr_sum = 0.0;
    double bulk_sum = 0.0;
    std::size_t bulk_count = 0;
    for (std::size_t v = 0; v < network.n(); ++v) {
        if (v == hub_index) continue;
        const double sq = top_vector[v] * top_vector[v];
        if (is_neighbor[v]) {
            nbr_sum += sq;
        } else {
            bulk_sum += sq;
            ++bulk_count;
        }
    }
    stats.neighbor_mean_sq = nbrs.empty() ? 0.0 : nbr_sum / static_cast<double>(nbrs.size());
    stats.bulk_mean_sq = bulk_count == 0 ? 0.0 : bulk_sum / static_cast<double>(bulk_count);
    return stats;
}

HubEnsemble ensemble_hub(const DegreeModel& model, std::size_t n, double k_n, std::size_t replicates,
                         std::uint64_t base_seed, const EnsembleOptions& options)
{
    if (replicates < 1) throw SpectrumError(ErrorKind::InvalidArgument, "need at least one replicate");
    EnsembleOptions opts = options;
    opts.hub_degree = k_n;
    std::vector<double> top(replicates), vn(replicates), nbr(replicates), bulk(replicates);
    for_each_replicate(replicates, opts.threads, [&](std::size_t r) {
        const SampledNetwork net = replicate_network(model, n, base_seed, r, opts);
        const ModularityView view(net);
        const Eigenpair pair =
            top_eigenpair(modularity_operator(view), 1e-10, Extremal::LargestAlgebraic, replicate_seed(base_seed, r));
        const HubVectorStats stats = hub_vector_stats(net, n, pair.vector);
        top[r] = pair.value;
        vn[r] = stats.vn_sq;
        nbr[r] = stats.neighbor_mean_sq;
        bulk[r] = stats.bulk_mean_sq;
    });
    return {summarize(std::move(top)), summarize(std::move(vn)), summarize(std::move(nbr)), summarize(std::move(bulk))};
}

}  // namespace netspec
