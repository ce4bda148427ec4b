#pragma once

#include "netspec/degree_model.hpp"
#include "netspec/network_sampler.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netspec {

enum class MatrixKind { Adjacency, Modularity };

std::string to_string(MatrixKind kind);
MatrixKind parse_matrix_kind(const std::string& name);

struct EigenReport {
    std::vector<double> eigenvalues;  // ascending
    std::optional<std::vector<double>> top_vector;
    MatrixKind kind = MatrixKind::Adjacency;
    double residual = 0.0;
};

/// Symmetric operator given only through its action y = M x.
struct LinearOperator {
    std::size_t n = 0;
    std::function<void(std::span<const double>, std::span<double>)> apply;
};

LinearOperator adjacency_operator(const SampledNetwork& network);
LinearOperator modularity_operator(const ModularityView& view);

enum class Extremal {
    /// Largest |lambda|; fails with a stagnation error when +lambda and -lambda tie.
    LargestMagnitude,
    LargestAlgebraic,
};

struct Eigenpair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;  // ||M v - lambda v||
    int restarts = 0;
};

EigenReport dense_symmetric_eigen(const Eigen::MatrixXd& matrix, MatrixKind kind, bool with_top_vector = false,
                                  std::size_t cap = dense_cap());

/// Restarted Lanczos with full reorthogonalization.
Eigenpair top_eigenpair(const LinearOperator& op, double tol, Extremal which = Extremal::LargestMagnitude,
                        std::uint64_t seed = 0);

struct EnsembleHistogram {
    std::vector<double> bin_edges;
    std::vector<double> density;
    std::size_t replicates = 0;
    std::size_t n = 0;
    std::uint64_t base_seed = 0;
    /// Pooled eigenvalues falling outside [bin_edges.front(), bin_edges.back()];
    /// the density is normalized over the in-range values.
    std::size_t outliers = 0;

    double width() const { return bin_edges[1] - bin_edges[0]; }
};

EnsembleHistogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins);

struct EnsembleOptions {
    DegreeSampling sampling = DegreeSampling::Systematic;
    std::optional<double> hub_degree;
    /// Histogram range; defaults to the analytic band widened by 2 on each side.
    std::optional<std::pair<double, double>> range;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Degree sequence and network for replicate r: both derive from
/// replicate_seed(base_seed, r).
SampledNetwork replicate_network(const DegreeModel& model, std::size_t n, std::uint64_t base_seed, std::size_t r,
                                 const EnsembleOptions& options);

struct EmpiricalSpectrum {
    EnsembleHistogram histogram;
    std::vector<double> eigenvalues;  // pooled in replicate order
};

EmpiricalSpectrum empirical_spectrum(const DegreeModel& model, std::size_t n, std::size_t replicates,
                                     std::size_t bins, std::uint64_t base_seed, MatrixKind kind,
                                     const EnsembleOptions& options = {});

EnsembleHistogram empirical_density(const DegreeModel& model, std::size_t n, std::size_t replicates,
                                    std::size_t bins, std::uint64_t base_seed, MatrixKind kind,
                                    const EnsembleOptions& options = {});

/// sum_b |hist_b - analytic bin average_b| * width, plus analytic mass outside the range.
double l1_distance(const EnsembleHistogram& histogram, const DegreeModel& model);

struct LeadingStats {
    double mean = 0.0;
    double std_error = 0.0;
    std::vector<double> values;
};

LeadingStats summarize(std::vector<double> values);

LeadingStats ensemble_leading(const DegreeModel& model, std::size_t n, std::size_t replicates,
                              std::uint64_t base_seed, MatrixKind kind, const EnsembleOptions& options = {});

struct HubVectorStats {
    double vn_sq = 0.0;
    double neighbor_mean_sq = 0.0;
    double bulk_mean_sq = 0.0;
};

HubVectorStats hub_vector_stats(const SampledNetwork& network, std::size_t hub_index,
                                std::span<const double> top_vector);

struct HubEnsemble {
    LeadingStats top;
    LeadingStats vn_sq;
    LeadingStats neighbor_mean_sq;
    LeadingStats bulk_mean_sq;
};

/// Model network of n vertices plus one hub of expected degree k_n (index n);
/// top algebraic eigenpair of the modularity matrix per replicate.
HubEnsemble ensemble_hub(const DegreeModel& model, std::size_t n, double k_n, std::size_t replicates,
                         std::uint64_t base_seed, const EnsembleOptions& options = {});

}  // namespace netspec
