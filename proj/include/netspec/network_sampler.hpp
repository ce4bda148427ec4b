#pragma once

#include "netspec/degree_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace netspec {

struct Edge {
    std::uint32_t i;
    std::uint32_t j;          // i <= j
    std::uint32_t multiplicity;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One realization of the Poisson-edge model. A self-loop at i contributes 2
/// to the diagonal A_ii (and to the degree of i).
class SampledNetwork {
public:
    SampledNetwork(DegreeSequence degrees, std::vector<Edge> edges, std::uint64_t seed);

    std::size_t n() const noexcept { return degrees_.size(); }
    const DegreeSequence& degrees() const noexcept { return degrees_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    double two_m_expected() const noexcept { return degrees_.two_m; }
    std::uint64_t seed() const noexcept { return seed_; }

    std::vector<double> realized_degrees() const;
    /// Vertices sharing at least one edge with v (v itself excluded).
    std::vector<std::size_t> neighbors(std::size_t v) const;

    /// y = A x
    void multiply_adjacency(std::span<const double> x, std::span<double> y) const;

private:
    DegreeSequence degrees_;
    std::vector<Edge> edges_;
    std::uint64_t seed_;
    // Compressed rows of the symmetric adjacency matrix.
    std::vector<std::size_t> row_start_;
    std::vector<std::uint32_t> column_;
    std::vector<double> value_;
};

/// Modularity matrix B = A - k k^T / 2m, with the rank-one term kept implicit.
class ModularityView {
public:
    explicit ModularityView(const SampledNetwork& network) : network_(&network) {}

    const SampledNetwork& network() const noexcept { return *network_; }
    std::size_t n() const noexcept { return network_->n(); }

    /// y = B x
    void multiply(std::span<const double> x, std::span<double> y) const;
    /// y = D^{-1/2} B D^{-1/2} x
    void multiply_normalized(std::span<const double> x, std::span<double> y) const;

private:
    const SampledNetwork* network_;
};

std::size_t dense_cap();

SampledNetwork sample_network(const DegreeSequence& degrees, std::uint64_t seed);
DegreeSequence attach_hub(const DegreeSequence& degrees, double k_n);

Eigen::MatrixXd densify_adjacency(const SampledNetwork& network, std::size_t cap = dense_cap());
Eigen::MatrixXd densify_modularity(const ModularityView& view, std::size_t cap = dense_cap());

/// Text edge list: header comment with n, seed and two_m, then "i j multiplicity".
void write_edge_list(std::ostream& out, const SampledNetwork& network);
void write_edge_list(const std::filesystem::path& path, const SampledNetwork& network);

}  // namespace netspec
