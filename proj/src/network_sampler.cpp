#include "netspec/network_sampler.hpp"

#include "netspec/error.hpp"
#include "netspec/random.hpp"

#include <boost/random/discrete_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>

namespace netspec {

namespace {

constexpr std::uint64_t kEdgeCountStream = 1;
constexpr std::uint64_t kEndpointStream = 2;

}  // namespace

SampledNetwork::SampledNetwork(DegreeSequence degrees, std::vector<Edge> edges, std::uint64_t seed)
    : degrees_(std::move(degrees)), edges_(std::move(edges)), seed_(seed)
{
    const std::size_t n = degrees_.size();
    std::vector<std::size_t> count(n + 1, 0);
    for (const Edge& e : edges_) {
        if (e.i > e.j || e.j >= n || e.multiplicity == 0) {
            throw SpectrumError(ErrorKind::InvalidArgument, "malformed edge");
        }
        ++count[e.i + 1];
        if (e.i != e.j) ++count[e.j + 1];
    }
    for (std::size_t v = 0; v < n; ++v) count[v + 1] += count[v];
    row_start_ = count;
    column_.resize(row_start_.back());
    value_.resize(row_start_.back());
    std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
    for (const Edge& e : edges_) {
        if (e.i == e.j) {
            column_[fill[e.i]] = e.i;
            value_[fill[e.i]++] = 2.0 * e.multiplicity;
        } else {
            column_[fill[e.i]] = e.j;
            value_[fill[e.i]++] = e.multiplicity;
            column_[fill[e.j]] = e.i;
            value_[fill[e.j]++] = e.multiplicity;
        }
    }
}

std::vector<double> SampledNetwork::realized_degrees() const
{
    std::vector<double> deg(n(), 0.0);
    for (std::size_t v = 0; v < n(); ++v) {
        for (std::size_t p = row_start_[v]; p < row_start_[v + 1]; ++p) deg[v] += value_[p];
    }
    return deg;
}

std::vector<std::size_t> SampledNetwork::neighbors(std::size_t v) const
{
    std::vector<std::size_t> out;
    for (std::size_t p = row_start_[v]; p < row_start_[v + 1]; ++p) {
        if (column_[p] != v) out.push_back(column_[p]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void SampledNetwork::multiply_adjacency(std::span<const double> x, std::span<double> y) const
{
    for (std::size_t v = 0; v < n(); ++v) {
        double acc = 0.0;
        for (std::size_t p = row_start_[v]; p < row_start_[v + 1]; ++p) acc += value_[p] * x[column_[p]];
        y[v] = acc;
    }
}

void ModularityView::multiply(std::span<const double> x, std::span<double> y) const
{
    network_->multiply_adjacency(x, y);
    const auto& k = network_->degrees().degrees;
    double kx = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) kx += k[i] * x[i];
    const double scale = kx / network_->two_m_expected();
    for (std::size_t i = 0; i < k.size(); ++i) y[i] -= k[i] * scale;
}

void ModularityView::multiply_normalized(std::span<const double> x, std::span<double> y) const
{
    const auto& k = network_->degrees().degrees;
    std::vector<double> scaled(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) scaled[i] = x[i] / std::sqrt(k[i]);
    multiply(scaled, y);
    for (std::size_t i = 0; i < k.size(); ++i) y[i] /= std::sqrt(k[i]);
}

std::size_t dense_cap()
{
    if (const char* env = std::getenv("NETSPEC_DENSE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 4000;
}

SampledNetwork sample_network(const DegreeSequence& degrees, std::uint64_t seed)
{
    const std::size_t n = degrees.size();
    if (n < 2) throw SpectrumError(ErrorKind::InvalidArgument, "network needs at least 2 vertices");
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw SpectrumError(ErrorKind::InvalidArgument, "too many vertices");
    }
    double k_max = 0.0;
    for (double k : degrees.degrees) {
        if (!(k > 0.0) || !std::isfinite(k)) throw SpectrumError(ErrorKind::InvalidArgument, "degrees must be positive");
        k_max = std::max(k_max, k);
    }
    if (k_max * k_max / degrees.two_m > static_cast<double>(n)) {
        throw SpectrumError(ErrorKind::MeanOverflow, "pair mean k_i k_j / 2m exceeds n");
    }

    // Total edge count ~ Poisson(sum_{i<j} k_i k_j / 2m + sum_i k_i^2 / 4m) = Poisson(m).
    // Each edge then picks both endpoints independently with probability k_i / 2m,
    // which thins into independent Poisson counts per pair with the right means.
    CounterRng count_rng(seed, kEdgeCountStream);
    boost::random::poisson_distribution<std::uint64_t, double> edge_count(0.5 * degrees.two_m);
    const std::uint64_t total = edge_count(count_rng);

    CounterRng endpoint_rng(seed, kEndpointStream);
    boost::random::discrete_distribution<std::uint32_t, double> endpoint(degrees.degrees.begin(),
                                                                         degrees.degrees.end());
    std::vector<std::uint64_t> keys;
    keys.reserve(total);
    for (std::uint64_t e = 0; e < total; ++e) {
        std::uint64_t a = endpoint(endpoint_rng);
        std::uint64_t b = endpoint(endpoint_rng);
        if (a > b) std::swap(a, b);
        keys.push_back((a << 32) | b);
    }
    std::sort(keys.begin(), keys.end());

    std::vector<Edge> edges;
    for (std::size_t p = 0; p < keys.size();) {
        std::size_t q = p;
        while (q < keys.size() && keys[q] == keys[p]) ++q;
        edges.push_back({static_cast<std::uint32_t>(keys[p] >> 32), static_cast<std::uint32_t>(keys[p] & 0xffffffffULL),
                         static_cast<std::uint32_t>(q - p)});
        p = q;
    }
    return SampledNetwork(degrees, std::move(edges), seed);
}

DegreeSequence attach_hub(const DegreeSequence& degrees, double k_n)
{
    if (!(k_n > 0.0) || !std::isfinite(k_n)) throw SpectrumError(ErrorKind::InvalidArgument, "hub degree must be positive");
    DegreeSequence out = degrees;
    out.degrees.push_back(k_n);
    out.two_m += k_n;
    return out;
}

Eigen::MatrixXd densify_adjacency(const SampledNetwork& network, std::size_t cap)
{
    const std::size_t n = network.n();
    if (n > cap) {
        throw SpectrumError(ErrorKind::CapExceeded,
                            "n=" + std::to_string(n) + " exceeds dense cap " + std::to_string(cap));
    }
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    for (const Edge& e : network.edges()) {
        if (e.i == e.j) {
            a(e.i, e.i) += 2.0 * e.multiplicity;
        } else {
            a(e.i, e.j) += e.multiplicity;
            a(e.j, e.i) += e.multiplicity;
        }
    }
    return a;
}

Eigen::MatrixXd densify_modularity(const ModularityView& view, std::size_t cap)
{
    Eigen::MatrixXd b = densify_adjacency(view.network(), cap);
    const auto& k = view.network().degrees().degrees;
    const double two_m = view.network().two_m_expected();
    const auto size = static_cast<Eigen::Index>(k.size());
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double expected = k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(j)] / two_m;
            b(i, j) -= expected;
            if (i != j) b(j, i) = b(i, j);
        }
    }
    return b;
}

void write_edge_list(std::ostream& out, const SampledNetwork& network)
{
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "# n=%zu seed=%llu two_m=%.17g\n", network.n(),
                  static_cast<unsigned long long>(network.seed()), network.two_m_expected());
    out << buffer;
    for (const Edge& e : network.edges()) out << e.i << ' ' << e.j << ' ' << e.multiplicity << '\n';
}

void write_edge_list(const std::filesystem::path& path, const SampledNetwork& network)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpectrumError(ErrorKind::Io, "cannot write " + path.string());
    write_edge_list(out, network);
}

}  // namespace netspec
