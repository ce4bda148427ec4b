#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netspec {

struct Atom {
    double degree;
    double weight;
};

enum class ModelKind { PoissonEquivalent, Discrete, Continuous };

std::string to_string(ModelKind kind);

enum class ContinuousKind { Uniform, Tabulated, PowerLaw };

/// Continuous part of an expected-degree distribution on a finite support.
/// The density need not be normalized; `mass` is the probability carried by
/// the continuous part (1 minus the atom weights).
struct ContinuousSpec {
    ContinuousKind kind = ContinuousKind::Uniform;
    double lo = 0.0;
    double hi = 0.0;
    int nodes = 256;
    double mass = 1.0;
    /// Tabulated only: (degree, density) pairs, linearly interpolated.
    std::vector<std::pair<double, double>> table;
    /// PowerLaw only: density proportional to k^-exponent.
    double exponent = 2.5;
    /// Extra factor k^tilt applied to the shape; the excess transform uses it.
    int tilt = 0;

    double shape(double k) const;
};

/// Expected-degree distribution p(k). Continuous parts are reduced to
/// Gauss-Legendre nodes at construction; downstream code only ever sees the
/// merged, sorted list of weighted atoms returned by `atoms()`.
class DegreeModel {
public:
    static constexpr double kDedupTolerance = 1e-9;
    static constexpr double kWeightTolerance = 1e-12;
    static constexpr int kDefaultNodes = 256;

    /// Single atom at c (the Poisson random graph).
    static DegreeModel poisson(double c);
    static DegreeModel from_atoms(std::vector<Atom> atoms);
    /// Atoms plus a continuous part. `continuous.mass` is overwritten with
    /// 1 - sum(atom weights).
    static DegreeModel with_continuous(std::vector<Atom> atoms, ContinuousSpec continuous);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::span<const Atom> discrete_atoms() const noexcept { return discrete_; }
    const std::optional<ContinuousSpec>& continuous() const noexcept { return continuous_; }
    ModelKind kind() const noexcept { return kind_; }

    double min_degree() const noexcept { return atoms_.front().degree; }
    double max_degree() const noexcept { return atoms_.back().degree; }
    double total_weight() const noexcept;

    /// Inverse CDF of the normalized continuous part (requires continuous()).
    double continuous_quantile(double u) const;

private:
    DegreeModel() = default;
    void finalize();

    std::vector<Atom> discrete_;
    std::optional<ContinuousSpec> continuous_;
    std::vector<Atom> atoms_;
    ModelKind kind_ = ModelKind::Discrete;
    // Piecewise-linear CDF of the continuous part for inverse-CDF sampling.
    std::vector<double> cdf_k_;
    std::vector<double> cdf_p_;
};

struct DegreeSequence {
    std::vector<double> degrees;
    double two_m = 0.0;

    std::size_t size() const noexcept { return degrees.size(); }
    static DegreeSequence from_degrees(std::vector<double> degrees);
};

double mean_degree(const DegreeModel& model);
double moment(const DegreeModel& model, int r);
DegreeModel excess_distribution(const DegreeModel& model);

/// Cauchy transform of k p(k): sum_r p_r d_r / (z - d_r).
std::complex<double> cauchy_transform_p(const DegreeModel& model, std::complex<double> z);

enum class DegreeSampling {
    /// Independent draws from p(k).
    Iid,
    /// One uniform offset, stratified over n equal-probability slots, then
    /// shuffled. Removes the multinomial fluctuation of atom counts.
    Systematic,
};

DegreeSequence sample_degree_sequence(const DegreeModel& model, std::size_t n, std::uint64_t seed,
                                      DegreeSampling scheme = DegreeSampling::Iid);

}  // namespace netspec
