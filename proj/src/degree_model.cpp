#include "netspec/degree_model.hpp"

#include "netspec/error.hpp"
#include "netspec/random.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace netspec {

namespace {

constexpr int kCdfPoints = 4097;
constexpr double kInputWeightTolerance = 1e-9;

std::vector<Atom> merge_sorted(std::vector<Atom> atoms)
{
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.degree < b.degree; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!merged.empty()
            && std::abs(a.degree - merged.back().degree)
                   <= DegreeModel::kDedupTolerance * std::max(a.degree, merged.back().degree)) {
            merged.back().weight += a.weight;
        } else {
            merged.push_back(a);
        }
    }
    return merged;
}

void check_atom(const Atom& a)
{
    if (!std::isfinite(a.degree) || a.degree <= 0.0) {
        throw SpectrumError(ErrorKind::InvalidArgument,
                            "atom degree must be finite and positive, got " + std::to_string(a.degree));
    }
    if (!std::isfinite(a.weight) || a.weight <= 0.0 || a.weight > 1.0) {
        throw SpectrumError(ErrorKind::InvalidArgument,
                            "atom weight must lie in (0, 1], got " + std::to_string(a.weight));
    }
}

struct GlTableDeleter {
    void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};

std::vector<Atom> discretize(const ContinuousSpec& spec)
{
    std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(spec.nodes)));
    if (!table) throw SpectrumError(ErrorKind::InvalidArgument, "cannot build quadrature table");

    std::vector<Atom> nodes;
    nodes.reserve(static_cast<std::size_t>(spec.nodes));
    double total = 0.0;
    for (int i = 0; i < spec.nodes; ++i) {
        double x = 0.0;
        double w = 0.0;
        gsl_integration_glfixed_point(spec.lo, spec.hi, static_cast<std::size_t>(i), &x, &w, table.get());
        const double f = spec.shape(x);
        if (!std::isfinite(f) || f < 0.0) {
            throw SpectrumError(ErrorKind::InvalidArgument, "continuous density must be finite and non-negative");
        }
        if (f > 0.0) {
            nodes.push_back({x, w * f});
            total += w * f;
        }
    }
    if (!(total > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "continuous density integrates to zero");
    for (Atom& a : nodes) a.weight *= spec.mass / total;
    return nodes;
}

}  // namespace

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::PoissonEquivalent: return "poisson-equivalent";
    case ModelKind::Discrete: return "discrete";
    case ModelKind::Continuous: return "continuous";
    }
    return "unknown";
}

double ContinuousSpec::shape(double k) const
{
    if (k < lo || k > hi) return 0.0;
    double base = 0.0;
    switch (kind) {
    case ContinuousKind::Uniform:
        base = 1.0;
        break;
    case ContinuousKind::PowerLaw:
        base = std::pow(k, -exponent);
        break;
    case ContinuousKind::Tabulated: {
        auto it = std::lower_bound(table.begin(), table.end(), k,
                                   [](const auto& p, double v) { return p.first < v; });
        if (it == table.end()) return 0.0;
        if (it->first == k || it == table.begin()) {
            base = it->second;
        } else {
            const auto& [k1, f1] = *std::prev(it);
            const auto& [k2, f2] = *it;
            base = f1 + (f2 - f1) * (k - k1) / (k2 - k1);
        }
        break;
    }
    }
    return tilt == 0 ? base : base * std::pow(k, tilt);
}

DegreeModel DegreeModel::poisson(double c)
{
    return from_atoms({{c, 1.0}});
}

DegreeModel DegreeModel::from_atoms(std::vector<Atom> atoms)
{
    if (atoms.empty()) throw SpectrumError(ErrorKind::InvalidArgument, "degree model needs at least one atom");
    DegreeModel m;
    m.discrete_ = std::move(atoms);
    m.finalize();
    return m;
}

DegreeModel DegreeModel::with_continuous(std::vector<Atom> atoms, ContinuousSpec continuous)
{
    double atom_mass = 0.0;
    for (const Atom& a : atoms) atom_mass += a.weight;
    continuous.mass = 1.0 - atom_mass;
    DegreeModel m;
    m.discrete_ = std::move(atoms);
    m.continuous_ = std::move(continuous);
    m.finalize();
    return m;
}

void DegreeModel::finalize()
{
    for (const Atom& a : discrete_) check_atom(a);
    discrete_ = merge_sorted(std::move(discrete_));

    std::vector<Atom> all = discrete_;
    if (continuous_) {
        ContinuousSpec& spec = *continuous_;
        if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
            throw SpectrumError(ErrorKind::InvalidArgument,
                                "continuous support must be finite; truncate unbounded tails");
        }
        if (!(spec.hi > spec.lo) || spec.lo < 0.0) {
            throw SpectrumError(ErrorKind::InvalidArgument, "continuous support needs hi > lo >= 0");
        }
        if (spec.nodes < 1) throw SpectrumError(ErrorKind::InvalidArgument, "quadrature node count must be >= 1");
        if (spec.kind == ContinuousKind::PowerLaw && spec.lo <= 0.0) {
            throw SpectrumError(ErrorKind::InvalidArgument, "power-law support must start above zero");
        }
        if (spec.kind == ContinuousKind::Tabulated) {
            if (spec.table.size() < 2) {
                throw SpectrumError(ErrorKind::InvalidArgument, "tabulated density needs at least two points");
            }
            std::sort(spec.table.begin(), spec.table.end());
        }
        if (spec.mass <= kInputWeightTolerance) {
            throw SpectrumError(ErrorKind::InvalidArgument,
                                "atom weights leave no probability for the continuous part");
        }
        auto nodes = discretize(spec);
        all.insert(all.end(), nodes.begin(), nodes.end());

        cdf_k_.resize(kCdfPoints);
        cdf_p_.assign(kCdfPoints, 0.0);
        const double step = (spec.hi - spec.lo) / (kCdfPoints - 1);
        double prev = spec.shape(spec.lo);
        cdf_k_[0] = spec.lo;
        for (int i = 1; i < kCdfPoints; ++i) {
            cdf_k_[i] = spec.lo + step * i;
            const double f = spec.shape(cdf_k_[i]);
            cdf_p_[i] = cdf_p_[i - 1] + 0.5 * (prev + f) * step;
            prev = f;
        }
        const double norm = cdf_p_.back();
        if (!(norm > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "continuous density integrates to zero");
        for (double& p : cdf_p_) p /= norm;
    }

    double total = 0.0;
    for (const Atom& a : all) total += a.weight;
    if (std::abs(total - 1.0) > kInputWeightTolerance) {
        throw SpectrumError(ErrorKind::InvalidArgument,
                            "weights must sum to 1, got " + std::to_string(total));
    }
    atoms_ = merge_sorted(std::move(all));
    for (Atom& a : atoms_) a.weight /= total;

    if (continuous_) {
        kind_ = ModelKind::Continuous;
    } else {
        for (Atom& a : discrete_) a.weight /= total;
        kind_ = atoms_.size() == 1 ? ModelKind::PoissonEquivalent : ModelKind::Discrete;
    }
}

double DegreeModel::total_weight() const noexcept
{
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.weight;
    return total;
}

double DegreeModel::continuous_quantile(double u) const
{
    if (!continuous_) throw SpectrumError(ErrorKind::InvalidArgument, "model has no continuous part");
    auto it = std::upper_bound(cdf_p_.begin(), cdf_p_.end(), u);
    if (it == cdf_p_.begin()) return cdf_k_.front();
    if (it == cdf_p_.end()) return cdf_k_.back();
    const auto i = static_cast<std::size_t>(it - cdf_p_.begin());
    const double p0 = cdf_p_[i - 1];
    const double p1 = cdf_p_[i];
    const double t = p1 > p0 ? (u - p0) / (p1 - p0) : 0.0;
    return cdf_k_[i - 1] + t * (cdf_k_[i] - cdf_k_[i - 1]);
}

DegreeSequence DegreeSequence::from_degrees(std::vector<double> degrees)
{
    DegreeSequence seq;
    for (double k : degrees) {
        if (!std::isfinite(k) || k <= 0.0) {
            throw SpectrumError(ErrorKind::InvalidArgument, "expected degrees must be positive");
        }
        seq.two_m += k;
    }
    seq.degrees = std::move(degrees);
    return seq;
}

double mean_degree(const DegreeModel& model)
{
    return moment(model, 1);
}

double moment(const DegreeModel& model, int r)
{
    if (r < 1) throw SpectrumError(ErrorKind::InvalidArgument, "moment order must be >= 1");
    double sum = 0.0;
    for (const Atom& a : model.atoms()) sum += a.weight * std::pow(a.degree, r);
    return sum;
}

DegreeModel excess_distribution(const DegreeModel& model)
{
    const double c = mean_degree(model);
    std::vector<Atom> discrete;
    discrete.reserve(model.discrete_atoms().size());
    for (const Atom& a : model.discrete_atoms()) discrete.push_back({a.degree, a.degree * a.weight / c});

    if (!model.continuous()) {
        double total = 0.0;
        for (const Atom& a : discrete) total += a.weight;
        for (Atom& a : discrete) a.weight /= total;
        return DegreeModel::from_atoms(std::move(discrete));
    }

    // The tilted shape discretizes at the same nodes, so the node weights come
    // out as d p(d) / c after normalization.
    ContinuousSpec spec = *model.continuous();
    spec.tilt += 1;
    return DegreeModel::with_continuous(std::move(discrete), std::move(spec));
}

std::complex<double> cauchy_transform_p(const DegreeModel& model, std::complex<double> z)
{
    std::complex<double> sum = 0.0;
    for (const Atom& a : model.atoms()) {
        if (z.imag() == 0.0 && std::abs(z - a.degree) < 1e-14 * a.degree) {
            throw SpectrumError(ErrorKind::PoleAtAtom,
                                "z coincides with atom at degree " + std::to_string(a.degree));
        }
        sum += a.weight * a.degree / (z - a.degree);
    }
    return sum;
}

DegreeSequence sample_degree_sequence(const DegreeModel& model, std::size_t n, std::uint64_t seed,
                                      DegreeSampling scheme)
{
    if (n < 1) throw SpectrumError(ErrorKind::InvalidArgument, "sequence length must be >= 1");
    CounterRng rng(seed, 0x6465677265657321ULL);

    const auto discrete = model.discrete_atoms();
    std::vector<double> cumulative;
    cumulative.reserve(discrete.size());
    double acc = 0.0;
    for (const Atom& a : discrete) {
        acc += a.weight;
        cumulative.push_back(acc);
    }
    const bool has_continuous = model.continuous().has_value();
    const double atom_mass = acc;

    auto quantile = [&](double u) {
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it != cumulative.end()) return discrete[static_cast<std::size_t>(it - cumulative.begin())].degree;
        if (has_continuous) {
            const double v = (u - atom_mass) / (1.0 - atom_mass);
            return model.continuous_quantile(std::clamp(v, 0.0, 1.0));
        }
        return discrete.back().degree;
    };

    std::vector<double> degrees(n);
    if (scheme == DegreeSampling::Iid) {
        for (double& k : degrees) k = quantile(rng.uniform01());
    } else {
        const double offset = rng.uniform01();
        for (std::size_t i = 0; i < n; ++i) degrees[i] = quantile((static_cast<double>(i) + offset) / n);
        for (std::size_t i = n - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i + 1));
            std::swap(degrees[i], degrees[std::min(j, i)]);
        }
    }
    return DegreeSequence::from_degrees(std::move(degrees));
}

}  // namespace netspec
