#include "netspec/analytic_spectrum.hpp"

#include "netspec/error.hpp"
#include "netspec/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace netspec {

namespace {

using cd = std::complex<double>;

constexpr std::size_t kPolynomialAtomLimit = 12;
constexpr double kDamping = 0.5;
constexpr int kMaxIterations = 10000;
constexpr double kIterationTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-10;
constexpr double kDensityFloor = -1e-9;
constexpr double kContinuationFactor = 0.25;

// The fixed-point equation in scaled variables u = sqrt(c) h, zeta = z / sqrt(c),
// delta_r = d_r / c reads u = sum_r p_r delta_r / (zeta - delta_r u), with every
// quantity of order one.
struct Scaled {
    double c = 0.0;
    double s = 0.0;
    std::vector<double> delta;
    std::vector<double> weight;
    double delta_max = 0.0;
};

Scaled scale_model(const DegreeModel& model)
{
    Scaled sc;
    sc.c = mean_degree(model);
    sc.s = std::sqrt(sc.c);
    for (const Atom& a : model.atoms()) {
        sc.delta.push_back(a.degree / sc.c);
        sc.weight.push_back(a.weight);
    }
    sc.delta_max = sc.delta.back();
    return sc;
}

cd fixed_point_rhs(const Scaled& sc, cd zeta, cd u)
{
    cd sum = 0.0;
    for (std::size_t r = 0; r < sc.delta.size(); ++r) sum += sc.weight[r] * sc.delta[r] / (zeta - sc.delta[r] * u);
    return sum;
}

struct FValue {
    cd f;
    cd df;
};

FValue f_and_derivative(const Scaled& sc, cd zeta, cd u)
{
    cd sum = 0.0;
    cd dsum = 0.0;
    for (std::size_t r = 0; r < sc.delta.size(); ++r) {
        const cd inv = 1.0 / (zeta - sc.delta[r] * u);
        const double pd = sc.weight[r] * sc.delta[r];
        sum += pd * inv;
        dsum += pd * sc.delta[r] * inv * inv;
    }
    return {u - sum, 1.0 - dsum};
}

bool finite(cd v)
{
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

cd newton(const Scaled& sc, cd zeta, cd u, int iterations)
{
    for (int i = 0; i < iterations; ++i) {
        const auto [f, df] = f_and_derivative(sc, zeta, u);
        if (!finite(f) || !finite(df) || df == 0.0) break;
        const cd step = f / df;
        const cd next = u - step;
        if (!finite(next)) break;
        if (std::abs(f_and_derivative(sc, zeta, next).f) > std::abs(f)) break;
        u = next;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(u))) break;
    }
    return u;
}

double scaled_residual(const Scaled& sc, cd zeta, cd u)
{
    return std::abs(f_and_derivative(sc, zeta, u).f);
}

bool admissible(cd u)
{
    return u.imag() <= 1e-13 * std::max(1.0, std::abs(u));
}

ComplexPoly fixed_point_polynomial(const Scaled& sc, cd zeta)
{
    // u * prod_r (zeta - delta_r u) - sum_r p_r delta_r prod_{s != r} (zeta - delta_s u)
    const std::size_t l = sc.delta.size();
    ComplexPoly full{1.0};
    for (std::size_t r = 0; r < l; ++r) full = multiply_linear(full, zeta, -sc.delta[r]);
    ComplexPoly poly = multiply_linear(full, 0.0, 1.0);
    for (std::size_t r = 0; r < l; ++r) {
        ComplexPoly partial{1.0};
        for (std::size_t s = 0; s < l; ++s) {
            if (s != r) partial = multiply_linear(partial, zeta, -sc.delta[s]);
        }
        poly = add(poly, scale(partial, -sc.weight[r] * sc.delta[r]));
    }
    return poly;
}

std::vector<cd> polished_roots(const Scaled& sc, cd zeta)
{
    auto roots = polynomial_roots(fixed_point_polynomial(sc, zeta));
    for (cd& u : roots) u = newton(sc, zeta, u, 8);
    return roots;
}

cd nearest(const std::vector<cd>& roots, cd reference, bool require_admissible)
{
    double best = std::numeric_limits<double>::infinity();
    cd choice = reference;
    bool found = false;
    for (const cd& u : roots) {
        if (require_admissible && !admissible(u)) continue;
        const double d = std::abs(u - reference);
        if (d < best) {
            best = d;
            choice = u;
            found = true;
        }
    }
    if (!found && require_admissible) return nearest(roots, reference, false);
    return choice;
}

double continuation_start(const Scaled& sc, cd zeta)
{
    return std::max({1.0, 4.0 * std::sqrt(sc.delta_max), 2.0 * zeta.imag()});
}

// Far from the real axis the physical root is the one close to 1/zeta; every
// other root sits near a pole zeta / delta_r. Follow it down to Im zeta.
cd track_polynomial(const Scaled& sc, cd zeta)
{
    const double top = continuation_start(sc, zeta);
    double im = top;
    cd start(zeta.real(), im);
    auto roots = polished_roots(sc, start);
    const cd guess = 1.0 / start;
    std::vector<double> dist;
    for (const cd& u : roots) dist.push_back(std::abs(u - guess));
    std::sort(dist.begin(), dist.end());
    if (dist.size() > 1 && dist[1] < 2.0 * dist[0]) {
        throw SpectrumError(ErrorKind::AmbiguousRoot, "cannot isolate the physical root far from the axis");
    }
    cd u = nearest(roots, guess, false);

    const double target = zeta.imag();
    const double floor = 1e-14 * std::max(1.0, std::abs(zeta.real()));
    while (im > target) {
        double next = im * kContinuationFactor;
        if (next <= target || next < floor) next = target;
        im = next;
        u = nearest(polished_roots(sc, cd(zeta.real(), im)), u, im > 0.0);
    }
    return u;
}

bool damped_iteration(const Scaled& sc, cd zeta, cd& u)
{
    for (int i = 0; i < kMaxIterations; ++i) {
        const cd next = (1.0 - kDamping) * u + kDamping * fixed_point_rhs(sc, zeta, u);
        if (!finite(next)) return false;
        const bool done = std::abs(next - u) < kIterationTolerance * std::max(1.0, std::abs(u));
        u = next;
        if (done) {
            u = newton(sc, zeta, u, 4);
            return true;
        }
    }
    return false;
}

// Continuation in Im zeta driven by Newton steps; the step shrinks whenever a
// Newton solve fails to converge or leaves the admissible half plane.
cd track_newton(const Scaled& sc, cd zeta)
{
    double im = continuation_start(sc, zeta);
    cd u = 1.0 / cd(zeta.real(), im);
    if (!damped_iteration(sc, cd(zeta.real(), im), u)) {
        throw SpectrumError(ErrorKind::NoConvergence, "damped iteration failed far from the axis");
    }
    const double target = zeta.imag();
    const double floor = 1e-14 * std::max(1.0, std::abs(zeta.real()));
    double factor = kContinuationFactor;
    int guard = 0;
    while (im > target) {
        if (++guard > 2000) throw SpectrumError(ErrorKind::NoConvergence, "continuation stalled");
        double next = im * factor;
        if (next <= target || next < floor) next = target;
        const cd z_next(zeta.real(), next);
        const cd trial = newton(sc, z_next, u, 50);
        const bool ok = scaled_residual(sc, z_next, trial) < 1e-13 * std::max(1.0, std::abs(trial))
                        && (next == 0.0 || admissible(trial));
        if (ok) {
            u = trial;
            im = next;
            factor = std::max(factor * factor, kContinuationFactor);
        } else {
            factor = std::sqrt(factor);
            if (factor > 0.999) throw SpectrumError(ErrorKind::NoConvergence, "continuation step underflow");
        }
    }
    return u;
}

cd poisson_closed_form(double c, cd z)
{
    const double r = 2.0 * std::sqrt(c);
    return (z - std::sqrt(z - r) * std::sqrt(z + r)) / (2.0 * c);
}

double gamma_p_real(const DegreeModel& model, double w)
{
    double sum = 0.0;
    for (const Atom& a : model.atoms()) sum += a.weight * a.degree / (w - a.degree);
    return sum;
}

// Zero of this function gives the critical hub degree: sum p d/(w-d) - sum p d^2/(w-d)^2.
double critical_condition(const DegreeModel& model, double w)
{
    double first = 0.0;
    double second = 0.0;
    for (const Atom& a : model.atoms()) {
        const double inv = 1.0 / (w - a.degree);
        first += a.weight * a.degree * inv;
        second += a.weight * a.degree * a.degree * inv * inv;
    }
    return first - second;
}

double edge_map(const DegreeModel& model, double c, double w)
{
    return w * std::sqrt(gamma_p_real(model, w) / c);
}

template <typename F>
double bisect(F&& f, double lo, double hi, bool f_lo_negative)
{
    for (int i = 0; i < 400 && hi - lo > 1e-15 * std::abs(hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == f_lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(SolveMethod method)
{
    switch (method) {
    case SolveMethod::ClosedForm: return "closed-form";
    case SolveMethod::PolynomialRoots: return "polynomial-roots";
    case SolveMethod::DampedIteration: return "damped-iteration";
    }
    return "unknown";
}

double semicircle_density(double z, double c)
{
    if (!(c > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "c must be positive");
    if (std::abs(z) >= 2.0 / std::sqrt(c)) return 0.0;
    const double arg = 4.0 * c - c * c * z * z;
    if (arg <= 0.0) return 0.0;
    return std::sqrt(arg) / (2.0 * std::numbers::pi);
}

std::complex<double> gamma_semicircle(std::complex<double> z, double c)
{
    if (!(c > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "c must be positive");
    const double r = 2.0 / std::sqrt(c);
    // sqrt(z - r) sqrt(z + r) has its cut on [-r, r] and behaves like z at infinity.
    const cd root = std::sqrt(z - r) * std::sqrt(z + r);
    // (c z (z - root) / 2) - 1 rewritten without cancellation at large |z|.
    const cd s = z + root;
    return r * r / (s * s);
}

HSolution solve_h(const DegreeModel& model, std::complex<double> z, std::optional<std::complex<double>> hint)
{
    if (z.imag() < 0.0) throw SpectrumError(ErrorKind::InvalidArgument, "solve_h needs Im z >= 0");
    if (!finite(z)) throw SpectrumError(ErrorKind::InvalidArgument, "z must be finite");

    const Scaled sc = scale_model(model);
    const cd zeta = z / sc.s;
    HSolution out;
    out.z = z;

    if (model.kind() == ModelKind::PoissonEquivalent) {
        out.h = poisson_closed_form(sc.c, z);
        out.method = SolveMethod::ClosedForm;
        out.residual = scaled_residual(sc, zeta, out.h * sc.s) / sc.s;
        return out;
    }

    cd u;
    if (model.atoms().size() <= kPolynomialAtomLimit) {
        out.method = SolveMethod::PolynomialRoots;
        u = hint ? nearest(polished_roots(sc, zeta), *hint * sc.s, true) : track_polynomial(sc, zeta);
    } else {
        out.method = SolveMethod::DampedIteration;
        bool ok = false;
        if (hint) {
            u = newton(sc, zeta, *hint * sc.s, 50);
            ok = admissible(u) && scaled_residual(sc, zeta, u) < kResidualTolerance * std::max(1.0, std::abs(u));
            if (!ok) {
                u = *hint * sc.s;
                ok = damped_iteration(sc, zeta, u) && admissible(u);
            }
        } else {
            u = 1.0 / zeta;
            ok = damped_iteration(sc, zeta, u) && admissible(u);
        }
        if (!ok) u = track_newton(sc, zeta);
    }

    out.h = u / sc.s;
    out.residual = scaled_residual(sc, zeta, u) / sc.s;
    if (!(out.residual < kResidualTolerance * std::max(1.0, std::abs(out.h)))) {
        throw SpectrumError(ErrorKind::NoConvergence, "residual " + std::to_string(out.residual) + " via "
                                                          + to_string(out.method));
    }
    return out;
}

double spectral_density(const DegreeModel& model, double z, double eta)
{
    if (!(eta > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "eta must be positive");
    if (z == 0.0) {
        const cd g = stieltjes_g(model, cd(0.0, eta));
        return std::max(0.0, -g.imag() / std::numbers::pi);
    }
    const double c = mean_degree(model);
    const HSolution sol = solve_h(model, cd(z, eta));
    const double rho = -(c / (std::numbers::pi * z)) * (sol.h * sol.h).imag();
    if (rho < kDensityFloor) {
        throw SpectrumError(ErrorKind::InternalConsistency, "negative density at z=" + std::to_string(z));
    }
    return std::max(rho, 0.0);
}

double default_eta(double z_min, double z_max, std::size_t points)
{
    return std::max(1e-9, (z_max - z_min) / (10.0 * static_cast<double>(points)));
}

SpectralCurve density_grid(const DegreeModel& model, double z_min, double z_max, std::size_t points,
                           std::optional<double> eta)
{
    if (!(z_min < z_max)) throw SpectrumError(ErrorKind::InvalidArgument, "need z_min < z_max");
    if (points < 2) throw SpectrumError(ErrorKind::InvalidArgument, "need at least 2 grid points");
    SpectralCurve curve;
    curve.eta = eta.value_or(default_eta(z_min, z_max, points));
    if (!(curve.eta > 0.0)) throw SpectrumError(ErrorKind::InvalidArgument, "eta must be positive");

    const double c = mean_degree(model);
    const double step = (z_max - z_min) / static_cast<double>(points - 1);
    curve.z.reserve(points);
    curve.rho.reserve(points);
    std::optional<cd> previous;
    for (std::size_t i = 0; i < points; ++i) {
        double z = i + 1 == points ? z_max : z_min + step * static_cast<double>(i);
        if (z == 0.0) z = 0.5 * step;
        HSolution sol;
        try {
            sol = solve_h(model, cd(z, curve.eta), previous);
        } catch (const SpectrumError& e) {
            throw SpectrumError(e.kind(), std::string(e.what()) + " at z=" + std::to_string(z));
        }
        previous = sol.h;
        double rho = -(c / (std::numbers::pi * z)) * (sol.h * sol.h).imag();
        if (rho < kDensityFloor) {
            throw SpectrumError(ErrorKind::InternalConsistency, "negative density at z=" + std::to_string(z));
        }
        curve.z.push_back(z);
        curve.rho.push_back(std::max(rho, 0.0));
    }

    double mass = 0.0;
    for (std::size_t i = 1; i < points; ++i) {
        const double dz = curve.z[i] - curve.z[i - 1];
        const double r0 = curve.rho[i - 1];
        const double r1 = curve.rho[i];
        const double z0 = curve.z[i - 1];
        const double z1 = curve.z[i];
        mass += 0.5 * dz * (r0 + r1);
        curve.first_moment += 0.5 * dz * (z0 * r0 + z1 * r1);
        curve.second_moment += 0.5 * dz * (z0 * z0 * r0 + z1 * z1 * r1);
    }
    curve.norm_defect = std::abs(mass - 1.0);
    try {
        curve.band = band_edges(model);
    } catch (const SpectrumError&) {
        curve.band.reset();
    }
    return curve;
}

std::complex<double> stieltjes_g(const DegreeModel& model, std::complex<double> z)
{
    const double c = mean_degree(model);
    const cd h = solve_h(model, z).h;
    return (1.0 + c * h * h) / z;
}

std::complex<double> stieltjes_g_from_h(const DegreeModel& model, std::complex<double> z, std::complex<double> h)
{
    cd sum = 0.0;
    for (const Atom& a : model.atoms()) sum += a.weight / (z - a.degree * h);
    return sum;
}

double critical_hub_degree(const DegreeModel& model)
{
    const double k_max = model.max_degree();
    const double top = 1e6 * k_max;
    if (!(critical_condition(model, top) > 0.0)) {
        throw SpectrumError(ErrorKind::NotFound, "critical hub degree beyond 1e6 * k_max");
    }
    // Walk down from the top so the largest sign change is the one bracketed.
    double upper = top;
    double gap = top - k_max;
    while (true) {
        gap /= 1.5;
        if (gap < 1e-12 * k_max) throw SpectrumError(ErrorKind::NotFound, "critical hub degree not bracketed");
        const double w = k_max + gap;
        if (critical_condition(model, w) <= 0.0) {
            return bisect([&](double x) { return critical_condition(model, x); }, w, upper, true);
        }
        upper = w;
    }
}

BandEdges band_edges(const DegreeModel& model)
{
    const double c = mean_degree(model);
    const double w_star = critical_hub_degree(model);
    const double upper = edge_map(model, c, w_star);
    const double limit = 10.0 * std::sqrt(moment(model, 2));
    if (!std::isfinite(upper) || upper > limit) {
        throw SpectrumError(ErrorKind::NotFound, "band edge outside +-10 sqrt(<k^2>)");
    }
    // h(-z) = -h(z) on the real axis, so the band is symmetric about zero.
    return {-upper, upper};
}

double h_outside_band(const DegreeModel& model, double z)
{
    const double c = mean_degree(model);
    const double w_star = critical_hub_degree(model);
    const double edge = edge_map(model, c, w_star);
    const double target = std::abs(z);
    if (!(target > edge)) {
        throw SpectrumError(ErrorKind::InvalidArgument, "z=" + std::to_string(z) + " is inside the band");
    }
    double hi = 2.0 * w_star;
    for (int i = 0; i < 200 && edge_map(model, c, hi) < target; ++i) hi *= 2.0;
    const double w = bisect([&](double x) { return edge_map(model, c, x) - target; }, w_star, hi, true);
    return z / w;
}

double leading_eigenvalue_approx(const DegreeModel& model)
{
    return moment(model, 2) / moment(model, 1);
}

double leading_eigenvalue_bracketed(const DegreeModel& model)
{
    const double edge = band_edges(model).upper;
    auto gap = [&](double z) { return (z - 1.0) * h_outside_band(model, z) - 1.0; };
    const double lo = std::max(edge, 1.0) * (1.0 + 1e-12);
    if (!(gap(lo) > 0.0)) {
        throw SpectrumError(ErrorKind::NoRoot, "leading eigenvalue not separated from the band");
    }
    double hi = std::max(2.0 * lo, leading_eigenvalue_approx(model) + 2.0);
    for (int i = 0; i < 200 && gap(hi) >= 0.0; ++i) hi *= 2.0;
    if (gap(hi) >= 0.0) throw SpectrumError(ErrorKind::NoRoot, "leading eigenvalue not bracketed");
    return bisect(gap, lo, hi, false);
}

double leading_eigenvalue(const DegreeModel& model)
{
    if (model.kind() == ModelKind::PoissonEquivalent) {
        // h(c+1) = 1/c only on the branch with c > 1; at c <= 1 the root sits at or inside the edge.
        const double c = mean_degree(model);
        if (!(c > 1.0)) throw SpectrumError(ErrorKind::NoRoot, "leading eigenvalue not separated from the band");
        return c + 1.0;
    }
    if (model.atoms().size() > kPolynomialAtomLimit) return leading_eigenvalue_bracketed(model);

    // With h = 1/(z-1) the fixed-point equation becomes
    //   c prod_r (w - d_r) = (z-1)^2 sum_r p_r d_r prod_{s!=r} (w - d_s),  w = z^2 - z,
    // a polynomial of degree 2l in z. Solve in t = z / sigma, sigma = <k^2>/<k>.
    const double c = mean_degree(model);
    const double sigma = leading_eigenvalue_approx(model);
    const auto atoms = model.atoms();
    auto quad = [&](double d) { return ComplexPoly{-d / (sigma * sigma), -1.0 / sigma, 1.0}; };
    ComplexPoly lhs{c};
    for (const Atom& a : atoms) lhs = multiply(lhs, quad(a.degree));
    ComplexPoly rhs_sum{0.0};
    for (std::size_t r = 0; r < atoms.size(); ++r) {
        ComplexPoly partial{atoms[r].weight * atoms[r].degree};
        for (std::size_t s = 0; s < atoms.size(); ++s) {
            if (s != r) partial = multiply(partial, quad(atoms[s].degree));
        }
        rhs_sum = add(rhs_sum, partial);
    }
    const ComplexPoly shift{-1.0 / sigma, 1.0};
    const ComplexPoly poly = add(lhs, scale(multiply(multiply(shift, shift), rhs_sum), -1.0));

    auto phi = [&](double z) {
        const double w = z * z - z;
        double value = c / ((z - 1.0) * (z - 1.0));
        double slope = -2.0 * c / std::pow(z - 1.0, 3);
        for (const Atom& a : atoms) {
            const double den = w - a.degree;
            value -= a.weight * a.degree / den;
            slope += a.weight * a.degree * (2.0 * z - 1.0) / (den * den);
        }
        return std::pair{value, slope};
    };

    const double w_star = critical_hub_degree(model);
    std::optional<double> best;
    for (const cd& t : polynomial_roots(poly)) {
        if (std::abs(t.imag()) > 1e-6 * std::max(1.0, std::abs(t))) continue;
        double z = t.real() * sigma;
        for (int i = 0; i < 20; ++i) {
            const auto [v, dv] = phi(z);
            if (dv == 0.0 || !std::isfinite(v)) break;
            const double step = v / dv;
            z -= step;
            if (std::abs(step) < 1e-15 * std::abs(z)) break;
        }
        if (!(z > 1.0) || !(z * z - z > w_star)) continue;
        if (std::abs(phi(z).first) > 1e-9 * c / ((z - 1.0) * (z - 1.0))) continue;
        if (!best || z > *best) best = z;
    }
    if (!best) throw SpectrumError(ErrorKind::NoRoot, "every root of the leading-eigenvalue equation is inside the band");
    return *best;
}

std::complex<double> h_derivative(const DegreeModel& model, std::complex<double> z, std::complex<double> h)
{
    const double c = mean_degree(model);
    cd f_z = 0.0;
    cd f_h = 1.0;
    for (const Atom& a : model.atoms()) {
        const cd inv = 1.0 / (z - a.degree * h);
        f_z += a.weight * a.degree * inv * inv / c;
        f_h -= a.weight * a.degree * a.degree * inv * inv / c;
    }
    return -f_z / f_h;
}

HubPrediction hub_eigenvalues(const DegreeModel& model, double k_n)
{
    const double k_max = model.max_degree();
    if (!(k_n > k_max * (1.0 + 1e-12))) {
        throw SpectrumError(ErrorKind::Pole, "hub degree " + std::to_string(k_n)
                                                 + " must exceed the largest model degree " + std::to_string(k_max));
    }
    const double c = mean_degree(model);
    HubPrediction out;
    out.k_n = k_n;
    out.k_critical = critical_hub_degree(model);
    out.band_upper = edge_map(model, c, out.k_critical);
    out.exists = k_n > out.k_critical;
    if (!out.exists) return out;

    const double z = edge_map(model, c, k_n);
    out.z_plus = z;
    out.z_minus = -z;

    // Independent route: the fixed-point solution at z must equal z / k_n.
    const cd h = solve_h(model, cd(z, 0.0)).h;
    if (std::abs(h - z / k_n) > 1e-8) {
        throw SpectrumError(ErrorKind::InternalConsistency,
                            "h(z_plus) disagrees with z_plus / k_n by " + std::to_string(std::abs(h - z / k_n)));
    }

    const HubPrediction profile = hub_eigenvector_profile(model, k_n);
    out.vn_sq = profile.vn_sq;
    out.neighbor_vi_sq_mean = profile.neighbor_vi_sq_mean;
    out.neighbor_profile = profile.neighbor_profile;
    return out;
}

HubPrediction hub_eigenvector_profile(const DegreeModel& model, double k_n)
{
    const double k_max = model.max_degree();
    if (!(k_n > k_max * (1.0 + 1e-12))) {
        throw SpectrumError(ErrorKind::Pole, "hub degree must exceed the largest model degree");
    }
    const double c = mean_degree(model);
    HubPrediction out;
    out.k_n = k_n;
    out.k_critical = critical_hub_degree(model);
    out.band_upper = edge_map(model, c, out.k_critical);
    out.exists = k_n > out.k_critical;
    if (!out.exists) {
        throw SpectrumError(ErrorKind::NoRoot, "hub degree below the critical value; no localized eigenvector");
    }
    const double z = edge_map(model, c, k_n);
    out.z_plus = z;
    out.z_minus = -z;

    if (model.kind() == ModelKind::PoissonEquivalent) {
        out.vn_sq = (0.5 * k_n - c) / (k_n - c);
        out.neighbor_vi_sq_mean = out.vn_sq / (k_n - c);
        out.neighbor_profile.push_back({c, out.neighbor_vi_sq_mean});
    } else {
        const double slope = h_derivative(model, cd(z, 0.0), cd(z / k_n, 0.0)).real();
        out.vn_sq = 1.0 / (1.0 - k_n * slope);
        for (const Atom& a : model.atoms()) {
            const double denom = z * (1.0 - a.degree / k_n);
            const double vi_sq = out.vn_sq / (denom * denom);
            out.neighbor_profile.push_back({a.degree, vi_sq});
            out.neighbor_vi_sq_mean += a.weight * a.degree / c * vi_sq;
        }
    }
    if (!(out.vn_sq >= 0.0 && out.vn_sq <= 1.0)) {
        throw SpectrumError(ErrorKind::InternalConsistency, "hub element squared outside [0, 1]");
    }
    return out;
}

}  // namespace netspec
