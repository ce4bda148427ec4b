#include "netspec/commands.hpp"

#include "netspec/analytic_spectrum.hpp"
#include "netspec/error.hpp"
#include "netspec/model_io.hpp"
#include "netspec/network_sampler.hpp"
#include "netspec/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace netspec::cli {

namespace {

using nlohmann::json;

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpectrumError(ErrorKind::Io, "cannot write " + path.string());
    return out;
}

json path_or_null(const std::optional<fs::path>& p)
{
    return p ? json(p->generic_string()) : json(nullptr);
}

std::optional<fs::path> optional_path(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return fs::path(j.at(key).get<std::string>());
}

json make_manifest(const std::string& command, const json& model, const json& params, std::optional<std::uint64_t> seed,
                   const std::vector<fs::path>& outputs)
{
    json files = json::array();
    for (const auto& p : outputs) files.push_back(p.generic_string());
    return {{"command", command},
            {"tool_version", NETSPEC_VERSION},
            {"model", model},
            {"params", params},
            {"base_seed", seed ? json(*seed) : json(nullptr)},
            {"outputs", files}};
}

void write_manifests(const json& manifest, const std::vector<fs::path>& outputs)
{
    const std::string text = manifest.dump(2) + "\n";
    for (const auto& p : outputs) {
        auto out = open_output(fs::path(p.string() + ".manifest.json"));
        out << text;
    }
}

}  // namespace

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Io:
        return kUsage;
    case ErrorKind::NoRoot:
        return kAbsentResult;
    default:
        return kNumericFailure;
    }
}

std::string sampling_name(DegreeSampling sampling)
{
    return sampling == DegreeSampling::Iid ? "iid" : "systematic";
}

DegreeSampling parse_sampling(const std::string& name)
{
    if (name == "iid") return DegreeSampling::Iid;
    if (name == "systematic") return DegreeSampling::Systematic;
    throw SpectrumError(ErrorKind::InvalidArgument, "degree sampling must be iid or systematic, got '" + name + "'");
}

HubSweep parse_sweep(const std::string& text)
{
    HubSweep sweep;
    char tail = 0;
    unsigned long long steps = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%llu%c", &sweep.lo, &sweep.hi, &steps, &tail) != 3) {
        throw SpectrumError(ErrorKind::InvalidArgument, "sweep must look like lo:hi:steps, got '" + text + "'");
    }
    sweep.steps = static_cast<std::size_t>(steps);
    if (sweep.steps < 2 || !(sweep.hi > sweep.lo)) {
        throw SpectrumError(ErrorKind::InvalidArgument, "sweep needs hi > lo and at least 2 steps");
    }
    return sweep;
}

int run_density(const DensityParams& params, std::ostream& report)
{
    const DegreeModel model = model_from_json(params.model);
    const SpectralCurve curve = density_grid(model, params.z_min, params.z_max, params.points, params.eta);

    {
        auto out = open_output(params.out);
        out << "z,rho\n";
        for (std::size_t i = 0; i < curve.z.size(); ++i) out << fmt(curve.z[i]) << ',' << fmt(curve.rho[i]) << '\n';
    }
    std::vector<fs::path> outputs{params.out};
    if (params.svg) {
        write_svg(*params.svg, "Modularity spectral density", "z", "rho(z)",
                  {{curve.z, curve.rho, "#1f4e9a", "analytic", false, false}});
        outputs.push_back(*params.svg);
    }
    const json p = {{"z_min", params.z_min},   {"z_max", params.z_max},
                    {"points", params.points}, {"eta", curve.eta},
                    {"out", params.out.generic_string()}, {"svg", path_or_null(params.svg)}};
    write_manifests(make_manifest("density", params.model, p, std::nullopt, outputs), outputs);

    report << "model kind      " << to_string(model.kind()) << "\n";
    report << "mean degree     " << fmt(mean_degree(model)) << "\n";
    report << "grid            [" << fmt(params.z_min) << ", " << fmt(params.z_max) << "] x " << params.points
           << ", eta " << fmt(curve.eta) << "\n";
    if (curve.band) report << "band            [" << fmt(curve.band->lower) << ", " << fmt(curve.band->upper) << "]\n";
    report << "norm_defect     " << fmt(curve.norm_defect) << "\n";
    report << "first moment    " << fmt(curve.first_moment) << "\n";
    report << "second moment   " << fmt(curve.second_moment) << "\n";
    return kSuccess;
}

int run_empirical(const EmpiricalParams& params, std::ostream& report)
{
    const DegreeModel model = model_from_json(params.model);
    EnsembleOptions options;
    options.sampling = params.sampling;
    const EmpiricalSpectrum spectrum =
        empirical_spectrum(model, params.n, params.replicates, params.bins, params.seed, params.kind, options);
    const EnsembleHistogram& hist = spectrum.histogram;

    {
        auto out = open_output(params.out);
        out << "bin_lo,bin_hi,density\n";
        for (std::size_t b = 0; b < hist.density.size(); ++b) {
            out << fmt(hist.bin_edges[b]) << ',' << fmt(hist.bin_edges[b + 1]) << ',' << fmt(hist.density[b]) << '\n';
        }
    }
    std::vector<fs::path> outputs{params.out};
    if (params.eigenvalues_out) {
        auto out = open_output(*params.eigenvalues_out);
        out << "eigenvalue\n";
        for (double v : spectrum.eigenvalues) out << fmt(v) << '\n';
        outputs.push_back(*params.eigenvalues_out);
    }

    std::optional<double> l1;
    try {
        l1 = l1_distance(hist, model);
    } catch (const SpectrumError&) {
        l1.reset();
    }

    if (params.svg) {
        std::vector<PlotSeries> series{{hist.bin_edges, hist.density, "#888888", "histogram", true, false}};
        try {
            const SpectralCurve curve =
                density_grid(model, hist.bin_edges.front(), hist.bin_edges.back(), 801);
            series.push_back({curve.z, curve.rho, "#c0392b", "analytic", false, false});
        } catch (const SpectrumError&) {
        }
        write_svg(*params.svg, "Empirical vs analytic spectrum", "z", "density", series);
        outputs.push_back(*params.svg);
    }

    const json p = {{"n", params.n},
                    {"replicates", params.replicates},
                    {"bins", params.bins},
                    {"kind", to_string(params.kind)},
                    {"sampling", sampling_name(params.sampling)},
                    {"out", params.out.generic_string()},
                    {"eigenvalues_out", path_or_null(params.eigenvalues_out)},
                    {"svg", path_or_null(params.svg)}};
    write_manifests(make_manifest("empirical", params.model, p, params.seed, outputs), outputs);

    report << "matrix          " << to_string(params.kind) << "\n";
    report << "n x replicates  " << params.n << " x " << params.replicates << " (seed " << params.seed << ")\n";
    report << "range           [" << fmt(hist.bin_edges.front()) << ", " << fmt(hist.bin_edges.back()) << "], "
           << params.bins << " bins, " << hist.outliers << " outliers\n";
    report << "L1 to analytic  " << (l1 ? fmt(*l1) : std::string("n/a")) << "\n";
    return kSuccess;
}

int run_leading(const LeadingParams& params, std::ostream& report)
{
    const DegreeModel model = model_from_json(params.model);
    const double approx = leading_eigenvalue_approx(model);
    std::optional<double> exact;
    std::string status = "ok";
    try {
        exact = leading_eigenvalue(model);
    } catch (const SpectrumError& e) {
        if (e.kind() != ErrorKind::NoRoot) throw;
        status = "no-root";
    }
    std::optional<LeadingStats> ensemble;
    if (params.empirical) {
        EnsembleOptions options;
        options.sampling = params.sampling;
        ensemble = ensemble_leading(model, params.n, params.replicates, params.seed, MatrixKind::Adjacency, options);
    }

    report << "quantity              value\n";
    report << "exact (z-1)h(z)=1     " << (exact ? fmt(*exact) : status) << "\n";
    report << "<k^2>/<k>             " << fmt(approx) << "\n";
    if (exact) report << "relative gap          " << fmt((*exact - approx) / *exact) << "\n";
    if (ensemble) {
        report << "ensemble mean         " << fmt(ensemble->mean) << " +- " << fmt(ensemble->std_error) << "  (n="
               << params.n << ", " << params.replicates << " replicates)\n";
        if (exact) {
            report << "mean - exact          " << fmt(ensemble->mean - *exact) << "  (" << fmt(3.0 * ensemble->std_error)
                   << " = 3 stderr)\n";
        }
    }

    if (params.out) {
        {
            auto out = open_output(*params.out);
            out << "quantity,value\n";
            out << "status," << status << '\n';
            out << "exact," << (exact ? fmt(*exact) : std::string()) << '\n';
            out << "approx," << fmt(approx) << '\n';
            if (ensemble) {
                out << "ensemble_mean," << fmt(ensemble->mean) << '\n';
                out << "ensemble_stderr," << fmt(ensemble->std_error) << '\n';
            }
        }
        const json p = {{"empirical", params.empirical},
                        {"n", params.n},
                        {"replicates", params.replicates},
                        {"sampling", sampling_name(params.sampling)},
                        {"out", params.out->generic_string()}};
        const std::vector<fs::path> outputs{*params.out};
        write_manifests(make_manifest("leading", params.model, p, params.seed, outputs), outputs);
    }
    return exact ? kSuccess : kAbsentResult;
}

int run_hub(const HubParams& params, std::ostream& report)
{
    if (params.k_n.has_value() == params.sweep.has_value()) {
        throw SpectrumError(ErrorKind::InvalidArgument, "give exactly one of --kn or --sweep");
    }
    const DegreeModel model = model_from_json(params.model);
    EnsembleOptions options;
    options.sampling = params.sampling;

    std::vector<double> degrees;
    if (params.k_n) {
        degrees.push_back(*params.k_n);
    } else {
        for (std::size_t i = 0; i < params.sweep->steps; ++i) {
            degrees.push_back(params.sweep->lo
                              + (params.sweep->hi - params.sweep->lo) * static_cast<double>(i)
                                    / static_cast<double>(params.sweep->steps - 1));
        }
    }

    struct Row {
        HubPrediction prediction;
        std::optional<HubEnsemble> ensemble;
    };
    std::vector<Row> rows;
    for (double k_n : degrees) {
        Row row{hub_eigenvalues(model, k_n), std::nullopt};
        if (params.empirical) row.ensemble = ensemble_hub(model, params.n, k_n, params.replicates, params.seed, options);
        rows.push_back(std::move(row));
    }

    const HubPrediction& first = rows.front().prediction;
    report << "k_critical        " << fmt(first.k_critical) << "\n";
    report << "band edge         " << fmt(first.band_upper) << "\n";
    if (params.k_n) {
        const Row& row = rows.front();
        report << "k_n               " << fmt(*params.k_n) << "\n";
        if (row.prediction.exists) {
            report << "z_plus / z_minus  " << fmt(*row.prediction.z_plus) << " / " << fmt(*row.prediction.z_minus) << "\n";
            report << "vn_sq             " << fmt(row.prediction.vn_sq) << "\n";
            report << "neighbor v_i^2    " << fmt(row.prediction.neighbor_vi_sq_mean) << "\n";
        } else {
            report << "z_plus / z_minus  inside band\n";
        }
        if (row.ensemble) {
            report << "ensemble top      " << fmt(row.ensemble->top.mean) << " +- " << fmt(row.ensemble->top.std_error)
                   << "\n";
            report << "ensemble vn_sq    " << fmt(row.ensemble->vn_sq.mean) << " +- "
                   << fmt(row.ensemble->vn_sq.std_error) << "\n";
            report << "ensemble nbr v^2  " << fmt(row.ensemble->neighbor_mean_sq.mean) << "\n";
            report << "ensemble bulk v^2 " << fmt(row.ensemble->bulk_mean_sq.mean) << "\n";
        }
    }

    std::vector<fs::path> outputs;
    if (params.out) {
        auto out = open_output(*params.out);
        out << "k_n,z_top,z_plus,band_edge,exists,vn_sq,neighbor_vi_sq";
        if (params.empirical) out << ",empirical_top,empirical_top_stderr,empirical_vn_sq,empirical_neighbor_sq,empirical_bulk_sq";
        out << '\n';
        for (const Row& row : rows) {
            const HubPrediction& h = row.prediction;
            out << fmt(h.k_n) << ',' << fmt(h.exists ? *h.z_plus : h.band_upper) << ','
                << (h.exists ? fmt(*h.z_plus) : std::string()) << ',' << fmt(h.band_upper) << ','
                << (h.exists ? 1 : 0) << ',' << fmt(h.vn_sq) << ',' << fmt(h.neighbor_vi_sq_mean);
            if (row.ensemble) {
                out << ',' << fmt(row.ensemble->top.mean) << ',' << fmt(row.ensemble->top.std_error) << ','
                    << fmt(row.ensemble->vn_sq.mean) << ',' << fmt(row.ensemble->neighbor_mean_sq.mean) << ','
                    << fmt(row.ensemble->bulk_mean_sq.mean);
            }
            out << '\n';
        }
        outputs.push_back(*params.out);
    } else if (params.sweep) {
        report << "k_n,z_top,band_edge\n";
        for (const Row& row : rows) {
            const HubPrediction& h = row.prediction;
            report << fmt(h.k_n) << ',' << fmt(h.exists ? *h.z_plus : h.band_upper) << ',' << fmt(h.band_upper) << '\n';
        }
    }

    if (params.svg && rows.size() > 1) {
        PlotSeries predicted{{}, {}, "#1f4e9a", "prediction", false, false};
        PlotSeries edge{{}, {}, "#555555", "band edge", false, true};
        PlotSeries measured{{}, {}, "#c0392b", "ensemble top", false, false};
        for (const Row& row : rows) {
            const HubPrediction& h = row.prediction;
            predicted.x.push_back(h.k_n);
            predicted.y.push_back(h.exists ? *h.z_plus : h.band_upper);
            edge.x.push_back(h.k_n);
            edge.y.push_back(h.band_upper);
            if (row.ensemble) {
                measured.x.push_back(h.k_n);
                measured.y.push_back(row.ensemble->top.mean);
            }
        }
        std::vector<PlotSeries> series{predicted, edge};
        if (!measured.x.empty()) series.push_back(measured);
        write_svg(*params.svg, "Top modularity eigenvalue with one hub", "k_n", "z", series);
        outputs.push_back(*params.svg);
    }

    if (!outputs.empty()) {
        json p = {{"k_n", params.k_n ? json(*params.k_n) : json(nullptr)},
                  {"sweep", params.sweep ? json{{"lo", params.sweep->lo}, {"hi", params.sweep->hi},
                                                {"steps", params.sweep->steps}}
                                         : json(nullptr)},
                  {"empirical", params.empirical},
                  {"n", params.n},
                  {"replicates", params.replicates},
                  {"sampling", sampling_name(params.sampling)},
                  {"out", path_or_null(params.out)},
                  {"svg", path_or_null(params.svg)}};
        write_manifests(make_manifest("hub", params.model, p, params.seed, outputs), outputs);
    }

    if (params.k_n && !rows.front().prediction.exists) return kAbsentResult;
    return kSuccess;
}

int run_sample(const SampleParams& params, std::ostream& report)
{
    const DegreeModel model = model_from_json(params.model);
    DegreeSequence degrees = sample_degree_sequence(model, params.n, params.seed, params.sampling);
    if (params.hub) degrees = attach_hub(degrees, *params.hub);
    const SampledNetwork network = sample_network(degrees, params.seed);
    {
        auto out = open_output(params.out);
        write_edge_list(out, network);
    }
    const json p = {{"n", params.n},
                    {"sampling", sampling_name(params.sampling)},
                    {"hub", params.hub ? json(*params.hub) : json(nullptr)},
                    {"out", params.out.generic_string()}};
    const std::vector<fs::path> outputs{params.out};
    write_manifests(make_manifest("sample", params.model, p, params.seed, outputs), outputs);

    double realized = 0.0;
    for (double d : network.realized_degrees()) realized += d;
    report << "vertices          " << network.n() << "\n";
    report << "distinct pairs    " << network.edges().size() << "\n";
    report << "two_m expected    " << fmt(network.two_m_expected()) << "\n";
    report << "two_m realized    " << fmt(realized) << "\n";
    return kSuccess;
}

int run_replay(const fs::path& manifest_path, std::ostream& report)
{
    const json manifest = read_json_file(manifest_path);
    try {
        const std::string command = manifest.at("command").get<std::string>();
        const json& model = manifest.at("model");
        const json& p = manifest.at("params");
        const json& seed = manifest.at("base_seed");
        if (command == "density") {
            DensityParams d;
            d.model = model;
            d.z_min = p.at("z_min").get<double>();
            d.z_max = p.at("z_max").get<double>();
            d.points = p.at("points").get<std::size_t>();
            d.eta = p.at("eta").get<double>();
            d.out = p.at("out").get<std::string>();
            d.svg = optional_path(p, "svg");
            return run_density(d, report);
        }
        if (command == "empirical") {
            EmpiricalParams e;
            e.model = model;
            e.n = p.at("n").get<std::size_t>();
            e.replicates = p.at("replicates").get<std::size_t>();
            e.bins = p.at("bins").get<std::size_t>();
            e.seed = seed.get<std::uint64_t>();
            e.kind = parse_matrix_kind(p.at("kind").get<std::string>());
            e.sampling = parse_sampling(p.at("sampling").get<std::string>());
            e.out = p.at("out").get<std::string>();
            e.eigenvalues_out = optional_path(p, "eigenvalues_out");
            e.svg = optional_path(p, "svg");
            return run_empirical(e, report);
        }
        if (command == "leading") {
            LeadingParams l;
            l.model = model;
            l.empirical = p.at("empirical").get<bool>();
            l.n = p.at("n").get<std::size_t>();
            l.replicates = p.at("replicates").get<std::size_t>();
            l.seed = seed.get<std::uint64_t>();
            l.sampling = parse_sampling(p.at("sampling").get<std::string>());
            l.out = optional_path(p, "out");
            return run_leading(l, report);
        }
        if (command == "hub") {
            HubParams h;
            h.model = model;
            if (!p.at("k_n").is_null()) h.k_n = p.at("k_n").get<double>();
            if (!p.at("sweep").is_null()) {
                const json& s = p.at("sweep");
                h.sweep = HubSweep{s.at("lo").get<double>(), s.at("hi").get<double>(), s.at("steps").get<std::size_t>()};
            }
            h.empirical = p.at("empirical").get<bool>();
            h.n = p.at("n").get<std::size_t>();
            h.replicates = p.at("replicates").get<std::size_t>();
            h.seed = seed.get<std::uint64_t>();
            h.sampling = parse_sampling(p.at("sampling").get<std::string>());
            h.out = optional_path(p, "out");
            h.svg = optional_path(p, "svg");
            return run_hub(h, report);
        }
        if (command == "sample") {
            SampleParams s;
            s.model = model;
            s.n = p.at("n").get<std::size_t>();
            s.seed = seed.get<std::uint64_t>();
            s.sampling = parse_sampling(p.at("sampling").get<std::string>());
            if (!p.at("hub").is_null()) s.hub = p.at("hub").get<double>();
            s.out = p.at("out").get<std::string>();
            return run_sample(s, report);
        }
        throw SpectrumError(ErrorKind::InvalidArgument, "unknown command '" + command + "' in manifest");
    } catch (const nlohmann::json::exception& e) {
        throw SpectrumError(ErrorKind::InvalidArgument, std::string("malformed manifest: ") + e.what());
    }
}

}  // namespace netspec::cli
