#include "netspec/commands.hpp"
#include "netspec/error.hpp"
#include "netspec/model_io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace netspec;
using namespace netspec::cli;

namespace {

void add_model(CLI::App* sub, std::string& path)
{
    sub->add_option("model", path, "Degree model JSON file")->required()->check(CLI::ExistingFile);
}

void add_sampling(CLI::App* sub, std::string& name)
{
    sub->add_option("--sampling", name, "Degree sampling: iid or systematic")
        ->check(CLI::IsMember({"iid", "systematic"}));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modularity and adjacency spectra of random networks with arbitrary degree distributions"};
    app.set_version_flag("--version", std::string(NETSPEC_VERSION));
    app.require_subcommand(1);

    std::string model_path;
    std::string sampling;
    std::string kind = "modularity";

    DensityParams density;
    std::string density_out;
    std::string density_svg;
    auto* cmd_density = app.add_subcommand("density", "Analytic spectral density on a grid");
    add_model(cmd_density, model_path);
    cmd_density->add_option("--zmin", density.z_min, "Lower end of the grid")->capture_default_str();
    cmd_density->add_option("--zmax", density.z_max, "Upper end of the grid")->capture_default_str();
    cmd_density->add_option("--points", density.points, "Grid points (at least 2)")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    cmd_density->add_option("--eta", density.eta, "Imaginary offset; default scales with the grid step")
        ->check(CLI::PositiveNumber);
    cmd_density->add_option("--out", density_out, "CSV output (z,rho)")->required();
    cmd_density->add_option("--svg", density_svg, "Optional SVG plot");

    EmpiricalParams empirical;
    std::string empirical_out;
    std::string empirical_eigs;
    std::string empirical_svg;
    auto* cmd_empirical = app.add_subcommand("empirical", "Ensemble eigenvalue histogram of sampled networks");
    add_model(cmd_empirical, model_path);
    cmd_empirical->add_option("--n", empirical.n, "Vertices per network")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_empirical->add_option("--reps", empirical.replicates, "Number of networks")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_empirical->add_option("--bins", empirical.bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);
    cmd_empirical->add_option("--seed", empirical.seed, "Base seed")->capture_default_str();
    cmd_empirical->add_option("--kind", kind, "Matrix: modularity or adjacency")
        ->capture_default_str()
        ->check(CLI::IsMember({"modularity", "adjacency"}));
    add_sampling(cmd_empirical, sampling);
    cmd_empirical->add_option("--out", empirical_out, "Histogram CSV (bin_lo,bin_hi,density)")->required();
    cmd_empirical->add_option("--eigenvalues", empirical_eigs, "Optional CSV of all pooled eigenvalues");
    cmd_empirical->add_option("--svg", empirical_svg, "Optional SVG overlay of histogram and analytic curve");

    LeadingParams leading;
    std::string leading_out;
    auto* cmd_leading = app.add_subcommand("leading", "Leading adjacency eigenvalue: exact root, approximation, ensemble");
    add_model(cmd_leading, model_path);
    cmd_leading->add_flag("--empirical", leading.empirical, "Also measure sampled networks");
    cmd_leading->add_option("--n", leading.n, "Vertices per network")->capture_default_str()->check(CLI::PositiveNumber);
    cmd_leading->add_option("--reps", leading.replicates, "Number of networks")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_leading->add_option("--seed", leading.seed, "Base seed")->capture_default_str();
    add_sampling(cmd_leading, sampling);
    cmd_leading->add_option("--out", leading_out, "Optional CSV of the report");

    HubParams hub;
    double hub_kn = 0.0;
    std::string hub_sweep;
    std::string hub_out;
    std::string hub_svg;
    auto* cmd_hub = app.add_subcommand("hub", "Eigenvalue and eigenvector localization around one added hub");
    add_model(cmd_hub, model_path);
    auto* kn_opt = cmd_hub->add_option("--kn", hub_kn, "Expected hub degree")->check(CLI::PositiveNumber);
    auto* sweep_opt = cmd_hub->add_option("--sweep", hub_sweep, "Sweep hub degrees, lo:hi:steps");
    kn_opt->excludes(sweep_opt);
    cmd_hub->add_flag("--empirical", hub.empirical, "Overlay ensemble measurements");
    cmd_hub->add_option("--n", hub.n, "Vertices per network, hub excluded")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_hub->add_option("--reps", hub.replicates, "Number of networks")->capture_default_str()->check(CLI::PositiveNumber);
    cmd_hub->add_option("--seed", hub.seed, "Base seed")->capture_default_str();
    add_sampling(cmd_hub, sampling);
    cmd_hub->add_option("--out", hub_out, "CSV output");
    cmd_hub->add_option("--svg", hub_svg, "Optional SVG plot of a sweep");

    SampleParams sample;
    double sample_hub = 0.0;
    std::string sample_out;
    auto* cmd_sample = app.add_subcommand("sample", "Sample one network and write its edge list");
    add_model(cmd_sample, model_path);
    cmd_sample->add_option("--n", sample.n, "Vertices")->capture_default_str()->check(CLI::PositiveNumber);
    cmd_sample->add_option("--seed", sample.seed, "Seed")->capture_default_str();
    add_sampling(cmd_sample, sampling);
    auto* sample_hub_opt = cmd_sample->add_option("--hub", sample_hub, "Append a hub of this expected degree")
                               ->check(CLI::PositiveNumber);
    cmd_sample->add_option("--out", sample_out, "Edge list output")->required();

    std::string manifest_path;
    auto* cmd_replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    cmd_replay->add_option("manifest", manifest_path, "Manifest JSON file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kSuccess : kUsage;
    }

    try {
        if (*cmd_replay) return run_replay(manifest_path, std::cout);

        const nlohmann::json model = read_json_file(model_path);
        if (*cmd_density) {
            density.model = model;
            density.out = density_out;
            if (!density_svg.empty()) density.svg = density_svg;
            return run_density(density, std::cout);
        }
        if (*cmd_empirical) {
            empirical.model = model;
            empirical.kind = parse_matrix_kind(kind);
            if (!sampling.empty()) empirical.sampling = parse_sampling(sampling);
            empirical.out = empirical_out;
            if (!empirical_eigs.empty()) empirical.eigenvalues_out = empirical_eigs;
            if (!empirical_svg.empty()) empirical.svg = empirical_svg;
            return run_empirical(empirical, std::cout);
        }
        if (*cmd_leading) {
            leading.model = model;
            if (!sampling.empty()) leading.sampling = parse_sampling(sampling);
            if (!leading_out.empty()) leading.out = leading_out;
            return run_leading(leading, std::cout);
        }
        if (*cmd_hub) {
            hub.model = model;
            if (*kn_opt) hub.k_n = hub_kn;
            if (*sweep_opt) hub.sweep = parse_sweep(hub_sweep);
            if (!sampling.empty()) hub.sampling = parse_sampling(sampling);
            if (!hub_out.empty()) hub.out = hub_out;
            if (!hub_svg.empty()) hub.svg = hub_svg;
            return run_hub(hub, std::cout);
        }
        if (*cmd_sample) {
            sample.model = model;
            if (!sampling.empty()) sample.sampling = parse_sampling(sampling);
            if (*sample_hub_opt) sample.hub = sample_hub;
            sample.out = sample_out;
            return run_sample(sample, std::cout);
        }
    } catch (const SpectrumError& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericFailure;
    }
    return kUsage;
}
