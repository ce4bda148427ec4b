#pragma once

#include "netspec/degree_model.hpp"
#include "netspec/empirical_eigen.hpp"
#include "netspec/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace netspec::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kNumericFailure = 2,
    kAbsentResult = 3,
};

int exit_code_for(ErrorKind kind);

struct DensityParams {
    nlohmann::json model;
    double z_min = -25.0;
    double z_max = 25.0;
    std::size_t points = 2001;
    std::optional<double> eta;
    fs::path out;
    std::optional<fs::path> svg;
};

struct EmpiricalParams {
    nlohmann::json model;
    std::size_t n = 2000;
    std::size_t replicates = 25;
    std::size_t bins = 60;
    std::uint64_t seed = 1;
    MatrixKind kind = MatrixKind::Modularity;
    DegreeSampling sampling = DegreeSampling::Systematic;
    fs::path out;
    std::optional<fs::path> eigenvalues_out;
    std::optional<fs::path> svg;
};

struct LeadingParams {
    nlohmann::json model;
    bool empirical = false;
    std::size_t n = 2000;
    std::size_t replicates = 25;
    std::uint64_t seed = 1;
    DegreeSampling sampling = DegreeSampling::Systematic;
    std::optional<fs::path> out;
};

struct HubSweep {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 2;
};

HubSweep parse_sweep(const std::string& text);

struct HubParams {
    nlohmann::json model;
    std::optional<double> k_n;
    std::optional<HubSweep> sweep;
    bool empirical = false;
    std::size_t n = 2000;
    std::size_t replicates = 50;
    std::uint64_t seed = 1;
    DegreeSampling sampling = DegreeSampling::Systematic;
    std::optional<fs::path> out;
    std::optional<fs::path> svg;
};

struct SampleParams {
    nlohmann::json model;
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    DegreeSampling sampling = DegreeSampling::Iid;
    std::optional<double> hub;
    fs::path out;
};

/// Each command writes its data files plus a `<file>.manifest.json` sidecar
/// next to every one of them, prints a human-readable report to `report`,
/// and returns an ExitCode. Library errors propagate as SpectrumError.
int run_density(const DensityParams& params, std::ostream& report);
int run_empirical(const EmpiricalParams& params, std::ostream& report);
int run_leading(const LeadingParams& params, std::ostream& report);
int run_hub(const HubParams& params, std::ostream& report);
int run_sample(const SampleParams& params, std::ostream& report);

/// Re-executes the command recorded in a manifest, rewriting its outputs.
int run_replay(const fs::path& manifest, std::ostream& report);

std::string sampling_name(DegreeSampling sampling);
DegreeSampling parse_sampling(const std::string& name);

}  // namespace netspec::cli
