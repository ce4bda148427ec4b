#include "netspec/model_io.hpp"

#include "netspec/error.hpp"

#include <algorithm>
#include <fstream>

namespace netspec {

namespace {

ContinuousKind parse_kind(const std::string& name)
{
    if (name == "uniform") return ContinuousKind::Uniform;
    if (name == "tabulated") return ContinuousKind::Tabulated;
    if (name == "powerlaw") return ContinuousKind::PowerLaw;
    throw SpectrumError(ErrorKind::InvalidArgument, "unknown continuous kind '" + name + "'");
}

std::string kind_name(ContinuousKind kind)
{
    switch (kind) {
    case ContinuousKind::Uniform: return "uniform";
    case ContinuousKind::Tabulated: return "tabulated";
    case ContinuousKind::PowerLaw: return "powerlaw";
    }
    return "uniform";
}

}  // namespace

DegreeModel model_from_json(const nlohmann::json& spec)
{
    try {
        if (!spec.is_object()) throw SpectrumError(ErrorKind::InvalidArgument, "model description must be a JSON object");
        std::vector<Atom> atoms;
        if (spec.contains("atoms")) {
            for (const auto& a : spec.at("atoms")) {
                if (!a.is_array() || a.size() != 2) {
                    throw SpectrumError(ErrorKind::InvalidArgument, "each atom must be [degree, weight]");
                }
                atoms.push_back({a[0].get<double>(), a[1].get<double>()});
            }
        }
        if (!spec.contains("continuous")) return DegreeModel::from_atoms(std::move(atoms));

        const auto& c = spec.at("continuous");
        ContinuousSpec cont;
        cont.kind = parse_kind(c.value("kind", std::string("uniform")));
        cont.nodes = c.value("nodes", DegreeModel::kDefaultNodes);
        if (cont.kind == ContinuousKind::Tabulated) {
            for (const auto& p : c.at("table")) cont.table.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            if (cont.table.empty()) throw SpectrumError(ErrorKind::InvalidArgument, "empty density table");
            std::sort(cont.table.begin(), cont.table.end());
            cont.lo = c.value("lo", cont.table.front().first);
            cont.hi = c.value("hi", cont.table.back().first);
        } else {
            cont.lo = c.at("lo").get<double>();
            cont.hi = c.at("hi").get<double>();
        }
        if (cont.kind == ContinuousKind::PowerLaw) cont.exponent = c.at("exponent").get<double>();
        return DegreeModel::with_continuous(std::move(atoms), std::move(cont));
    } catch (const nlohmann::json::exception& e) {
        throw SpectrumError(ErrorKind::InvalidArgument, std::string("malformed model description: ") + e.what());
    }
}

nlohmann::json model_to_json(const DegreeModel& model)
{
    nlohmann::json out = nlohmann::json::object();
    if (!model.discrete_atoms().empty()) {
        auto atoms = nlohmann::json::array();
        for (const Atom& a : model.discrete_atoms()) atoms.push_back({a.degree, a.weight});
        out["atoms"] = atoms;
    }
    if (const auto& c = model.continuous()) {
        nlohmann::json cont = {{"kind", kind_name(c->kind)}, {"lo", c->lo}, {"hi", c->hi}, {"nodes", c->nodes}};
        if (c->kind == ContinuousKind::Tabulated) {
            auto table = nlohmann::json::array();
            for (const auto& [k, f] : c->table) table.push_back({k, f});
            cont["table"] = table;
        }
        if (c->kind == ContinuousKind::PowerLaw) cont["exponent"] = c->exponent;
        out["continuous"] = cont;
    }
    return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw SpectrumError(ErrorKind::Io, "cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SpectrumError(ErrorKind::InvalidArgument, path.string() + ": " + e.what());
    }
}

DegreeModel load_model(const std::filesystem::path& path)
{
    return model_from_json(read_json_file(path));
}

}  // namespace netspec
