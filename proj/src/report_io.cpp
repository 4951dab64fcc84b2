#include "crossmode/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace crossmode {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

const json& require(const json& node, const std::string& key, const std::string& path) {
    if (!node.contains(key)) fail(path + key, "missing required field");
    return node.at(key);
}

double as_number(const json& node, const std::string& path) {
    if (!node.is_number()) fail(path, "expected a number");
    return node.get<double>();
}

long as_integer(const json& node, const std::string& path) {
    if (!node.is_number_integer()) fail(path, "expected an integer");
    return node.get<long>();
}

std::string as_string(const json& node, const std::string& path) {
    if (!node.is_string()) fail(path, "expected a string");
    return node.get<std::string>();
}

Eigen::Vector3d as_vector3(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 3) fail(path, "expected an array of 3 numbers");
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) out[i] = as_number(node[i], path + "[" + std::to_string(i) + "]");
    return out;
}

PhasePattern parse_phases(const json& node, const std::string& path) {
    const std::string kind = as_string(require(node, "pattern", path + "."), path + ".pattern");
    if (kind == "equal") {
        return PhasePattern::equal(node.contains("value") ? as_number(node["value"], path + ".value")
                                                          : 0.0);
    }
    if (kind == "pi-alternating") return PhasePattern::pi_alternating();
    if (kind == "explicit") {
        const json& values = require(node, "values", path + ".");
        if (!values.is_array()) fail(path + ".values", "expected an array");
        std::vector<double> out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.push_back(as_number(values[i], path + ".values[" + std::to_string(i) + "]"));
        }
        return PhasePattern::explicit_list(std::move(out));
    }
    if (kind == "random") {
        return PhasePattern::random(node.contains("samples")
                                        ? as_integer(node["samples"], path + ".samples")
                                        : 10000);
    }
    fail(path + ".pattern", "expected equal, pi-alternating, explicit or random");
}

AlgebraPolicy parse_algebra(const json& node, const std::string& path) {
    const std::string variant = as_string(require(node, "variant", path + "."), path + ".variant");
    if (variant == "canonical") return AlgebraPolicy::canonical();
    if (variant == "cross-unit") return AlgebraPolicy::cross_unit();
    if (variant == "cross-phase") {
        const double sign =
            node.contains("sign") ? as_number(node["sign"], path + ".sign") : 1.0;
        if (sign != 1.0 && sign != -1.0) fail(path + ".sign", "expected +1 or -1");
        return AlgebraPolicy::cross_phase(sign);
    }
    fail(path + ".variant", "expected canonical, cross-unit or cross-phase");
}

std::vector<Occupation> parse_occupations(const json& node, const std::string& path) {
    if (!node.is_array()) fail(path, "expected an array of [particles, antiparticles] pairs");
    std::vector<Occupation> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string entry = path + "[" + std::to_string(i) + "]";
        if (!node[i].is_array() || node[i].size() != 2) fail(entry, "expected a pair of integers");
        Occupation occ;
        occ.particles = as_integer(node[i][0], entry + "[0]");
        occ.antiparticles = as_integer(node[i][1], entry + "[1]");
        if (occ.particles < 0) fail(entry + "[0]", "occupations must be >= 0");
        if (occ.antiparticles < 0) fail(entry + "[1]", "occupations must be >= 0");
        out.push_back(occ);
    }
    return out;
}

std::vector<ModeLabel> parse_modes(const json& node, Species species, const std::string& path) {
    if (!node.is_array()) fail(path, "expected an array of mode objects");
    std::vector<ModeLabel> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string entry = path + "[" + std::to_string(i) + "]";
        const json& item = node[i];
        if (!item.is_object()) fail(entry, "expected an object");
        const std::string id = item.contains("id") ? as_string(item["id"], entry + ".id")
                                                   : "mode" + std::to_string(i);
        const Eigen::Vector3d k = as_vector3(require(item, "k", entry + "."), entry + ".k");
        const double mass = item.contains("mass") ? as_number(item["mass"], entry + ".mass") : 0.0;
        const double phase =
            item.contains("phase") ? as_number(item["phase"], entry + ".phase") : 0.0;
        int index = species == Species::ScalarBoson ? 0 : 1;
        if (item.contains("index")) index = static_cast<int>(as_integer(item["index"], entry + ".index"));
        try {
            out.push_back(ModeLabel::make(id, species, k, mass, phase, index));
        } catch (const Error& error) {
            fail(entry, error.what());
        }
    }
    return out;
}

json report_to_json(const ObservableReport& report) {
    json pairs = json::array();
    for (const PairContribution& pair : report.pairs) {
        pairs.push_back({{"mode_n", pair.mode_n},
                         {"mode_m", pair.mode_m},
                         {"energy", pair.energy},
                         {"momentum", {pair.momentum.x(), pair.momentum.y(), pair.momentum.z()}},
                         {"number", pair.number},
                         {"charge", pair.charge}});
    }
    return json{{"energy", report.energy},
                {"momentum", {report.momentum.x(), report.momentum.y(), report.momentum.z()}},
                {"particle_number", report.particle_number},
                {"charge", report.charge},
                {"cross_energy", report.cross_energy},
                {"pairs", pairs},
                {"vacuum_terms", to_string(report.vacuum_terms)},
                {"algebra", report.algebra},
                {"contraction", report.contraction},
                {"scenario", report.scenario},
                {"species", report.species},
                {"phase_pattern", report.phase_pattern},
                {"n_modes", report.n_modes},
                {"seed", report.seed}};
}

json manifest_to_json(const RunManifest& manifest) {
    return json{{"config", manifest.config_path},
                {"output_dir", manifest.output_dir},
                {"formats", manifest.formats},
                {"seed", manifest.seed},
                {"tool_version", manifest.tool_version}};
}

std::string csv_row(const ObservableReport& report) {
    std::ostringstream row;
    row << report.scenario << ',' << report.species << ',' << report.n_modes << ','
        << report.phase_pattern << ',' << to_string(report.vacuum_terms) << ','
        << csv_number(report.energy) << ',' << csv_number(report.momentum.x()) << ','
        << csv_number(report.momentum.y()) << ',' << csv_number(report.momentum.z()) << ','
        << csv_number(report.particle_number) << ',' << csv_number(report.charge) << ','
        << csv_number(report.cross_energy) << ',' << report.seed;
    return row.str();
}

std::string manifest_comment(const RunManifest& manifest) {
    return "# manifest: " + manifest_to_json(manifest).dump() + "\n";
}

} // namespace

std::string csv_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& error) {
        throw ConfigError(std::string("config: invalid JSON: ") + error.what());
    }
    if (!document.is_object()) throw ConfigError("config: expected a JSON object");

    ScenarioConfig config;
    config.kind = scenario_kind_from_string(as_string(require(document, "kind", ""), "kind"));

    if (document.contains("species")) {
        config.species = species_from_string(as_string(document["species"], "species"));
    } else {
        switch (config.kind) {
        case ScenarioKind::Dicke: config.species = Species::VectorBoson; break;
        case ScenarioKind::AharonovBohm: config.species = Species::SpinorFermion; break;
        default: config.species = Species::ScalarBoson; break;
        }
    }

    if (document.contains("n_modes")) {
        config.n_modes = static_cast<int>(as_integer(document["n_modes"], "n_modes"));
    } else if (config.kind == ScenarioKind::YoungConventional ||
               config.kind == ScenarioKind::YoungSubwavelength ||
               config.kind == ScenarioKind::AharonovBohm) {
        config.n_modes = 2;
    } else if (document.contains("modes")) {
        config.n_modes = static_cast<int>(document["modes"].size());
    }

    if (document.contains("occupations")) {
        config.occupations = parse_occupations(document["occupations"], "occupations");
    }
    if (document.contains("phases")) {
        if (!document["phases"].is_object()) fail("phases", "expected an object");
        config.phases = parse_phases(document["phases"], "phases");
    }
    if (document.contains("slit_separation")) {
        config.slit_separation = as_number(document["slit_separation"], "slit_separation");
    }
    if (document.contains("wavelength")) {
        config.wavelength = as_number(document["wavelength"], "wavelength");
    }
    if (document.contains("mass")) config.mass = as_number(document["mass"], "mass");
    if (document.contains("flux")) config.flux = as_number(document["flux"], "flux");
    if (document.contains("algebra")) {
        if (!document["algebra"].is_object()) fail("algebra", "expected an object");
        config.algebra = parse_algebra(document["algebra"], "algebra");
    }
    if (document.contains("contraction")) {
        const std::string name = as_string(document["contraction"], "contraction");
        if (name == "orthodox") {
            config.contraction = ContractionVariant::Orthodox;
        } else if (name == "coherent") {
            config.contraction = ContractionVariant::Coherent;
        } else {
            fail("contraction", "expected orthodox or coherent");
        }
    }
    if (document.contains("vacuum")) {
        const std::string name = as_string(document["vacuum"], "vacuum");
        if (name == "include") {
            config.vacuum_terms = VacuumTerms::Include;
        } else if (name == "exclude") {
            config.vacuum_terms = VacuumTerms::Exclude;
        } else {
            fail("vacuum", "expected include or exclude");
        }
    }
    if (document.contains("box")) {
        try {
            config.box = BoxDomain(as_vector3(document["box"], "box"));
        } catch (const DomainError& error) {
            fail("box", error.what());
        }
    }
    if (document.contains("cross_conventions")) {
        const json& node = document["cross_conventions"];
        if (!node.is_object()) fail("cross_conventions", "expected an object");
        if (node.contains("scalar-boson")) {
            config.conventions.scalar_boson = as_number(node["scalar-boson"], "cross_conventions.scalar-boson");
        }
        if (node.contains("vector-boson")) {
            config.conventions.vector_boson = as_number(node["vector-boson"], "cross_conventions.vector-boson");
        }
        if (node.contains("spinor-fermion")) {
            config.conventions.spinor_fermion =
                as_number(node["spinor-fermion"], "cross_conventions.spinor-fermion");
        }
    }
    if (document.contains("seed")) {
        config.seed = static_cast<std::uint64_t>(as_integer(document["seed"], "seed"));
    }
    if (document.contains("modes")) {
        config.explicit_modes = parse_modes(document["modes"], config.species, "modes");
        if (config.kind == ScenarioKind::Custom && !document.contains("phases")) {
            std::vector<double> phases;
            for (const ModeLabel& mode : config.explicit_modes) phases.push_back(mode.phase);
            config.phases = PhasePattern::explicit_list(std::move(phases));
        }
        if (!document.contains("n_modes")) {
            config.n_modes = static_cast<int>(config.explicit_modes.size());
        }
    }

    config.validate();
    return config;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw ConfigError("config: cannot open \"" + path.string() + "\"");
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_scenario_config(buffer.str());
}

std::string report_json(const ScenarioRun& run, const ScenarioConfig& config,
                        const RunManifest& manifest) {
    json document;
    document["manifest"] = manifest_to_json(manifest);
    document["scenario"] = {{"kind", to_string(config.kind)},
                            {"species", to_string(config.species)},
                            {"n_modes", config.n_modes},
                            {"phase_pattern", config.phases.describe()},
                            {"algebra", config.algebra.describe()},
                            {"contraction",
                             config.contraction == ContractionVariant::Orthodox ? "orthodox"
                                                                                : "coherent"},
                            {"vacuum", to_string(config.vacuum_terms)},
                            {"seed", config.seed}};
    document["report"] = report_to_json(run.report);
    if (run.baseline) document["baseline"] = report_to_json(*run.baseline);
    if (run.statistics) {
        document["statistics"] = {
            {"samples", run.statistics->samples},
            {"se_energy", run.statistics->se_energy},
            {"se_momentum",
             {run.statistics->se_momentum.x(), run.statistics->se_momentum.y(),
              run.statistics->se_momentum.z()}},
            {"se_number", run.statistics->se_number},
            {"se_charge", run.statistics->se_charge}};
    }
    return document.dump(2) + "\n";
}

std::string summary_csv(const ObservableReport& report, const RunManifest& manifest) {
    return manifest_comment(manifest) + kCsvColumns + "\n" + csv_row(report) + "\n";
}

std::string sweep_csv(const std::string& variable, const std::vector<double>& values,
                      const std::vector<ObservableReport>& reports, const RunManifest& manifest) {
    if (values.size() != reports.size()) {
        throw DomainError("sweep_csv: one value per report required");
    }
    std::string out = manifest_comment(manifest);
    out += "var,value,";
    out += kCsvColumns;
    out += "\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out += variable + "," + csv_number(values[i]) + "," + csv_row(reports[i]) + "\n";
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path temp = path.string() + ".tmp";
    {
        std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
        if (!stream) throw Error("cannot write \"" + temp.string() + "\"");
        stream << contents;
    }
    std::filesystem::rename(temp, path);
}

} // namespace crossmode
