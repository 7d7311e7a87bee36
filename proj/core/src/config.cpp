#include "nonequibath/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nonequibath/errors.hpp"
#include "nonequibath/kinetics.hpp"

namespace nonequibath {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& what) {
    throw ConfigError(std::string(source) + ": " + what);
}

const json& member(std::string_view source, const json& obj, const std::string& path,
                   const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(source, path + ": missing required key \"" + key + "\"");
    return *it;
}

void reject_unknown_keys(std::string_view source, const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) fail(source, path + ": unknown key \"" + key + "\"");
    }
}

double number(std::string_view source, const json& j, const std::string& path) {
    if (!j.is_number()) fail(source, path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(source, path + ": must be finite");
    return v;
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

LevelSystem parse_system(std::string_view source, const json& j) {
    if (!j.is_object()) fail(source, "system: expected an object");
    reject_unknown_keys(source, j, "system", {"energies", "dipole"});

    const json& je = member(source, j, "system", "energies");
    if (!je.is_array() || je.size() < 2)
        fail(source, "system.energies: expected an array of at least 2 numbers");
    std::vector<double> energies;
    for (std::size_t i = 0; i < je.size(); ++i)
        energies.push_back(number(source, je[i], "system.energies[" + std::to_string(i) + "]"));

    const json& jd = member(source, j, "system", "dipole");
    const auto n = energies.size();
    if (!jd.is_array() || jd.size() != n)
        fail(source, "system.dipole: expected an array of " + std::to_string(n) + " rows");
    Eigen::MatrixXd dipole(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row = "system.dipole[" + std::to_string(i) + "]";
        if (!jd[i].is_array() || jd[i].size() != n)
            fail(source, row + ": expected " + std::to_string(n) + " numbers");
        for (std::size_t k = 0; k < n; ++k)
            dipole(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                number(source, jd[i][k], row + "[" + std::to_string(k) + "]");
    }

    try {
        return LevelSystem(std::move(energies), std::move(dipole));
    } catch (const DomainError& e) {
        fail(source, std::string("system: ") + e.what());
    }
}

FieldSpec parse_field(std::string_view source, const json& j) {
    if (!j.is_object()) fail(source, "field: expected an object");
    reject_unknown_keys(source, j, "field", {"mode", "beta0", "entries"});

    const json& jm = member(source, j, "field", "mode");
    if (!jm.is_string()) fail(source, "field.mode: expected a string");
    const std::string mode = jm.get<std::string>();
    if (mode != "gibbs" && mode != "table-beta" && mode != "table-N")
        fail(source, "field.mode: expected \"gibbs\", \"table-beta\" or \"table-N\"");
    if (mode != "gibbs" && j.contains("beta0"))
        fail(source, "field.beta0: only valid in gibbs mode");

    const json& jl = member(source, j, "field", "entries");
    if (!jl.is_array() || jl.empty()) fail(source, "field.entries: expected a non-empty array");

    try {
        if (mode == "gibbs") {
            const double beta0 =
                number(source, member(source, j, "field", "beta0"), "field.beta0");
            std::vector<IntensityEntry> entries;
            for (std::size_t i = 0; i < jl.size(); ++i) {
                const std::string path = "field.entries[" + std::to_string(i) + "]";
                if (!jl[i].is_object()) fail(source, path + ": expected an object");
                reject_unknown_keys(source, jl[i], path, {"omega", "I"});
                entries.push_back({number(source, member(source, jl[i], path, "omega"),
                                          path + ".omega"),
                                   number(source, member(source, jl[i], path, "I"),
                                          path + ".I")});
            }
            return FieldSpec::from_gibbs(beta0, entries);
        }
        if (mode == "table-beta") {
            std::vector<BetaEntry> entries;
            for (std::size_t i = 0; i < jl.size(); ++i) {
                const std::string path = "field.entries[" + std::to_string(i) + "]";
                if (!jl[i].is_object()) fail(source, path + ": expected an object");
                reject_unknown_keys(source, jl[i], path, {"omega", "I", "beta"});
                entries.push_back(
                    {number(source, member(source, jl[i], path, "omega"), path + ".omega"),
                     number(source, member(source, jl[i], path, "I"), path + ".I"),
                     number(source, member(source, jl[i], path, "beta"), path + ".beta")});
            }
            return FieldSpec::from_betas(entries);
        }
        std::vector<FieldEntry> entries;
        for (std::size_t i = 0; i < jl.size(); ++i) {
            const std::string path = "field.entries[" + std::to_string(i) + "]";
            if (!jl[i].is_object()) fail(source, path + ": expected an object");
            reject_unknown_keys(source, jl[i], path, {"omega", "I", "N"});
            entries.push_back(
                {number(source, member(source, jl[i], path, "omega"), path + ".omega"),
                 number(source, member(source, jl[i], path, "I"), path + ".I"),
                 number(source, member(source, jl[i], path, "N"), path + ".N")});
        }
        return FieldSpec::from_occupations(std::move(entries));
    } catch (const DomainError& e) {
        fail(source, std::string("field: ") + e.what());
    }
}

NumericsConfig parse_numerics(std::string_view source, const json& j) {
    NumericsConfig numerics;
    if (!j.is_object()) fail(source, "numerics: expected an object");
    reject_unknown_keys(source, j, "numerics", {"dt", "t_final", "tol"});
    if (j.contains("dt")) {
        numerics.dt = number(source, j["dt"], "numerics.dt");
        if (!(*numerics.dt > 0.0)) fail(source, "numerics.dt: must be > 0");
    }
    if (j.contains("t_final")) {
        numerics.t_final = number(source, j["t_final"], "numerics.t_final");
        if (!(*numerics.t_final >= 0.0)) fail(source, "numerics.t_final: must be >= 0");
    }
    if (j.contains("tol")) {
        numerics.tol = number(source, j["tol"], "numerics.tol");
        if (!(numerics.tol > 0.0)) fail(source, "numerics.tol: must be > 0");
    }
    return numerics;
}

SweepConfig parse_sweep(std::string_view source, const json& j) {
    SweepConfig sweep;
    if (!j.is_object()) fail(source, "sweep: expected an object");
    reject_unknown_keys(source, j, "sweep", {"param", "from", "to", "steps"});
    const json& jp = member(source, j, "sweep", "param");
    if (!jp.is_string()) fail(source, "sweep.param: expected a string");
    sweep.param = jp.get<std::string>();
    try {
        parse_sweep_param(sweep.param);
    } catch (const ConfigError& e) {
        fail(source, e.what());
    }
    sweep.from = number(source, member(source, j, "sweep", "from"), "sweep.from");
    sweep.to = number(source, member(source, j, "sweep", "to"), "sweep.to");
    const json& js = member(source, j, "sweep", "steps");
    if (!js.is_number_integer() || js.get<long>() < 0)
        fail(source, "sweep.steps: expected a non-negative integer");
    sweep.steps = static_cast<int>(js.get<long>());
    if (sweep.steps > 0 && (!(sweep.from > 0.0) || !(sweep.to > 0.0)))
        fail(source, "sweep: beta values must be > 0 over the whole range");
    return sweep;
}

}  // namespace

SweepParam parse_sweep_param(const std::string& param) {
    if (param == "beta0") return {SweepParam::Kind::beta0};
    if (param.rfind("beta@", 0) == 0) {
        const std::string rest = param.substr(5);
        double omega = 0.0;
        const auto* begin = rest.data();
        const auto* end = rest.data() + rest.size();
        auto [ptr, ec] = std::from_chars(begin, end, omega);
        if (ec == std::errc() && ptr == end && omega > 0.0)
            return {SweepParam::Kind::beta_at, omega};
    }
    throw ConfigError("sweep.param: expected \"beta0\" or \"beta@<omega>\" with omega > 0, got \"" +
                      param + "\"");
}

RunConfig parse_config(const std::string& text, std::string_view source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source, "line " + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    }
    if (!root.is_object()) fail(source, "top level: expected an object");
    reject_unknown_keys(source, root, "top level",
                        {"schema_version", "system", "field", "numerics", "sweep", "initial"});

    const json& jv = member(source, root, "top level", "schema_version");
    if (!jv.is_number_integer() || jv.get<long>() != 1)
        fail(source, "schema_version: this reader understands version 1 only");

    LevelSystem system = parse_system(source, member(source, root, "top level", "system"));
    FieldSpec field = parse_field(source, member(source, root, "top level", "field"));

    NumericsConfig numerics;
    if (root.contains("numerics")) numerics = parse_numerics(source, root["numerics"]);

    std::optional<SweepConfig> sweep;
    if (root.contains("sweep")) sweep = parse_sweep(source, root["sweep"]);

    std::optional<Eigen::VectorXd> initial;
    if (root.contains("initial")) {
        const json& ji = root["initial"];
        if (!ji.is_array() || ji.size() != system.size())
            fail(source, "initial: expected an array of " + std::to_string(system.size()) +
                             " probabilities");
        Eigen::VectorXd v(static_cast<Eigen::Index>(ji.size()));
        for (std::size_t i = 0; i < ji.size(); ++i)
            v(static_cast<Eigen::Index>(i)) =
                number(source, ji[i], "initial[" + std::to_string(i) + "]");
        try {
            StateVector check(v);  // validates non-negativity and normalization
        } catch (const DomainError& e) {
            fail(source, std::string("initial: ") + e.what());
        }
        initial = std::move(v);
    }

    return RunConfig{std::move(system), std::move(field), numerics, std::move(sweep),
                     std::move(initial)};
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

}  // namespace nonequibath
