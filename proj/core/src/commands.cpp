#include "nonequibath/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "nonequibath/closedform.hpp"
#include "nonequibath/errors.hpp"
#include "nonequibath/flux.hpp"
#include "nonequibath/io.hpp"
#include "nonequibath/kinetics.hpp"

namespace nonequibath {

namespace {

void emit_header(std::ostream& out, std::string_view command, double tol) {
    out << "# nonequibath " << command << '\n';
    out << "# schema_version,1\n";
    out << "# tol," << format_double(tol) << '\n';
}

std::string format_state(const Eigen::VectorXd& rho) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < rho.size(); ++i) {
        if (i) s += ", ";
        s += format_double(rho(i));
    }
    return s + ")";
}

// Closed-form enrichment of the stationary report; only meaningful for
// 3-level systems. Returns false when the parameters cannot be extracted
// (vacuum occupation, disconnected couplings, ...).
bool emit_closedform_lines(std::ostream& data, std::ostream& log, const RunConfig& config,
                           const StateVector& rho) {
    ThreeLevelParams params{};
    std::array<double, 3> unnormalized{};
    try {
        params = ThreeLevelParams::from(config.system, config.field);
        unnormalized = stationary_3level(params);
    } catch (const Error&) {
        data << "# closedform,unavailable\n";
        return false;
    }

    const double z = unnormalized[0] + unnormalized[1] + unnormalized[2];
    double max_dev = 0.0;
    data << "# closedform_rho";
    for (int i = 0; i < 3; ++i) {
        const double normalized = unnormalized[static_cast<std::size_t>(i)] / z;
        data << ',' << format_double(normalized);
        max_dev = std::max(max_dev, std::fabs(normalized - rho[i]) / rho[i]);
    }
    data << '\n';
    data << "# closedform_max_rel_dev," << format_double(max_dev) << '\n';
    log << "closed form vs kernel: max relative deviation " << format_double(max_dev) << '\n';

    if (params.d12 == 0.0) {
        const double predicted = double_einstein_quotient(params.beta2, params.beta3);
        const double observed = rho[1] / rho[0];
        data << "# double_einstein,predicted," << format_double(predicted) << ",observed,"
             << format_double(observed) << '\n';
        log << "double einstein quotient: predicted " << format_double(predicted)
            << ", observed " << format_double(observed) << '\n';
    }
    return true;
}

void write_data(const std::optional<std::filesystem::path>& out_path, const std::string& bytes) {
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + out_path->string());
        out << bytes;
        if (!out) throw ConfigError("failed writing output file: " + out_path->string());
    } else {
        std::cout << bytes;
        std::cout.flush();
    }
}

// Runs fn(0..count-1) on a few threads; rethrows the first failure. Every
// index writes only its own slot, so results are ordered regardless of the
// schedule.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    if (count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers =
        std::min(count, static_cast<std::size_t>(std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

void cmd_stationary(const RunConfig& config, std::ostream& data, std::ostream& log) {
    const double tol = config.numerics.tol;
    const Generator gen = build_generator(config.system, config.field);
    const StateVector rho = stationary_state(gen);
    const auto residuals = detailed_balance_residuals(gen, rho);

    emit_header(data, "stationary", tol);
    data << "level,energy,rho\n";
    for (Eigen::Index i = 0; i < rho.size(); ++i)
        data << i << ',' << format_double(config.system.energy(static_cast<std::size_t>(i)))
             << ',' << format_double(rho[i]) << '\n';

    double rate_scale = 0.0;
    for (const LineRates& lr : gen.lines()) rate_scale = std::max({rate_scale, lr.down, lr.up});
    double max_residual = 0.0;
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        const LineRates& lr = gen.lines()[k];
        const LineResidual& r = residuals[k];
        max_residual = std::max(max_residual, std::fabs(r.residual));
        data << "# line," << r.line.lower << ',' << r.line.upper << ",omega,"
             << format_double(r.line.omega) << ",rate_down," << format_double(lr.down)
             << ",rate_up," << format_double(lr.up) << ",residual,"
             << format_double(r.residual) << '\n';
    }
    const bool balanced = max_residual <= tol * rate_scale;
    data << "# max_abs_residual," << format_double(max_residual) << '\n';
    data << "# detailed_balance," << (balanced ? "satisfied" : "violated") << '\n';

    log << "stationary: n=" << gen.size() << ", " << gen.lines().size() << " lines\n";
    log << "rho* = " << format_state(rho.values()) << '\n';
    log << "detailed balance: " << (balanced ? "satisfied" : "violated") << " (max |residual| = "
        << format_double(max_residual) << ")\n";

    if (gen.size() == 2 && !gen.lines().empty()) {
        const FieldEntry& entry = config.field.at(gen.lines().front().line.omega);
        const double predicted = einstein_quotient(entry.occupation);
        const double observed = rho[0] / rho[1];
        data << "# einstein,omega," << format_double(gen.lines().front().line.omega)
             << ",predicted," << format_double(predicted) << ",observed,"
             << format_double(observed) << '\n';
        log << "einstein quotient: predicted " << format_double(predicted) << ", observed "
            << format_double(observed) << '\n';
    }
    if (gen.size() == 3) emit_closedform_lines(data, log, config, rho);
}

void cmd_evolve(const RunConfig& config, std::ostream& data, std::ostream& log) {
    const Generator gen = build_generator(config.system, config.field);

    double dt = 0.0;
    if (config.numerics.dt) {
        dt = *config.numerics.dt;
    } else {
        const double max_diag = gen.max_diagonal_rate();
        if (max_diag <= 0.0)
            throw ConfigError("generator has no dynamics; numerics.dt must be given explicitly");
        dt = 0.05 / max_diag;
    }
    double t_final = 0.0;
    if (config.numerics.t_final) {
        t_final = *config.numerics.t_final;
    } else {
        const double min_rate = gen.min_positive_rate();
        if (min_rate <= 0.0)
            throw ConfigError(
                "generator has no dynamics; numerics.t_final must be given explicitly");
        t_final = 50.0 / min_rate;
    }

    const StateVector rho0 = config.initial ? StateVector(*config.initial)
                                            : StateVector::uniform(gen.size());
    const auto trajectory = evolve(gen, rho0, t_final, dt);

    data << "# nonequibath evolve\n";
    data << "# schema_version,1\n";
    data << "# dt," << format_double(dt) << '\n';
    data << "# t_final," << format_double(t_final) << '\n';
    data << "# tol," << format_double(config.numerics.tol) << '\n';
    write_trajectory_csv(data, trajectory);

    log << "evolve: " << trajectory.size() << " samples, dt = " << format_double(dt)
        << ", t_final = " << format_double(t_final) << '\n';
    log << "final state = " << format_state(trajectory.back().state.clamped()) << '\n';
}

void cmd_flux(const RunConfig& config, std::ostream& data, std::ostream& log) {
    const double tol = config.numerics.tol;
    const Generator gen = build_generator(config.system, config.field);
    const StateVector rho = stationary_state(gen);
    const LineFlux fluxes = line_fluxes(config.system, config.field, rho);

    emit_header(data, "flux", tol);
    data << "# state,stationary\n";
    write_flux_csv(data, fluxes);

    log << "flux at stationary state: total = " << format_double(total_photon_rate(fluxes))
        << ", energy rate = " << format_double(energy_rate(fluxes)) << '\n';

    if (config.system.size() == 3) {
        try {
            const ThreeLevelParams p = ThreeLevelParams::from(config.system, config.field);
            const double s = p.beta1 + p.beta3 - p.beta2;
            const Regime regime = classify_regime(p.beta1, p.beta2, p.beta3, tol);
            data << "# regime," << to_string(regime) << ",s," << format_double(s) << '\n';
            log << "regime: " << to_string(regime) << " (s = " << format_double(s) << ")\n";
        } catch (const Error&) {
            data << "# regime,unavailable\n";
        }
    }
}

void cmd_sweep(const RunConfig& config, std::ostream& data, std::ostream& log) {
    if (!config.sweep) throw ConfigError("sweep: config has no \"sweep\" section");
    if (config.system.size() != 3)
        throw ConfigError("sweep: requires a 3-level system (the regime variable s is "
                          "defined for three Bohr lines)");
    const SweepConfig& sweep = *config.sweep;
    const SweepParam param = parse_sweep_param(sweep.param);
    const double tol = config.numerics.tol;

    struct Row {
        double value;
        double s;
        Regime regime;
        double total;
        Eigen::VectorXd rho;
    };
    const auto count = static_cast<std::size_t>(sweep.steps);
    std::vector<Row> rows(count);

    parallel_for(count, [&](std::size_t k) {
        const double value =
            count == 1 ? sweep.from
                       : sweep.from + (sweep.to - sweep.from) *
                                          (static_cast<double>(k) /
                                           static_cast<double>(count - 1));
        const FieldSpec field = param.kind == SweepParam::Kind::beta0
                                    ? config.field.with_beta0(value)
                                    : config.field.with_beta_at(param.omega, value);
        const Generator gen = build_generator(config.system, field);
        const StateVector rho = stationary_state(gen);
        const LineFlux fluxes = line_fluxes(config.system, field, rho);
        const ThreeLevelParams p = ThreeLevelParams::from(config.system, field);
        rows[k] = Row{value, p.beta1 + p.beta3 - p.beta2,
                      classify_regime(p.beta1, p.beta2, p.beta3, tol),
                      total_photon_rate(fluxes), rho.values()};
    });

    emit_header(data, "sweep", tol);
    data << "# param," << sweep.param << '\n';
    data << "# from," << format_double(sweep.from) << '\n';
    data << "# to," << format_double(sweep.to) << '\n';
    data << "# steps," << sweep.steps << '\n';
    data << "value,s,regime,total_rate,rho_0,rho_1,rho_2\n";
    for (const Row& row : rows) {
        data << format_double(row.value) << ',' << format_double(row.s) << ','
             << to_string(row.regime) << ',' << format_double(row.total);
        for (Eigen::Index i = 0; i < row.rho.size(); ++i)
            data << ',' << format_double(row.rho(i));
        data << '\n';
    }

    log << "sweep " << sweep.param << ": " << count << " points\n";
}

int run_command(std::string_view command, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& out_path, std::ostream& log) {
    try {
        const RunConfig config = load_config(config_path);
        std::ostringstream data;
        if (command == "stationary") {
            cmd_stationary(config, data, log);
        } else if (command == "evolve") {
            cmd_evolve(config, data, log);
        } else if (command == "flux") {
            cmd_flux(config, data, log);
        } else if (command == "sweep") {
            cmd_sweep(config, data, log);
        } else {
            log << "error: unknown command \"" << command << "\"\n";
            return 2;
        }
        write_data(out_path, data.str());
        return 0;
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const ModelError& e) {
        log << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericsError& e) {
        log << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace nonequibath
