#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "horoxt/checks.hpp"
#include "horoxt/densities.hpp"
#include "horoxt/errors.hpp"
#include "horoxt/montecarlo.hpp"
#include "horoxt/report.hpp"
#include "horoxt/section.hpp"
#include "horoxt/sl2.hpp"
#include "horoxt/version.hpp"

namespace {

horoxt::GroupElement parse_group(const std::string& text) {
    double a = 0, b = 0, c = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &a, &b, &c, &d, &tail) != 4)
        throw std::invalid_argument("--g0 expects four comma-separated reals a,b,c,d");
    return horoxt::GroupElement(a, b, c, d);
}

std::string group_text(const horoxt::GroupElement& g) {
    return horoxt::format_real(g.a) + "," + horoxt::format_real(g.b) + "," +
           horoxt::format_real(g.c) + "," + horoxt::format_real(g.d);
}

std::ostream& open_target(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

nlohmann::ordered_json checks_json(const std::vector<horoxt::CheckResult>& results) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const horoxt::CheckResult& r : results) {
        nlohmann::ordered_json row;
        row["name"] = r.name;
        row["target"] = r.target;
        row["observed"] = r.observed;
        row["tol"] = r.tol;
        row["pass"] = r.pass;
        if (!r.note.empty()) row["note"] = r.note;
        rows.push_back(row);
    }
    return rows;
}

struct DensityArgs {
    std::string name;
    double at = 0.0, from = 0.0, to = 0.0, step = 0.0;
    double ell = 0.0, t = 0.0;
    bool has_at = false, has_grid = false;
    std::string out, format = "csv";
};

int run_density(const DensityArgs& args) {
    horoxt::DensitySpec spec;
    if (args.name == "psi") spec.kind = horoxt::DensitySpec::Kind::psi;
    else if (args.name == "rho") spec.kind = horoxt::DensitySpec::Kind::rho;
    else if (args.name == "omega") spec.kind = horoxt::DensitySpec::Kind::omega;
    else if (args.name == "psi_rt") spec.kind = horoxt::DensitySpec::Kind::psi_rt;
    else {
        std::cerr << "unknown density name: " << args.name << "\n";
        return 2;
    }
    spec.ell = args.ell;
    spec.t = args.t;

    std::vector<double> xs;
    if (args.has_at) {
        xs.push_back(args.at);
    } else if (args.has_grid) {
        if (!(args.step > 0.0) || !(args.to >= args.from)) {
            std::cerr << "density grid needs --step > 0 and --to >= --from\n";
            return 2;
        }
        const long long steps = std::llround((args.to - args.from) / args.step);
        if (steps < 0 || steps > 10000000) {
            std::cerr << "density grid too large\n";
            return 2;
        }
        for (long long i = 0; i <= steps; ++i) xs.push_back(args.from + double(i) * args.step);
    } else {
        std::cerr << "density needs --at or --from/--to/--step\n";
        return 2;
    }

    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("command", "density " + args.name);
    if (args.has_at) meta.emplace_back("at", horoxt::format_real(args.at));
    if (args.has_grid) {
        meta.emplace_back("from", horoxt::format_real(args.from));
        meta.emplace_back("to", horoxt::format_real(args.to));
        meta.emplace_back("step", horoxt::format_real(args.step));
    }
    if (spec.kind == horoxt::DensitySpec::Kind::omega)
        meta.emplace_back("ell", horoxt::format_real(args.ell));
    if (spec.kind == horoxt::DensitySpec::Kind::psi_rt)
        meta.emplace_back("t", horoxt::format_real(args.t));
    meta.emplace_back("seed", "0");

    std::ofstream file;
    std::ostream& os = open_target(args.out, file);
    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["version"] = horoxt::version_string;
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto& [k, v] : meta) cfg[k] = v;
        j["config"] = cfg;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (double x : xs) rows.push_back({x, spec(x)});
        j["rows"] = rows;
        os << j.dump(2) << "\n";
    } else {
        horoxt::CsvTable table;
        table.meta = meta;
        table.columns = {"x", "value"};
        for (double x : xs) table.rows.push_back({x, spec(x)});
        table.write(os);
    }
    return 0;
}

struct SimulateArgs {
    std::string mode;
    double T = 0.0, R = 0.0;
    std::string g0_text;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool oracle = false;
    std::string out, format = "csv";
};

int run_simulate(const SimulateArgs& args) {
    if (args.mode != "hits" && args.mode != "sup") {
        std::cerr << "unknown simulate mode: " << args.mode << "\n";
        return 2;
    }
    horoxt::OrbitSpec orbit;
    orbit.R = args.R;
    orbit.T = args.T;
    std::string start = "identity";
    if (!args.g0_text.empty()) {
        orbit.g0 = parse_group(args.g0_text);
        start = "explicit";
    } else if (args.has_seed) {
        horoxt::SamplerSpec haar;
        haar.seed = args.seed;
        orbit.g0 = sample_initial(haar, 0);
        start = "haar";
    }

    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("command", "simulate " + args.mode);
    meta.emplace_back("start", start);
    meta.emplace_back("g0", group_text(orbit.g0));
    meta.emplace_back("R", horoxt::format_real(orbit.R));
    meta.emplace_back("T", horoxt::format_real(orbit.T));
    meta.emplace_back("seed", std::to_string(args.seed));

    std::ofstream file;
    std::ostream& os = open_target(args.out, file);

    if (args.mode == "sup") {
        orbit.validate();
        if (orbit.R != 0.0)
            throw std::invalid_argument("simulate sup needs R = 0");
        const horoxt::SupResult res = horoxt::sup_excursion_height_detail(orbit.g0, orbit.T);
        nlohmann::ordered_json j;
        j["version"] = horoxt::version_string;
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto& [k, v] : meta) cfg[k] = v;
        j["config"] = cfg;
        j["sup"] = res.value;
        j["argmax"] = res.argmax;
        j["interior"] = res.interior;
        os << j.dump(2) << "\n";
        return 0;
    }

    const std::vector<horoxt::HitEvent> events = horoxt::hit_process(orbit);
    horoxt::CsvTable table;
    table.meta = meta;
    table.columns = {"j", "xi", "s", "t", "xi_entry", "delta", "c", "d"};
    for (const horoxt::HitEvent& ev : events)
        table.rows.push_back({double(ev.j), ev.xi, ev.s, ev.t, ev.xi_entry, ev.delta,
                              double(ev.vector.c), double(ev.vector.d)});
    table.write(os);

    if (args.oracle) {
        const std::vector<horoxt::HitEvent> check = horoxt::direct_crossing_oracle(orbit);
        const std::size_t aligned = std::min(events.size(), check.size());
        std::size_t matched = 0;
        double time_dev = 0.0, height_dev = 0.0;
        for (std::size_t i = 0; i < aligned; ++i) {
            if (events[i].vector == check[i].vector) ++matched;
            time_dev = std::max(time_dev, std::fabs(events[i].xi - check[i].xi));
            height_dev = std::max(height_dev, std::fabs(events[i].t - check[i].t));
        }
        os << "# oracle_hits: " << check.size() << "\n";
        os << "# oracle_matched_labels: " << matched << "\n";
        os << "# oracle_max_time_dev: " << horoxt::format_real(time_dev) << "\n";
        os << "# oracle_max_height_dev: " << horoxt::format_real(height_dev) << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = horoxt::default_check_seed;
    std::size_t n = 0;
    long Q = 2000;
    double T = 1000.0;
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    std::vector<horoxt::CheckResult> results;
    if (args.suite == "constants") {
        results = horoxt::check_constants();
        for (auto& r : horoxt::check_moment()) results.push_back(std::move(r));
        for (auto& r : horoxt::check_tails()) results.push_back(std::move(r));
    } else if (args.suite == "oracle") {
        results = horoxt::check_oracle(args.seed, args.n ? int(args.n) : 50);
    } else if (args.suite == "farey") {
        results = horoxt::check_farey(args.Q);
    } else if (args.suite == "siegel") {
        results = horoxt::check_siegel(args.seed, args.n ? args.n : 10000);
    } else if (args.suite == "extreme") {
        results = horoxt::check_extreme(args.seed, args.T, args.n ? args.n : 10000);
    } else if (args.suite == "firsthit") {
        results = horoxt::check_firsthit(args.seed, args.n ? args.n : 10000);
    } else {
        std::cerr << "unknown verify suite: " << args.suite << "\n";
        return 2;
    }

    nlohmann::ordered_json j;
    j["version"] = horoxt::version_string;
    j["command"] = "verify " + args.suite;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    cfg["suite"] = args.suite;
    cfg["seed"] = args.seed;
    if (args.n) cfg["n"] = args.n;
    if (args.suite == "farey") cfg["Q"] = args.Q;
    if (args.suite == "extreme") cfg["T"] = args.T;
    j["config"] = cfg;
    j["checks"] = checks_json(results);
    const bool ok = horoxt::all_pass(results);
    j["pass"] = ok;

    std::ofstream file;
    std::ostream& os = open_target(args.out, file);
    os << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

}

int main(int argc, char** argv) {
    CLI::App app{"cusp excursion statistics of the modular horocycle flow"};
    app.require_subcommand(1);

    DensityArgs density;
    CLI::App* density_cmd = app.add_subcommand("density", "evaluate a limit density");
    density_cmd->add_option("name", density.name, "psi | rho | omega | psi_rt")->required();
    CLI::Option* at_opt = density_cmd->add_option("--at", density.at, "single evaluation point");
    CLI::Option* from_opt = density_cmd->add_option("--from", density.from, "grid start");
    density_cmd->add_option("--to", density.to, "grid end");
    density_cmd->add_option("--step", density.step, "grid step");
    density_cmd->add_option("--ell", density.ell, "shift parameter for omega");
    density_cmd->add_option("--t", density.t, "height slice for psi_rt");
    density_cmd->add_option("--out", density.out, "output path (default stdout)");
    density_cmd->add_option("--format", density.format, "csv | json");

    SimulateArgs simulate;
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one orbit");
    simulate_cmd->add_option("mode", simulate.mode, "hits | sup")->required();
    simulate_cmd->add_option("--T", simulate.T, "orbit time horizon")->required();
    simulate_cmd->add_option("--R", simulate.R, "section level");
    simulate_cmd->add_option("--g0", simulate.g0_text, "start element a,b,c,d");
    CLI::Option* seed_opt = simulate_cmd->add_option("--seed", simulate.seed, "haar start seed");
    simulate_cmd->add_flag("--oracle", simulate.oracle, "append oracle match report");
    simulate_cmd->add_option("--out", simulate.out, "output path (default stdout)");
    simulate_cmd->add_option("--format", simulate.format, "csv | json");

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("suite", verify.suite,
                           "constants | oracle | farey | siegel | extreme | firsthit")
        ->required();
    verify_cmd->add_option("--seed", verify.seed, "master seed");
    verify_cmd->add_option("--n", verify.n, "sample count override");
    verify_cmd->add_option("--Q", verify.Q, "farey order");
    verify_cmd->add_option("--T", verify.T, "extreme horizon");
    verify_cmd->add_option("--out", verify.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    density.has_at = at_opt->count() > 0;
    density.has_grid = from_opt->count() > 0;
    simulate.has_seed = seed_opt->count() > 0;

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (density_cmd->parsed()) rc = run_density(density);
        else if (simulate_cmd->parsed()) rc = run_simulate(simulate);
        else rc = run_verify(verify);
    } catch (const horoxt::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const horoxt::horizon_error& e) {
        std::cerr << "horizon error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    std::cerr << "wall_seconds: " << elapsed.count() << "\n";
    return rc;
}
