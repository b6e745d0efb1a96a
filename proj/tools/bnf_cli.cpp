// bnf-cli: normal-form / stability / measure / plan experiment driver.
//
// Configuration comes from an optional TOML file (flat key = value pairs,
// [section] headers folded into dotted keys) plus flag overrides; flags win.
// Every output file embeds the config hash and seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnf/builders.hpp"
#include "bnf/dynamics.hpp"
#include "bnf/measure.hpp"
#include "bnf/normal_form.hpp"
#include "bnf/serialize.hpp"

namespace fs = std::filesystem;
using namespace bnf;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---- minimal TOML subset ------------------------------------------------

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad config line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        kv[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

std::uint64_t config_hash(const std::map<std::string, std::string>& kv) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto eat = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& [k, v] : kv) {
        eat(k);
        eat("=");
        eat(v);
        eat("\n");
    }
    return h;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string body = s;
    if (!body.empty() && body.front() == '[') body = body.substr(1, body.size() - 2);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream is(body);
    double x;
    while (is >> x) out.push_back(x);
    return out;
}

/// Effective settings: defaults overridden by config file, then by flags.
struct Settings {
    std::map<std::string, std::string> kv;

    std::string str(const std::string& k, const std::string& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
    double num(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : std::stod(it->second);
    }
    int integer(const std::string& k, int dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : std::stoi(it->second);
    }
    std::vector<double> list(const std::string& k,
                             std::vector<double> dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : parse_list(it->second);
    }
};

Json provenance(const Settings& s, std::uint64_t seed) {
    std::ostringstream hex;
    hex << std::hex << config_hash(s.kv);
    return {{"tool_version", kVersion},
            {"config_hash", hex.str()},
            {"seed", seed}};
}

std::string csv_header(const Settings& s, std::uint64_t seed) {
    std::ostringstream os;
    os << "# tool_version=" << kVersion << " config_hash=" << std::hex
       << config_hash(s.kv) << std::dec << " seed=" << seed << '\n';
    return os.str();
}

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << body;
}

// ---- model assembly -----------------------------------------------------

FrequencyModel make_model(const Settings& s, std::uint64_t seed) {
    std::string kind = s.str("model.kind", "nlw");
    if (kind == "nlw") return FrequencyModel::nlw(s.num("model.mass", 1.0));
    if (kind == "nls") {
        int dim = s.integer("model.d", 2);
        int cutoff = s.integer("model.cutoff", 4);
        double decay = s.num("model.decay", 2.0);
        std::string table = s.str("model.v_table", "");
        if (!table.empty()) return frequency_from_json(load_json(table));
        // seeded random potential
        std::unordered_map<std::uint64_t, double> v;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        StateVector box(dim, cutoff);
        box.for_each_mode([&](const ModeVector& a) { v[pack_mode(a)] = uni(rng); });
        return FrequencyModel::nls(dim, decay, std::move(v), cutoff);
    }
    if (kind == "custom") return frequency_from_json(load_json(s.str("model.file", "")));
    throw std::runtime_error("unknown model.kind " + kind);
}

PolynomialFamily make_perturbation(const Settings& s, const FrequencyModel& freq,
                                   int max_order) {
    std::string kind = s.str("model.kind", "nlw");
    std::string spec_file = s.str("nonlinearity.file", "");
    NonlinearitySpec spec;
    if (!spec_file.empty()) {
        spec = nonlinearity_from_json(load_json(spec_file));
    } else {
        std::string form = s.str("nonlinearity.form", "u3");
        if (form == "none") return {};
        int n = s.integer("nonlinearity.n", form == "u3" ? 3 : 4);
        int q = s.integer("nonlinearity.q", n / 2);
        spec = monomial_spec(kind == "nlw" ? FrequencyKind::NLW : FrequencyKind::NLS,
                             n, s.num("nonlinearity.coeff", 1.0), q, freq.dim());
    }
    int cutoff = s.integer("model.cutoff", kind == "nlw" ? 8 : 4);
    if (kind == "nlw")
        return build_nlw(spec, freq.mass(), cutoff, max_order);
    return build_nls(spec, cutoff, max_order);
}

// ---- subcommands --------------------------------------------------------

int cmd_normal_form(const Settings& s, std::uint64_t seed, const fs::path& out) {
    FrequencyModel freq = make_model(s, seed);
    NormalFormConfig cfg;
    cfg.r = s.integer("normal_form.r", 1);
    cfg.gamma = s.num("normal_form.gamma", 1e-3);
    cfg.tau = s.num("normal_form.tau", 0.0);
    cfg.s0 = s.num("normal_form.s0", 0.0);
    cfg.dim = freq.dim();
    cfg.cutoff = s.integer("model.cutoff", 8);
    cfg.order_cap = s.integer("normal_form.order_cap", 0);
    cfg.R_prime = s.num("normal_form.R_prime", 1.0);
    PolynomialFamily P = make_perturbation(s, freq, cfg.effective_order_cap());
    cfg.N = s.num("normal_form.N", cfg.s0 + cfg.r * cfg.tau + cfg.dim + 1);
    double cn = s.num("normal_form.C_N", 0.0);
    if (cn > 0.0) {
        cfg.C_N = cn;
    } else {
        cfg.C_N = std::max(estimate_C_N(P, cfg.N, cfg.R_prime), 1e-12);
        cfg.c_n_estimated = true;
    }

    NormalFormOutcome outcome = birkhoff_normal_form(P, freq, cfg);
    Json j = to_json(outcome);
    j["provenance"] = provenance(s, seed);
    save_json(j, (out / "outcome.json").string());
    write_text(out / "certificate.csv",
               csv_header(s, seed) + certificate_csv(outcome.certificate));
    std::cout << (outcome.certificate.all_ok ? "certificate ok"
                                             : "certificate FAILED")
              << " (R=" << outcome.certificate.R
              << ", R_star=" << outcome.certificate.R_star << ")\n";
    return outcome.certificate.all_ok ? 0 : 1;
}

int cmd_stability(const Settings& s, std::uint64_t seed, const fs::path& out) {
    FrequencyModel freq = make_model(s, seed);
    int max_order = s.integer("stability.max_order", 3);
    PolynomialFamily P = make_perturbation(s, freq, max_order);
    double sidx = s.num("stability.s", 1.0);
    double dt = s.num("stability.dt", 0.01);
    double T = s.num("stability.T", 100.0);
    double nu = s.num("stability.nu", 0.0);
    int cutoff = s.integer("model.cutoff", 8);
    auto eps_grid = s.list("stability.epsilons", {1e-2, 5e-3});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    StateVector shape(freq.dim(), cutoff);
    shape.for_each_mode([&](const ModeVector& a) {
        shape.at(a) = Complex{uni(rng), uni(rng)} /
                      std::pow(weight(a), sidx + 1.0);
    });
    double base = shape.sobolev_norm(sidx);

    Json rows = Json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << csv_header(s, seed)
        << "epsilon,max_norm_ratio,max_j_drift,j_drift_scaled,slope\n";
    double prev_eps = 0.0, prev_drift = 0.0;
    for (double eps : eps_grid) {
        StateVector z0 = shape;
        z0.for_each_mode([&](const ModeVector& a) { z0.at(a) *= eps / base; });
        IntegrateOptions opts;
        opts.s_obs = sidx;
        opts.guard_radius = 4.0 * eps;
        Trajectory traj = integrate(freq, P, z0, T, dt, opts);
        StabilityReport rep = stability_report(traj, sidx, nu,
                                               s.num("stability.c2", 1e12));
        double slope = 0.0;
        if (prev_eps > 0.0 && rep.max_j_drift > 0.0 && prev_drift > 0.0)
            slope = std::log(prev_drift / rep.max_j_drift) /
                    std::log(prev_eps / eps);
        Json jr = to_json(rep);
        jr["slope"] = slope;
        rows.push_back(jr);
        csv << eps << ',' << rep.max_norm_ratio << ',' << rep.max_j_drift << ','
            << rep.j_drift_scaled << ',' << slope << '\n';
        prev_eps = eps;
        prev_drift = rep.max_j_drift;
    }
    Json j = {{"rows", rows}, {"provenance", provenance(s, seed)}};
    save_json(j, (out / "stability.json").string());
    write_text(out / "stability.csv", csv.str());
    std::cout << "stability sweep written (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_measure(const Settings& s, std::uint64_t seed, const fs::path& out) {
    std::string kind = s.str("measure.kind", "nlw");
    int r = s.integer("measure.r", 1);
    double tau = s.num("measure.tau", 63.0 * 27.0);
    int cutoff = s.integer("measure.cutoff", 8);
    long long samples = s.integer("measure.samples", 2000);
    auto gammas = s.list("measure.gammas", {1e-10, 1e-8, 1e-6, 1e-4});
    std::sort(gammas.begin(), gammas.end());

    std::vector<MeasureReport> reports;
    if (kind == "nlw") {
        reports = estimate_theta_nlw(r, gammas, tau, cutoff, samples, seed);
    } else if (kind == "nls") {
        reports = estimate_excluded_nls(r, gammas, tau, cutoff,
                                        s.integer("measure.d", 2),
                                        s.num("measure.decay", 2.0), samples,
                                        seed);
    } else {
        throw std::runtime_error("unknown measure.kind " + kind);
    }
    Json rows = Json::array();
    for (const auto& rep : reports) rows.push_back(to_json(rep));
    Json j = {{"rows", rows}, {"provenance", provenance(s, seed)}};
    save_json(j, (out / "measure.json").string());
    write_text(out / "measure.csv", csv_header(s, seed) + measure_csv(reports));
    std::cout << "measure sweep written (" << reports.size() << " rows)\n";
    return 0;
}

int cmd_plan(const Settings& s) {
    double eps = s.num("plan.epsilon", 1e-40);
    std::string mode_str = s.str("plan.mode", "nlw");
    PlannerMode mode = mode_str == "nlw"
                           ? PlannerMode::NLW
                           : (mode_str == "nls" ? PlannerMode::NLS
                                                : PlannerMode::NLSXFree);
    PlannerSchedule sched =
        parameter_planner(eps, mode, s.num("plan.lambda", 0.2),
                          s.integer("plan.d", 2), s.num("plan.decay", 2.0));
    std::cout.precision(17);
    std::cout << sched.description << "\n";
    if (!sched.feasible)
        std::cout << "infeasible at epsilon=" << eps
                  << "; needs ln(epsilon) <= " << sched.log_min_epsilon << "\n";
    std::cout << "r = " << sched.r << "\ngamma = " << sched.gamma
              << " (ln gamma = " << sched.log_gamma << ")"
              << "\ntau = " << sched.tau << "\ns = " << sched.s
              << "\nhorizon = " << sched.horizon
              << " (ln horizon = " << sched.log_horizon << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff normal form experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 42;
    int jobs = 1;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "TOML config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "PRNG seed");
    app.add_option("--jobs", jobs, "parallel runs (reserved)");
    app.add_option("--set", overrides, "override config key (key=value)");

    auto* nf = app.add_subcommand("normal-form", "build + normal form + certificate");
    auto* st = app.add_subcommand("stability", "build + integrate + report");
    auto* me = app.add_subcommand("measure", "resonant-measure Monte Carlo");
    auto* pl = app.add_subcommand("plan", "closed-form parameter schedules");
    double plan_eps = 0.0;
    std::string plan_mode;
    pl->add_option("--epsilon", plan_eps, "target epsilon");
    pl->add_option("--mode", plan_mode, "nlw | nls | nls-x-free");

    CLI11_PARSE(app, argc, argv);

    try {
        Settings s;
        if (!config_path.empty()) s.kv = read_toml(config_path);
        for (const auto& ov : overrides) {
            auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--set expects key=value, got " + ov);
            s.kv[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
        }
        if (plan_eps > 0.0) {
            std::ostringstream es;
            es.precision(17);
            es << plan_eps;
            s.kv["plan.epsilon"] = es.str();
        }
        if (!plan_mode.empty()) s.kv["plan.mode"] = plan_mode;
        s.kv["seed"] = std::to_string(seed);

        fs::path out(out_dir);
        fs::create_directories(out);
        if (nf->parsed()) return cmd_normal_form(s, seed, out);
        if (st->parsed()) return cmd_stability(s, seed, out);
        if (me->parsed()) return cmd_measure(s, seed, out);
        if (pl->parsed()) return cmd_plan(s);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
