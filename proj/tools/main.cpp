// aerokin: collision-kernel transport coefficients, kernel-hypothesis and
// operator-limit verification, and the periodic-box Vlasov-Stokes solver.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "aerokin/collision_model.hpp"
#include "aerokin/config.hpp"
#include "aerokin/csv.hpp"
#include "aerokin/gas_model.hpp"
#include "aerokin/hypotheses.hpp"
#include "aerokin/limit_verifier.hpp"
#include "aerokin/scaling.hpp"
#include "aerokin/simulation.hpp"
#include "aerokin/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aerokin;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
    std::string model = "inelastic-diffuse";
    double beta = 1.0;
    double alpha = 1.0;
    double eps = 1e-2;
    double eta = 1e-4;
    double mu = 0.5;
};

void write_manifest(const CommonArgs& args, const std::string& subcommand, const Config* cfg) {
    json m;
    m["tool"] = "aerokin";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["seed"] = args.seed;
    m["threads"] = args.threads;
    m["model"] = args.model;
    if (cfg) {
        json sections = json::object();
        for (const auto& [name, kv] : cfg->sections()) {
            json sec = json::object();
            for (const auto& [k, v] : kv) sec[k] = v;
            sections[name.empty() ? "(top)" : name] = sec;
        }
        m["config"] = sections;
    }
    fs::create_directories(args.out_dir);
    std::ofstream out(fs::path(args.out_dir) / "manifest.json");
    out << m.dump(2) << "\n";
}

CollisionModel::Variant make_variant(const CommonArgs& args, const Config* cfg) {
    if (args.model == "inelastic-diffuse") return InelasticDiffuse{args.beta};
    if (args.model == "elastic-hard-sphere") return ElasticHardSphere{};
    if (args.model == "elastic-cutoff") {
        if (!cfg)
            throw std::invalid_argument(
                "elastic-cutoff needs a sigma_pg table; provide it via --config [cutoff]");
        ElasticCutoff ec;
        ec.b_star = cfg->get_double_or("cutoff", "b_star", 2.0);
        ec.beta_star = cfg->get_double_or("cutoff", "beta_star", 1.0);
        // table_mu_<node> entries point at two-column CSV files (r, value)
        const auto& keys = cfg->sections().at("cutoff");
        std::vector<std::pair<double, std::string>> tables;
        for (const auto& [k, v] : keys)
            if (k.rfind("table_mu_", 0) == 0) tables.emplace_back(std::stod(k.substr(9)), v);
        if (tables.empty())
            throw std::invalid_argument("elastic-cutoff: no table_mu_<node> entries in [cutoff]");
        std::sort(tables.begin(), tables.end());
        for (const auto& [mu, path] : tables) {
            ec.mu_nodes.push_back(mu);
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("cannot open sigma table '" + path + "'");
            std::vector<double> radii, vals;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto comma = line.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("sigma table '" + path + "': expected r,value");
                radii.push_back(std::stod(line.substr(0, comma)));
                vals.push_back(std::stod(line.substr(comma + 1)));
            }
            if (ec.radii.empty()) {
                ec.radii = radii;
                ec.values.assign(radii.size(), {});
            } else if (radii != ec.radii) {
                throw std::invalid_argument("sigma tables must share the radius column");
            }
            for (std::size_t i = 0; i < vals.size(); ++i) ec.values[i].push_back(vals[i]);
        }
        ec.validate();
        return ec;
    }
    throw std::invalid_argument("unknown model '" + args.model + "'");
}

PhysicalSetup setup_from_config(const Config& cfg) {
    PhysicalSetup s;
    s.box_size = cfg.get_double("setup", "L");
    s.n_particles_density = cfg.get_double("setup", "N_p");
    s.n_gas_density = cfg.get_double("setup", "N_g");
    s.thermal_speed_particles = cfg.get_double("setup", "V_p");
    s.thermal_speed_gas = cfg.get_double("setup", "V_g");
    s.cross_section_pp = cfg.get_double("setup", "S_pp");
    s.cross_section_pg = cfg.get_double("setup", "S_pg");
    s.cross_section_gg = cfg.get_double("setup", "S_gg");
    s.mass_ratio = cfg.get_double("setup", "eta");
    s.mass_fraction = cfg.get_double("setup", "mu");
    return s;
}

int cmd_nondim(const CommonArgs& args) {
    Config cfg = Config::parse_file(args.config_path);
    write_manifest(args, "nondim", &cfg);
    const NondimResult r = nondimensionalize(setup_from_config(cfg));
    if (r.diluteness_warning)
        std::cerr << "warning: diluteness number N_p S_pp L = " << csv_double(r.diluteness)
                  << " is not small; the particle-particle collision term is only formally "
                     "negligible\n";
    CsvWriter csv((fs::path(args.out_dir) / "nondim.csv").string());
    csv.header({"name", "value"});
    csv.row("epsilon", r.scales.epsilon);
    csv.row("eta", r.scales.eta);
    csv.row("mu", r.scales.mu);
    csv.row("coeff_drag", r.coeff_drag);
    csv.row("coeff_friction", r.coeff_friction);
    csv.row("coeff_gas_collision", r.coeff_gas_collision);
    csv.row("diluteness", r.diluteness);
    csv.row("theorem_admissible", r.scales.theorem_admissible() ? 1 : 0);
    std::cout << "epsilon=" << csv_double(r.scales.epsilon)
              << " eta=" << csv_double(r.scales.eta) << " mu=" << csv_double(r.scales.mu)
              << "\n";
    return 0;
}

int cmd_coeffs(const CommonArgs& args) {
    std::unique_ptr<Config> cfg;
    if (!args.config_path.empty())
        cfg = std::make_unique<Config>(Config::parse_file(args.config_path));
    write_manifest(args, "coeffs", cfg.get());
    const CollisionModel::Variant variant = make_variant(args, cfg.get());
    ScalingTriple s{args.eps, args.eta, args.mu};
    CollisionModel model(variant, s);
    VelocityQuadrature quad(24);
    GasModel gas = GasModel::constant_alpha(args.alpha);
    const double nu = viscosity(gas, quad);
    const double kap = kappa(model.moments(), quad);
    CsvWriter csv((fs::path(args.out_dir) / "coeffs.csv").string());
    csv.header({"name", "value"});
    csv.row("nu", nu);
    csv.row("kappa", kap);
    std::cout << "nu=" << csv_double(nu) << " kappa=" << csv_double(kap) << "\n";
    return 0;
}

int cmd_verify_hypotheses(const CommonArgs& args) {
    std::unique_ptr<Config> cfg;
    if (!args.config_path.empty())
        cfg = std::make_unique<Config>(Config::parse_file(args.config_path));
    write_manifest(args, "verify-hypotheses", cfg.get());
    const CollisionModel::Variant variant = make_variant(args, cfg.get());

    HypothesisOptions ho;
    ho.seed = args.seed;
    ScalingTriple s{args.eps, args.eta, args.mu};
    CollisionModel model(variant, s);
    std::vector<ScalingTriple> grid;
    for (double e : {1e-1, 1e-2, 1e-3})
        for (double h : {1e-2, 1e-3, 1e-4})
            if (h <= e * e) grid.push_back({e, h, 0.5});

    CsvWriter csv((fs::path(args.out_dir) / "hypotheses.csv").string());
    csv.header({"hypothesis", "model", "samples", "max_rel_error", "fitted_constant",
                "constant_spread", "tolerance", "pass"});
    auto emit = [&](const HypothesisReport& r) {
        csv.row(r.hypothesis, r.model, r.samples, r.max_rel_error, r.fitted_constant,
                r.constant_spread, r.tolerance, r.pass ? 1 : 0);
        std::cout << r.hypothesis << " max_rel_error=" << csv_double(r.max_rel_error)
                  << (r.pass ? " pass" : " FAIL") << "\n";
    };
    emit(check_H1(model, ho));
    emit(check_H2(model, ho));
    emit(check_H3(variant, grid, ho));
    emit(check_H5(variant, grid, ho));

    CsvWriter rate((fs::path(args.out_dir) / "ratefit.csv").string());
    rate.header({"phi", "abscissa", "error"});
    for (const auto& phi : h4_default_family(args.alpha)) {
        RateFit fit = check_H4_rate(variant, 2, 6, phi, ho);
        for (std::size_t i = 0; i < fit.abscissae.size(); ++i)
            rate.row(phi.name, fit.abscissae[i], fit.errors[i]);
        HypothesisReport r;
        r.hypothesis = "H4";
        r.model = args.model;
        r.samples = static_cast<int>(fit.abscissae.size());
        r.max_rel_error = fit.slope;
        r.pass = fit.fitted && fit.slope >= 0.8 && fit.slope <= 1.2;
        emit(r);
    }
    return 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string::npos ? next : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<ScalingTriple> parse_sequence(const std::string& spec,
                                          std::vector<double>* etas_out) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("sequence spec: expected <kind>:<args>");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "etacube") {
        const auto parts = split(rest, ',');
        if (parts.size() != 3)
            throw std::invalid_argument("etacube needs eta_max,eta_min,count");
        const double emax = std::stod(parts[0]), emin = std::stod(parts[1]);
        const int count = std::stoi(parts[2]);
        if (!(emax > emin) || count < 2)
            throw std::invalid_argument("etacube: need eta_max > eta_min and count >= 2");
        std::vector<ScalingTriple> seq;
        for (int i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / (count - 1);
            const double eta = emax * std::pow(emin / emax, t);
            seq.push_back({std::cbrt(eta), eta, 1.0});
            if (etas_out) etas_out->push_back(eta);
        }
        return seq;
    }
    if (kind == "dyadic") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2) throw std::invalid_argument("dyadic needs jmin,jmax");
        const int jmin = std::stoi(parts[0]), jmax = std::stoi(parts[1]);
        if (jmin < 1 || jmax <= jmin)
            throw std::invalid_argument("dyadic: need 1 <= jmin < jmax");
        std::vector<ScalingTriple> seq;
        for (int j = jmin; j <= jmax; ++j) {
            const double n = std::ldexp(1.0, j);
            seq.push_back({std::pow(n, -3.0), std::pow(n, -8.0), 1.0 / n});
        }
        return seq;
    }
    if (kind == "literal") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2) throw std::invalid_argument("literal needs nmin,nmax");
        const int nmin = std::stoi(parts[0]), nmax = std::stoi(parts[1]);
        if (nmin < 2 || nmax <= nmin)
            throw std::invalid_argument("literal: need 2 <= nmin < nmax");
        std::vector<ScalingTriple> seq;
        for (int n = nmin; n <= nmax; ++n)
            seq.push_back({std::pow(n, -3.0), std::pow(n, -8.0), 1.0 / n});
        return seq;
    }
    if (kind == "custom") {
        std::vector<ScalingTriple> seq;
        for (const std::string& item : split(rest, ';')) {
            const auto parts = split(item, ',');
            if (parts.size() != 3)
                throw std::invalid_argument("custom element needs eps,eta,mu");
            seq.push_back({std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
        }
        for (const auto& t : seq) {
            t.validate();
            if (t.eta / (t.epsilon * t.epsilon) > 1.0)
                throw std::invalid_argument(
                    "custom sequence violates eta/eps^2 <= 1 (eta/eps^2 must tend to 0)");
            if (t.epsilon / (t.mu * t.mu) > 1.0)
                throw std::invalid_argument(
                    "custom sequence violates eps/mu^2 <= 1 (eps/mu^2 must tend to 0)");
        }
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const auto &a = seq[i - 1], &b = seq[i];
            if (!(b.eta / (b.epsilon * b.epsilon) < a.eta / (a.epsilon * a.epsilon)))
                throw std::invalid_argument(
                    "custom sequence: eta/eps^2 must decrease strictly (eta/eps^2 -> 0)");
            if (!(b.epsilon / (b.mu * b.mu) < a.epsilon / (a.mu * a.mu)))
                throw std::invalid_argument(
                    "custom sequence: eps/mu^2 must decrease strictly (eps/mu^2 -> 0)");
        }
        return seq;
    }
    throw std::invalid_argument("unknown sequence kind '" + kind + "'");
}

int cmd_verify_limits(const CommonArgs& args, const std::string& curve,
                      const std::string& seq_spec) {
    std::unique_ptr<Config> cfg;
    if (!args.config_path.empty())
        cfg = std::make_unique<Config>(Config::parse_file(args.config_path));
    write_manifest(args, "verify-limits", cfg.get());
    if (args.model != "inelastic-diffuse")
        throw std::invalid_argument(
            "verify-limits: the operator curves run the diffuse-reflection model");

    LimitOptions lo;
    lo.beta = args.beta;
    lo.alpha = args.alpha;
    lo.threads = args.threads;
    lo.op.threads = args.threads;
    auto F = [](const Vec3& v) { return std::exp(-0.5 * v.norm2()); };
    auto Fs = [](const Vec3& v) { return std::exp(-0.5 * (v - Vec3{0.5, 0, 0}).norm2()); };

    LimitCurve out;
    if (curve == "deflection") {
        std::vector<double> etas;
        parse_sequence(seq_spec, &etas);
        if (etas.empty())
            throw std::invalid_argument("deflection curve needs an etacube sequence");
        out = deflection_limit(F, FluctuationField::zero(), etas, lo);
    } else if (curve == "friction") {
        std::vector<double> etas;
        parse_sequence(seq_spec, &etas);
        if (etas.empty())
            throw std::invalid_argument("friction curve needs an etacube sequence");
        out = friction_limit(Fs, FluctuationField::zero(), etas, lo);
    } else if (curve == "flux") {
        auto seq = parse_sequence(seq_spec, nullptr);
        out = friction_flux_limit(Fs, FluctuationField::with_shear(0.0, {0.3, 0, 0}, 0.0, 1.0),
                                  seq, lo);
    } else {
        throw std::invalid_argument("unknown curve '" + curve +
                                    "' (expected deflection|friction|flux)");
    }

    CsvWriter csv((fs::path(args.out_dir) / "limits.csv").string());
    csv.header({"index", "epsilon", "eta", "mu", "error"});
    for (std::size_t i = 0; i < out.errors.size(); ++i) {
        const auto& s = out.sequence[i];
        csv.row(static_cast<long>(i), s.epsilon, s.eta, s.mu, out.errors[i]);
        std::cout << "  eps=" << csv_double(s.epsilon) << " eta=" << csv_double(s.eta)
                  << " error=" << csv_double(out.errors[i]) << "\n";
    }
    return 0;
}

SimConfig sim_from_config(const Config& cfg, const CommonArgs& args) {
    SimConfig sc;
    sc.grid = static_cast<int>(cfg.get_int_or("sim", "grid", 16));
    sc.particles = static_cast<std::size_t>(cfg.get_int_or("sim", "particles", 100000));
    sc.dt = cfg.get_double_or("sim", "dt", 0.01);
    sc.t_end = cfg.get_double_or("sim", "t_end", 1.0);
    sc.kappa = cfg.get_double_or("sim", "kappa", 1.0);
    sc.nu = cfg.get_double_or("sim", "nu", 1.0);
    sc.deposition_order = static_cast<int>(cfg.get_int_or("sim", "deposition_order", 1));
    sc.fixed_point_tol = cfg.get_double_or("sim", "fixed_point_tol", 1e-12);
    sc.fixed_point_max_iter =
        static_cast<int>(cfg.get_int_or("sim", "fixed_point_max_iter", 200));
    sc.output_every = static_cast<int>(cfg.get_int_or("sim", "output_every", 1));
    sc.seed = cfg.get_u64_or("sim", "seed", args.seed);
    sc.threads = args.threads;
    sc.total_weight = cfg.get_double_or("sim", "total_weight", 1.0);
    for (const std::string& name : cfg.section_names_with_prefix("component")) {
        GaussianComponent c;
        c.fraction = cfg.get_double_or(name, "fraction", 1.0);
        c.x0 = {cfg.get_double_or(name, "x0", 0.5), cfg.get_double_or(name, "y0", 0.5),
                cfg.get_double_or(name, "z0", 0.5)};
        c.sigma_x = cfg.get_double_or(name, "sigma_x", 0.1);
        c.v0 = {cfg.get_double_or(name, "vx0", 0.0), cfg.get_double_or(name, "vy0", 0.0),
                cfg.get_double_or(name, "vz0", 0.0)};
        c.sigma_v = cfg.get_double_or(name, "sigma_v", 0.0);
        sc.components.push_back(c);
    }
    return sc;
}

void dump_field(const FluidField& f, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    const double n = static_cast<double>(f.n);  // homogeneous little-endian f64 stream
    out.write(reinterpret_cast<const char*>(&n), sizeof(double));
    for (const auto* comp : {&f.ux, &f.uy, &f.uz})
        out.write(reinterpret_cast<const char*>(comp->data()),
                  static_cast<std::streamsize>(comp->size() * sizeof(double)));
}

int cmd_simulate(const CommonArgs& args, bool dump_fields) {
    Config cfg = Config::parse_file(args.config_path);
    write_manifest(args, "simulate", &cfg);
    SimConfig sc = sim_from_config(cfg, args);
    Simulation sim(sc);

    CsvWriter csv((fs::path(args.out_dir) / "diagnostics.csv").string());
    csv.header({"time", "step", "px", "py", "pz", "rel_kinetic_energy", "max_u",
                "stokes_residual", "stokes_iterations", "total_weight"});
    sim.run([&](const DiagnosticsRow& row) {
        csv.row(row.time, row.step, row.momentum.x, row.momentum.y, row.momentum.z,
                row.relative_kinetic_energy, row.max_u, row.stokes_residual,
                row.stokes_iterations, row.total_weight);
        if (dump_fields)
            dump_field(sim.fluid(),
                       fs::path(args.out_dir) / ("fields_" + std::to_string(row.step) + ".bin"));
    });
    std::cout << "simulated to t=" << csv_double(sim.time()) << " (" << sim.step_count()
              << " steps)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aerosol kinetics toolkit: scaling, transport coefficients, kernel checks, "
                 "operator limits and the periodic Vlasov-Stokes solver"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string curve = "deflection";
    std::string seq_spec = "etacube:1e-1,1e-3,5";
    bool dump_fields = false;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("--config", args.config_path, "configuration file");
        if (need_config) opt->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", args.seed, "random seed");
        sub->add_option("--threads", args.threads, "worker thread count")
            ->check(CLI::Range(1, 256));
        sub->add_option("--model", args.model,
                        "elastic-hard-sphere | elastic-cutoff | inelastic-diffuse");
        sub->add_option("--beta", args.beta, "diffuse-reflection beta");
        sub->add_option("--alpha", args.alpha, "constant gas alpha");
        sub->add_option("--eps", args.eps, "scaling epsilon");
        sub->add_option("--eta", args.eta, "scaling eta");
        sub->add_option("--mu", args.mu, "scaling mu");
    };

    auto* nondim = app.add_subcommand("nondim", "nondimensionalize a physical setup");
    add_common(nondim, true);
    auto* coeffs = app.add_subcommand("coeffs", "transport coefficients nu and kappa");
    add_common(coeffs, false);
    auto* hyp = app.add_subcommand("verify-hypotheses", "kernel hypothesis checks");
    add_common(hyp, false);
    auto* lim = app.add_subcommand("verify-limits", "operator limit curves");
    add_common(lim, false);
    lim->add_option("--curve", curve, "deflection | friction | flux");
    lim->add_option("--sequence", seq_spec,
                    "etacube:<max>,<min>,<count> | dyadic:<jmin>,<jmax> | "
                    "literal:<nmin>,<nmax> | custom:eps,eta,mu;...");
    auto* simc = app.add_subcommand("simulate", "periodic-box Vlasov-Stokes run");
    add_common(simc, true);
    simc->add_flag("--dump-fields", dump_fields, "write binary velocity dumps per output row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (nondim->parsed()) return cmd_nondim(args);
        if (coeffs->parsed()) return cmd_coeffs(args);
        if (hyp->parsed()) return cmd_verify_hypotheses(args);
        if (lim->parsed()) return cmd_verify_limits(args, curve, seq_spec);
        if (simc->parsed()) return cmd_simulate(args, dump_fields);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
