#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fracgeo/rearrange.hpp"
#include "fracgeo/report.hpp"
#include "fracgeo/spec_lang.hpp"
#include "fracgeo/verify.hpp"

namespace fracgeo {

namespace {

struct CommonOpts {
    int n = 1;
    double s = 0.25;
    double p = 2.0;
    int m = 200;
    double L = 1.25;
    std::size_t quad_nodes = 0;
    std::string policy = "truncate";
    double epsilon = 0.0;
    int t_per_decade = 64;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string config;
};

// Options named exactly like the config keys so `--config file` with plain
// `key = value` lines maps one-to-one.
void add_common(CLI::App* cmd, CommonOpts& o, bool with_grid = true) {
    cmd->add_option("--n", o.n, "dimension (1, 2 or 3)");
    cmd->add_option("--s", o.s, "fractional order, 0 < s < 1");
    cmd->add_option("--p", o.p, "integrability exponent");
    if (with_grid) {
        cmd->add_option("--m", o.m, "grid cells per axis");
        cmd->add_option("--L", o.L, "grid half-width");
    }
    cmd->add_option("--quad_nodes", o.quad_nodes, "sphere quadrature nodes (0 = default)");
    cmd->add_option("--policy", o.policy, "kernel policy: truncate | exclude_diagonal");
    cmd->add_option("--epsilon", o.epsilon, "kernel clamp (gauge units, 0 = resolution default)");
    cmd->add_option("--t_per_decade", o.t_per_decade, "shift-quadrature nodes per decade");
    cmd->add_option("--seed", o.seed, "seed for the random batteries");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    cmd->add_option("--config", o.config, "key = value configuration file");
}

struct IoOpts {
    std::string spec, spec2, grid, grid2, body = "ball:1";
    std::string out, csv, mode = "abs";
};

void add_function_inputs(CLI::App* cmd, IoOpts& io, bool pair = true) {
    cmd->add_option("--spec", io.spec, "function spec: inline text or a file path");
    cmd->add_option("--grid", io.grid,
                    "FRACGEO-GRID file for f (overrides --spec; its n/m/L define the grid)");
    if (pair) {
        cmd->add_option("--spec2", io.spec2, "spec for h (defaults to f)");
        cmd->add_option("--grid2", io.grid2, "FRACGEO-GRID file for h");
    }
}

void add_outputs(CLI::App* cmd, IoOpts& io) {
    cmd->add_option("--out", io.out, "write the JSON report here instead of stdout");
    cmd->add_option("--csv", io.csv, "prefix for <prefix>-terms.csv and <prefix>-margins.csv");
}

KernelPolicy make_policy(const CommonOpts& o, bool diagnose) {
    KernelPolicy pol;
    if (o.policy == "truncate") {
        pol.mode = KernelPolicy::Mode::truncate;
    } else if (o.policy == "exclude_diagonal") {
        pol.mode = KernelPolicy::Mode::exclude_diagonal;
    } else {
        throw param_error("unknown kernel policy: " + o.policy);
    }
    pol.epsilon = o.epsilon;
    pol.diagnose = diagnose;
    return pol;
}

GridFunction load_function(const std::string& spec, const std::string& grid,
                           CommonOpts& o, const char* who) {
    if (!grid.empty()) {
        // The grid file is self-describing; adopt its geometry so --n/--m/--L
        // need not be repeated and later params/bodies/quadratures match.
        GridFunction g = read_grid_file(grid);
        o.n = g.n;
        o.m = g.m;
        o.L = g.L;
        return g;
    }
    if (spec.empty()) throw param_error(std::string(who) + ": provide --spec or --grid");
    const SpecPtr sp = spec.find('(') != std::string::npos ? parse_spec(spec)
                                                           : parse_spec_file(spec);
    validate_spec(sp, o.n);
    return sample_spec(sp, o.n, o.L, o.m);
}

std::pair<GridFunction, GridFunction> load_pair(const IoOpts& io, CommonOpts& o,
                                                const char* who) {
    GridFunction f = load_function(io.spec, io.grid, o, who);
    if (io.spec2.empty() && io.grid2.empty()) return {f, f};
    GridFunction h = load_function(io.spec2, io.grid2, o, who);
    return {f, h};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw param_error("cannot open output file: " + path);
    os << text;
}

void emit(const std::vector<ChainReport>& reps, const IoOpts& io) {
    const std::string json = reps.size() == 1 ? report_to_json(reps[0])
                                              : reports_to_json(reps);
    if (io.out.empty()) {
        std::cout << json << "\n";
    } else {
        write_text_file(io.out, json + "\n");
        for (const ChainReport& r : reps) {
            std::cout << r.case_id << ":";
            for (const Verdict& v : r.verdicts) std::cout << " " << v.status;
            std::cout << "\n";
        }
    }
    if (!io.csv.empty()) {
        write_text_file(io.csv + "-terms.csv", terms_csv(reps));
        write_text_file(io.csv + "-margins.csv", margins_csv(reps));
    }
}

int verdict_exit(const std::vector<ChainReport>& reps) {
    for (const ChainReport& r : reps)
        if (r.any_violation()) return 1;
    return 0;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

TermValue direct_term(const std::string& name, double value, bool infinite,
                      const std::string& refinement) {
    TermValue t;
    t.name = name;
    t.value = infinite ? 0.0 : value;
    t.infinite = infinite;
    t.refinement = refinement;
    return t;
}

std::vector<double> parse_double_list(const std::string& text, const char* who) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw param_error(std::string(who) + ": cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw param_error(std::string(who) + ": empty list");
    return out;
}

std::vector<DiffMode> parse_mode_list(const std::string& text) {
    std::vector<DiffMode> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_diff_mode(item));
    if (out.empty()) throw param_error("empty mode list");
    return out;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"fracgeo: star bodies, fractional seminorms, projection bodies and "
                 "rearrangement inequality verification"};
    app.require_subcommand(1);

    CommonOpts o;
    IoOpts io;

    CLI::App* c_rearrange = app.add_subcommand("rearrange", "symmetric decreasing rearrangement");
    add_common(c_rearrange, o);
    add_function_inputs(c_rearrange, io, false);
    std::string rearrange_out;
    c_rearrange->add_option("--out", rearrange_out, "write the rearranged FRACGEO-GRID here");

    CLI::App* c_seminorm = app.add_subcommand("seminorm", "anisotropic fractional seminorm");
    add_common(c_seminorm, o);
    add_function_inputs(c_seminorm, io);
    c_seminorm->add_option("--body", io.body, "kernel body: ball:r | ellipsoid:a1,a2[,a3] | lqball:q,r | file:path");
    c_seminorm->add_option("--mode", io.mode, "difference mode: abs | plus | minus");
    bool diagnose = false;
    c_seminorm->add_flag("--diagnose", diagnose, "run the epsilon ladder and classify convergence");
    add_outputs(c_seminorm, io);

    CLI::App* c_projbody = app.add_subcommand("projbody", "polar projection body of a pair");
    add_common(c_projbody, o);
    add_function_inputs(c_projbody, io);
    c_projbody->add_option("--mode", io.mode, "difference mode: abs | plus | minus");
    std::string body_out;
    c_projbody->add_option("--out", body_out, "write the body in FRACGEO-BODY format here");
    c_projbody->add_option("--csv", io.csv, "prefix for CSV plot data");

    CLI::App* c_dualmix = app.add_subcommand("dualmix", "dual mixed volume of two star bodies");
    std::string bodyK = "ball:1", bodyL = "ball:1";
    double alpha = -1.0;
    c_dualmix->add_option("--K", bodyK, "first body spec");
    c_dualmix->add_option("--L", bodyL, "second body spec");
    c_dualmix->add_option("--alpha", alpha, "dual mixed volume index (not 0 or n)");
    c_dualmix->add_option("--n", o.n, "dimension");
    c_dualmix->add_option("--quad_nodes", o.quad_nodes, "sphere quadrature nodes (0 = default)");
    c_dualmix->add_option("--threads", o.threads, "worker threads");
    c_dualmix->add_option("--config", o.config, "key = value configuration file");
    std::string dualmix_out;
    c_dualmix->add_option("--out", dualmix_out, "write the JSON report here");

    CLI::App* c_verify = app.add_subcommand("verify", "inequality chain verification");
    c_verify->require_subcommand(1);
    CLI::App* v_sym = c_verify->add_subcommand("sym", "symmetric affine chain");
    CLI::App* v_asym = c_verify->add_subcommand("asym", "asymmetric (plus-mode) affine chain");
    CLI::App* v_aniso = c_verify->add_subcommand("aniso", "anisotropic rearrangement inequality");
    CLI::App* v_volume = c_verify->add_subcommand("volume", "projection-body volume monotonicity");
    CLI::App* v_limit = c_verify->add_subcommand("limit", "s -> 1 limit against the gradient energy");
    CLI::App* v_invariance = c_verify->add_subcommand("invariance", "shear covariance and dilation scaling");
    CLI::App* v_riesz = c_verify->add_subcommand("riesz", "Riesz rearrangement battery");
    std::string modes_text = "abs,plus";
    std::string s_list_text = "0.9,0.95,0.99";
    int riesz_count = 100;
    for (CLI::App* cmd : {v_sym, v_asym, v_aniso, v_volume, v_limit, v_invariance}) {
        add_common(cmd, o);
        add_function_inputs(cmd, io);
        add_outputs(cmd, io);
    }
    v_aniso->add_option("--body", io.body, "kernel body spec");
    v_aniso->add_option("--modes", modes_text, "comma-separated difference modes");
    v_volume->add_option("--mode", io.mode, "difference mode");
    v_limit->add_option("--body", io.body, "moment body spec");
    v_limit->add_option("--s_list", s_list_text, "comma-separated s values increasing toward 1");
    add_common(v_riesz, o, false);
    add_outputs(v_riesz, io);
    v_riesz->add_option("--count", riesz_count, "number of seeded triples");

    CLI::App* c_suite = app.add_subcommand("suite", "full acceptance battery");
    bool slow = false;
    c_suite->add_flag("--slow", slow, "include the coarse n=3 chain");
    c_suite->add_option("--threads", o.threads, "worker threads");
    add_outputs(c_suite, io);
    c_suite->add_option("--config", o.config, "key = value configuration file");

    try {
        app.parse(argc, argv);
        // Config files fill in whatever the command line left unset.  CLI11
        // only reads config files on the root app, so feed the file to the
        // parsed leaf subcommand by hand; already-seen options keep their
        // command-line values.
        if (!o.config.empty()) {
            std::ifstream is(o.config);
            if (!is.good()) throw param_error("config: cannot open " + o.config);
            CLI::App* leaf = &app;
            while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
            leaf->parse_from_stream(is);
        }
        set_threads(o.threads);

        if (app.got_subcommand(c_rearrange)) {
            const GridFunction f = load_function(io.spec, io.grid, o, "rearrange");
            const GridFunction fs = rearrange(f);
            if (!rearrange_out.empty()) write_grid_file(rearrange_out, fs);
            ChainReport rep;
            rep.case_id = "rearrange";
            rep.params = Params{o.n, o.s, o.p};
            rep.L = fs.L;
            rep.m = fs.m;
            const std::string how = "exact-permutation(m=" + std::to_string(f.m) + ")";
            rep.terms.push_back(direct_term("mass", l1_mass(fs), false, how));
            rep.terms.push_back(direct_term("l2_norm", lp_norm(fs, 2.0), false, how));
            emit({rep}, io);
            return 0;
        }

        if (app.got_subcommand(c_seminorm)) {
            const auto [f, h] = load_pair(io, o, "seminorm");
            const Params params = validate_params(o.n, o.s, o.p, false);
            const StarBody K = parse_body_spec(io.body, o.n);
            const QuadPtr quad = default_quadrature(o.n, o.quad_nodes);
            const SeminormResult res = frac_seminorm(f, h, K, params, parse_diff_mode(io.mode),
                                                     make_policy(o, diagnose), *quad);
            ChainReport rep;
            rep.case_id = "seminorm";
            rep.params = params;
            rep.L = f.L;
            rep.m = f.m;
            TermValue t = direct_term("seminorm", res.value, res.infinite,
                                      "pair-sum(m=" + std::to_string(f.m) + ")");
            for (std::size_t i = 0; i < res.ladder_values.size(); ++i)
                t.level_values.emplace_back("eps=" + fmt(res.ladder_epsilons[i]),
                                            res.ladder_values[i]);
            rep.terms.push_back(t);
            rep.terms.push_back(direct_term("epsilon_used", res.policy.epsilon, false, "policy"));
            if (diagnose) {
                rep.terms.push_back(direct_term("divergence_exponent", res.divergence_exponent,
                                                false, "ladder-fit"));
                rep.terms.push_back(direct_term("classification_slope", res.classification_slope,
                                                false, "ladder-fit"));
            }
            emit({rep}, io);
            return 0;
        }

        if (app.got_subcommand(c_projbody)) {
            const auto [f, h] = load_pair(io, o, "projbody");
            const Params params{o.n, o.s, o.p};
            const DiffMode mode = parse_diff_mode(io.mode);
            const QuadPtr quad = default_quadrature(o.n, o.quad_nodes);
            ProjOptions opts;
            opts.t_per_decade = o.t_per_decade;
            const PolarProjectionBody body = pi_body(f, h, params, mode, quad, opts);
            const double vol = body_volume(body);
            const double energy = affine_energy(body);
            ChainReport rep;
            rep.case_id = "projbody";
            rep.params = params;
            rep.L = f.L;
            rep.m = f.m;
            const std::string how = "t-quadrature(m=" + std::to_string(f.m) + ")";
            rep.terms.push_back(direct_term("volume", vol, std::isinf(vol), how));
            rep.terms.push_back(direct_term("affine_energy", energy, std::isinf(energy), how));
            rep.terms.push_back(direct_term("degenerate", body.degenerate() ? 1.0 : 0.0, false, how));
            rep.terms.push_back(direct_term("unbounded", body.unbounded() ? 1.0 : 0.0, false, how));
            if (!body_out.empty()) {
                if (body.degenerate() || body.unbounded()) {
                    std::cerr << "projbody: body is " << (body.degenerate() ? "degenerate" : "unbounded")
                              << "; no FRACGEO-BODY file written\n";
                } else {
                    write_body_file(body_out, to_star_body(body), *quad,
                                    {{"mode", to_string(mode)},
                                     {"ps", fmt(params.ps())}});
                }
            }
            IoOpts out_io = io;
            out_io.out.clear();
            emit({rep}, out_io);
            return 0;
        }

        if (app.got_subcommand(c_dualmix)) {
            const QuadPtr quad = default_quadrature(o.n, o.quad_nodes);
            const StarBody K = parse_body_spec(bodyK, o.n);
            const StarBody Lb = parse_body_spec(bodyL, o.n);
            if (alpha == 0.0 || alpha == double(o.n))
                throw param_error("dualmix: alpha must avoid 0 and n");
            ChainReport rep;
            rep.case_id = "dualmix";
            rep.params = Params{o.n, 0.5, 2.0};
            const std::string how = "node-sum(" + std::to_string(quad->count()) + " nodes)";
            rep.terms.push_back(direct_term("dual_mixed_volume",
                                            dual_mixed_volume(K, Lb, alpha, *quad), false, how));
            rep.terms.push_back(direct_term("volume_K", volume(K, *quad), false, how));
            rep.terms.push_back(direct_term("volume_L", volume(Lb, *quad), false, how));
            IoOpts dio;
            dio.out = dualmix_out;
            emit({rep}, dio);
            return 0;
        }

        if (app.got_subcommand(c_verify)) {
            std::vector<ChainReport> reps;
            // Build the quadrature after the functions load: a grid file may
            // change the dimension.
            const auto quad_for = [&o] { return default_quadrature(o.n, o.quad_nodes); };
            if (c_verify->got_subcommand(v_sym)) {
                const auto [f, h] = load_pair(io, o, "verify sym");
                reps.push_back(verify_chain_symmetric(f, h, Params{o.n, o.s, o.p}, quad_for(),
                                                      make_policy(o, false)));
            } else if (c_verify->got_subcommand(v_asym)) {
                const auto [f, h] = load_pair(io, o, "verify asym");
                reps.push_back(verify_chain_asymmetric(f, h, Params{o.n, o.s, o.p}, quad_for(),
                                                       make_policy(o, false)));
            } else if (c_verify->got_subcommand(v_aniso)) {
                const auto [f, h] = load_pair(io, o, "verify aniso");
                reps.push_back(verify_anisotropic(f, h, parse_body_spec(io.body, o.n),
                                                  Params{o.n, o.s, o.p},
                                                  parse_mode_list(modes_text),
                                                  make_policy(o, false), quad_for()));
            } else if (c_verify->got_subcommand(v_volume)) {
                const auto [f, h] = load_pair(io, o, "verify volume");
                reps.push_back(verify_volume_monotonicity(f, h, Params{o.n, o.s, o.p}, quad_for(),
                                                          parse_diff_mode(io.mode)));
            } else if (c_verify->got_subcommand(v_limit)) {
                const GridFunction f = load_function(io.spec, io.grid, o, "verify limit");
                reps.push_back(verify_limit_s1(f, parse_body_spec(io.body, o.n), o.p,
                                               parse_double_list(s_list_text, "verify limit"),
                                               quad_for()));
            } else if (c_verify->got_subcommand(v_invariance)) {
                const auto [f, h] = load_pair(io, o, "verify invariance");
                reps.push_back(verify_invariance(f, h, Params{o.n, o.s, o.p}, quad_for()));
            } else if (c_verify->got_subcommand(v_riesz)) {
                reps.push_back(battery_riesz(riesz_count, o.seed));
            }
            emit(reps, io);
            return verdict_exit(reps);
        }

        if (app.got_subcommand(c_suite)) {
            const AcceptanceOutcome outcome = run_acceptance(slow);
            for (const CriterionResult& c : outcome.criteria) {
                const char* tag = c.passed ? "PASS" : (c.warn_only ? "WARN" : "FAIL");
                std::cout << "criterion " << c.id << ": " << tag << " - " << c.name
                          << " - " << c.detail << "\n";
            }
            if (!io.out.empty()) write_text_file(io.out, reports_to_json(outcome.reports) + "\n");
            if (!io.csv.empty()) {
                write_text_file(io.csv + "-terms.csv", terms_csv(outcome.reports));
                write_text_file(io.csv + "-margins.csv", margins_csv(outcome.reports));
            }
            return outcome.all_passed() ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        if (dynamic_cast<const CLI::CallForHelp*>(&e) != nullptr ||
            dynamic_cast<const CLI::CallForAllHelp*>(&e) != nullptr ||
            dynamic_cast<const CLI::CallForVersion*>(&e) != nullptr) {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const param_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const size_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace fracgeo
