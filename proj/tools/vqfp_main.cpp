#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vqfp/duality.hpp"
#include "vqfp/io.hpp"
#include "vqfp/oracle.hpp"
#include "vqfp/scalarize.hpp"

namespace {

using namespace vqfp;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitNotKkt = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitValidation = 4;

struct CommonOpts {
    std::string instance_path;
    std::string out_path;
    bool json_only = false;
    std::vector<std::string> tol_overrides;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("instance", c.instance_path, "Instance JSON file")->required();
    cmd->add_option("--out", c.out_path, "Write the JSON report to this file");
    cmd->add_flag("--json-only", c.json_only, "Suppress the human-readable summary");
    cmd->add_option("--tol", c.tol_overrides,
                    "Tolerance override as name=value (feas, kkt, psd, z, dom, strict, alpha)");
    cmd->add_option("--seed", c.seed, "RNG seed for randomized pieces");
}

RunConfig make_config(const CommonOpts& c) {
    RunConfig cfg;
    cfg.seed = c.seed;
    for (const std::string& ov : c.tol_overrides) {
        const size_t eq = ov.find('=');
        if (eq == std::string::npos) throw ConfigError("tolerance override needs name=value");
        const std::string name = ov.substr(0, eq);
        const double v = parse_vector(ov.substr(eq + 1))(0);
        if (v <= 0.0) throw ConfigError("tolerances must be positive");
        if (name == "feas") cfg.tol.feas = v;
        else if (name == "kkt") cfg.tol.kkt = v;
        else if (name == "psd") cfg.tol.psd = v;
        else if (name == "z") cfg.tol.z = v;
        else if (name == "dom") cfg.tol.dom = v;
        else if (name == "strict") cfg.tol.strict = v;
        else if (name == "alpha") cfg.tol.alpha = v;
        else throw ConfigError("unknown tolerance name: " + name);
    }
    return cfg;
}

void emit(const CommonOpts& c, const Json& report, const std::string& summary) {
    if (!c.json_only && !summary.empty()) std::cout << summary << "\n";
    const std::string text = report.dump(2);
    if (!c.out_path.empty()) {
        std::ofstream out(c.out_path);
        if (!out) throw ConfigError("cannot open output file: " + c.out_path);
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
}

Json eigen_dump(const ProblemInstance& p) {
    Json j = Json::array();
    for (const RatioObjective& obj : p.objectives) {
        const EigenDecomposition ea = eig_sym(obj.f.Q);
        const EigenDecomposition eb = eig_sym(obj.g.Q);
        Json jo;
        jo["A"] = {{"eigenvalues", to_json(ea.eigenvalues)},
                   {"eigenvectors", to_json(ea.eigenvectors)}};
        jo["B"] = {{"eigenvalues", to_json(eb.eigenvalues)},
                   {"eigenvectors", to_json(eb.eigenvectors)}};
        j.push_back(jo);
    }
    return j;
}

int run_kkt(const CommonOpts& c, const std::string& point) {
    const RunConfig cfg = make_config(c);
    const ProblemInstance p = load_instance(c.instance_path, cfg.tol);
    const Vector x = parse_vector(point);
    const MultiplierSearch ms = find_multipliers(p, x, cfg.tol);
    Json j;
    j["point"] = to_json(x);
    j["found"] = ms.found;
    j["floor"] = ms.floor;
    if (ms.pair) j["multipliers"] = to_json(*ms.pair);
    emit(c, j, ms.found ? "multipliers recovered" : "no strictly positive tau exists");
    return ms.found ? kExitOk : kExitNotKkt;
}

RouteSelection parse_route(const std::string& r) {
    if (r == "auto") return RouteSelection::Auto;
    if (r == "psd") return RouteSelection::Psd;
    if (r == "h") return RouteSelection::H;
    if (r == "eigen") return RouteSelection::Eigen;
    if (r == "zmin") return RouteSelection::Zmin;
    throw ConfigError("unknown route: " + r);
}

int run_certify(const CommonOpts& c, const std::string& point, const std::string& route,
                const std::string& tau, bool dump_eigen) {
    const RunConfig cfg = make_config(c);
    const ProblemInstance p = load_instance(c.instance_path, cfg.tol);
    const Vector x = parse_vector(point);
    CertifyOptions opts;
    opts.route = parse_route(route);
    if (!tau.empty()) opts.tau_override = parse_vector(tau);
    const Certificate cert = certify_point(p, x, cfg, opts);
    Json j = to_json(cert);
    if (dump_eigen) j["eigen"] = eigen_dump(p);
    emit(c, j, std::string("status: ") + to_string(cert.status));
    switch (cert.status) {
        case CertStatus::CertifiedPareto: return kExitOk;
        case CertStatus::NotKkt: return kExitNotKkt;
        case CertStatus::Inconclusive: return kExitInconclusive;
    }
    return kExitInternal;
}

/// Simplex lattice with `divisions` parts per weight coordinate, interior
/// points only (all weights positive).
void weight_lattice(int m, int divisions, std::vector<Vector>& out) {
    std::vector<int> parts(static_cast<size_t>(m), 0);
    const std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == m - 1) {
            parts[static_cast<size_t>(i)] = left;
            bool interior = true;
            for (int v : parts) interior = interior && v > 0;
            if (interior) {
                Vector w(m);
                for (int k = 0; k < m; ++k)
                    w(k) = static_cast<double>(parts[static_cast<size_t>(k)]) / divisions;
                out.push_back(w);
            }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[static_cast<size_t>(i)] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, divisions);
}

int run_search(const CommonOpts& c, const std::string& weights, int sweep,
               const std::string& x0_text, bool seek_psd, const std::string& anchor_text) {
    const RunConfig cfg = make_config(c);
    const ProblemInstance p = load_instance(c.instance_path, cfg.tol);
    const int m = p.num_objectives();

    if (seek_psd) {
        if (anchor_text.empty())
            throw ConfigError("--seek-psd-weights needs --point for the anchor");
        const Vector xstar = parse_vector(anchor_text);
        Json j;
        j["point"] = to_json(xstar);
        bool found = false;
        Vector w_found;
        const MultiplierSearch ms = find_multipliers(p, xstar, cfg.tol);
        if (ms.found) {
            const Vector w = tau_over_g(p, ms.pair->tau, xstar);
            if (is_psd(build_F(p, w, xstar), cfg.tol.psd)) {
                found = true;
                w_found = w;
            }
        }
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unif(0.05, 1.0);
        for (int t = 0; t < 256 && !found; ++t) {
            Vector w(m);
            for (int i = 0; i < m; ++i) w(i) = unif(rng);
            if (is_psd(build_F(p, w, xstar), cfg.tol.psd)) {
                found = true;
                w_found = w;
            }
        }
        j["psd_weights_found"] = found;
        if (found) j["weights"] = to_json(w_found);
        emit(c, j, found ? "PSD-making weights found" : "no PSD-making weights found");
        return kExitOk;
    }

    std::vector<Vector> ws;
    if (!weights.empty()) {
        ws.push_back(parse_vector(weights));
    } else if (sweep > 0) {
        weight_lattice(m, sweep, ws);
    } else {
        ws.push_back(Vector::Constant(m, 1.0 / m));
    }

    Vector x0;
    if (!x0_text.empty()) {
        x0 = parse_vector(x0_text);
    } else {
        const EffectiveBox eb = derive_box(p);
        if (!eb.box) throw ConfigError("search: give --x0 or an instance with a box");
        x0 = 0.5 * (eb.box->lo + eb.box->hi);
    }

    Json results = Json::array();
    for (const Vector& w : ws) {
        const DinkelbachResult dr = dinkelbach_search(p, w, x0, cfg);
        Json item;
        item["weights"] = to_json(w);
        item["point"] = to_json(dr.x);
        item["ratios"] = to_json(evaluate_ratios(p, dr.x));
        item["converged"] = dr.converged;
        item["iterations"] = dr.iterations;
        if (!dr.stall_reason.empty()) item["stall_reason"] = dr.stall_reason;
        bool certified = false;
        if (dr.converged) {
            try {
                certified =
                    certify_point(p, dr.x, cfg).status == CertStatus::CertifiedPareto;
            } catch (const InfeasiblePoint&) {
                certified = false;
            }
        }
        item["certified"] = certified;
        results.push_back(item);
    }
    emit(c, results, std::to_string(ws.size()) + " weight vector(s) processed");
    return kExitOk;
}

int run_oracle(const CommonOpts& c, const std::string& point, bool front, double step) {
    const RunConfig cfg = make_config(c);
    const ProblemInstance p = load_instance(c.instance_path, cfg.tol);
    if (front) {
        const std::vector<FrontPoint> fp =
            approximate_pareto_front(p, step, cfg.tol.dom, cfg.tol.feas);
        Json j = Json::array();
        for (const FrontPoint& f : fp)
            j.push_back({{"x", to_json(f.x)}, {"ratios", to_json(f.ratios)}});
        emit(c, j, std::to_string(fp.size()) + " front point(s)");
        return kExitOk;
    }
    if (point.empty()) throw ConfigError("oracle: give --point or --front");
    const Vector x = parse_vector(point);
    if (!feasibility(p, x, cfg.tol.feas).feasible)
        throw InfeasiblePoint("oracle: query point is infeasible");
    const DominanceReport rep = dominance_check(p, x, step, cfg.tol.dom, cfg.tol.feas);
    emit(c, to_json(rep), rep.dominated ? "dominated" : "undominated on the grid");
    return kExitOk;
}

int run_dual_check(const CommonOpts& c, bool roundtrip, const std::string& point,
                   const std::string& primal, const std::string& dual_u,
                   const std::string& tau, const std::string& lambda) {
    const RunConfig cfg = make_config(c);
    const ProblemInstance p = load_instance(c.instance_path, cfg.tol);

    if (roundtrip) {
        if (point.empty()) throw ConfigError("dual-check --roundtrip needs --point");
        const Vector x = parse_vector(point);
        const MultiplierSearch ms = find_multipliers(p, x, cfg.tol);
        Json j;
        j["point"] = to_json(x);
        j["step1_found"] = ms.found;
        if (!ms.found) {
            emit(c, j, "Step 1 failed; no dual point constructible");
            return kExitNotKkt;
        }
        const StrongDualityResult sd = strong_duality_construct(p, x, *ms.pair, cfg.tol);
        j["constructed"] = sd.constructed;
        if (!sd.constructed) {
            j["reason"] = sd.reason;
            emit(c, j, "strong duality: NotConstructible (" + sd.reason + ")");
            return kExitOk;
        }
        j["dual"] = to_json(*sd.dual);
        j["equal_values"] = sd.equal_values;
        const DualFeasibility df = dual_feasible(p, *sd.dual, cfg.tol);
        j["dual_feasible"] = df.feasible;
        if (!df.feasible) j["violated"] = df.which;
        const Certificate cert = converse_duality_check(p, *sd.dual, cfg);
        j["converse_certificate"] = to_json(cert);
        emit(c, j, std::string("converse re-certification: ") + to_string(cert.status));
        return cert.status == CertStatus::CertifiedPareto ? kExitOk : kExitInconclusive;
    }

    if (dual_u.empty() || tau.empty())
        throw ConfigError("dual-check needs --dual-u and --tau (and --lambda if constrained)");
    DualPoint dp;
    dp.u = parse_vector(dual_u);
    dp.tau = parse_vector(tau);
    dp.lambda = lambda.empty() ? Vector::Zero(p.num_constraints()) : parse_vector(lambda);
    Json j;
    const DualFeasibility df = dual_feasible(p, dp, cfg.tol);
    j["dual_feasible"] = df.feasible;
    if (!df.feasible) j["violated"] = df.which;
    j["dual_point"] = to_json(dp);
    if (!primal.empty()) {
        const Vector x = parse_vector(primal);
        try {
            const WeakDualityReport wr = weak_duality_check(p, x, dp, cfg.tol);
            j["weak_duality"] = {
                {"outcome", wr.outcome == WeakDualityOutcome::Consistent
                                ? "consistent"
                                : "counterexample_found"},
                {"primal_ratios", to_json(wr.primal_ratios)},
                {"dual_ratios", to_json(wr.dual_ratios)}};
        } catch (const HypothesisNotMet& e) {
            j["weak_duality"] = {{"outcome", "hypothesis_not_met"}, {"detail", e.what()}};
        }
        const StrictConverseReport sc = strict_converse_check(p, x, dp, cfg.tol, cfg.tol.point);
        const char* out = sc.outcome == StrictConverseOutcome::SamePoint ? "same_point"
                          : sc.outcome == StrictConverseOutcome::Violation ? "violation"
                                                                           : "hypothesis_not_met";
        j["strict_converse"] = {{"outcome", out},
                                {"objective_gap", sc.objective_gap},
                                {"point_distance", sc.point_distance},
                                {"details", sc.details}};
    }
    emit(c, j, df.feasible ? "dual point feasible" : "dual point infeasible: " + df.which);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto certification for vector quadratic fractional programs"};
    app.require_subcommand(1);

    CommonOpts c_kkt, c_cert, c_search, c_oracle, c_dual;
    std::string point, cert_point, cert_route = "auto", cert_tau;
    bool dump_eigen = false;
    std::string s_weights, s_x0, s_anchor;
    int s_sweep = 0;
    bool s_seek_psd = false;
    std::string o_point;
    bool o_front = false;
    double o_step = 0.0;
    bool d_roundtrip = false;
    std::string d_point, d_primal, d_dual_u, d_tau, d_lambda;

    CLI::App* kkt = app.add_subcommand("kkt", "Recover Step-1 multipliers at a point");
    add_common(kkt, c_kkt);
    kkt->add_option("--point", point, "Query point x0,x1,...")->required();

    CLI::App* certify = app.add_subcommand("certify", "Run the Pareto optimality test");
    add_common(certify, c_cert);
    certify->add_option("--point", cert_point, "Query point")->required();
    certify->add_option("--route", cert_route, "auto|psd|h|eigen|zmin");
    certify->add_option("--tau", cert_tau, "Override the recovered tau");
    certify->add_flag("--dump-eigen", dump_eigen, "Attach objective eigendecompositions");

    CLI::App* search = app.add_subcommand("search", "Weighted scalarization fixed-point search");
    add_common(search, c_search);
    search->add_option("--weights", s_weights, "Positive weights w1,w2,...");
    search->add_option("--sweep", s_sweep, "Simplex-lattice weight sweep with N divisions");
    search->add_option("--x0", s_x0, "Start point (default: box center)");
    search->add_flag("--seek-psd-weights", s_seek_psd,
                     "Look for weights making F(w, x*) PSD at --point");
    search->add_option("--point", s_anchor, "Anchor point for --seek-psd-weights");

    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force grid dominance oracle");
    add_common(oracle, c_oracle);
    oracle->add_option("--point", o_point, "Query point for a dominance report");
    oracle->add_flag("--front", o_front, "Emit the approximate Pareto front");
    oracle->add_option("--step", o_step, "Grid spacing")->required();

    CLI::App* dual = app.add_subcommand("dual-check", "Duality theorem checks");
    add_common(dual, c_dual);
    dual->add_flag("--roundtrip", d_roundtrip, "Strong-duality construct + converse chain");
    dual->add_option("--point", d_point, "Primal point for --roundtrip");
    dual->add_option("--primal", d_primal, "Primal point for weak/strict checks");
    dual->add_option("--dual-u", d_dual_u, "Dual point u");
    dual->add_option("--tau", d_tau, "Dual tau");
    dual->add_option("--lambda", d_lambda, "Dual lambda");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    try {
        if (kkt->parsed()) return run_kkt(c_kkt, point);
        if (certify->parsed())
            return run_certify(c_cert, cert_point, cert_route, cert_tau, dump_eigen);
        if (search->parsed())
            return run_search(c_search, s_weights, s_sweep, s_x0, s_seek_psd, s_anchor);
        if (oracle->parsed()) return run_oracle(c_oracle, o_point, o_front, o_step);
        if (dual->parsed())
            return run_dual_check(c_dual, d_roundtrip, d_point, d_primal, d_dual_u, d_tau,
                                  d_lambda);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InfeasiblePoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
