// Command-line front end: instance generation, batch verification, s-sweeps,
// Chernoff experiments and oracle cross-checks. All output is deterministic
// for a fixed (seed, config) pair; numeric CSV fields use %.17g formatting.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relmod/hypothesis_testing.hpp"
#include "relmod/inequalities.hpp"
#include "relmod/integral_oracle.hpp"
#include "relmod/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relmod;

namespace {

constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kVerificationFailure = 1,
    kInputError = 2,
    kInternalError = 3,
};

std::vector<int> parse_dims(const std::string& dims) {
    std::vector<int> out;
    std::stringstream ss(dims);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stoi(tok));
    if (out.empty()) throw InputError("--dims: empty block pattern");
    return out;
}

std::vector<double> default_s_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
    return g;
}

std::vector<double> parse_s_grid(const std::string& spec) {
    if (spec.empty()) return default_s_grid();
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    for (double s : out)
        if (s < 0.0 || s > 1.0) throw InputError("--s-grid: values must lie in [0,1]");
    if (out.empty()) throw InputError("--s-grid: empty grid");
    return out;
}

struct CommonOpts {
    std::uint64_t seed = 1;
    int count = 1;
    std::string dims = "2";
    std::string s_grid;
    std::string out;
    std::string format = "csv";
    std::string kind = "random";
    int n_max = 6;
    TolerancePolicy tol;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "Deterministic seed");
    cmd->add_option("--count", o.count, "Number of instances")->check(CLI::PositiveNumber);
    cmd->add_option("--dims", o.dims, "Block pattern, e.g. 2 or 2,3");
    cmd->add_option("--s-grid", o.s_grid, "Comma-separated s values in [0,1]");
    cmd->add_option("--tol-ineq", o.tol.ineq_slack, "Relative inequality slack");
    cmd->add_option("--tol-support", o.tol.support_cut, "Relative support cut");
    cmd->add_option("--out", o.out, "Output path");
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--n-max", o.n_max, "Copy count bound for chernoff runs");
    cmd->add_option("--kind", o.kind, "Instance kind")
        ->check(CLI::IsMember({"random", "equality", "ordered-quadruple", "rank-deficient"}));
}

InstanceFile make_instance(const CommonOpts& o, int index) {
    Algebra algebra(parse_dims(o.dims));
    // Distinct counter spans per instance keep the streams independent.
    CounterRng rng(o.seed, static_cast<std::uint64_t>(index) << 32);
    InstanceFile inst{algebra, {}, o.seed, o.kind, 0.5};
    std::ostringstream desc;
    desc << o.kind << " instance " << index << " (seed " << o.seed << ")";
    inst.description = desc.str();

    if (o.kind == "equality") {
        const int total = algebra.total_dim();
        const int rc = total >= 3 ? total - 2 : 0;
        const int rp = total >= 2 ? 1 : 1;
        const int rm = total >= 2 ? 1 : 0;
        auto [eta, phi] = construct_equality_instance(
            algebra, rp, rm, rc, CounterRng::word(o.seed, static_cast<std::uint64_t>(index)),
            o.tol);
        inst.functionals["eta"] = eta.densities;
        inst.functionals["phi"] = phi.densities;
    } else if (o.kind == "ordered-quadruple") {
        NormalFunctional phi1 = random_functional(rng, algebra);
        NormalFunctional phi2 = phi1 + random_functional(rng, algebra);
        NormalFunctional eta = random_functional(rng, algebra);
        NormalFunctional psi = eta + random_functional(rng, algebra);
        inst.functionals["phi1"] = phi1.densities;
        inst.functionals["phi2"] = phi2.densities;
        inst.functionals["eta"] = eta.densities;
        inst.functionals["psi"] = psi.densities;
    } else {
        const bool deficient = o.kind == "rank-deficient";
        auto rank_of = [&](int n) { return deficient ? (n + 1) / 2 : -1; };
        std::vector<Matrix> de, dp;
        for (int n : algebra.blocks) {
            de.push_back(random_psd(rng, n, rank_of(n) < 0 ? n : rank_of(n)));
            dp.push_back(random_psd(rng, n, rank_of(n) < 0 ? n : rank_of(n)));
        }
        NormalFunctional eta(algebra, de, o.tol);
        NormalFunctional phi(algebra, dp, o.tol);
        inst.functionals["eta"] = eta.densities;
        inst.functionals["phi"] = phi.densities;
        NormalFunctional rho = (1.0 / eta.total()) * eta;
        NormalFunctional sigma = (1.0 / phi.total()) * phi;
        inst.functionals["rho"] = rho.densities;
        inst.functionals["sigma"] = sigma.densities;
    }
    return inst;
}

int cmd_gen(const CommonOpts& o) {
    fs::path dir = o.out.empty() ? fs::path("instances") : fs::path(o.out);
    fs::create_directories(dir);
    for (int i = 0; i < o.count; ++i) {
        std::ostringstream name;
        name << "instance_" << std::setfill('0') << std::setw(5) << i << ".json";
        save_instance((dir / name.str()).string(), make_instance(o, i));
    }
    std::cout << "wrote " << o.count << " instance(s) to " << dir.string() << "\n";
    return kOk;
}

struct ResultRow {
    std::string id;
    std::string claim;
    double s;
    double lhs;
    double rhs;
    double gap;
    bool pass;
};

void append_pair_claims(std::vector<ResultRow>& rows, const std::string& id,
                        const NormalFunctional& eta, const NormalFunctional& phi,
                        const std::vector<double>& grid, const TolerancePolicy& tol) {
    for (double s : grid) {
        VerificationReport m = verify_main(eta, phi, s, tol);
        rows.push_back({id, "main", s, m.lhs, m.rhs, m.gap, m.pass});
        VerificationReport c = verify_corollary(eta, phi, s, tol);
        rows.push_back({id, "corollary", s, c.lhs, c.rhs, c.gap, c.pass});
        if (leq(phi, eta, tol)) {
            EquivalenceReport ec = verify_lemma_ec(eta, phi, s, tol);
            rows.push_back({id, "lemma_ec", s, ec.report.lhs, ec.report.rhs,
                            ec.report.gap, ec.report.pass});
        }
    }
}

void append_instance_claims(std::vector<ResultRow>& rows, const std::string& id,
                            const InstanceFile& inst, const std::vector<double>& grid,
                            const TolerancePolicy& tol) {
    if (inst.functionals.count("phi1")) {
        NormalFunctional phi1 = functional_from(inst, "phi1", tol);
        NormalFunctional phi2 = functional_from(inst, "phi2", tol);
        NormalFunctional eta = functional_from(inst, "eta", tol);
        NormalFunctional psi = functional_from(inst, "psi", tol);
        for (double s : grid) {
            VerificationReport r = verify_diff_monotonicity(phi1, phi2, eta, psi, s, tol);
            rows.push_back({id, "diff_monotonicity", s, r.lhs, r.rhs, r.gap, r.pass});
        }
        return;
    }
    NormalFunctional eta = functional_from(inst, "eta", tol);
    NormalFunctional phi = functional_from(inst, "phi", tol);
    append_pair_claims(rows, id, eta, phi, grid, tol);
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "id,claim,s,lhs,rhs,gap,pass\n";
    for (const ResultRow& r : rows)
        os << r.id << ',' << r.claim << ',' << format_number(r.s) << ','
           << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
           << format_number(r.gap) << ',' << (r.pass ? 1 : 0) << '\n';
}

json summary_json(const CommonOpts& o, const std::vector<ResultRow>& rows) {
    json results = json::array();
    double min_gap = std::numeric_limits<double>::infinity();
    std::string argmin_id;
    int failures = 0;
    for (const ResultRow& r : rows) {
        results.push_back({{"id", r.id}, {"claim", r.claim}, {"s", r.s},
                           {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap},
                           {"pass", r.pass}});
        if (r.gap < min_gap) {
            min_gap = r.gap;
            argmin_id = r.id;
        }
        if (!r.pass) ++failures;
    }
    json cfg = {{"count", o.count}, {"dims", o.dims}, {"kind", o.kind},
                {"format", o.format}};
    return json{{"version", kVersion},
                {"seed", o.seed},
                {"config", cfg},
                {"results", results},
                {"summary", {{"min_gap", min_gap}, {"argmin_id", argmin_id},
                             {"failures", failures}}}};
}

void write_output(const CommonOpts& o, const std::vector<ResultRow>& rows) {
    if (o.format == "json") {
        json j = summary_json(o, rows);
        if (o.out.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw InputError("cannot open output file " + o.out);
            f << j.dump(2) << "\n";
        }
        return;
    }
    if (o.out.empty()) {
        write_csv(std::cout, rows);
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw InputError("cannot open output file " + o.out);
        write_csv(f, rows);
    }
    // terse stdout summary so batch runs are greppable
    json j = summary_json(o, rows);
    std::cout << j["summary"].dump() << "\n";
}

int cmd_verify(CommonOpts& o, const std::vector<std::string>& files) {
    std::vector<double> grid = parse_s_grid(o.s_grid);
    std::vector<ResultRow> rows;
    if (!files.empty()) {
        for (const std::string& path : files)
            append_instance_claims(rows, fs::path(path).stem().string(),
                                   load_instance(path), grid, o.tol);
    } else {
        for (int i = 0; i < o.count; ++i) {
            std::ostringstream id;
            id << o.kind << "_" << i;
            append_instance_claims(rows, id.str(), make_instance(o, i), grid, o.tol);
        }
    }
    write_output(o, rows);
    for (const ResultRow& r : rows)
        if (!r.pass) return kVerificationFailure;
    return kOk;
}

int cmd_sweep(const CommonOpts& o, const std::string& file, int resolution) {
    InstanceFile inst = load_instance(file);
    NormalFunctional eta = functional_from(inst, "eta", o.tol);
    NormalFunctional phi = functional_from(inst, "phi", o.tol);
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!o.out.empty()) {
        f.open(o.out, std::ios::binary);
        if (!f) throw InputError("cannot open output file " + o.out);
        os = &f;
    }
    *os << "s,overlap,main_lhs,main_gap,corollary_gap\n";
    for (int i = 0; i <= resolution; ++i) {
        const double s = static_cast<double>(i) / resolution;
        VerificationReport m = verify_main(eta, phi, s, o.tol);
        VerificationReport c = verify_corollary(eta, phi, s, o.tol);
        *os << format_number(s) << ',' << format_number(m.rhs) << ','
            << format_number(m.lhs) << ',' << format_number(m.gap) << ','
            << format_number(c.gap) << '\n';
    }
    return kOk;
}

int cmd_chernoff(const CommonOpts& o, const std::string& file) {
    InstanceFile inst = load_instance(file);
    TestingInstance instance(functional_from(inst, "rho", o.tol),
                             functional_from(inst, "sigma", o.tol), inst.prior_p);
    ChernoffResult chern = minimize_q(instance.rho, instance.sigma, o.tol);
    std::vector<ConvergenceRow> rows = exponent_convergence(instance, o.n_max, 1024, o.tol);

    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!o.out.empty()) {
        f.open(o.out, std::ios::binary);
        if (!f) throw InputError("cannot open output file " + o.out);
        os = &f;
    }
    *os << "n,p_error,rate_finite,rate,bound_finite,bound_exponent\n";
    for (const ConvergenceRow& r : rows)
        *os << r.n << ',' << format_number(r.p_error) << ',' << (r.rate_finite ? 1 : 0)
            << ',' << format_number(r.rate) << ',' << (r.bound_finite ? 1 : 0) << ','
            << format_number(r.bound_exponent) << '\n';

    json j = {{"version", kVersion},
              {"s_star", chern.s_star},
              {"q_star", chern.q_star},
              {"exponent", {{"finite", chern.exponent_finite},
                            {"value", chern.exponent_finite ? chern.exponent : 0.0}}}};
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_oracle_check(const CommonOpts& o) {
    std::vector<double> grid =
        o.s_grid.empty() ? std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}
                         : parse_s_grid(o.s_grid);
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!o.out.empty()) {
        f.open(o.out, std::ios::binary);
        if (!f) throw InputError("cannot open output file " + o.out);
        os = &f;
    }
    Algebra algebra(parse_dims(o.dims));
    bool all_ok = true;
    *os << "instance,s,rel_diff,pass\n";
    for (int i = 0; i < o.count; ++i) {
        CounterRng rng(o.seed, static_cast<std::uint64_t>(i) << 32);
        NormalFunctional eta = random_functional(rng, algebra);
        NormalFunctional phi = random_functional(rng, algebra);
        for (double s : grid) {
            const double spectral = overlap_F(eta, phi, s, o.tol);
            const double integral = overlap_integral(eta, phi, s, {}, o.tol).value;
            const double rel = std::abs(spectral - integral) / std::max(spectral, 1e-300);
            const bool ok = rel <= 1e-6;
            all_ok &= ok;
            *os << i << ',' << format_number(s) << ',' << format_number(rel) << ','
                << (ok ? 1 : 0) << '\n';
        }
    }
    return all_ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional modular-operator inequality toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> verify_files;
    std::string sweep_file, chernoff_file;
    int sweep_resolution = 100;

    CLI::App* gen = app.add_subcommand("gen", "generate instance files");
    add_common_flags(gen, opts);

    CLI::App* verify = app.add_subcommand("verify", "verify inequalities on instances");
    add_common_flags(verify, opts);
    verify->add_option("files", verify_files, "instance files (omit to generate from config)");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep s for one instance");
    add_common_flags(sweep, opts);
    sweep->add_option("file", sweep_file, "instance file")->required();
    sweep->add_option("--resolution", sweep_resolution, "number of s steps")
        ->check(CLI::PositiveNumber);

    CLI::App* chernoff = app.add_subcommand("chernoff", "n-copy error exponent experiment");
    add_common_flags(chernoff, opts);
    chernoff->add_option("file", chernoff_file, "instance file with rho and sigma")
        ->required();

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "spectral vs integral fractional powers");
    add_common_flags(oracle, opts);

    try {
        app.parse(argc, argv);
        opts.tol.validate();
        if (gen->parsed()) return cmd_gen(opts);
        if (verify->parsed()) return cmd_verify(opts, verify_files);
        if (sweep->parsed()) return cmd_sweep(opts, sweep_file, sweep_resolution);
        if (chernoff->parsed()) return cmd_chernoff(opts, chernoff_file);
        if (oracle->parsed()) return cmd_oracle_check(opts);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kInternalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternalError;
    }
    return kInternalError;
}
