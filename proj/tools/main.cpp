#include <cstdio>
#include <fstream>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cuckoo/degree_spec.hpp"
#include "cuckoo/errors.hpp"
#include "cuckoo/experiments.hpp"
#include "cuckoo/hypergraph.hpp"
#include "cuckoo/orientation.hpp"
#include "cuckoo/peeling.hpp"
#include "cuckoo/sigmoid_fit.hpp"
#include "cuckoo/thresholds.hpp"
#include "cuckoo/xorsat.hpp"

namespace {

using namespace cuckoo;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    return buf;
}

void print_field(std::ostream& out, const std::string& name, double value) { out << name << ' ' << fixed10(value) << '\n'; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to the named file, or standard output for "" and "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// Edge-size distribution: exactly one of --k, --spec, --kappa.
struct DegreeFlags {
    std::optional<int> k;
    std::string spec;
    std::optional<double> kappa;

    void add(CLI::App& cmd) {
        auto* ko = cmd.add_option("--k", k, "Edge size of a k-uniform hypergraph (2..64)");
        auto* so = cmd.add_option("--spec", spec, "Edge-size distribution as JSON, e.g. '{\"3\":0.5,\"4\":0.5}'");
        auto* xo = cmd.add_option("--kappa", kappa, "Mean edge size; uses the two-point distribution on floor/ceil");
        ko->excludes(so)->excludes(xo);
        so->excludes(xo);
    }
    bool given() const { return k.has_value() || !spec.empty() || kappa.has_value(); }
    bool regular() const { return k.has_value(); }
    DegreeSpec distribution() const {
        if (k) return DegreeSpec::point_mass(*k);
        if (kappa) return optimal_distribution(*kappa);
        if (!spec.empty()) return DegreeSpec::parse(spec);
        throw UsageError("one of --k, --spec, --kappa is required");
    }
};

// Hypergraph source: --input file, or a sample drawn from the degree flags.
struct InstanceFlags {
    DegreeFlags degrees;
    std::string input;
    std::optional<std::size_t> m;
    std::optional<double> c;
    std::optional<std::size_t> n;
    std::uint64_t seed = 1;

    void add(CLI::App& cmd) {
        degrees.add(cmd);
        cmd.add_option("--input", input, "Read the hypergraph from this file ('m n' header, one edge per line)");
        cmd.add_option("--m", m, "Number of nodes (buckets) of a sampled hypergraph");
        auto* co = cmd.add_option("--c", c, "Edge density n/m of a sampled hypergraph; n = round(c*m)");
        auto* no = cmd.add_option("--n", n, "Number of edges (keys) of a sampled hypergraph");
        co->excludes(no);
        cmd.add_option("--seed", seed, "Random seed")->capture_default_str();
    }

    Hypergraph load() const {
        if (!input.empty()) {
            if (degrees.given() || m || c || n) throw UsageError("--input cannot be combined with sampling flags");
            return Hypergraph::from_text(read_file(input));
        }
        if (!m) throw UsageError("either --input or --m with --c/--n and an edge-size flag is required");
        if (!c && !n) throw UsageError("--c or --n is required when sampling");
        if (c && !(*c >= 0.0)) throw UsageError("--c must be non-negative");
        const std::size_t edges = n ? *n : edges_at(*c, *m);
        if (degrees.regular()) return sample_regular(*m, edges, *degrees.k, seed);
        return sample_mixed(*m, edges, degrees.distribution(), seed);
    }
};

int cmd_threshold(const DegreeFlags& degrees, int ell, bool json) {
    nlohmann::json j;
    double c_star = 0.0;
    double beta_star = 0.0;
    double c_thr = 0.0;
    double beta_thr = 0.0;
    if (degrees.regular()) {
        const auto r = orientation_threshold(*degrees.k, ell);
        c_star = r.c_star;
        beta_star = r.beta_star;
        c_thr = r.c_threshold;
        beta_thr = r.beta_threshold;
        j["k"] = *degrees.k;
    } else {
        const auto spec = degrees.distribution();
        const auto r = mixed_threshold(spec, ell);
        c_star = r.c_star;
        beta_star = r.beta_star;
        c_thr = r.c_threshold;
        beta_thr = r.beta_threshold;
        j["spec"] = spec.to_json();
        j["kappa"] = spec.mean();
    }
    if (json) {
        j["ell"] = ell;
        j["c_star"] = c_star;
        j["beta_star"] = beta_star;
        j["c_threshold"] = c_thr;
        j["beta_threshold"] = beta_thr;
        std::cout << j.dump() << '\n';
        return 0;
    }
    if (degrees.regular()) {
        std::cout << "k " << *degrees.k << '\n';
    } else {
        print_field(std::cout, "kappa", j["kappa"].get<double>());
    }
    std::cout << "ell " << ell << '\n';
    print_field(std::cout, "c_star", c_star);
    print_field(std::cout, "beta_star", beta_star);
    print_field(std::cout, "c_threshold", c_thr);
    print_field(std::cout, "beta_threshold", beta_thr);
    return 0;
}

void print_core(const CoreResult& r, std::size_t m, std::size_t n) {
    std::cout << "core_nodes " << r.stats.core_nodes << '\n';
    std::cout << "core_edges " << r.stats.core_edges << '\n';
    print_field(std::cout, "node_fraction", m == 0 ? 0.0 : static_cast<double>(r.stats.core_nodes) / m);
    print_field(std::cout, "edge_fraction", n == 0 ? 0.0 : static_cast<double>(r.stats.core_edges) / n);
    print_field(std::cout, "edge_density", r.stats.edge_density);
    std::cout << "rounds " << r.stats.rounds << '\n';
}

int cmd_core(const InstanceFlags& inst, int ell, const std::string& output) {
    if (inst.input.empty()) {
        if (!inst.c) throw UsageError("core prediction needs --c (or use --input)");
        CorePrediction p;  // empty core below the appearance threshold
        try {
            p = inst.degrees.regular() ? predict_core(*inst.degrees.k, ell, *inst.c)
                                       : predict_core(inst.degrees.distribution(), ell, *inst.c);
        } catch (const NoSupercriticalSolution&) {
        }
        print_field(std::cout, "predicted_beta", p.beta);
        print_field(std::cout, "predicted_node_fraction", p.node_fraction);
        print_field(std::cout, "predicted_edge_fraction", p.edge_fraction);
        print_field(std::cout, "predicted_edge_density", p.edge_density);
        if (!inst.m) return 0;
    }
    const Hypergraph g = inst.load();
    const CoreResult r = peel(g, ell);
    print_core(r, g.node_count(), g.edge_count());
    if (!output.empty()) Output(output).stream() << r.core.to_text();
    return 0;
}

int cmd_orient(const InstanceFlags& inst, int ell, const std::string& method, const std::string& output) {
    const Hypergraph g = inst.load();
    Orientation o;
    if (method == "selfless") {
        o = selfless_orient(g, ell, inst.seed);
    } else if (method == "matching") {
        o = matching_orient(g, ell);
    } else {
        throw UsageError("--method must be selfless or matching");
    }
    std::cout << "method " << method << '\n';
    std::cout << "nodes " << g.node_count() << '\n';
    std::cout << "edges " << g.edge_count() << '\n';
    std::cout << "success " << (o.success ? "true" : "false") << '\n';
    std::cout << "steps " << o.steps << '\n';
    std::cout << "failed_at_step " << o.failed_at_step << '\n';
    std::cout << "verified " << (verify(g, o, ell) ? "true" : "false") << '\n';
    if (!output.empty()) {
        Output file(output);
        auto& out = file.stream();
        for (const auto& t : o.target) {
            if (t) {
                out << *t << '\n';
            } else {
                out << "-\n";
            }
        }
    }
    return 0;
}

int cmd_xorsat(const InstanceFlags& inst, const std::string& system_path, const std::string& write_system,
               const std::string& output) {
    Gf2System sys;
    if (!system_path.empty()) {
        if (!inst.input.empty() || inst.m) throw UsageError("--system cannot be combined with hypergraph flags");
        sys = Gf2System::from_text(read_file(system_path));
    } else {
        sys = from_hypergraph(inst.load(), inst.seed);
    }
    if (!write_system.empty()) Output(write_system).stream() << sys.to_text();
    const auto sol = rank_and_solve(sys);
    std::cout << "equations " << sys.equation_count() << '\n';
    std::cout << "variables " << sys.variable_count() << '\n';
    std::cout << "rank " << sol.rank << '\n';
    std::cout << "satisfiable " << (sol.satisfiable ? "true" : "false") << '\n';
    if (!output.empty() && sol.witness) {
        Output file(output);
        auto& out = file.stream();
        for (auto bit : *sol.witness) out << static_cast<int>(bit);
        out << '\n';
    }
    return 0;
}

struct SweepFlags {
    std::string config;
    DegreeFlags degrees;
    std::optional<std::size_t> m;
    std::optional<int> ell;
    std::optional<double> center;
    std::optional<double> half_width;
    std::optional<double> step;
    std::optional<std::size_t> trials;
    std::vector<std::string> methods;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
    std::string output;
    bool fit = false;
    bool timing = false;

    // Flags are written over the config file's JSON, then the result is
    // parsed and validated as one config.
    SweepConfig build() const {
        nlohmann::json j = nlohmann::json::object();
        if (!config.empty()) {
            try {
                j = nlohmann::json::parse(read_file(config));
            } catch (const nlohmann::json::parse_error& e) {
                throw UsageError(std::string("config: ") + e.what());
            }
            if (!j.is_object()) throw UsageError("config: expected a JSON object");
        }
        if (degrees.given()) {
            j.erase("k");
            j.erase("spec");
            if (degrees.regular()) {
                j["k"] = *degrees.k;
            } else {
                j["spec"] = degrees.distribution().to_json();
            }
        }
        if (m) j["m"] = *m;
        if (ell) j["ell"] = *ell;
        if (center) j["center"] = *center;
        if (half_width) j["half_width"] = *half_width;
        if (step) j["step"] = *step;
        if (trials) j["trials"] = *trials;
        if (seed) j["seed"] = *seed;
        if (jobs) j["jobs"] = *jobs;
        if (!methods.empty()) j["methods"] = methods;
        if (!j.contains("k") && !j.contains("spec")) {
            throw UsageError("one of --k, --spec, --kappa (or a config file) is required");
        }
        if (!j.contains("center")) {
            // Orientation threshold for buckets of size ell: the (ell+1)-core density crossing.
            const int bucket = j.contains("ell") ? j["ell"].get<int>() : 1;
            if (bucket < 1) throw UsageError("--ell must be at least 1");
            j["center"] = j.contains("k") ? orientation_threshold(j["k"].get<int>(), bucket + 1).c_threshold
                                          : mixed_threshold(DegreeSpec::from_json(j["spec"]), bucket + 1).c_threshold;
        }
        return SweepConfig::from_json(j);
    }
};

int fit_and_print(std::ostream& out, const std::vector<RatePoint>& pts, std::string_view method) {
    try {
        auto j = fit_to_json(fit_sigmoid(pts));
        j["method"] = std::string(method);
        out << j.dump() << '\n';
        return 0;
    } catch (const DegenerateFit& e) {
        nlohmann::json j{{"method", std::string(method)}, {"error", e.what()}};
        out << j.dump() << '\n';
        return kExitNumerical;
    }
}

int cmd_sweep(const SweepFlags& flags) {
    const SweepConfig cfg = flags.build();
    const auto records = run_sweep(cfg);
    Output out(flags.output);
    write_csv(out.stream(), records, flags.timing);
    std::size_t violations = 0;
    for (const auto& r : records) violations += r.dominance_violations;
    if (violations > 0) std::cerr << "warning: " << violations << " trials where selfless succeeded but matching failed\n";
    int status = 0;
    if (flags.fit) {
        for (Method method : cfg.methods) status = std::max(status, fit_and_print(out.stream(), rate_points(records, method), method_name(method)));
    }
    return status;
}

int cmd_fit(const std::string& input, const std::string& method) {
    std::istringstream in(read_file(input));
    const auto rows = read_csv(in);
    const auto pts = rate_points(rows, method);
    if (pts.empty()) throw UsageError("no rows for method '" + method + "' in " + input);
    return fit_and_print(std::cout, pts, method);
}

}  // namespace

int main(int argc, char** argv) {
    std::locale::global(std::locale::classic());
    std::cout.imbue(std::locale::classic());

    CLI::App app{"Load thresholds of k-ary cuckoo hashing: analytic values, simulation, sweeps and fits.",
                 "cuckoo-thresholds"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    DegreeFlags threshold_degrees;
    int threshold_ell = 2;
    bool threshold_json = false;
    auto* threshold = app.add_subcommand("threshold", "Analytic thresholds c*, beta*, c_{k,ell} (10 decimals)");
    threshold_degrees.add(*threshold);
    threshold->add_option("--ell", threshold_ell, "Core order ell; bucket size ell-1 (ell >= 2)")->required();
    threshold->add_flag("--json", threshold_json, "Print a JSON object instead of 'name value' lines");

    InstanceFlags core_inst;
    int core_ell = 2;
    std::string core_output;
    auto* core = app.add_subcommand("core", "Predicted and/or simulated ell-core size");
    core_inst.add(*core);
    core->add_option("--ell", core_ell, "Core order: minimum node degree in the core")->required();
    core->add_option("--output", core_output, "Write the core hypergraph to this file");

    InstanceFlags orient_inst;
    int orient_ell = 1;
    std::string orient_method = "selfless";
    std::string orient_output;
    auto* orient = app.add_subcommand("orient", "Orient a hypergraph: each edge to one node, at most ell per node");
    orient_inst.add(*orient);
    orient->add_option("--ell", orient_ell, "Bucket size (maximum in-degree)")->capture_default_str();
    orient->add_option("--method", orient_method, "selfless or matching")->capture_default_str();
    orient->add_option("--output", orient_output, "Write the target node of each edge, one per line ('-' if none)");

    InstanceFlags xorsat_inst;
    std::string xorsat_system;
    std::string xorsat_write;
    std::string xorsat_output;
    auto* xorsat = app.add_subcommand("xorsat", "Rank and solve the GF(2) system of a hypergraph with random right-hand sides");
    xorsat_inst.add(*xorsat);
    xorsat->add_option("--system", xorsat_system, "Read the system from this file ('p xor n m' format) instead");
    xorsat->add_option("--write-system", xorsat_write, "Write the system to this file");
    xorsat->add_option("--output", xorsat_output, "Write a satisfying assignment as a line of 0/1 digits");

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Failure-rate sweep over a density grid; CSV c,n,method,trials,failures,rate,millis");
    sweep->add_option("--config", sweep_flags.config, "JSON config file (keys as in the README); explicit flags override it");
    sweep_flags.degrees.add(*sweep);
    sweep->add_option("--m", sweep_flags.m, "Number of nodes [10000]");
    sweep->add_option("--ell", sweep_flags.ell, "Bucket size [1]");
    sweep->add_option("--center", sweep_flags.center, "Grid center [orientation threshold for bucket size ell]");
    sweep->add_option("--half-width", sweep_flags.half_width, "Grid half-width [0.004]");
    sweep->add_option("--step", sweep_flags.step, "Grid spacing [0.0001]");
    sweep->add_option("--trials", sweep_flags.trials, "Trials per grid point [100]");
    sweep->add_option("--methods", sweep_flags.methods, "Comma list of selfless, matching, xorsat, peel [selfless]")
        ->delimiter(',');
    sweep->add_option("--seed", sweep_flags.seed, "Master seed [1]");
    sweep->add_option("--jobs", sweep_flags.jobs, "Worker threads; output does not depend on it [1]");
    sweep->add_option("--output", sweep_flags.output, "Write the CSV to this file instead of standard output");
    sweep->add_flag("--fit", sweep_flags.fit, "Append one sigmoid-fit JSON line per method");
    sweep->add_flag("--timing", sweep_flags.timing, "Fill the millis column (otherwise 0, for reproducible output)");

    std::string fit_input;
    std::string fit_method = "selfless";
    auto* fit = app.add_subcommand("fit", "Fit the sigmoid 1/(1+exp(-(c-a)/b)) to a sweep CSV; prints JSON");
    fit->add_option("--input", fit_input, "Sweep CSV file")->required();
    fit->add_option("--method", fit_method, "Method rows to fit")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*threshold) {
            if (!threshold_degrees.given()) throw UsageError("one of --k, --spec, --kappa is required");
            return cmd_threshold(threshold_degrees, threshold_ell, threshold_json);
        }
        if (*core) return cmd_core(core_inst, core_ell, core_output);
        if (*orient) return cmd_orient(orient_inst, orient_ell, orient_method, orient_output);
        if (*xorsat) return cmd_xorsat(xorsat_inst, xorsat_system, xorsat_write, xorsat_output);
        if (*sweep) return cmd_sweep(sweep_flags);
        if (*fit) return cmd_fit(fit_input, fit_method);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        // UnsupportedCase, NoSupercriticalSolution, DegenerateFit
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
