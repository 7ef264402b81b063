#include "cuckoo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cuckoo/errors.hpp"
#include "cuckoo/hypergraph.hpp"
#include "cuckoo/orientation.hpp"
#include "cuckoo/peeling.hpp"
#include "cuckoo/random.hpp"
#include "cuckoo/xorsat.hpp"

namespace cuckoo {

namespace {

constexpr Method kAllMethods[] = {Method::selfless, Method::matching, Method::xorsat, Method::peel};

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

std::string_view method_name(Method method) {
    switch (method) {
        case Method::selfless: return "selfless";
        case Method::matching: return "matching";
        case Method::xorsat: return "xorsat";
        case Method::peel: return "peel";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

void SweepConfig::validate() const {
    if (m < 2) throw DomainError("sweep: m must be at least 2");
    if (m > UINT32_MAX) throw DomainError("sweep: m exceeds the 32-bit node id range");
    if (k.has_value() == spec.has_value()) throw DomainError("sweep: give exactly one of k and a degree spec");
    if (k && (*k < 2 || *k > DegreeSpec::kMaxDegree)) throw DomainError("sweep: k must lie in [2, 64]");
    const int max_k = k ? *k : spec->max_degree();
    if (static_cast<std::size_t>(max_k) > m) throw DomainError("sweep: edges larger than the node count");
    if (ell < 1) throw DomainError("sweep: ell must be at least 1");
    if (!std::isfinite(center) || !std::isfinite(half_width) || !std::isfinite(step)) {
        throw DomainError("sweep: grid parameters must be finite");
    }
    if (!(step > 0.0)) throw DomainError("sweep: step must be positive");
    if (!(half_width >= 0.0)) throw DomainError("sweep: half-width must be non-negative");
    if (center - half_width < 0.0) throw DomainError("sweep: grid reaches negative densities");
    if (trials < 1) throw DomainError("sweep: trials must be at least 1");
    if (methods.empty()) throw DomainError("sweep: no methods selected");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (methods[i] == methods[j]) throw DomainError("sweep: method listed twice");
        }
    }
    if (jobs < 1) throw DomainError("sweep: jobs must be at least 1");
}

std::vector<double> SweepConfig::grid() const {
    // The epsilon absorbs representation error in ratios such as 0.008 / 0.0001.
    const auto intervals = static_cast<std::size_t>(std::floor(2.0 * half_width / step + 1e-9));
    std::vector<double> out(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) out[i] = center - half_width + static_cast<double>(i) * step;
    return out;
}

nlohmann::json SweepConfig::to_json() const {
    nlohmann::json j;
    j["m"] = m;
    if (k) j["k"] = *k;
    if (spec) j["spec"] = spec->to_json();
    j["ell"] = ell;
    j["center"] = center;
    j["half_width"] = half_width;
    j["step"] = step;
    j["trials"] = trials;
    auto names = nlohmann::json::array();
    for (Method method : methods) names.push_back(std::string(method_name(method)));
    j["methods"] = names;
    j["seed"] = master_seed;
    j["jobs"] = jobs;
    return j;
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
    static const char* const known[] = {"m", "k", "spec", "ell", "center", "half_width",
                                        "step", "trials", "methods", "seed", "jobs"};
    if (!j.is_object()) throw DomainError("sweep config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw DomainError("sweep config: unknown key '" + key + "'");
        }
    }
    SweepConfig cfg;
    try {
        if (j.contains("m")) cfg.m = j.at("m").get<std::size_t>();
        if (j.contains("k")) cfg.k = j.at("k").get<int>();
        if (j.contains("spec")) cfg.spec = DegreeSpec::from_json(j.at("spec"));
        if (j.contains("ell")) cfg.ell = j.at("ell").get<int>();
        if (!j.contains("center")) throw DomainError("sweep config: 'center' is required");
        cfg.center = j.at("center").get<double>();
        if (j.contains("half_width")) cfg.half_width = j.at("half_width").get<double>();
        if (j.contains("step")) cfg.step = j.at("step").get<double>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<std::size_t>();
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& name : j.at("methods")) {
                const auto method = parse_method(name.get<std::string>());
                if (!method) throw DomainError("sweep config: unknown method '" + name.get<std::string>() + "'");
                cfg.methods.push_back(*method);
            }
        }
        if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("sweep config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

const MethodOutcome* SweepRecord::outcome(Method method) const {
    for (const auto& o : outcomes) {
        if (o.method == method) return &o;
    }
    return nullptr;
}

std::size_t edges_at(double c, std::size_t m) {
    return static_cast<std::size_t>(std::llround(c * static_cast<double>(m)));
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t grid_index, std::size_t trial_index) {
    return derive_seed(master_seed, grid_index, trial_index);
}

namespace {

bool fails(Method method, const Hypergraph& g, int ell, std::uint64_t seed) {
    switch (method) {
        case Method::selfless: return !selfless_orient(g, ell, seed).success;
        case Method::matching: return !matching_orient(g, ell).success;
        case Method::xorsat: return !rank_and_solve(from_hypergraph(g, seed)).satisfiable;
        case Method::peel: return peel(g, ell + 1).stats.core_nodes > 0;
    }
    return false;
}

struct TrialResult {
    std::vector<std::uint8_t> failed;
    std::vector<double> millis;
};

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto densities = cfg.grid();
    const std::size_t methods = cfg.methods.size();
    const std::size_t tasks = densities.size() * cfg.trials;
    std::vector<TrialResult> results(tasks);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
            const std::size_t gi = t / cfg.trials;
            const std::size_t ti = t % cfg.trials;
            const std::uint64_t seed = trial_seed(cfg.master_seed, gi, ti);
            const std::size_t n = edges_at(densities[gi], cfg.m);
            const Hypergraph g = cfg.k ? sample_regular(cfg.m, n, *cfg.k, seed) : sample_mixed(cfg.m, n, *cfg.spec, seed);
            TrialResult& r = results[t];
            r.failed.resize(methods);
            r.millis.resize(methods);
            for (std::size_t mi = 0; mi < methods; ++mi) {
                const auto start = std::chrono::steady_clock::now();
                r.failed[mi] = fails(cfg.methods[mi], g, cfg.ell, seed);
                r.millis[mi] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            }
        }
    };
    const unsigned threads = std::min<std::size_t>(cfg.jobs, tasks);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    const auto position = [&](Method method) {
        const auto it = std::find(cfg.methods.begin(), cfg.methods.end(), method);
        return it == cfg.methods.end() ? methods : static_cast<std::size_t>(it - cfg.methods.begin());
    };
    const std::size_t selfless_at = position(Method::selfless);
    const std::size_t matching_at = position(Method::matching);

    std::vector<SweepRecord> records(densities.size());
    for (std::size_t gi = 0; gi < densities.size(); ++gi) {
        SweepRecord& rec = records[gi];
        rec.c = densities[gi];
        rec.n = edges_at(densities[gi], cfg.m);
        for (Method method : cfg.methods) rec.outcomes.push_back({method, cfg.trials, 0, 0.0});
        for (std::size_t ti = 0; ti < cfg.trials; ++ti) {
            const TrialResult& r = results[gi * cfg.trials + ti];
            for (std::size_t mi = 0; mi < methods; ++mi) {
                rec.outcomes[mi].failures += r.failed[mi];
                rec.outcomes[mi].millis += r.millis[mi];
            }
            if (selfless_at < methods && matching_at < methods && !r.failed[selfless_at] && r.failed[matching_at]) {
                ++rec.dominance_violations;
            }
        }
    }
    return records;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records, bool timing) {
    out << "c,n,method,trials,failures,rate,millis\n";
    for (const auto& rec : records) {
        for (const auto& o : rec.outcomes) {
            out << format_real(rec.c) << ',' << rec.n << ',' << method_name(o.method) << ',' << o.trials << ','
                << o.failures << ',' << format_real(o.rate()) << ',' << format_real(timing ? o.millis : 0.0) << '\n';
        }
    }
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "c,n,method,trials,failures,rate,millis") {
        throw DomainError("csv: expected header 'c,n,method,trials,failures,rate,millis'");
    }
    std::vector<CsvRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
        if (fields.size() != 7) throw DomainError("csv: line " + std::to_string(line_no) + " needs 7 fields");
        try {
            CsvRow row;
            row.c = std::stod(fields[0]);
            row.n = std::stoull(fields[1]);
            row.method = fields[2];
            row.trials = std::stoull(fields[3]);
            row.failures = std::stoull(fields[4]);
            row.rate = std::stod(fields[5]);
            row.millis = std::stod(fields[6]);
            rows.push_back(std::move(row));
        } catch (const std::logic_error&) {
            throw DomainError("csv: malformed number on line " + std::to_string(line_no));
        }
    }
    return rows;
}

std::vector<RatePoint> rate_points(std::span<const SweepRecord> records, Method method) {
    std::vector<RatePoint> out;
    for (const auto& rec : records) {
        if (const auto* o = rec.outcome(method)) out.push_back({rec.c, o->rate()});
    }
    return out;
}

std::vector<RatePoint> rate_points(std::span<const CsvRow> rows, std::string_view method) {
    std::vector<RatePoint> out;
    for (const auto& row : rows) {
        if (row.method == method) out.push_back({row.c, row.rate});
    }
    return out;
}

nlohmann::json fit_to_json(const SigmoidFit& fit) {
    return {{"a", fit.a}, {"b", fit.b}, {"sum_res", fit.sum_res}, {"converged", fit.converged}};
}

}  // namespace cuckoo
