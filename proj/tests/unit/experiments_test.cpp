#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "cuckoo/errors.hpp"
#include "cuckoo/experiments.hpp"
#include "cuckoo/random.hpp"

namespace cuckoo {
namespace {

std::string csv_of(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    write_csv(out, records);
    return out.str();
}

// Pool-adjacent-violators: least-squares nondecreasing fit.
std::vector<double> isotonic(const std::vector<double>& y) {
    std::vector<double> value;
    std::vector<std::size_t> weight;
    for (double v : y) {
        value.push_back(v);
        weight.push_back(1);
        while (value.size() > 1 && value[value.size() - 2] > value.back()) {
            const std::size_t w = weight[weight.size() - 2] + weight.back();
            const double merged = (value[value.size() - 2] * weight[weight.size() - 2] + value.back() * weight.back()) / w;
            value.pop_back();
            weight.pop_back();
            value.back() = merged;
            weight.back() = w;
        }
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) out.insert(out.end(), weight[i], value[i]);
    return out;
}

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.m = 1000;
    cfg.k = 3;
    cfg.ell = 1;
    cfg.center = 0.918;
    cfg.half_width = 0.004;
    cfg.step = 0.0001;
    cfg.trials = 3;
    cfg.methods = {Method::selfless, Method::matching, Method::xorsat, Method::peel};
    cfg.master_seed = 7;
    return cfg;
}

TEST(SweepConfig, GridArithmetic) {
    SweepConfig cfg = small_config();
    const auto grid = cfg.grid();
    ASSERT_EQ(grid.size(), 81u);
    EXPECT_DOUBLE_EQ(grid.front(), 0.914);
    EXPECT_NEAR(grid.back(), 0.922, 1e-12);
    EXPECT_NEAR(grid[40], 0.918, 1e-12);
    cfg.half_width = 0.0;
    EXPECT_EQ(cfg.grid().size(), 1u);
    cfg.half_width = 0.00015;
    EXPECT_EQ(cfg.grid().size(), 4u);
}

TEST(SweepConfig, Validation) {
    auto bad = [](auto mutate) {
        SweepConfig cfg = small_config();
        mutate(cfg);
        return cfg;
    };
    EXPECT_NO_THROW(small_config().validate());
    EXPECT_THROW(bad([](SweepConfig& c) { c.step = 0.0; }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.half_width = -1e-3; }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.trials = 0; }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.methods.clear(); }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.methods = {Method::peel, Method::peel}; }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.k.reset(); }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.spec = DegreeSpec::point_mass(3); }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.ell = 0; }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.jobs = 0; }).validate(), DomainError);
    EXPECT_THROW(bad([](SweepConfig& c) { c.center = 0.001; }).validate(), DomainError);
    EXPECT_THROW(run_sweep(bad([](SweepConfig& c) { c.step = -1.0; })), DomainError);
}

TEST(SweepConfig, JsonRoundTrip) {
    SweepConfig cfg = small_config();
    cfg.k.reset();
    cfg.spec = DegreeSpec({{3, 0.5}, {4, 0.5}});
    cfg.jobs = 2;
    const auto back = SweepConfig::from_json(cfg.to_json());
    EXPECT_EQ(back.to_json(), cfg.to_json());
    EXPECT_THROW(SweepConfig::from_json(nlohmann::json::parse(R"({"k":3})")), DomainError);
    EXPECT_THROW(SweepConfig::from_json(nlohmann::json::parse(R"({"k":3,"center":0.9,"bogus":1})")), DomainError);
    EXPECT_THROW(SweepConfig::from_json(nlohmann::json::parse(R"({"k":3,"center":0.9,"methods":["x"]})")), DomainError);
    EXPECT_THROW(SweepConfig::from_json(nlohmann::json::parse(R"({"k":"3","center":0.9})")), DomainError);
}

TEST(Methods, NamesRoundTrip) {
    for (Method m : {Method::selfless, Method::matching, Method::xorsat, Method::peel}) {
        EXPECT_EQ(parse_method(method_name(m)), m);
    }
    EXPECT_FALSE(parse_method("greedy"));
}

TEST(Seeds, DocumentedMixingRecipe) {
    auto splitmix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    EXPECT_EQ(trial_seed(7, 3, 11), splitmix(splitmix(splitmix(7) ^ 3) ^ 11));
    EXPECT_NE(trial_seed(7, 3, 11), trial_seed(7, 11, 3));
}

TEST(Sweep, EdgeCountRounding) {
    EXPECT_EQ(edges_at(0.9181, 1000), 918u);
    EXPECT_EQ(edges_at(0.9185, 10000), 9185u);
    EXPECT_EQ(edges_at(0.91855, 10000), 9186u);
}

TEST(Sweep, SubcriticalPeelingFindsNoCores) {
    SweepConfig cfg;
    cfg.m = 10000;
    cfg.k = 3;
    cfg.center = 0.5;
    cfg.half_width = 0.01;
    cfg.step = 0.001;
    cfg.trials = 1;
    cfg.methods = {Method::peel};
    const auto records = run_sweep(cfg);
    ASSERT_EQ(records.size(), 21u);
    for (const auto& r : records) {
        ASSERT_EQ(r.outcomes.size(), 1u);
        EXPECT_EQ(r.outcomes[0].failures, 0u);
        EXPECT_EQ(r.outcomes[0].trials, 1u);
    }
}

TEST(Sweep, DeterministicAndIndependentOfJobs) {
    SweepConfig cfg = small_config();
    const auto first = csv_of(run_sweep(cfg));
    EXPECT_EQ(csv_of(run_sweep(cfg)), first);
    cfg.jobs = 3;
    EXPECT_EQ(csv_of(run_sweep(cfg)), first);
    cfg.master_seed = 8;
    EXPECT_NE(csv_of(run_sweep(cfg)), first);
}

TEST(Sweep, RecordsRespectCountsAndDominance) {
    const auto records = run_sweep(small_config());
    ASSERT_EQ(records.size(), 81u);
    for (const auto& r : records) {
        EXPECT_EQ(r.n, edges_at(r.c, 1000));
        for (const auto& o : r.outcomes) EXPECT_LE(o.failures, o.trials);
        EXPECT_LE(r.outcome(Method::matching)->failures, r.outcome(Method::selfless)->failures);
        EXPECT_EQ(r.dominance_violations, 0u);
    }
}

TEST(Sweep, TransitionAcrossThresholdWindow) {
    SweepConfig cfg;
    cfg.m = 10000;
    cfg.k = 3;
    cfg.center = 0.915;
    cfg.half_width = 0.015;
    cfg.step = 0.005;
    cfg.trials = 50;
    cfg.methods = {Method::selfless, Method::matching};
    cfg.master_seed = 2;
    const auto records = run_sweep(cfg);
    ASSERT_EQ(records.size(), 7u);
    EXPECT_LE(records.front().outcome(Method::selfless)->rate(), 0.1);
    EXPECT_GE(records.back().outcome(Method::selfless)->rate(), 0.9);
    EXPECT_LE(records.front().outcome(Method::matching)->rate(), 0.1);
    EXPECT_GE(records.back().outcome(Method::matching)->rate(), 0.9);

    std::vector<double> rates;
    for (const auto& r : records) {
        EXPECT_LE(r.outcome(Method::matching)->failures, r.outcome(Method::selfless)->failures);
        EXPECT_EQ(r.dominance_violations, 0u);
        rates.push_back(r.outcome(Method::selfless)->rate());
    }
    const auto smooth = isotonic(rates);
    for (std::size_t i = 0; i < rates.size(); ++i) {
        EXPECT_LE(std::abs(rates[i] - smooth[i]), 2.0 / std::sqrt(cfg.trials)) << "grid point " << i;
    }
}

TEST(Csv, FormatAndRoundTrip) {
    SweepRecord r;
    r.c = 0.9181;
    r.n = 918;
    r.outcomes = {{Method::selfless, 10, 3, 12.5}, {Method::matching, 10, 1, 4.0}};
    std::vector<SweepRecord> records{r};
    std::ostringstream plain;
    write_csv(plain, records);
    EXPECT_EQ(plain.str(),
              "c,n,method,trials,failures,rate,millis\n"
              "0.9181,918,selfless,10,3,0.3,0\n"
              "0.9181,918,matching,10,1,0.1,0\n");
    std::ostringstream timed;
    write_csv(timed, records, true);
    std::istringstream in(timed.str());
    const auto rows = read_csv(in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].method, "selfless");
    EXPECT_DOUBLE_EQ(rows[0].millis, 12.5);
    EXPECT_EQ(rows[1].failures, 1u);
    EXPECT_EQ(rate_points(rows, "matching").size(), 1u);
    std::istringstream bad("c,n\n");
    EXPECT_THROW(read_csv(bad), DomainError);
    std::istringstream short_row("c,n,method,trials,failures,rate,millis\n1,2,3\n");
    EXPECT_THROW(read_csv(short_row), DomainError);
}

TEST(Fit, JsonShape) {
    SigmoidFit fit{0.918, 0.001, 0.25, 12, true};
    const auto j = fit_to_json(fit);
    EXPECT_DOUBLE_EQ(j.at("a").get<double>(), 0.918);
    EXPECT_DOUBLE_EQ(j.at("b").get<double>(), 0.001);
    EXPECT_DOUBLE_EQ(j.at("sum_res").get<double>(), 0.25);
    EXPECT_TRUE(j.at("converged").get<bool>());
}

}  // namespace
}  // namespace cuckoo
