#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "giantwalk/harness.hpp"
#include "giantwalk/io.hpp"

using namespace giantwalk;

namespace {

ExperimentConfig mc_config(std::int64_t n, double lambda, std::int64_t replicas,
                           std::uint64_t seed) {
    ExperimentConfig config;
    config.params = Params::from_mean_degree(n, lambda);
    config.replicas = replicas;
    config.master_seed = seed;
    return config;
}

}  // namespace

TEST_CASE("single replica on the complete graph", "[harness]") {
    ExperimentConfig config;
    config.params = Params::from_edge_probability(3, 1.0);
    config.replicas = 1;
    config.master_seed = 9;
    const MCReport rep = run_experiment(config);
    REQUIRE(rep.L1_moments.count == 1);
    REQUIRE(rep.L1_moments.mean == 3.0);
    REQUIRE(rep.L1_moments.variance() == 0.0);
    REQUIRE_FALSE(rep.variance_defined);
    REQUIRE(rep.replicas.size() == 1);
    REQUIRE(rep.replicas[0].L1 == 3);
}

TEST_CASE("experiment is deterministic and worker-count independent", "[harness]") {
    const ExperimentConfig base = mc_config(1000, 1.5, 40, 4242);
    const std::string first = dump_json(report_json(run_experiment(base)));
    const std::string again = dump_json(report_json(run_experiment(base)));
    REQUIRE(first == again);
    ExperimentConfig wide = base;
    wide.worker_count = 4;
    REQUIRE(dump_json(report_json(run_experiment(wide))) == first);
}

TEST_CASE("kept trajectories agree with the streaming path", "[harness]") {
    ExperimentConfig config = mc_config(500, 1.5, 20, 77);
    const MCReport streamed = run_experiment(config);
    config.keep_trajectories = true;
    const MCReport stored = run_experiment(config);
    REQUIRE(stored.trajectories.size() == 20);
    REQUIRE(streamed.trajectories.empty());
    for (std::size_t r = 0; r < 20; ++r) {
        REQUIRE(streamed.replicas[r].L1 == stored.replicas[r].L1);
        REQUIRE(streamed.replicas[r].T1 == stored.replicas[r].T1);
        REQUIRE(streamed.replicas[r].condvar_sum == stored.replicas[r].condvar_sum);
        REQUIRE(streamed.replicas[r].lin_dev == stored.replicas[r].lin_dev);
    }
    REQUIRE(streamed.L1_moments.mean == stored.L1_moments.mean);
}

TEST_CASE("keep_trajectories refuses infeasible memory upfront", "[harness]") {
    ExperimentConfig config = mc_config(10000000, 1.5, 1000000, 1);
    config.keep_trajectories = true;
    REQUIRE_THROWS_WITH(run_experiment(config), Catch::Matchers::ContainsSubstring("MiB"));
}

TEST_CASE("config validation", "[harness]") {
    ExperimentConfig config = mc_config(100, 1.5, 10, 1);
    config.replicas = 0;
    REQUIRE_THROWS_AS(run_experiment(config), std::domain_error);
    config.replicas = 10;
    config.worker_count = 0;
    REQUIRE_THROWS_AS(run_experiment(config), std::domain_error);
}

TEST_CASE("report aggregates lie in range on a live run", "[harness]") {
    const MCReport rep = run_experiment(mc_config(5000, 1.5, 100, 31));
    REQUIRE(rep.L1_moments.count == 100);
    REQUIRE(rep.variance_defined);
    REQUIRE(rep.standardized_ks >= 0.0);
    REQUIRE(rep.standardized_ks <= 1.0);
    REQUIRE(rep.t1_containment_fraction >= 0.0);
    REQUIRE(rep.t1_containment_fraction <= 1.0);
    REQUIRE(rep.z_bound_fraction >= 0.0);
    REQUIRE(rep.z_bound_fraction <= 1.0);
    REQUIRE(rep.condvar_ratio_median > 0.0);
    REQUIRE(rep.L2_max >= 0);
    REQUIRE(rep.L2_max < 5000);
    REQUIRE(rep.checks.size() == 7);
    bool conj = true;
    for (const CheckResult& c : rep.checks) conj = conj && c.pass;
    REQUIRE(rep.all_pass == conj);
    // The checks echo their thresholds.
    REQUIRE(rep.checks[0].name == "mean_offset");
    REQUIRE(rep.checks[1].lo == 0.9);
    REQUIRE(rep.checks[1].hi == 1.1);
}

TEST_CASE("validate_enum on the two-vertex complete graph", "[harness]") {
    ExperimentConfig config;
    config.params = Params::from_edge_probability(2, 1.0);
    config.replicas = 50;
    config.master_seed = 3;
    config.mode = Mode::validate_enum;
    const EnumValidationReport rep = validate_enum(config);
    REQUIRE(rep.exact.mass.size() == 1);
    REQUIRE(rep.exact.mass.at(2) == 1.0);
    REQUIRE(rep.observed == std::vector<std::int64_t>{0, 50});
    REQUIRE(rep.pass);
    REQUIRE(rep.chi.p_value == 1.0);  // single pooled bin, vacuous fit
}

TEST_CASE("validate_enum walk matches enumeration at n=4", "[harness]") {
    ExperimentConfig config;
    config.params = Params::from_edge_probability(4, 0.5);
    config.replicas = 20000;
    config.master_seed = 6;
    config.mode = Mode::validate_enum;
    const EnumValidationReport rep = validate_enum(config);
    std::int64_t total = 0;
    for (const auto c : rep.observed) total += c;
    REQUIRE(total == 20000);
    REQUIRE(rep.chi.p_value > 0.001);
    REQUIRE(rep.pass);
    // Worker count must not change the verdict or the counts.
    ExperimentConfig wide = config;
    wide.worker_count = 4;
    REQUIRE(dump_json(report_json(validate_enum(wide))) == dump_json(report_json(rep)));
}

TEST_CASE("validate_enum refuses n > 8", "[harness]") {
    ExperimentConfig config;
    config.params = Params::from_edge_probability(9, 0.5);
    config.replicas = 10;
    config.mode = Mode::validate_enum;
    REQUIRE_THROWS_AS(validate_enum(config), std::domain_error);
}

TEST_CASE("validate_graph walk matches union-find sampling", "[harness]") {
    ExperimentConfig config;
    config.params = Params::from_mean_degree(60, 1.5);
    config.replicas = 3000;
    config.master_seed = 8;
    config.mode = Mode::validate_graph;
    const GraphValidationReport rep = validate_graph(config);
    REQUIRE(rep.walk_l1.count == 3000);
    REQUIRE(rep.graph_l1.count == 3000);
    REQUIRE(rep.ks >= 0.0);
    REQUIRE(rep.ks < rep.ks_critical);
    REQUIRE(rep.pass);
    // Means of the two samplers agree loosely (same law).
    REQUIRE(std::fabs(rep.walk_l1.mean - rep.graph_l1.mean) < 3.0);
}
