#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "swarmlab/benchmarks.hpp"
#include "swarmlab/hybrid.hpp"
#include "swarmlab/optimizer.hpp"

using swarmlab::Budget;
using swarmlab::EvaluatedSolution;
using swarmlab::HybridSpec;
using swarmlab::HybridStage;
using swarmlab::Problem;
using swarmlab::RngStream;
using swarmlab::RunRecord;
using swarmlab::Vector;

namespace {

Problem sphere2d() { return swarmlab::find_benchmark("sphere").make_problem(2); }

HybridStage plain_stage(std::string algorithm) {
    HybridStage stage;
    stage.algorithm = std::move(algorithm);
    return stage;
}

void check_monotone(const RunRecord& record) {
    REQUIRE(!record.trace.empty());
    for (std::size_t i = 1; i < record.trace.size(); ++i) {
        CHECK(record.trace[i].best_fitness <= record.trace[i - 1].best_fitness);
        CHECK(record.trace[i].evaluations > record.trace[i - 1].evaluations);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// combination_count
// ---------------------------------------------------------------------------

TEST_CASE("combination counts: anchor values and boundaries") {
    CHECK(swarmlab::combination_count(30, 2) == 435);
    CHECK(swarmlab::combination_count(30, 5) == 142506);
    CHECK(swarmlab::combination_count(0, 0) == 1);
    CHECK(swarmlab::combination_count(17, 0) == 1);
    CHECK(swarmlab::combination_count(17, 17) == 1);
    CHECK(swarmlab::combination_count(6, 3) == 20);
    // the largest binomial for n = 64 still fits in 64 bits
    CHECK(swarmlab::combination_count(64, 32) == 1832624140942590534ULL);
}

TEST_CASE("combination counts: symmetry and the Pascal identity up to n=40") {
    for (std::uint64_t n = 0; n <= 40; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            CHECK(swarmlab::combination_count(n, k) ==
                  swarmlab::combination_count(n, n - k));
            // the Pascal identity needs k <= n-1 so both summands exist
            if (k >= 1 && k < n) {
                CHECK(swarmlab::combination_count(n, k) ==
                      swarmlab::combination_count(n - 1, k - 1) +
                          swarmlab::combination_count(n - 1, k));
            }
        }
    }
}

TEST_CASE("combination counts: domain and overflow errors") {
    CHECK_THROWS_AS((void)swarmlab::combination_count(5, 6), std::invalid_argument);
    CHECK_THROWS_AS((void)swarmlab::combination_count(68, 34), std::overflow_error);
}

// ---------------------------------------------------------------------------
// rank_and_deal
// ---------------------------------------------------------------------------

TEST_CASE("rank_and_deal deals by rank round-robin and conserves the pool") {
    std::vector<EvaluatedSolution> pool;
    for (const double f : {5.0, 1.0, 3.0, 2.0, 4.0, 0.0}) {
        pool.push_back({{f}, f, 0});
    }

    SUBCASE("equal slices interleave the ranking") {
        const auto slices = swarmlab::rank_and_deal(pool, {3, 3});
        REQUIRE(slices.size() == 2);
        REQUIRE(slices[0].size() == 3);
        REQUIRE(slices[1].size() == 3);
        CHECK(slices[0][0].fitness == 0.0);
        CHECK(slices[0][1].fitness == 2.0);
        CHECK(slices[0][2].fitness == 4.0);
        CHECK(slices[1][0].fitness == 1.0);
        CHECK(slices[1][1].fitness == 3.0);
        CHECK(slices[1][2].fitness == 5.0);
    }

    SUBCASE("a full slice stops receiving and the rest spills over") {
        const auto slices = swarmlab::rank_and_deal(pool, {2, 4});
        REQUIRE(slices[0].size() == 2);
        REQUIRE(slices[1].size() == 4);
        CHECK(slices[0][0].fitness == 0.0);
        CHECK(slices[0][1].fitness == 2.0);
        CHECK(slices[1][0].fitness == 1.0);
        CHECK(slices[1][1].fitness == 3.0);
        CHECK(slices[1][2].fitness == 4.0);
        CHECK(slices[1][3].fitness == 5.0);
    }

    SUBCASE("the multiset of solutions is conserved") {
        const auto slices = swarmlab::rank_and_deal(pool, {4, 2});
        std::multiset<double> before;
        for (const auto& s : pool) before.insert(s.fitness);
        std::multiset<double> after;
        for (const auto& slice : slices) {
            for (const auto& s : slice) after.insert(s.fitness);
        }
        CHECK(before == after);
    }

    SUBCASE("partition must match the pool") {
        CHECK_THROWS_AS((void)swarmlab::rank_and_deal(pool, {3, 2}),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)swarmlab::rank_and_deal(pool, {6, 0}),
                        std::invalid_argument);
    }
}

// ---------------------------------------------------------------------------
// structure plumbing
// ---------------------------------------------------------------------------

TEST_CASE("structure names round-trip and reject unknowns") {
    for (const auto structure :
         {HybridSpec::Structure::sequential, HybridSpec::Structure::parallel_switch,
          HybridSpec::Structure::parallel_split}) {
        CHECK(HybridSpec::structure_from_name(HybridSpec::structure_name(structure)) ==
              structure);
    }
    CHECK_THROWS_AS((void)HybridSpec::structure_from_name("cascade"),
                    std::invalid_argument);
}

TEST_CASE("hybrid depth counts nesting and the runners cap it at three") {
    HybridSpec flat;
    flat.structure = HybridSpec::Structure::parallel_switch;
    flat.stages.push_back(plain_stage("apso"));
    flat.stages.back().switch_probability = 1.0;
    CHECK(swarmlab::hybrid_depth(flat) == 1);

    auto wrap = [](HybridSpec inner) {
        HybridSpec outer;
        outer.structure = HybridSpec::Structure::sequential;
        HybridStage nested;
        nested.nested = std::make_shared<const HybridSpec>(std::move(inner));
        nested.budget_share = 0.5;
        outer.stages.push_back(std::move(nested));
        HybridStage tail = plain_stage("apso");
        tail.budget_share = 0.5;
        outer.stages.push_back(std::move(tail));
        return outer;
    };

    const HybridSpec depth2 = wrap(flat);
    CHECK(swarmlab::hybrid_depth(depth2) == 2);
    const HybridSpec depth3 = wrap(depth2);
    CHECK(swarmlab::hybrid_depth(depth3) == 3);
    const HybridSpec depth4 = wrap(depth3);
    CHECK(swarmlab::hybrid_depth(depth4) == 4);

    const Problem problem = sphere2d();
    Budget budget;
    budget.max_evaluations = 2000;
    CHECK_NOTHROW((void)swarmlab::run_hybrid(depth3, problem, 12, budget, RngStream(1)));
    CHECK_THROWS_AS((void)swarmlab::run_hybrid(depth4, problem, 12, budget, RngStream(1)),
                    std::invalid_argument);
}

TEST_CASE("nested specs are rejected outside sequential composition") {
    HybridSpec inner;
    inner.structure = HybridSpec::Structure::parallel_switch;
    inner.stages.push_back(plain_stage("apso"));
    inner.stages.back().switch_probability = 1.0;

    HybridSpec outer;
    outer.structure = HybridSpec::Structure::parallel_switch;
    HybridStage bad;
    bad.nested = std::make_shared<const HybridSpec>(inner);
    bad.switch_probability = 1.0;
    outer.stages.push_back(std::move(bad));

    Budget budget;
    budget.max_iterations = 5;
    CHECK_THROWS_AS(
        (void)swarmlab::run_parallel_switch(outer, sphere2d(), 10, budget, RngStream(2)),
        std::invalid_argument);
}

// ---------------------------------------------------------------------------
// sequential composition
// ---------------------------------------------------------------------------

TEST_CASE("sequential validation: stage count, shares, zero budgets") {
    const Problem problem = sphere2d();

    HybridSpec single;
    single.structure = HybridSpec::Structure::sequential;
    single.stages.push_back(plain_stage("apso"));
    single.stages.back().budget_share = 1.0;
    CHECK_THROWS_AS((void)swarmlab::run_sequential(single, problem, 10, 1000, RngStream(3)),
                    std::invalid_argument);

    HybridSpec bad_shares;
    bad_shares.structure = HybridSpec::Structure::sequential;
    bad_shares.stages.push_back(plain_stage("apso"));
    bad_shares.stages.back().budget_share = 0.5;
    bad_shares.stages.push_back(plain_stage("pso"));
    bad_shares.stages.back().budget_share = 0.4;
    CHECK_THROWS_AS(
        (void)swarmlab::run_sequential(bad_shares, problem, 10, 1000, RngStream(3)),
        std::invalid_argument);

    HybridSpec tiny;
    tiny.structure = HybridSpec::Structure::sequential;
    tiny.stages.push_back(plain_stage("apso"));
    tiny.stages.back().budget_share = 0.0001;
    tiny.stages.push_back(plain_stage("pso"));
    tiny.stages.back().budget_share = 0.9999;
    CHECK_THROWS_AS((void)swarmlab::run_sequential(tiny, problem, 10, 100, RngStream(3)),
                    std::invalid_argument);

    CHECK_THROWS_AS((void)swarmlab::run_sequential(bad_shares, problem, 10, 0, RngStream(3)),
                    std::invalid_argument);
}

TEST_CASE("sequential runs hand over the best and label their stages") {
    const Problem problem = sphere2d();
    HybridSpec spec;
    spec.structure = HybridSpec::Structure::sequential;
    spec.stages.push_back(plain_stage("pso"));
    spec.stages.back().budget_share = 0.5;
    spec.stages.push_back(plain_stage("firefly"));
    spec.stages.back().budget_share = 0.5;

    const RunRecord record =
        swarmlab::run_sequential(spec, problem, 10, 2000, RngStream(42));
    check_monotone(record);

    bool saw_first = false, saw_second = false;
    for (const auto& row : record.trace) {
        if (row.stage == "0:pso") saw_first = true;
        if (row.stage == "1:firefly") saw_second = true;
    }
    CHECK(saw_first);
    CHECK(saw_second);

    // the budget is respected within one step's worth of evaluations
    const std::uint64_t total = record.trace.back().evaluations;
    CHECK(total >= 2000);               // the final step may overshoot the line
    CHECK(total <= 2000 + 10 * 9 + 1);  // by at most one step (firefly worst case)

    // bit-exact reproducibility
    const RunRecord replay =
        swarmlab::run_sequential(spec, problem, 10, 2000, RngStream(42));
    REQUIRE(replay.trace.size() == record.trace.size());
    for (std::size_t i = 0; i < record.trace.size(); ++i) {
        CHECK(replay.trace[i].best_fitness == record.trace[i].best_fitness);
        CHECK(replay.trace[i].evaluations == record.trace[i].evaluations);
        CHECK(replay.trace[i].stage == record.trace[i].stage);
    }
    CHECK(replay.best_position == record.best_position);
}

TEST_CASE("sequential stage boundary carries the best across identical stages") {
    const Problem problem = sphere2d();
    HybridSpec spec;
    spec.structure = HybridSpec::Structure::sequential;
    for (int k = 0; k < 2; ++k) {
        spec.stages.push_back(plain_stage("apso"));
        spec.stages.back().budget_share = 0.5;
    }
    const RunRecord record =
        swarmlab::run_sequential(spec, problem, 10, 1000, RngStream(9));
    check_monotone(record);  // monotone across the boundary row included
}

TEST_CASE("nested sequential stages prefix their labels") {
    const Problem problem = sphere2d();

    HybridSpec inner;
    inner.structure = HybridSpec::Structure::sequential;
    inner.stages.push_back(plain_stage("apso"));
    inner.stages.back().budget_share = 0.5;
    inner.stages.push_back(plain_stage("cuckoo"));
    inner.stages.back().budget_share = 0.5;

    HybridSpec outer;
    outer.structure = HybridSpec::Structure::sequential;
    HybridStage first;
    first.nested = std::make_shared<const HybridSpec>(inner);
    first.budget_share = 0.6;
    outer.stages.push_back(std::move(first));
    outer.stages.push_back(plain_stage("pso"));
    outer.stages.back().budget_share = 0.4;

    const RunRecord record = swarmlab::run_sequential(outer, problem, 12, 3000, RngStream(4));
    check_monotone(record);
    bool saw_nested_first = false, saw_nested_second = false, saw_tail = false;
    for (const auto& row : record.trace) {
        if (row.stage == "0:0:apso") saw_nested_first = true;
        if (row.stage == "0:1:cuckoo") saw_nested_second = true;
        if (row.stage == "1:pso") saw_tail = true;
    }
    CHECK(saw_nested_first);
    CHECK(saw_nested_second);
    CHECK(saw_tail);
}

// ---------------------------------------------------------------------------
// parallel switch
// ---------------------------------------------------------------------------

TEST_CASE("switch probabilities must sum to one") {
    HybridSpec spec;
    spec.structure = HybridSpec::Structure::parallel_switch;
    spec.stages.push_back(plain_stage("apso"));
    spec.stages.back().switch_probability = 0.7;
    spec.stages.push_back(plain_stage("firefly"));
    spec.stages.back().switch_probability = 0.7;

    Budget budget;
    budget.max_iterations = 10;
    CHECK_THROWS_AS(
        (void)swarmlab::run_parallel_switch(spec, sphere2d(), 10, budget, RngStream(5)),
        std::invalid_argument);
}

TEST_CASE("degenerate switch (1, 0) reproduces the pure algorithm trace") {
    const Problem problem = sphere2d();
    Budget budget;
    budget.max_iterations = 60;

    HybridSpec spec;
    spec.structure = HybridSpec::Structure::parallel_switch;
    spec.stages.push_back(plain_stage("apso"));
    spec.stages.back().switch_probability = 1.0;
    spec.stages.push_back(plain_stage("firefly"));
    spec.stages.back().switch_probability = 0.0;

    const RunRecord hybrid =
        swarmlab::run_parallel_switch(spec, problem, 10, budget, RngStream(77));

    // the switch steps on child stream 0 of the top-level stream
    RngStream pure_rng = RngStream(77).child(0);
    const auto pure =
        swarmlab::run(*swarmlab::make_optimizer("apso"), problem, 10, budget, pure_rng);

    REQUIRE(hybrid.trace.size() == pure.trace.size());
    for (std::size_t i = 0; i < pure.trace.size(); ++i) {
        CHECK(hybrid.trace[i].iteration == pure.trace[i].iteration);
        CHECK(hybrid.trace[i].evaluations == pure.trace[i].evaluations);
        CHECK(hybrid.trace[i].best_fitness == pure.trace[i].best_fitness);
    }
    CHECK(hybrid.best_position == pure.best_position);
    CHECK(hybrid.best_fitness == pure.best_fitness);
}

TEST_CASE("an even switch picks each algorithm a binomially plausible number of times") {
    const Problem problem = sphere2d();
    Budget budget;
    budget.max_iterations = 10000;

    HybridSpec spec;
    spec.structure = HybridSpec::Structure::parallel_switch;
    spec.stages.push_back(plain_stage("apso"));
    spec.stages.back().switch_probability = 0.5;
    spec.stages.push_back(plain_stage("pso"));
    spec.stages.back().switch_probability = 0.5;

    const RunRecord record =
        swarmlab::run_parallel_switch(spec, problem, 10, budget, RngStream(2021));

    std::map<std::string, int> picks;
    for (const auto& row : record.trace) {
        if (row.stage != "init") picks[row.stage] += 1;
    }
    CHECK(picks["apso"] + picks["pso"] == 10000);
    // Binomial(10^4, 1/2): mean 5000, sd 50; the 3-sigma window is 5000 +/- 150
    CHECK(picks["apso"] > 4850);
    CHECK(picks["apso"] < 5150);
    check_monotone(record);
}

// ---------------------------------------------------------------------------
// parallel split
// ---------------------------------------------------------------------------

TEST_CASE("split validation: partition sums and branch minima") {
    Budget budget;
    budget.max_iterations = 5;

    HybridSpec wrong_sum;
    wrong_sum.structure = HybridSpec::Structure::parallel_split;
    wrong_sum.stages.push_back(plain_stage("cuckoo"));
    wrong_sum.stages.back().subpopulation = 6;
    wrong_sum.stages.push_back(plain_stage("fpa"));
    wrong_sum.stages.back().subpopulation = 6;
    CHECK_THROWS_AS(
        (void)swarmlab::run_parallel_split(wrong_sum, sphere2d(), 10, budget, RngStream(6)),
        std::invalid_argument);

    HybridSpec too_small;
    too_small.structure = HybridSpec::Structure::parallel_split;
    too_small.stages.push_back(plain_stage("cuckoo"));
    too_small.stages.back().subpopulation = 2;  // below the minimum of 3
    too_small.stages.push_back(plain_stage("pso"));
    too_small.stages.back().subpopulation = 8;
    CHECK_THROWS_AS(
        (void)swarmlab::run_parallel_split(too_small, sphere2d(), 10, budget, RngStream(6)),
        std::invalid_argument);

    HybridSpec no_period;
    no_period.structure = HybridSpec::Structure::parallel_split;
    no_period.stages.push_back(plain_stage("pso"));
    no_period.stages.back().subpopulation = 10;
    no_period.merge_period = 0;
    CHECK_THROWS_AS(
        (void)swarmlab::run_parallel_split(no_period, sphere2d(), 10, budget, RngStream(6)),
        std::invalid_argument);
}

TEST_CASE("a single full-size branch reproduces the pure algorithm run") {
    const Problem problem = sphere2d();
    Budget budget;
    budget.max_iterations = 50;

    HybridSpec spec;
    spec.structure = HybridSpec::Structure::parallel_split;
    spec.stages.push_back(plain_stage("cuckoo"));
    spec.stages.back().subpopulation = 10;
    spec.merge_period = 10;  // merges are identity for one branch

    const RunRecord hybrid =
        swarmlab::run_parallel_split(spec, problem, 10, budget, RngStream(31));

    RngStream pure_rng = RngStream(31).child(0);
    const auto pure =
        swarmlab::run(*swarmlab::make_optimizer("cuckoo"), problem, 10, budget, pure_rng);

    REQUIRE(hybrid.trace.size() == pure.trace.size());
    for (std::size_t i = 0; i < pure.trace.size(); ++i) {
        CHECK(hybrid.trace[i].evaluations == pure.trace[i].evaluations);
        CHECK(hybrid.trace[i].best_fitness == pure.trace[i].best_fitness);
    }
    CHECK(hybrid.best_position == pure.best_position);
    CHECK(hybrid.best_fitness == pure.best_fitness);
}

TEST_CASE("a cuckoo/fpa split stays deterministic, monotone and budget-exact") {
    const Problem problem = sphere2d();
    Budget budget;
    budget.max_iterations = 60;

    HybridSpec spec;
    spec.structure = HybridSpec::Structure::parallel_split;
    spec.stages.push_back(plain_stage("cuckoo"));
    spec.stages.back().subpopulation = 10;
    spec.stages.push_back(plain_stage("fpa"));
    spec.stages.back().subpopulation = 10;
    spec.merge_period = 10;

    const RunRecord a = swarmlab::run_parallel_split(spec, problem, 20, budget, RngStream(8));
    const RunRecord b = swarmlab::run_parallel_split(spec, problem, 20, budget, RngStream(8));
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].best_fitness == b.trace[i].best_fitness);
        CHECK(a.trace[i].evaluations == b.trace[i].evaluations);
    }
    check_monotone(a);

    // per lockstep round: cuckoo spends 2*10, fpa spends 10 -> 30 per row
    // on top of the 20 initialization evaluations
    CHECK(a.trace.back().evaluations == 20 + 60 * 30);

    // a different seed genuinely changes the run
    const RunRecord c = swarmlab::run_parallel_split(spec, problem, 20, budget, RngStream(9));
    CHECK(c.best_fitness != a.best_fitness);
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

TEST_CASE("run_hybrid dispatches on structure and guards sequential budgets") {
    const Problem problem = sphere2d();

    HybridSpec seq;
    seq.structure = HybridSpec::Structure::sequential;
    seq.stages.push_back(plain_stage("apso"));
    seq.stages.back().budget_share = 0.5;
    seq.stages.push_back(plain_stage("pso"));
    seq.stages.back().budget_share = 0.5;

    Budget iter_only;
    iter_only.max_iterations = 10;
    CHECK_THROWS_AS((void)swarmlab::run_hybrid(seq, problem, 10, iter_only, RngStream(1)),
                    std::invalid_argument);

    Budget evals;
    evals.max_evaluations = 600;
    const RunRecord record = swarmlab::run_hybrid(seq, problem, 10, evals, RngStream(1));
    check_monotone(record);

    // structure mismatch in the specialized runners
    CHECK_THROWS_AS((void)swarmlab::run_parallel_switch(seq, problem, 10, evals, RngStream(1)),
                    std::invalid_argument);
}
