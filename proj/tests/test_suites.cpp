#include <doctest.h>

#include "bw/error.hpp"
#include "bw/suites.hpp"

using namespace bw;

TEST_SUITE("suites") {

TEST_CASE("every suite passes on a small seeded run") {
    for (const auto& name : suite_names()) {
        SuiteConfig cfg;
        cfg.samples = 6;
        auto r = run_suite(name, cfg);
        CAPTURE(name);
        CHECK(r.samples == 6);
        CHECK(r.per_sample.size() == 6);
        CHECK(r.passed());
    }
}

TEST_CASE("identical seeds reproduce, different seeds differ") {
    SuiteConfig a;
    a.samples = 5;
    auto r1 = suite_l21l2(a), r2 = suite_l21l2(a);
    CHECK(r1.per_sample == r2.per_sample);
    a.seed = 43;
    CHECK(suite_l21l2(a).per_sample != r1.per_sample);
}

TEST_CASE("single alpha and a user field") {
    SuiteConfig c;
    c.alphas = {0.25};
    c.field = LaurentField::harmonic({{1, 0.5}});
    auto r = suite_l21l2(c);
    CHECK(r.samples == 1);
    CHECK(r.stats.at("worst_ratio") <= 1.0);
    SuiteConfig bad;
    bad.alphas = {1.5};
    CHECK_THROWS_AS(suite_l21l2(bad), Error);
}

TEST_CASE("unknown suite is a usage error") {
    try {
        run_suite("nosuch", {});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::usage);
    }
    CHECK_FALSE(has_suite("nosuch"));
}

TEST_CASE("random multi-disk configurations satisfy the hypotheses") {
    std::mt19937_64 rng(1);
    for (int s = 0; s < 100; ++s) {
        auto c = random_multi_disk(rng);
        CHECK_NOTHROW(check_multi_disks(c.disks, 1.0));
        CHECK(c.disks.size() >= 1);
        CHECK(c.disks.size() <= 3);
    }
}

}
