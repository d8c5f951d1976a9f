#include <doctest.h>

#include <cmath>

#include "ecagr/features.hpp"
#include "support/brute_force.hpp"

using namespace ecagr;
using namespace ecagr::features;
namespace ts = testsupport;

namespace {

AnnualSeries pct(const std::string& name, int start,
                 std::vector<double> values) {
    return AnnualSeries(name, start, std::move(values), SeriesUnit::percent);
}

} // namespace

TEST_SUITE("features") {

TEST_CASE("fai indicator direct substitution") {
    const auto ind = fai_indicator(pct("fai_agr", 2000, {3, 4, 5}));
    CHECK(ind.indicator.start_year() == 2002);
    CHECK(ind.indicator.size() == 1);
    // 5 + 2*3 - 2*4
    CHECK(ind.indicator.at(2002) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("fai indicator of a constant series is the level") {
    const auto ind = fai_indicator(pct("fai_agr", 1990, {7.5, 7.5, 7.5, 7.5}));
    CHECK(ind.indicator.at(1992) == doctest::Approx(7.5).epsilon(1e-14));
    CHECK(ind.indicator.at(1993) == doctest::Approx(7.5).epsilon(1e-14));
}

TEST_CASE("fai indicator preconditions") {
    CHECK_THROWS_AS(fai_indicator(pct("fai_agr", 2000, {1, 2})),
                    ValidationError);
    CHECK_THROWS_AS(fai_indicator(AnnualSeries("fai_agr", 2000, {1, 2, 3},
                                               SeriesUnit::level)),
                    ValidationError);
}

TEST_CASE("fai indicator map is affine") {
    ts::Xorshift rng(41);
    std::vector<double> base(10);
    for (double& v : base) v = rng.uniform(-20, 30);
    const double a = rng.uniform(-3, 3);
    const double b = rng.uniform(-10, 10);
    std::vector<double> mapped(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) mapped[i] = a * base[i] + b;
    const auto ind = fai_indicator(pct("fai_agr", 2000, base));
    const auto ind2 = fai_indicator(pct("fai_agr", 2000, mapped));
    for (int year = 2002; year <= 2009; ++year) {
        CHECK(ind2.indicator.at(year) ==
              doctest::Approx(a * ind.indicator.at(year) + b).epsilon(1e-10));
    }
}

TEST_CASE("lagged indicator index arithmetic and boundary") {
    const auto ind =
        fai_indicator(pct("fai_agr", 2006, {1, 2, 4, 8, 16, 32, 64}));
    // indicator covers 2008..2012
    CHECK(lagged_indicator(ind, 2014, 4) == ind.indicator.at(2010));
    CHECK(lagged_indicator(ind, ind.indicator.start_year() + 4, 4) ==
          ind.indicator.at(ind.indicator.start_year()));
    CHECK_THROWS_AS(lagged_indicator(ind, 2011, 4), DataError);
    CHECK_THROWS_AS(lagged_indicator(ind, 2014, -1), ValidationError);
}

TEST_CASE("share delta direct and constant cases") {
    const auto delta = share_delta(pct("secondary_share", 2012, {46.0, 44.0}));
    CHECK(delta.delta.start_year() == 2013);
    CHECK(delta.delta.at(2013) == doctest::Approx(-2.0).epsilon(1e-14));

    const auto flat = share_delta(pct("secondary_share", 2000, {45, 45, 45}));
    CHECK(flat.delta.at(2001) == 0.0);
    CHECK(flat.delta.at(2002) == 0.0);

    CHECK_THROWS_AS(share_delta(pct("secondary_share", 2000, {45})),
                    ValidationError);
}

TEST_CASE("share delta telescopes") {
    ts::Xorshift rng(17);
    std::vector<double> values(14);
    for (double& v : values) v = rng.uniform(20, 60);
    const auto delta = share_delta(pct("secondary_share", 2000, values));
    double sum = 0.0;
    for (double d : delta.delta.values()) sum += d;
    CHECK(sum == doctest::Approx(values.back() - values.front()).epsilon(1e-10));
}

TEST_CASE("share projection fixed point and direct case") {
    const auto flat = project_share_bounds(45.0, 45.0);
    CHECK(flat.upper == 45.0);
    CHECK(flat.lower == doctest::Approx(45.0).epsilon(1e-14));
    CHECK_FALSE(flat.domain_warning);

    const auto declining = project_share_bounds(44.0, 45.0);
    CHECK(declining.upper == doctest::Approx(43.0).epsilon(1e-14));
    CHECK(declining.lower == doctest::Approx(42.7).epsilon(1e-14));
    CHECK(declining.lower < declining.upper);
}

TEST_CASE("share projection domain handling") {
    CHECK_THROWS_AS(project_share_bounds(0.0, 45.0), ValidationError);
    CHECK_THROWS_AS(project_share_bounds(45.0, 100.0), ValidationError);
    // steep decline exits the domain: warn, never clamp
    const auto steep = project_share_bounds(2.0, 60.0);
    CHECK(steep.domain_warning);
    CHECK(steep.upper == doctest::Approx(-56.0).epsilon(1e-12));
}

TEST_CASE("share projection bound-gap identity") {
    ts::Xorshift rng(29);
    for (int k = 0; k < 200; ++k) {
        const double prev = rng.uniform(1, 99);
        const double prev2 = rng.uniform(1, 99);
        const auto projection = project_share_bounds(prev, prev2);
        CHECK(std::fabs(projection.lower - projection.upper -
                        0.3 * (prev - prev2)) < 1e-12);
        if (prev < prev2) CHECK(projection.lower < projection.upper);
    }
}

TEST_CASE("chained projection reduces to the one-step rule at horizon 1") {
    ts::Xorshift rng(37);
    for (int k = 0; k < 50; ++k) {
        const double s0 = rng.uniform(10, 90);
        const double s1 = rng.uniform(10, 90);
        const auto series = pct("secondary_share", 2014, {s0, s1});
        const auto chain = chain_share_projection(series, 1);
        REQUIRE(chain.size() == 1);
        const auto single = project_share_bounds(s1, s0, 2016);
        CHECK(chain[0].year == 2016);
        CHECK(chain[0].upper == single.upper);
        CHECK(chain[0].lower == single.lower);
    }
}

TEST_CASE("chained projection of a constant share is constant") {
    const auto chain =
        chain_share_projection(pct("secondary_share", 2010, {40, 40, 40}), 5);
    for (const auto& projection : chain) {
        CHECK(projection.upper == doctest::Approx(40.0).epsilon(1e-12));
        CHECK(projection.lower == doctest::Approx(40.0).epsilon(1e-12));
    }
}

TEST_CASE("chained projection follows both trajectories") {
    // hand-evaluated recursion from a linear decline ...,46,44
    const auto chain =
        chain_share_projection(pct("secondary_share", 2012, {46, 44}), 2);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].upper == doctest::Approx(42.0).epsilon(1e-12));
    CHECK(chain[0].lower == doctest::Approx(41.4).epsilon(1e-12));
    CHECK(chain[1].upper == doctest::Approx(40.0).epsilon(1e-12));
    // 2.3 * 41.4 - 1.3 * 44
    CHECK(chain[1].lower == doctest::Approx(38.02).epsilon(1e-12));

    CHECK_THROWS_AS(
        chain_share_projection(pct("secondary_share", 2012, {46, 44}), 0),
        ValidationError);
}

TEST_CASE("make_design assembles aligned predictor rows") {
    MacroDataset dataset;
    dataset.add(SeriesRole::gdp_agr, pct("gdp_agr", 2010, {8, 9, 10}));
    dataset.add(SeriesRole::ec_agr, pct("ec_agr", 2010, {5, 6, 7}));
    dataset.add(SeriesRole::secondary_share,
                pct("secondary_share", 2009, {46, 45, 44, 43}));
    dataset.add(SeriesRole::fai_agr,
                pct("fai_agr", 2004, {10, 11, 12, 14, 13, 12, 11, 10}));

    const auto design = make_design(dataset, 2010, 2012, 4);
    REQUIRE(design.n() == 3);
    REQUIRE(design.p() == 3);
    CHECK(design.predictor_names[1] == "fai_indicator_lag4");
    const auto ind = fai_indicator(dataset.at(SeriesRole::fai_agr));
    CHECK(design.rows[0][0] == 8.0);
    CHECK(design.rows[0][1] == ind.indicator.at(2006));
    CHECK(design.rows[0][2] == doctest::Approx(-1.0));
    CHECK(design.response == std::vector<double>{5, 6, 7});

    // insufficient coverage propagates a data error
    CHECK_THROWS_AS(make_design(dataset, 2009, 2012, 4), DataError);
    CHECK_THROWS_AS(make_design(dataset, 2012, 2010, 4), ValidationError);

    const auto pool = make_candidate_design(dataset, 2011, 2012, {1, 2});
    REQUIRE(pool.p() == 4);
    CHECK(pool.predictor_names[1] == "fai_indicator_lag1");
    CHECK(pool.predictor_names[2] == "fai_indicator_lag2");
}

} // TEST_SUITE
