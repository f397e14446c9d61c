#include <doctest.h>

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wpnet/config.hpp"
#include "wpnet/csv.hpp"
#include "wpnet/errors.hpp"

using namespace wpnet;

TEST_CASE("the shipped default scenario is valid and carries the pinned values") {
    const ScenarioConfig cfg = default_config();
    CHECK_NOTHROW(validate_config(cfg));
    CHECK(cfg.seed == 1);
    CHECK(cfg.system.p_tx == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(cfg.system.p_tau == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(cfg.system.p_act == 0.1);
    CHECK(cfg.system.m_antennas == 100);
    CHECK(cfg.system.t_slot == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(cfg.clusters.count == 10);
    CHECK(cfg.clusters.radius == 10.0);
    CHECK(cfg.clusters.min_distance == 0.1);
    CHECK(cfg.policy.mode == PfMode::proportional_fair);
    CHECK(cfg.policy.t_c == 50);
    CHECK(cfg.policy.horizon == 1000);
    CHECK(cfg.monte_carlo.n_realizations == 10000);

    const auto specs = cfg.cluster_specs();
    REQUIRE(specs.size() == 10);
    for (const auto& s : specs) {
        const double dist = s.center.norm();
        CHECK(dist >= cfg.clusters.layout.inner_radius - 1e-9);
        CHECK(dist <= cfg.clusters.layout.outer_radius + 1e-9);
        CHECK(s.density == cfg.clusters.density.base);
    }
    for (std::size_t i = 0; i < specs.size(); ++i)
        for (std::size_t j = i + 1; j < specs.size(); ++j)
            CHECK((specs[i].center - specs[j].center).norm() >=
                  cfg.clusters.layout.min_separation - 1e-9);
}

TEST_CASE("serialization round-trips byte for byte") {
    const ScenarioConfig cfg = default_config();
    const std::string text = write_config(cfg);
    const ScenarioConfig back = parse_config(text);
    CHECK(write_config(back) == text);
    CHECK(back.seed == cfg.seed);
    CHECK(back.system.p_tx == cfg.system.p_tx);
    CHECK(back.system.t_ul == cfg.system.t_ul);
    CHECK(back.clusters.layout.seed == cfg.clusters.layout.seed);
}

TEST_CASE("explicit centers, linspace density and the baseline policy survive a round trip") {
    ScenarioConfig cfg = default_config();
    cfg.clusters.count = 3;
    cfg.clusters.radius = 5.0;
    cfg.clusters.layout.kind = LayoutSpec::Kind::explicit_centers;
    cfg.clusters.layout.centers = {Point2(40.0, 0.0), Point2(0.0, 45.5), Point2(-60.0, 1.25)};
    cfg.clusters.density.kind = DensityProfile::Kind::linspace;
    cfg.clusters.density.base = 0.1;
    cfg.clusters.density.lo_factor = 0.5;
    cfg.clusters.density.hi_factor = 2.0;
    cfg.policy.mode = PfMode::sum_energy;
    cfg.system.m_antennas = 4;
    cfg.steering.m_antennas = 4;

    const std::string text = write_config(cfg);
    const ScenarioConfig back = parse_config(text);
    CHECK(write_config(back) == text);
    CHECK(back.clusters.layout.kind == LayoutSpec::Kind::explicit_centers);
    REQUIRE(back.clusters.layout.centers.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(back.clusters.layout.centers[i] == cfg.clusters.layout.centers[i]);
    CHECK(back.clusters.density.kind == DensityProfile::Kind::linspace);
    CHECK(back.clusters.density.lo_factor == 0.5);
    CHECK(back.policy.mode == PfMode::sum_energy);
    CHECK(back.steering.m_antennas == 4);
}

TEST_CASE("powers accept dBm and normalize to watts") {
    const std::string text = R"({"system": {"p_tx_dbm": 40.0, "p_tau_dbm": 20.0}})";
    const ScenarioConfig cfg = parse_config(text);
    CHECK(cfg.system.p_tx == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(cfg.system.p_tau == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS(parse_config(R"({"system": {"p_tx_dbm": 40.0, "p_tx_watts": 10.0}})"),
                    ValidationError);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"system": {"bogus": 1}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"steering": {"m_antennas": 4}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"clusters": {"bogus": 1}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"clusters": {"layout": {"bogus": 1}}})"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_config(R"({"clusters": {"layout": {"kind": "explicit", "seed": 3}}})"),
        ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"clusters": {"density": {"kind": "uniform", "lo_factor": 1}}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"bogus": 1}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"monte_carlo": {"bogus": 1}})"), ValidationError);
}

TEST_CASE("malformed input names the problem") {
    CHECK_THROWS_AS(parse_config("{not json"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"mode": "greedy"}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"clusters": {"layout": {"kind": "grid"}}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"system": {"alpha": "two"}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"seed": -4})"), ValidationError);
    CHECK_THROWS_AS(load_config("/nonexistent/path/to/config.json"), IoError);
}

TEST_CASE("model invariants are enforced after parsing") {
    // density beyond the hard-core packing bound
    try {
        parse_config(R"({"clusters": {"density": {"kind": "uniform", "base": 40.0}}})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("packing bound") != std::string::npos);
    }
    // a cluster disk holding the base station
    CHECK_THROWS_AS(
        parse_config(
            R"({"clusters": {"count": 1, "layout": {"kind": "explicit", "centers": [[5.0, 0.0]]}}})"),
        ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"system": {"alpha": 1.5}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"system": {"t_dl": 1.5}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"t_c": 0}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"clusters": {"count": 0}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"monte_carlo": {"n_slots": 0}})"), ValidationError);
    // annulus too tight for the disks
    CHECK_THROWS_AS(
        parse_config(R"({"clusters": {"radius": 31.0}})"),
        ValidationError);
}

TEST_CASE("annulus layouts are deterministic and respect their constraints") {
    LayoutSpec layout;
    layout.kind = LayoutSpec::Kind::annulus;
    layout.inner_radius = 30.0;
    layout.outer_radius = 100.0;
    layout.min_separation = 35.0;
    layout.seed = 87;

    const auto a = expand_layout(layout, 10, 10.0);
    const auto b = expand_layout(layout, 10, 10.0);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    layout.seed = 88;
    const auto c = expand_layout(layout, 10, 10.0);
    CHECK(a[0] != c[0]);

    LayoutSpec expl;
    expl.kind = LayoutSpec::Kind::explicit_centers;
    expl.centers = {Point2(40.0, 0.0)};
    CHECK_THROWS_AS(expand_layout(expl, 2, 10.0), ValidationError);

    LayoutSpec tight;
    tight.kind = LayoutSpec::Kind::annulus;
    tight.inner_radius = 30.0;
    tight.outer_radius = 40.0;
    tight.min_separation = 500.0;  // cannot fit two centers
    CHECK_THROWS_AS(expand_layout(tight, 2, 10.0), ValidationError);
}

TEST_CASE("density profiles spread linearly between their endpoints") {
    DensityProfile uniform;
    uniform.kind = DensityProfile::Kind::uniform;
    uniform.base = 0.1;
    for (int k = 0; k < 4; ++k) CHECK(uniform.density(k, 4) == 0.1);

    DensityProfile lin;
    lin.kind = DensityProfile::Kind::linspace;
    lin.base = 0.1;
    lin.lo_factor = 0.5;
    lin.hi_factor = 2.0;
    const double expected[4] = {0.05, 0.1, 0.15, 0.2};
    for (int k = 0; k < 4; ++k)
        CHECK(lin.density(k, 4) == doctest::Approx(expected[k]).epsilon(1e-14));
    CHECK(lin.density(0, 1) == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("cluster expansion assigns ids and profile densities in order") {
    ScenarioConfig cfg = default_config();
    cfg.clusters.count = 4;
    cfg.clusters.layout.kind = LayoutSpec::Kind::explicit_centers;
    cfg.clusters.layout.centers = {Point2(40.0, 0.0), Point2(0.0, 40.0), Point2(-40.0, 0.0),
                                   Point2(0.0, -40.0)};
    cfg.clusters.density.kind = DensityProfile::Kind::linspace;
    cfg.clusters.density.lo_factor = 0.5;
    cfg.clusters.density.hi_factor = 2.0;

    const auto specs = cfg.cluster_specs();
    REQUIRE(specs.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(specs[k].id == k);
        CHECK(specs[k].radius == cfg.clusters.radius);
        CHECK(specs[k].min_distance == cfg.clusters.min_distance);
        CHECK(specs[k].density ==
              doctest::Approx(cfg.clusters.density.density(k, 4)).epsilon(1e-14));
    }
}

TEST_CASE("csv numbers carry 12 significant digits and parse back") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");

    const double values[] = {3.14159265358979, -4.7e-12,       8.25e17, 0.0,
                             -0.0001220703125, 99999.99999999, 1e-300};
    for (double v : values) {
        const std::string s = format_number(v);
        CHECK(s.find(',') == std::string::npos);
        double back = 0.0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(r.ec == std::errc());
        CHECK(r.ptr == s.data() + s.size());
        if (v != 0.0) CHECK(std::abs(back - v) <= 1e-11 * std::abs(v));
        else CHECK(back == 0.0);
    }
}
