#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "fssm/config.hpp"
#include "fssm/pipeline.hpp"

using namespace fssm;

TEST_CASE("config parsing") {
    const Config c = Config::parse("# header\nseed = 7\n  K_P=16.0   # inline\nmus = 0.03, 0.031\nflag = true\n\n");
    CHECK(c.integer("seed", 0) == 7);
    CHECK(c.num("K_P", 0) == 16.0);
    CHECK(c.nums("mus", {}) == std::vector<double>{0.03, 0.031});
    CHECK(c.flag("flag", false));
    CHECK(c.num("absent", 2.5) == 2.5);
    CHECK_THROWS_AS(c.require("absent"), ConfigError);
    CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("x = abc").num("x", 0), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/fssm.cfg"), ConfigError);
}

TEST_CASE("unknown keys are named") {
    const Config c = Config::parse("seed = 1\nbogus = 2\n");
    CHECK_THROWS_WITH(c.check_keys({"seed"}), "unknown config keys: bogus");
    CHECK_NOTHROW(c.check_keys({"seed", "bogus"}));
}

TEST_CASE("hash ignores layout but not values") {
    const Config a = Config::parse("b = 2\na = 1\n");
    const Config b = Config::parse("# comment\na=1\n\nb =2\n");
    const Config c = Config::parse("a = 1\nb = 3\n");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != c.hash());
    CHECK(a.hash().size() == 16);
}

TEST_CASE("physical parameters from config") {
    const Config c = Config::parse("m = 0.2\nK_P = 10\nh_quant = 0.002\ndt_sample = 0.025\n");
    CHECK(c.pendulum().m == 0.2);
    CHECK(c.pendulum().l == PendulumParams{}.l);
    const ControllerConfig k = c.controller();
    CHECK(k.K_P == 10);
    REQUIRE(k.h_quant.has_value());
    CHECK(*k.h_quant == 0.002);
    CHECK(!Config::parse("h_quant = none").controller().h_quant.has_value());
    CHECK_THROWS_AS(Config::parse("m = -1").pendulum(), ConfigError);
    CHECK_THROWS_AS(Config::parse("r_delay = 3").controller(), ConfigError);
}

TEST_CASE("trajectory csv round trip is exact") {
    ControllerConfig c;
    c.dt_sample = 0.031;
    const SimState x0{0.02, 0.1, 0, 0, 0};
    const Trajectory tr = simulate(PendulumParams{}, c, x0, x0, 2.0);
    const auto path = (std::filesystem::temp_directory_path() / "fssm_test_roundtrip.csv").string();
    write_trajectory_csv(path, tr, {"config_hash=abc", "seed=3"});
    double dt = 0;
    const auto theta = read_csv_channel(path, "theta", &dt);
    CHECK(theta == tr.theta);
    CHECK(dt == doctest::Approx(0.031).epsilon(1e-12));
    CHECK(read_csv_channel(path, "u") == tr.u);
    CHECK_THROWS(read_csv_channel(path, "nope"));
    std::remove(path.c_str());
    CHECK_THROWS_WITH(read_csv_channel(path, "theta"), doctest::Contains("missing file"));
}
