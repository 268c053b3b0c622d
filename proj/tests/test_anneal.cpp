#include <doctest.h>

#include "oracles.hpp"
#include "socassoc/anneal.hpp"
#include "socassoc/errors.hpp"

using namespace socassoc;

TEST_CASE("acceptance probability") {
  CHECK(acceptance_probability(1.0, 0.0) == 0.5);
  CHECK(acceptance_probability(50.0, 0.0) == 0.5);
  CHECK(acceptance_probability(1.0, 0.1) > 0.5);
  CHECK(acceptance_probability(1.0, -0.1) < 0.5);
  CHECK(acceptance_probability(1e9, -1.0) == doctest::Approx(0.0));
  CHECK(acceptance_probability(1e9, 1.0) == doctest::Approx(1.0));
  CHECK(std::isfinite(acceptance_probability(1e300, -1e300)));
}

TEST_CASE("schedules") {
  SwapEngineConfig c;
  CHECK(schedule_value(c, 1) == doctest::Approx(1.0));
  CHECK(schedule_value(c, c.max_iterations) == doctest::Approx(50.0));
  CHECK(schedule_value(c, 500) < schedule_value(c, 501));
  c.schedule = ScheduleMode::LiteralTemperature;
  c.schedule_start = 10.0;
  CHECK(schedule_value(c, 1) == doctest::Approx(10.0));
  CHECK(schedule_value(c, c.max_iterations) == doctest::Approx(0.0));
}

TEST_CASE("engine configuration is validated") {
  SwapEngineConfig c;
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.pair_swap_fraction = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.early_stop_window = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("anneal is deterministic and never loses the best matching") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Game g = oracle::dense_instance(3, 18, seed, 80.0);
    SwapEngineConfig c;
    c.seed = seed;
    c.verify_incremental = true;
    const AnnealResult a = anneal_match(g, c);
    const AnnealResult b = anneal_match(g, c);
    CHECK(a.best == b.best);
    CHECK(a.trace.size() == b.trace.size());
    CHECK(a.report.welfare >= a.initial_welfare);
    CHECK(a.report.welfare == doctest::Approx(evaluate(g, a.best).welfare));
    CHECK(a.max_incremental_error <= 1e-9);
    for (std::size_t i = 1; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].best_welfare >= a.trace[i - 1].best_welfare);
      CHECK(a.trace[i].iteration == a.trace[i - 1].iteration + 1);
    }
    if (!a.trace.empty()) CHECK(a.trace.back().best_welfare == doctest::Approx(a.report.welfare));
    CHECK(a.best_iteration <= a.iterations);
  }
}

TEST_CASE("anneal stops early when nothing is accepted") {
  const Game g = oracle::dense_instance(3, 18, 4, 80.0);
  SwapEngineConfig c;
  c.schedule_start = c.schedule_end = 1e12;  // accept only improvements
  c.early_stop_window = 25;
  const AnnealResult r = anneal_match(g, c);
  CHECK(r.iterations < c.max_iterations);
}

TEST_CASE("users without candidates yield the empty matching") {
  RunConfig config;
  config.scbs_positions = {{0, 0}};
  config.ue_positions = {{200, 0}, {0, 300}};
  const Game g = make_game(config, 0, 0, 1);
  const AnnealResult r = anneal_match(g, SwapEngineConfig{});
  for (int ue = 0; ue < g.ue_count(); ++ue) CHECK_FALSE(r.best.serving(ue).has_value());
  CHECK(r.report.welfare == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("with D2D off and uniform social distance the search never falls below max-RSSI") {
  RunConfig config;
  config.radio.macro_radius_m = 70.0;
  config.game.enable_d2d = false;
  config.social_model = SocialModelKind::ErdosRenyi;
  config.er_p = 0.0;
  config.scbs_social_ties = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Game g = make_game(config, 3, 15, seed);
    SwapEngineConfig c;
    c.seed = seed;
    const AnnealResult r = anneal_match(g, c);
    CHECK(r.report.welfare >= evaluate(g, max_rssi_baseline(g.scenario)).welfare);
  }
}

TEST_CASE("literal temperature mode runs") {
  const Game g = oracle::dense_instance(2, 10, 9, 60.0);
  SwapEngineConfig c;
  c.schedule = ScheduleMode::LiteralTemperature;
  c.schedule_start = 50.0;
  const AnnealResult r = anneal_match(g, c);
  CHECK(r.report.welfare >= r.initial_welfare);
}
