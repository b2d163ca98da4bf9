#include <gtest/gtest.h>

#include "multisle/error.hpp"
#include "multisle/experiment.hpp"
#include "multisle/verify.hpp"

using namespace msle;

TEST(ExperimentSpec, ParsesNestedDocument) {
  const auto s = parse_experiment_spec(R"({
    "model": "ising", "kappa": 3,
    "domain": {"shape": "rectangle", "width": 6, "height": 12, "marks": [[0,0],[6,0],[6,12],[0,12]]},
    "samples": 500, "seed": 9,
    "ising": {"beta": 0.4, "stride": 4, "burn_in": 50, "chains": 2},
    "z_threshold": 3.5, "bias_budget": 0.05, "workers": 1
  })");
  EXPECT_EQ(s.model, "ising");
  EXPECT_EQ(s.height, 12.0);
  EXPECT_EQ(s.ising_marks.size(), 4u);
  EXPECT_EQ(s.samples, 500u);
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.beta, 0.4);
  EXPECT_EQ(s.stride, 4u);
  EXPECT_EQ(s.chains, 2u);
  EXPECT_EQ(s.z_threshold, 3.5);
  EXPECT_EQ(s.kappa(), 3.0);
  EXPECT_EQ(parse_experiment_spec(to_json(s)).stride, 4u);
  const auto e = parse_experiment_spec(R"({"model": "explorer", "explorer": {"schedule": "sequential", "sampler": "dirichlet"}})");
  EXPECT_EQ(e.schedule, Schedule::Sequential);
  EXPECT_EQ(e.sampler, HittingSampler::Dirichlet);
  EXPECT_EQ(e.kappa(), 4.0);
}

TEST(ExperimentSpec, RejectsBadDocuments) {
  EXPECT_THROW(parse_experiment_spec("{"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec("[]"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec(R"({"model": "potts"})"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec(R"({"model": "ising", "kappa": 4})"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec(R"({"model": "explorer", "kappa": 3})"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec(R"({"sample": 10})"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec(R"({"domain": {"depth": 3}})"), InvalidArgument);
  EXPECT_THROW(parse_experiment_spec(R"({"samples": "many"})"), InvalidArgument);
}

TEST(Experiment, SingleFaceSinglePair) {
  ExperimentSpec s;
  s.width = 1;
  s.height = 1;
  s.ising_marks = {{0, 0}, {1, 1}};
  s.samples = 50;
  s.burn_in = 5;
  s.stride = 1;
  const auto r = run_experiment(s);
  ASSERT_TRUE(r.prediction.has_value());
  ASSERT_EQ(r.comparison.size(), 1u);
  EXPECT_EQ(r.comparison[0].predicted, 1.0);
  EXPECT_EQ(r.comparison[0].frequency, 1.0);
  EXPECT_EQ(r.comparison[0].z, 0.0);
  EXPECT_TRUE(r.passed());
}

TEST(Experiment, SmallIsingSquareRegression) {
  ExperimentSpec s;
  s.width = 8;
  s.height = 8;
  s.samples = 2000;
  s.stride = 5;
  s.burn_in = 200;
  s.chains = 2;
  s.seed = 3;
  s.workers = 1;
  const auto r = run_experiment(s);
  ASSERT_TRUE(r.prediction.has_value());
  EXPECT_NEAR(r.prediction->at(pairing_alpha1()), 0.5, 1e-6);
  EXPECT_EQ(r.estimate.total, 2000u);
  EXPECT_EQ(r.metadata.at("tracer"), "left-most");
  EXPECT_NEAR(std::stod(r.metadata.at("cross_ratio")), 0.5, 1e-9);
  double fsum = 0.0, psum = 0.0;
  for (const auto& row : r.comparison) {
    fsum += row.frequency;
    psum += row.predicted;
    EXPECT_GE(r.estimate.entries.at(row.pairing).tau, 1.0);
  }
  EXPECT_NEAR(fsum, 1.0, 1e-8);
  EXPECT_NEAR(psum, 1.0, 1e-8);
  EXPECT_TRUE(r.passed());
  s.workers = 2;
  EXPECT_EQ(to_json(run_experiment(s)), to_json(r));
}

TEST(Experiment, ExplorerDiscWithoutPrediction) {
  ExperimentSpec s;
  s.model = "explorer";
  s.shape = "disc";
  s.radius = 4;
  s.hex_marks = {0, 6, 12, 18};
  s.samples = 200;
  const auto r = run_experiment(s);
  EXPECT_FALSE(r.prediction.has_value());
  EXPECT_EQ(r.metadata.at("prediction"), "unavailable");
  EXPECT_EQ(r.estimate.total, 200u);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.metadata.at("scheduler"), "round-robin");
}

TEST(Experiment, ExplorerRectanglePrediction) {
  ExperimentSpec s;
  s.model = "explorer";
  s.width = 10;
  s.height = 20;
  s.samples = 300;
  const auto r = run_experiment(s);
  ASSERT_TRUE(r.prediction.has_value());
  EXPECT_GT(r.prediction->at(pairing_alpha1()), 0.9);
  EXPECT_EQ(r.kappa, 4.0);
}

TEST(Experiment, RejectsInvalidShapes) {
  ExperimentSpec s;
  s.shape = "disc";
  EXPECT_THROW(run_experiment(s), InvalidArgument);
  s.shape = "rectangle";
  s.width = 2.5;
  EXPECT_THROW(run_experiment(s), InvalidArgument);
}

TEST(Verify, SuitesPass) {
  const auto pde = verify_pde(5, 1);
  EXPECT_TRUE(all_passed(pde));
  EXPECT_EQ(pde.size(), 3u);
  EXPECT_TRUE(all_passed(verify_covariance(5, 5, 1)));
  EXPECT_TRUE(all_passed(verify_sumrule()));
  EXPECT_FALSE(to_json(pde).empty());
}
