#include <gtest/gtest.h>

#include <json.hpp>

#include "rigged/error.hpp"
#include "rigged_cli/config.hpp"
#include "rigged_cli/experiments.hpp"

using namespace rigged;
using namespace rigged::cli;
using nlohmann::json;

namespace {

const OutputFile& file(const RunResult& r, const std::string& name) {
  for (const auto& f : r.files) {
    if (f.name == name) return f;
  }
  throw std::runtime_error("missing output " + name);
}

}  // namespace

TEST(Config, ParsesCommentsAndOverrides) {
  Config c = Config::parse("# comment\nexperiment = SEMIGROUP_CHECK\n\nsemigroup.t1 = 2  # trailing\n");
  EXPECT_EQ(c.text("experiment"), "SEMIGROUP_CHECK");
  EXPECT_DOUBLE_EQ(c.number("semigroup.t1"), 2.0);
  c.set("semigroup.t1=4.5");
  EXPECT_DOUBLE_EQ(c.number("semigroup.t1"), 4.5);
  EXPECT_DOUBLE_EQ(c.number("model.omega0"), 1.0);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(Config::parse("experiment = TRIPLET_CLASSIFY\ntriplet.k_sweep = 8, 16,32").numbers("triplet.k_sweep"),
            (std::vector<double>{8, 16, 32}));
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(Config::parse("experiment = DECAY_LAW\nmodel.lamda = 0.1"), ConfigInvalid);
  EXPECT_THROW(Config::parse("experiment DECAY_LAW"), ConfigInvalid);
  EXPECT_THROW(Config::parse("experiment = FLY").validate(), ConfigInvalid);
  EXPECT_THROW(Config::parse("model.lambda = 0.1").validate(), ConfigInvalid);
  EXPECT_THROW(Config::parse("experiment = DECAY_LAW\nmodel.lambda = abc").validate(), ConfigInvalid);
  EXPECT_THROW(Config::parse("experiment = DECAY_LAW\ntime.points = 2.5").validate(), ConfigInvalid);
  Config c = Config::parse("experiment = DECAY_LAW");
  EXPECT_THROW(c.set("nonsense"), ConfigInvalid);
  EXPECT_THROW(Config::load("/nonexistent/rigged.cfg"), ConfigInvalid);
}

TEST(Config, HashTracksEffectiveValues) {
  const Config a = Config::parse("experiment = DECAY_LAW");
  const Config b = Config::parse("experiment = DECAY_LAW\nmodel.lambda = 0.1\n");
  Config c = a;
  c.set("model.lambda", "0.2");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_TRUE(json::parse(schema_json()).is_object() || json::parse(schema_json()).is_array());
}

TEST(Experiments, SemigroupCheckAndDomainViolation) {
  Config c = Config::parse("experiment = SEMIGROUP_CHECK\nsemigroup.t1 = 1.3\nsemigroup.t2 = 2.9");
  const RunResult r = run_experiment(c);
  EXPECT_LT(json::parse(r.derived_json).at("composition_residual").get<double>(), 1e-12);
  c.set("semigroup.t2=-1");
  try {
    run_experiment(c);
    FAIL() << "mixed-sign times accepted";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code(e), 4);
    EXPECT_NE(std::string(e.what()).find("semigroup domain"), std::string::npos);
  }
}

TEST(Experiments, ExitCodesByCategory) {
  EXPECT_EQ(exit_code(ConfigInvalid("x")), 2);
  EXPECT_EQ(exit_code(InvalidArgument("x")), 2);
  EXPECT_EQ(exit_code(NoPoleFound("x")), 3);
  EXPECT_EQ(exit_code(TimeOutsideSemigroupDomain("x")), 4);
  Config strong = Config::parse("experiment = ARROW_COMPARE\nmodel.lambda = 1.5");
  try {
    run_experiment(strong);
    FAIL() << "expected a numerical failure";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code(e), 3);
  }
}

TEST(Experiments, TripletSources) {
  const auto kind = [](const std::string& cfg) {
    return json::parse(run_experiment(Config::parse("experiment = TRIPLET_CLASSIFY\n" + cfg)).derived_json)
        .at("classification")
        .get<std::string>();
  };
  EXPECT_EQ(kind("triplet.source = COHERENT"), "PHI");
  EXPECT_EQ(kind("triplet.source = INVERSE"), "H_ONLY");
  EXPECT_EQ(kind("triplet.source = ONES"), "PHI_DUAL_ONLY");
}

TEST(Experiments, DiscreteStateHardyScoreIsPinned) {
  const RunResult r = run_experiment(Config::parse("experiment = HARDY_CLASSIFY\nhardy.source = DISCRETE_STATE"));
  const json h = json::parse(file(r, "hardy.json").content);
  EXPECT_NEAR(h.at("upper_fraction").get<double>(), 0.9973880765877413, 1e-9);
  EXPECT_EQ(h.at("classification"), "observable_like");
}

TEST(Experiments, RunsAreDeterministic) {
  const Config c = Config::parse("experiment = DECAY_LAW\ntime.points = 120");
  const RunResult a = run_experiment(c);
  const RunResult b = run_experiment(c);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(a.files[i].name, b.files[i].name);
    EXPECT_EQ(a.files[i].content, b.files[i].content);
  }
  EXPECT_EQ(manifest_json(c, a), manifest_json(c, b));
  EXPECT_EQ(json::parse(manifest_json(c, a)).at("config_hash"), c.hash());
  EXPECT_NE(file(a, "survival.csv").content.find("t,re_A"), std::string::npos);
}
