#include <gtest/gtest.h>

#include "trideco/pipeline.hpp"

using namespace trideco;

namespace {

json sweedler_json() { return read_json_file(preset_dir() / "sweedler.json"); }

json run_json(const json& cfg, std::size_t threads = 1, bool full = false) {
  RunOptions opt;
  opt.threads = threads;
  opt.full = full;
  return run_job(parse_config(cfg), opt);
}

}  // namespace

TEST(Pipeline, SweedlerBundle) {
  const json b = run_json(sweedler_json(), 1, true);
  EXPECT_EQ(bundle_exit_code(b), 0);
  const json& a = b["analyses"];
  EXPECT_EQ(a["build"]["dim"], 16);
  EXPECT_EQ(a["nichols"]["V"]["hilbert"], json({1, 1}));
  EXPECT_EQ(a["simples"]["count"], 4);
  EXPECT_EQ(a["characters"]["simple_dims"], json({{"w0", 1}, {"w1", 1}, {"w2", 2}, {"w3", 2}}));
  EXPECT_EQ(a["bgg"]["dimension_sum"], 16);
  EXPECT_EQ(a["bgg"]["reciprocity_residual"], 0);
  EXPECT_EQ(a["rigid"]["criterion"], json({"w0", "w1"}));
  for (const auto& [name, rec] : a.items()) {
    EXPECT_EQ(rec["status"], "ok") << name;
    EXPECT_TRUE(rec["passed"].get<bool>()) << name;
  }
}

TEST(Pipeline, DeterministicAcrossThreadCounts) {
  json cfg = read_json_file(preset_dir() / "taft-3.json");
  const std::string one = run_json(cfg, 1).dump();
  EXPECT_EQ(one, run_json(cfg, 4).dump());
  EXPECT_EQ(one, run_json(cfg, 4).dump());
}

TEST(Pipeline, JsonRoundTrip) {
  const json b = run_json(read_json_file(preset_dir() / "uq-sl2-N3.json"));
  const std::string text = b.dump(2);
  EXPECT_EQ(json::parse(text), b);
  EXPECT_EQ(json::parse(text).dump(2), text);
}

TEST(Pipeline, CyclotomicRendering) {
  EXPECT_EQ(cyclotomic_json(Cyclotomic(Rational(3, 4))), json({{"order", 1}, {"coeffs", {"3/4"}}}));
  EXPECT_EQ(cyclotomic_json(Cyclotomic(-2)), json({{"order", 1}, {"coeffs", {-2}}}));
  const json z = cyclotomic_json(Cyclotomic::zeta(3, 1));
  EXPECT_EQ(z["order"], 3);
  EXPECT_EQ(z["coeffs"], json({0, 1}));
}

TEST(Pipeline, FailuresAreIsolated) {
  json cfg = read_json_file(preset_dir() / "uq-sl2-N3.json");
  cfg["analyses"] = {"simples", "rigid", "coideal"};
  const json b = run_json(cfg);
  EXPECT_EQ(b["analyses"]["simples"]["status"], "ok");
  EXPECT_EQ(b["analyses"]["rigid"]["status"], "error");
  EXPECT_EQ(b["analyses"]["rigid"]["kind"], "config");
  EXPECT_EQ(b["analyses"]["coideal"]["status"], "ok");
  EXPECT_EQ(bundle_exit_code(b), 2);
}

TEST(Pipeline, BudgetFailureSkipsDependents) {
  json cfg = read_json_file(preset_dir() / "taft-3.json");
  cfg["budgets"]["max_degree"] = 2;
  cfg["analyses"] = {"simples", "build", "characters"};
  const json b = run_json(cfg);
  EXPECT_EQ(b["analyses"]["simples"]["status"], "ok");
  EXPECT_EQ(b["analyses"]["build"]["kind"], "budget");
  EXPECT_EQ(b["analyses"]["characters"]["kind"], "budget");
  EXPECT_EQ(bundle_exit_code(b), 4);
  // Without a group base, rigid is a config error; the first failure decides.
  cfg = read_json_file(preset_dir() / "uq-sl2-N3.json");
  cfg["budgets"]["max_degree"] = 2;
  cfg["analyses"] = {"characters", "rigid"};
  EXPECT_EQ(bundle_exit_code(run_json(cfg)), 4);
  cfg["analyses"] = {"rigid", "characters"};
  EXPECT_EQ(bundle_exit_code(run_json(cfg)), 2);
}

TEST(Pipeline, InducedBudgetSkipsExplicitCovers) {
  json cfg = sweedler_json();
  cfg["budgets"]["induced_dim"] = 3;
  cfg["analyses"] = {"bgg", "tensor"};
  const json b = run_json(cfg);
  EXPECT_EQ(b["analyses"]["bgg"]["explicit_covers"]["status"], "skipped");
  EXPECT_TRUE(b["analyses"]["bgg"]["passed"].get<bool>());
  EXPECT_EQ(b["analyses"]["tensor"]["kind"], "budget");
}

TEST(Pipeline, ZeroModuleGivesSimplesOfH) {
  json cfg = sweedler_json();
  cfg["module"] = {{"dim", 0}, {"degrees", json::array()}, {"action", {json::array(), json::array()}}};
  cfg["analyses"] = {"nichols", "build", "simples", "characters", "bgg"};
  const json b = run_json(cfg);
  EXPECT_EQ(bundle_exit_code(b), 0) << b.dump(2);
  EXPECT_EQ(b["analyses"]["build"]["dim"], 4);
  EXPECT_EQ(b["analyses"]["simples"]["count"], 4);
  // Every Verma module is already simple and projective.
  for (const auto& [w, row] : b["analyses"]["bgg"]["verma_in_simples"].items()) EXPECT_EQ(row.size(), 1u);
  EXPECT_EQ(b["analyses"]["bgg"]["dimension_sum"], 4);
}
