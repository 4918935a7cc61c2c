#include <gtest/gtest.h>

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "chevmod/cli.hpp"

using namespace chevmod::cli;
using nlohmann::json;

namespace {

RunConfig config(const std::string& type, unsigned q, std::vector<std::string> suites, unsigned ell = 0) {
  RunConfig c;
  c.type = type;
  c.q = q;
  c.ell = ell;
  c.suites = std::move(suites);
  return c;
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "chevmod");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

}  // namespace

TEST(Registry, ContainsNamedSuites) {
  const auto listing = list_suites();
  for (const char* name : {"lemma-3.2", "prop-3.4", "prop-4.4", "section-5", "composition"}) {
    EXPECT_NE(listing.find(name), std::string::npos) << name;
  }
  for (const auto& s : suite_registry()) EXPECT_FALSE(s.anchor.empty());
}

TEST(Normalize, DefaultsAndValidation) {
  const auto c = normalize(config("A2", 4, {"all"}));
  EXPECT_EQ(c.b, 2u);
  EXPECT_EQ(c.ell, 2u);
  EXPECT_EQ(c.suites.size(), suite_registry().size());
  EXPECT_THROW(normalize(config("A2", 6, {"all"})), UsageError);
  EXPECT_THROW(normalize(config("G2", 2, {"all"})), UsageError);
  EXPECT_THROW(normalize(config("A2", 2, {"all"}, 4)), UsageError);
  EXPECT_THROW(normalize(config("A2", 2, {"nonsense"})), UsageError);
  auto bad_b = config("A2", 2, {"all"});
  bad_b.a = 2;
  bad_b.b = 3;
  EXPECT_THROW(normalize(bad_b), UsageError);
}

TEST(Normalize, DefiningSuitesRefusedInCrossCharacteristic) {
  EXPECT_THROW(normalize(config("A2", 2, {"socle"}, 7)), UsageError);
  // Selection follows registry order regardless of the order given.
  const auto c = normalize(config("A2", 2, {"composition", "lemma-3.2"}));
  EXPECT_EQ(c.suites, (std::vector<std::string>{"lemma-3.2", "composition"}));
}

TEST(Run, SmallestInstanceAllSuitesSucceed) {
  const auto r = run(config("A1", 2, {"all"}, 2));
  EXPECT_EQ(r.exit_code, kSuccess) << r.summary;
  for (const auto& s : r.suites) EXPECT_TRUE(s.status == "pass" || s.status == "not-applicable") << s.name;
}

TEST(Run, CompositionReportsSixFactors) {
  const auto r = run(config("A2", 2, {"composition"}, 2));
  EXPECT_EQ(r.exit_code, kSuccess);
  const auto doc = json::parse(r.json);
  EXPECT_EQ(doc["schema_version"], 1);
  const auto& notes = doc["suites"][0]["parts"][0]["notes"];
  bool found = false;
  for (const auto& n : notes) {
    if (n["key"] == "factor count") {
      EXPECT_EQ(n["value"], "6");
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Run, CrossCharacteristicSkipsDefiningSuites) {
  const auto r = run(config("A1", 2, {"all"}, 5));
  EXPECT_EQ(r.exit_code, kSuccess) << r.summary;
  for (const auto& s : r.suites) {
    const auto& reg = suite_registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const SuiteInfo& i) { return i.name == s.name; });
    if (it->needs_defining) EXPECT_EQ(s.status, "skipped");
  }
}

TEST(Run, ReportSchemaAndAnchors) {
  const auto r = run(config("A2", 2, {"lemma-3.2", "filtration"}));
  const auto doc = json::parse(r.json);
  ASSERT_TRUE(doc.contains("meta"));
  EXPECT_EQ(doc["meta"]["module_dim"], 21);
  for (const auto& s : doc["suites"]) {
    EXPECT_FALSE(s["anchor"].get<std::string>().empty());
    EXPECT_TRUE(s.contains("checked"));
    EXPECT_TRUE(s.contains("vacuous"));
    EXPECT_TRUE(s.contains("failed"));
    EXPECT_FALSE(s.contains("seconds"));
  }
}

TEST(Run, DeterministicReport) {
  const auto c = config("A2", 2, {"all"});
  EXPECT_EQ(run(c).json, run(c).json);
}

TEST(Run, BudgetExceeded) {
  auto c = config("A3", 2, {"filtration"});
  c.budget = 100;
  EXPECT_THROW(run(c), chevmod::BudgetExceeded);
}

TEST(Inspect, Objects) {
  const auto c = config("A2", 2, {"all"});
  EXPECT_EQ(inspect(c, "YJ:J=1"), "{e, s2}\n");
  EXPECT_EQ(inspect(c, "eta:J="), "dim 21, support 1\n  0: 1\n");
  EXPECT_EQ(inspect(c, "WJ:J=12").substr(0, 4), "{e, ");
  EXPECT_NE(inspect(c, "EJ:J=12").find("dim 8"), std::string::npos);
  EXPECT_THROW(inspect(c, "bogus"), UsageError);
  EXPECT_THROW(inspect(c, "eta:J=9"), UsageError);
}

TEST(MainEntry, ExitCodes) {
  std::string out;
  EXPECT_EQ(invoke({"run", "--type", "A1", "--q", "2", "--a", "1", "--char", "2", "--suites", "all"}, &out), 0) << out;
  EXPECT_EQ(invoke({"run", "--type", "A2", "--q", "2", "--a", "1", "--char", "7", "--suites", "socle"}, &out), 2);
  EXPECT_NE(out.find("defining characteristic"), std::string::npos);
  EXPECT_EQ(invoke({"run", "--type", "A2", "--q", "6"}), 2);
  EXPECT_EQ(invoke({"run", "--q", "2"}), 2);
  EXPECT_EQ(invoke({"run", "--type", "A3", "--q", "2", "--budget", "50", "--suites", "filtration"}), 3);
  EXPECT_EQ(invoke({"list"}, &out), 0);
  EXPECT_NE(out.find("section-5"), std::string::npos);
  EXPECT_EQ(invoke({"inspect", "--type", "A2", "--q", "2", "YJ:J=1"}, &out), 0);
  EXPECT_EQ(out, "{e, s2}\n");
}
