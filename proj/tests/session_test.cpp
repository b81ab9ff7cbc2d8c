#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tightcore/session.hpp"

using namespace tightcore;
using Json = nlohmann::json;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TIGHTCORE_SESSIONS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimal =
    "ring P polynomial { p=7, e=1, vars=\"x,y\" }\n"
    "ideal I in P = <x^2, x*y>\n"
    "compute groebner I\n";

Json run_json(const std::string& text) {
  return Json::parse(run_session(parse_session(text), {.timing = false}).json);
}

const Json& report_at(const Json& doc, int line) {
  for (const auto& r : doc["reports"]) {
    if (r["line"] == line) return r;
  }
  throw std::runtime_error("no report for line " + std::to_string(line));
}

}  // namespace

TEST(ParseSession, Minimal) {
  Session s = parse_session(kMinimal);
  ASSERT_EQ(s.rings.size(), 1u);
  EXPECT_EQ(s.rings[0].kind, "polynomial");
  ASSERT_EQ(s.ideals.size(), 1u);
  EXPECT_EQ(s.ideals[0].expr, "<x^2, x*y>");
  ASSERT_EQ(s.commands.size(), 1u);
  EXPECT_EQ(s.commands[0].command, "groebner");
  EXPECT_EQ(s.order, "ric");
}

TEST(ParseSession, UndeclaredIdealIsReferenceErrorAtItsLine) {
  const std::string text = std::string(kMinimal) + "\n\ncompute colon I K\n";
  try {
    parse_session(text);
    FAIL() << "expected ReferenceError";
  } catch (const ReferenceError& e) {
    EXPECT_EQ(e.line(), 6);
    EXPECT_EQ(e.column(), 17);
  }
  try {
    parse_session("ring P polynomial { p=7, vars=x }\nideal I in P = <x>\nideal K in P = I + Q^2\n");
    FAIL() << "expected ReferenceError";
  } catch (const ReferenceError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 20);
  }
  EXPECT_THROW(parse_session("ideal I in Nowhere = <x>\n"), ReferenceError);
}

TEST(ParseSession, DuplicateNames) {
  EXPECT_THROW(parse_session(std::string(kMinimal) + "ideal I in P = <y>\n"), ReferenceError);
  EXPECT_THROW(parse_session(std::string(kMinimal) + "ring I e8 { p=11 }\n"), ReferenceError);
}

TEST(ParseSession, PositionedSyntaxErrors) {
  struct Case {
    std::string text;
    int line, column;
  };
  const std::vector<Case> cases = {
      {"ring P wobbly { p=2 }\n", 1, 8},
      {"ring P e8 { q=2 }\n", 1, 13},
      {"ring P e8 p=2\n", 1, 11},
      {"\nfrobnicate\n", 2, 1},
      {std::string(kMinimal) + "compute groebner I I\n", 4, 20},
      {std::string(kMinimal) + "compute bracket I x\n", 4, 19},
      {std::string(kMinimal) + "compute is_reduction I I sideways\n", 4, 26},
      {"config seed=abc\n", 1, 13},
      {"ring S semigroup { p=5, n=3 }\nideal M in S = maximal\ncompute core M\n", 3, 14},
  };
  for (const auto& c : cases) {
    try {
      parse_session(c.text);
      ADD_FAILURE() << "parsed: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text << " -> " << e.what();
      EXPECT_EQ(e.column(), c.column) << c.text << " -> " << e.what();
    }
  }
}

// Random byte edits of a valid session either parse or raise a positioned
// ParseError; nothing else escapes.
TEST(ParseSession, MutationsNeverCrash) {
  const std::string base = slurp("ex61_p2.session");
  ASSERT_FALSE(base.empty());
  std::mt19937_64 rng(7);
  const std::string alphabet = "<>{}=,^*+ \n\"#abxyzm0123";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < edits; ++k) {
      const std::size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0:
          text.erase(pos, 1);
          break;
        case 1:
          text.insert(pos, 1, alphabet[rng() % alphabet.size()]);
          break;
        default:
          text[pos] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      parse_session(text);
    } catch (const ParseError& e) {
      EXPECT_GE(e.line(), 1);
      EXPECT_GE(e.column(), 1);
    }
  }
}

TEST(ParseSession, ShippedDiagonalFixture) {
  Session s = parse_session(slurp("ex61_p2.session"));
  ASSERT_EQ(s.rings.size(), 1u);
  EXPECT_EQ(s.rings[0].name, "R");
  EXPECT_EQ(s.rings[0].kind, "diagonal");
  std::vector<std::string> names;
  for (const auto& d : s.ideals) names.push_back(d.name);
  for (const char* want : {"m", "m2", "H", "J"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}

TEST(ParseSession, AnonymousSemigroupRing) {
  Session s = parse_session("ring semigroup { p=5, e=1, n=3 }\nideal I in semigroup = <t^3 + t^4, t^5>\n");
  ASSERT_EQ(s.rings.size(), 1u);
  EXPECT_EQ(s.rings[0].name, "semigroup");
  EXPECT_EQ(s.rings[0].kind, "semigroup");
}

TEST(PrintSession, RoundTrip) {
  std::vector<std::string> texts = {kMinimal, slurp("ex61_p2.session"), slurp("ex62_p11.session"),
                                    slurp("semigroup_n3.session"),
                                    "config samples=12 qmax=64\n"
                                    "ring Q polynomial { vars=\"a1, b1\", p=3 }\n"
                                    "ideal I in Q = (<a1> + <b1>)^2 * maximal\n"
                                    "compute tight_member \"a1^2 + b1^2\" I expect yes\n"
                                    "compute star_independent Q <a1, b1>\n"};
  for (const auto& text : texts) {
    const Session s = parse_session(text);
    const std::string printed = print_session(s);
    const Session again = parse_session(printed);
    EXPECT_EQ(again, s) << printed;
    EXPECT_EQ(print_session(again), printed);
  }
}

TEST(SetConfig, KnownAndUnknownKeys) {
  SessionConfig c;
  set_config(c, "samples", 5);
  set_config(c, "qmax", 81);
  EXPECT_EQ(c.samples, 5u);
  EXPECT_EQ(c.q_max, 81u);
  EXPECT_THROW(set_config(c, "speed", 1), DomainError);
  EXPECT_THROW(set_config(c, "samples", std::uint64_t{1} << 40), DomainError);
}

TEST(RunSession, Deterministic) {
  for (const char* name : {"ex61_p2.session", "semigroup_n3.session"}) {
    const Session s = parse_session(slurp(name));
    const auto a = run_session(s, {.timing = false});
    const auto b = run_session(s, {.timing = false});
    EXPECT_EQ(a.json, b.json) << name;
    EXPECT_EQ(a.text, b.text) << name;
  }
}

TEST(RunSession, TimingOnlyInTimedReports) {
  const Session s = parse_session(kMinimal);
  const Json timed = Json::parse(run_session(s).json);
  const Json untimed = Json::parse(run_session(s, {.timing = false}).json);
  EXPECT_TRUE(timed["reports"][0].contains("elapsed_ms"));
  EXPECT_FALSE(untimed["reports"][0].contains("elapsed_ms"));
  Json stripped = timed;
  for (auto& r : stripped["reports"]) r.erase("elapsed_ms");
  EXPECT_EQ(stripped, untimed);
}

TEST(RunSession, ErrorsDoNotAbortLaterCommands) {
  const Json doc = run_json(
      "ring R diagonal { p=2 }\n"
      "ideal B in R = <x^2, x*y>\n"
      "compute tclosure_sop B\n"
      "compute bracket B 3\n"
      "compute groebner B expect <x^2, x*y>\n");
  EXPECT_FALSE(doc["success"].get<bool>());
  EXPECT_EQ(report_at(doc, 3)["status"], "error");
  EXPECT_EQ(report_at(doc, 3)["error"]["kind"], "precondition");
  EXPECT_EQ(report_at(doc, 4)["error"]["kind"], "domain");
  EXPECT_EQ(report_at(doc, 5)["status"], "ok");
  EXPECT_TRUE(report_at(doc, 5)["expect"]["held"].get<bool>());
}

TEST(RunSession, FailedDeclarationIsReported) {
  const Json doc = run_json(
      "ring R e8 { p=5 }\n"
      "ideal m in R = maximal\n"
      "compute spread m\n"
      "ring S polynomial { p=2, vars=x }\n"
      "ideal I in S = <x^2 + >\n"
      "ideal K in S = <x>\n"
      "compute groebner K expect <x>\n");
  EXPECT_FALSE(doc["success"].get<bool>());
  EXPECT_EQ(report_at(doc, 1)["command"], "ring");
  EXPECT_EQ(report_at(doc, 1)["status"], "error");
  EXPECT_EQ(report_at(doc, 3)["status"], "error");
  EXPECT_EQ(report_at(doc, 5)["error"]["kind"], "parse");
  EXPECT_EQ(report_at(doc, 7)["status"], "ok");
}

TEST(RunSession, ExpectationMismatchFailsTheRun) {
  const auto r = run_session(parse_session(std::string(kMinimal) + "compute groebner I expect <x>\n"),
                             {.timing = false});
  EXPECT_FALSE(r.success);
  const Json doc = Json::parse(r.json);
  EXPECT_FALSE(report_at(doc, 4)["expect"]["held"].get<bool>());
  EXPECT_NE(r.text.find("FAILED"), std::string::npos);
}

TEST(RunSession, DiagonalQuadricFixture) {
  const Json doc = run_json(slurp("ex61_p2.session"));
  EXPECT_TRUE(doc["success"].get<bool>()) << doc.dump(2);
  EXPECT_EQ(doc["schema"], "tightcore-report/1");
  for (const auto& r : doc["reports"]) {
    const std::string cmd = r["command"];
    if (cmd == "core_colon") EXPECT_EQ(r["expect"]["value"], "m^4");
    if (cmd == "star_core") {
      EXPECT_TRUE(r["result"]["exact"].get<bool>());
      EXPECT_EQ(r["expect"]["value"], "m^3");
    }
    if (cmd == "compare_cores") EXPECT_EQ(r["value"], "strict");
  }
}

TEST(RunSession, E8Fixture) {
  const Json doc = run_json(slurp("ex62_p11.session"));
  EXPECT_TRUE(doc["success"].get<bool>()) << doc.dump(2);
  int checked = 0;
  for (const auto& r : doc["reports"]) {
    const std::string cmd = r["command"];
    if (cmd == "spread" || cmd == "star_spread") {
      EXPECT_EQ(r["value"], "2");
      ++checked;
    }
    if (cmd == "compare_cores") {
      EXPECT_EQ(r["value"], "equal");
      ++checked;
    }
  }
  EXPECT_EQ(checked, 3);
}

TEST(RunSession, SemigroupFixture) {
  const Json doc = run_json(slurp("semigroup_n3.session"));
  EXPECT_TRUE(doc["success"].get<bool>()) << doc.dump(2);
  bool saw_core = false, saw_check = false;
  for (const auto& r : doc["reports"]) {
    if (r["command"] == "semigroup_star_core") {
      EXPECT_EQ(r["value"], "<t^6, t^7, t^8>");
      saw_core = true;
    }
    if (r["command"] == "semigroup_crosscheck") {
      EXPECT_EQ(r["value"], "true");
      saw_check = true;
    }
  }
  EXPECT_TRUE(saw_core && saw_check);
}
