#include <gtest/gtest.h>

#include "gaq/errors.hpp"
#include "gaq/pipeline.hpp"
#include "json.hpp"
#include "support/fixtures.hpp"

using namespace gaq;
using namespace gaq::test;

namespace {

ModelConfig builtin(const std::string& name) { return parse_model(*builtin_model(name)); }

const Report& principal_report() {
  static const Report r = run_pipeline(builtin("sl2r-principal"));
  return r;
}

std::string value_of(const Report& r, const std::string& id) {
  const auto* e = r.find(id);
  return e ? e->value : "<missing>";
}

std::size_t occurrences(const Report& r, const std::string& id) {
  std::size_t n = 0;
  for (const auto& s : r.sections)
    for (const auto& e : s.entries) n += e.id == id;
  return n;
}

}  // namespace

TEST(Render, TextContainsTheta) {
  const std::string text = render_text(principal_report());
  EXPECT_NE(text.find("extension.theta  Theta = d(phi) + alpha*(((b*c - a + 1)/a)*d(a) - b*d(c))"), std::string::npos);
  EXPECT_EQ(text.rfind("gaq report: sl2r-principal [pipeline]\n", 0), 0u);
  EXPECT_TRUE(values_equal(EntryKind::Form, principal_report().find("extension.theta")->value,
                           "d(phi) + alpha*((1 + b*c - a)/a*d(a) - b*d(c))"));
}

TEST(Render, EmptyReport) {
  const Report empty;
  const auto doc = nlohmann::json::parse(render_json(empty));
  EXPECT_EQ(doc.at("schema"), "gaq-report v1");
  EXPECT_TRUE(doc.at("sections").empty());
  EXPECT_EQ(doc.at("summary").at("pass"), 0);
  EXPECT_EQ(render_json(report_from_json(render_json(empty))), render_json(empty));
  EXPECT_NE(render_text(empty).find("summary: 0 pass, 0 fail, 0 not-applicable"), std::string::npos);
}

TEST(Render, JsonRoundTripIsIdentical) {
  for (const auto& name : builtin_model_names()) {
    const std::string once = render_json(run_pipeline(builtin(name)));
    const Report back = report_from_json(once);
    EXPECT_EQ(render_json(back), once) << name;
    EXPECT_EQ(render_text(back), render_text(run_pipeline(builtin(name)))) << name;
  }
}

TEST(Render, RationalsAsStrings) {
  const auto doc = nlohmann::json::parse(render_json(principal_report()));
  bool found = false;
  for (const auto& s : doc.at("sections"))
    for (const auto& e : s.at("entries"))
      if (e.at("id") == "measure.kGH") {
        found = true;
        ASSERT_EQ(e.at("scalars").size(), 2u);
        EXPECT_EQ(e.at("scalars")[0].at("re"), "-2");
        EXPECT_EQ(e.at("scalars")[0].at("im"), "0");
      }
  EXPECT_TRUE(found);
  EXPECT_THROW(report_from_json("{\"schema\": \"other\"}"), Error);
  EXPECT_THROW(report_from_json("not json"), Error);
}

TEST(Render, Deterministic) {
  for (const auto& name : builtin_model_names())
    EXPECT_EQ(render_json(run_pipeline(builtin(name))), render_json(run_pipeline(builtin(name)))) << name;
}

TEST(Pipeline, EveryEntryOnce) {
  for (const auto& name : builtin_model_names()) {
    const Report r = run_pipeline(builtin(name));
    for (const auto& s : r.sections)
      for (const auto& e : s.entries) EXPECT_EQ(occurrences(r, e.id), 1u) << name << " " << e.id;
  }
}

TEST(Pipeline, PrincipalValues) {
  const auto& r = principal_report();
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(value_of(r, "unitarity.verdict"), "unitary");
  EXPECT_TRUE(values_equal(EntryKind::Expr, value_of(r, "casimir.final"), "-(1 + alpha^2)/2"));
  EXPECT_TRUE(values_equal(EntryKind::Exprs, value_of(r, "operators.final"),
                           "-1 + i*alpha - 2*tau*D, -tau + i*alpha*tau - tau^2*D, D"));
  EXPECT_EQ(r.find("unitarity.verdict")->status, Status::Pass);
  EXPECT_EQ(r.find("casimir.horizontal_class")->status, Status::Pass);
}

TEST(Pipeline, DiscreteStopsAtPolarization) {
  const Report r = run_pipeline(builtin("sl2r-discrete"));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(value_of(r, "polarization.real_count"), "0");
  EXPECT_TRUE(values_equal(EntryKind::Expr, value_of(r, "polarization.certificate"), "nu^2 + 4"));
  for (const char* id : {"ansatz.horizontal", "operators.final", "casimir.final", "measure.rho", "unitarity.verdict"}) {
    ASSERT_NE(r.find(id), nullptr) << id;
    EXPECT_EQ(r.find(id)->status, Status::NotApplicable) << id;
  }
}

TEST(Pipeline, Stages) {
  const auto m = builtin("sl2r-principal");
  const Report check = run_pipeline(m, Stage::Check);
  EXPECT_EQ(check.stage, "check");
  EXPECT_EQ(check.find("group.associativity")->status, Status::Pass);
  EXPECT_EQ(check.find("fields.left"), nullptr);
  const Report derive = run_pipeline(m, Stage::Derive);
  EXPECT_EQ(derive.find("haar.form")->status, Status::Pass);
  EXPECT_EQ(derive.find("extension.theta"), nullptr);
  EXPECT_EQ(stage_from_string("represent"), Stage::Represent);
  EXPECT_THROW(stage_from_string("bogus"), Error);
}

TEST(Pipeline, ExpectationMismatchFails) {
  auto m = builtin("sl2r-principal");
  m.expect["casimir.final"] = {"-alpha^2/2", 0};
  m.expect["no.such.entry"] = {"1", 0};
  const Report r = run_pipeline(m);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("casimir.final")->status, Status::Fail);
  ASSERT_TRUE(r.find("casimir.final")->expected.has_value());
  ASSERT_NE(r.find("no.such.entry"), nullptr);
  EXPECT_EQ(r.find("no.such.entry")->status, Status::Fail);
}

TEST(Pipeline, FailureBlocksLaterSteps) {
  auto m = builtin("sl2r-principal");
  m.law[1] = E("a1*b2 + b1");
  const Report r = run_pipeline(m);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("group.associativity")->status, Status::Fail);
  EXPECT_EQ(r.find("unitarity.verdict")->status, Status::NotApplicable);
}

TEST(Pipeline, MockSignIndependence) {
  const auto m = builtin("sl2r-mock");
  const Report plus = run_pipeline(m.with_parameters({{"gamma", Scalar(1)}}));
  const Report minus = run_pipeline(m.with_parameters({{"gamma", Scalar(-1)}}));
  EXPECT_TRUE(plus.passed());
  EXPECT_TRUE(minus.passed());
  EXPECT_EQ(value_of(plus, "operators.final"), value_of(minus, "operators.final"));
  EXPECT_EQ(value_of(plus, "casimir.final"), value_of(minus, "casimir.final"));
}

TEST(Compare, Reports) {
  const auto& r = principal_report();
  EXPECT_TRUE(compare_reports(r, r).empty());
  Report golden = r;
  golden.find("casimir.final")->value = "-alpha^2/2";
  golden.find("operators.final")->value = "D, -tau + i*alpha*tau - tau^2*D, -1 + i*alpha - 2*tau*D";
  golden.sections.back().entries.push_back(ReportEntry{"extra.entry", "x", EntryKind::Text, "1"});
  const auto diffs = compare_reports(r, golden);
  EXPECT_EQ(diffs.size(), 3u);
  Report reordered = r;
  reordered.find("casimir.final")->value = "-1/2 - alpha^2/2";
  EXPECT_TRUE(compare_reports(r, reordered).empty());
}

TEST(Compare, ValuesEqualKinds) {
  EXPECT_TRUE(values_equal(EntryKind::Span, "span{(1, 0, 0), (0, 1, 0)}", "span{(1, 1, 0), (0, 2, 0)}"));
  EXPECT_FALSE(values_equal(EntryKind::Span, "span{(1, 0, 0)}", "span{(0, 1, 0)}"));
  EXPECT_TRUE(values_equal(EntryKind::Spans, "span{(1, 0, 0)}; span{(0, 1, 0)}", "span{(0, 1, 0)}; span{(2, 0, 0)}"));
  EXPECT_TRUE(values_equal(EntryKind::Forms, "0, d(a)", "0*d(b)&d(c), d(a)"));
  EXPECT_TRUE(values_equal(EntryKind::Fields, "a*D[a] + b*D[b]", "b*D[b] + a*D[a]"));
  EXPECT_TRUE(values_equal(EntryKind::Expr, "-3*c", "gamma*c", {{"gamma", Scalar(-3)}}));
  EXPECT_TRUE(values_equal(EntryKind::Text, "unitary ", "unitary"));
  EXPECT_FALSE(values_equal(EntryKind::Expr, "a +", "a"));
}
