#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "gsw/report.hpp"

using namespace gsw;

namespace {

BanachSpaceModel model_l2() { return BanachSpaceModel::lp(2.0, GridSpec::standard(1)); }

SpaceSpec gevrey_space(double s, Kind k) {
  return parse_space("gevrey(s=" + detail::num(s) + ",h=1)", k, model_l2());
}

SpaceSpec bmt_space(double rho, Kind k) {
  std::string w = "pow(rho=" + detail::num(rho) + ")";
  return parse_space("space(M=frombmt(" + w + "),W=fromomega(" + w + "))", k, model_l2());
}

}  // namespace

TEST_CASE("parse and print round-trip the sequence grammar") {
  for (const char* text : {"gevrey(s=0.5,h=1)", "gevrey(s=2,h=0.25)",
                           "tensor(gevrey(s=1,h=1),gevrey(s=0.5,h=2))"}) {
    auto m = parse_weight_sequence(text);
    CHECK(print_weight_sequence(m) == text);
  }
  auto t = parse_weight_sequence("table:[1,1,2,6,24]");
  CHECK(t.log_order(3) == doctest::Approx(std::log(6.0)));
}

TEST_CASE("parse and print round-trip the omega grammar") {
  for (const char* text : {"pow(rho=0.5)", "logpow(a=2)"}) {
    auto w = parse_omega(text);
    CHECK(print_omega(w) == text);
  }
  auto w = parse_omega("phi-table:[4,0,1,2.5,4.5]");
  CHECK(print_omega(w).rfind("phi-table:[4,", 0) == 0);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_weight_sequence("gevrey(s=0.5,x=1)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column > 1);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_weight_sequence("gevrey(s=0.5,h=1) junk"), ParseError);
  CHECK_THROWS_AS(parse_omega("pow(rho=)"), ParseError);
  CHECK_THROWS_AS(parse_sequence_system("dilated(gevrey(s=1,h=1)"), ParseError);
}

TEST_CASE("system specs instantiate on custom grids") {
  auto spec = parse_sequence_system("dilated(gevrey(s=0.5,h=1))");
  auto sys = spec.instantiate({0.5, 1.0, 2.0});
  CHECK(sys.size() == 3);
  CHECK(sys.lambda(0) == doctest::Approx(0.5));
  auto fspec = parse_function_system("fromseq(dilated(gevrey(s=0.5,h=1)))");
  CHECK(fspec.instantiate({1.0, 2.0}).size() == 2);
  auto pspec = parse_function_system("polyshift(k=2,fromomega(pow(rho=0.5)))");
  auto ps = pspec.instantiate({1.0, 2.0});
  CHECK(ps.poly_shift_exponent() == doctest::Approx(2.0));
}

TEST_CASE("config files map names to specs") {
  auto cfg = parse_config("# heading comment\n"
                          "a = gevrey(s=0.5,h=1)\n"
                          "\n"
                          "b = space(M=dilated(gevrey(s=1,h=1)),W=dilated(gevrey(s=1,h=1)))\n");
  REQUIRE(cfg.size() == 2);
  CHECK(cfg[0].first == "a");
  CHECK(cfg[0].second == "gevrey(s=0.5,h=1)");
  CHECK(cfg[1].first == "b");
  CHECK_THROWS_AS(parse_config("novalue\n"), ParseError);
}

TEST_CASE("space shorthand expands to dilated systems on both sides") {
  auto s = parse_space("gevrey(s=1,h=1)", Kind::Roumieu, model_l2());
  CHECK(s.sequences.text == "dilated(gevrey(s=1,h=1))");
  CHECK(s.functions.text == "dilated(gevrey(s=1,h=1))");
  CHECK(print_space(s) ==
        "space(M=dilated(gevrey(s=1,h=1)),W=dilated(gevrey(s=1,h=1)))");
}

TEST_CASE("gevrey inclusion decisions follow the exponent order") {
  for (Kind k : {Kind::Beurling, Kind::Roumieu}) {
    for (double s : {0.5, 1.0})
      for (double sp : {0.5, 1.0}) {
        auto cert = decide_inclusion(gevrey_space(s, k), gevrey_space(sp, k));
        if (s <= sp) {
          CHECK(cert.conclusion == Conclusion::Included);
        } else {
          CHECK(cert.conclusion == Conclusion::NotIncluded);
          CHECK(cert.nontriviality.witnessed());
        }
      }
  }
}

TEST_CASE("bmt inclusion decisions follow the weight comparison") {
  for (Kind k : {Kind::Beurling, Kind::Roumieu}) {
    // sigma = O(omega) with omega = pow(1), sigma = pow(1/2)
    auto inc = decide_inclusion(bmt_space(1.0, k), bmt_space(0.5, k));
    CHECK(inc.conclusion == Conclusion::Included);
    auto rev = decide_inclusion(bmt_space(0.5, k), bmt_space(1.0, k));
    CHECK(rev.conclusion == Conclusion::NotIncluded);
  }
}

TEST_CASE("decision soundness: conclusions require witnessed hypotheses") {
  for (Kind k : {Kind::Beurling, Kind::Roumieu}) {
    for (auto [s, sp] : {std::pair{0.5, 2.0}, {2.0, 0.5}, {1.0, 1.0}}) {
      auto cert = decide_inclusion(gevrey_space(s, k), gevrey_space(sp, k));
      if (cert.conclusion != Conclusion::Inconclusive) CHECK(cert.hypotheses_witnessed());
      if (cert.conclusion == Conclusion::Included) {
        CHECK(cert.relation_sequences.witnessed());
        CHECK(cert.relation_functions.witnessed());
        // membership transfer: a witness of the source space must not be
        // refused by the target space
        CHECK(witness_membership(gevrey_space(sp, k)).status != Status::Falsified);
      }
      if (cert.conclusion == Conclusion::NotIncluded)
        CHECK((cert.relation_sequences.falsified() || cert.relation_functions.falsified()));
    }
  }
}

TEST_CASE("mismatched kinds or models are rejected") {
  CHECK_THROWS(decide_inclusion(gevrey_space(0.5, Kind::Roumieu),
                                gevrey_space(1.0, Kind::Beurling)));
  auto a = gevrey_space(0.5, Kind::Roumieu);
  auto b = parse_space("gevrey(s=1,h=1)", Kind::Roumieu,
                       BanachSpaceModel::lp(1.0, GridSpec::standard(1)));
  CHECK_THROWS(decide_inclusion(a, b));
}

TEST_CASE("gaussian witness membership on the clipped grid") {
  auto v = witness_membership(gevrey_space(0.5, Kind::Roumieu));
  CHECK(v.witnessed());
  auto v2 = witness_membership(gevrey_space(2.0, Kind::Beurling));
  CHECK(v2.witnessed());
}

TEST_CASE("certificate csv schema and determinism") {
  auto cert = decide_inclusion(gevrey_space(0.5, Kind::Roumieu),
                               gevrey_space(1.0, Kind::Roumieu));
  std::string csv = render_certificates_csv({cert});
  CHECK(csv.rfind("certificate,section,name,status,data,note", 0) == 0);
  CHECK(csv.find(",conclusion,inclusion,Included,") != std::string::npos);
  CHECK(csv.find(",hypothesis,M log-convex,Witnessed,") != std::string::npos);
  bool relation_row =
      csv.find(",relation,\"M [subseteq] N\",Witnessed,") != std::string::npos ||
      csv.find(",relation,M [subseteq] N,Witnessed,") != std::string::npos;
  CHECK(relation_row);
  // rendering is deterministic byte for byte
  CHECK(render_certificates_csv({cert}) == csv);
  std::string summary = render_summary({cert}, {});
  CHECK(summary.find("conclusion: Included") != std::string::npos);
  CHECK(render_summary({cert}, {}) == summary);
}

TEST_CASE("check rows render with quoting") {
  std::vector<CheckResult> checks{{"suite", "name,with comma", true, 0.5, 1.0, "d"}};
  std::string csv = render_checks_csv(checks);
  CHECK(csv.find("\"name,with comma\"") != std::string::npos);
  CHECK(csv.find(",pass,") != std::string::npos);
  std::string summary = render_summary({}, checks);
  CHECK(summary.find("1/1 checks passed") != std::string::npos);
}
