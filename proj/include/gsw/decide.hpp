#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operators.hpp"
#include "parse.hpp"
#include "spaces.hpp"

namespace gsw {

/// One side of an inclusion query: kind, systems, and the Banach space model.
/// The builders re-instantiate the systems on other lambda-grids (the
/// membership witness runs on a clipped grid where saturation is decidable).
struct SpaceSpec {
  Kind kind = Kind::Roumieu;
  SequenceSystemSpec sequences;
  FunctionSystemSpec functions;
  BanachSpaceModel model;

  std::string str() const {
    return std::string("S_{") + to_string(kind) + "}(M=" + sequences.text +
           ",W=" + functions.text + "," + model.str() + ")";
  }
};

/// `space(M=<seq-sys>,W=<fn-sys>)`, or a bare sequence spec `<seq>` as
/// shorthand for space(M=dilated(<seq>),W=dilated(<seq>)).
inline SpaceSpec parse_space(const std::string& text, Kind kind, BanachSpaceModel model,
                             int q_max = 64) {
  detail::SpecParser p(text);
  SpaceSpec out;
  out.kind = kind;
  out.model = std::move(model);
  if (text.rfind("space", 0) == 0) {
    std::string head = p.ident();
    if (head != "space") p.fail("expected 'space'");
    p.expect('(');
    std::string key = p.ident();
    if (key != "M") p.fail("expected 'M='");
    p.expect('=');
    out.sequences = detail::parse_sequence_system_at(p, q_max);
    p.expect(',');
    key = p.ident();
    if (key != "W") p.fail("expected 'W='");
    p.expect('=');
    out.functions = detail::parse_function_system_at(p, q_max);
    p.expect(')');
    p.expect_end();
    return out;
  }
  WeightSequence m = detail::parse_sequence_at(p, q_max);
  p.expect_end();
  out.sequences.text = "dilated(" + print_weight_sequence(m) + ")";
  out.sequences.build = [m](std::vector<double> ls) {
    return WeightSequenceSystem::dilated(m, std::move(ls));
  };
  out.functions.text = "dilated(" + print_weight_sequence(m) + ")";
  out.functions.build = [m](std::vector<double> ls) {
    return WeightFunctionSystem::dilated(m, std::move(ls));
  };
  return out;
}

inline std::string print_space(const SpaceSpec& s) {
  return "space(M=" + s.sequences.text + ",W=" + s.functions.text + ")";
}

enum class Conclusion { Included, NotIncluded, Inconclusive };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Included: return "Included";
    case Conclusion::NotIncluded: return "NotIncluded";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Full evidence for an inclusion decision: every hypothesis the theorem
/// assumes, the nontriviality witness, and the two growth relations.
struct DecisionCertificate {
  std::string space_a, space_b;
  std::string kind, model;
  std::vector<std::pair<std::string, Verdict>> hypotheses;
  Verdict nontriviality;
  Verdict relation_sequences;  // M [subseteq] N
  Verdict relation_functions;  // W [subseteq] V
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string note;

  bool hypotheses_witnessed() const {
    for (const auto& [name, v] : hypotheses)
      if (!v.witnessed()) return false;
    return true;
  }
};

/// Lambda-grid on which witness membership is decidable at desk horizons:
/// extreme dilations push saturation far outside the grid box.
inline std::vector<double> witness_lambda_grid() { return dyadic_grid(-2, 2); }

/// Membership of the shipped Gaussian witness in the space, on the clipped
/// lambda-grid.
inline Verdict witness_membership(const SpaceSpec& s, const Horizons& hz = {},
                                  int alpha_max = 40) {
  WeightSequenceSystem M = s.sequences.instantiate(witness_lambda_grid());
  WeightFunctionSystem W = s.functions.instantiate(witness_lambda_grid());
  GridFunction f =
      GridFunction::analytic(s.model.grid, AnalyticFunction::gaussian(1.0, s.model.grid.n));
  return membership_verdict(f, M, W, s.kind, s.model, hz, alpha_max);
}

inline DecisionCertificate decide_inclusion(const SpaceSpec& a, const SpaceSpec& b,
                                            const Horizons& hz = {}) {
  if (a.kind != b.kind)
    throw std::invalid_argument("inclusion requires both spaces of the same kind");
  if (a.model.str() != b.model.str())
    throw std::invalid_argument("inclusion requires the same Banach space model");

  DecisionCertificate cert;
  cert.space_a = print_space(a);
  cert.space_b = print_space(b);
  cert.kind = to_string(a.kind);
  cert.model = a.model.str();

  WeightSequenceSystem M = a.sequences.instantiate();
  WeightFunctionSystem W = a.functions.instantiate();
  WeightSequenceSystem N = b.sequences.instantiate();
  WeightFunctionSystem V = b.functions.instantiate();

  auto bool_verdict = [](bool ok, const char* what) {
    Verdict v = ok ? Verdict::make_witnessed() : Verdict::make_falsified();
    v.note = what;
    return v;
  };
  cert.hypotheses.push_back(
      {"M log-convex", bool_verdict(system_log_convex(M), "round-trip check")});
  cert.hypotheses.push_back({"M [L]", check_L(M, a.kind, hz)});
  cert.hypotheses.push_back({"M [I]", check_I(M, a.kind, hz)});
  cert.hypotheses.push_back(
      {"N log-convex", bool_verdict(system_log_convex(N), "round-trip check")});
  cert.hypotheses.push_back({"N [L]", check_L(N, a.kind, hz)});
  cert.hypotheses.push_back({"N [wI]", check_wI(N, a.kind, hz)});
  cert.hypotheses.push_back({"W [M]", check_M(W, a.kind, hz)});
  cert.hypotheses.push_back({"V [wM]", check_wM(V, a.kind, hz)});

  cert.relation_sequences = system_relation_sequences(M, N, a.kind, hz);
  cert.relation_functions = system_relation_functions(W, V, a.kind, hz);

  if (!cert.hypotheses_witnessed()) {
    for (const auto& [name, v] : cert.hypotheses)
      if (!v.witnessed()) {
        cert.note = "hypothesis not witnessed: " + name;
        break;
      }
    cert.conclusion = Conclusion::Inconclusive;
    return cert;
  }

  if (cert.relation_sequences.witnessed() && cert.relation_functions.witnessed()) {
    cert.conclusion = Conclusion::Included;
    cert.note = "both growth relations witnessed";
    return cert;
  }

  if (cert.relation_sequences.falsified() || cert.relation_functions.falsified()) {
    cert.nontriviality = witness_membership(a, hz);
    if (cert.nontriviality.witnessed()) {
      cert.conclusion = Conclusion::NotIncluded;
      cert.note = cert.relation_sequences.falsified()
                      ? "sequence relation falsified, source space nontrivial"
                      : "function relation falsified, source space nontrivial";
      return cert;
    }
    cert.conclusion = Conclusion::Inconclusive;
    cert.note = "relation falsified but nontriviality witness not established";
    return cert;
  }

  cert.conclusion = Conclusion::Inconclusive;
  cert.note = "growth relations inconclusive at horizon";
  return cert;
}

}  // namespace gsw
