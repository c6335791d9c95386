#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "systems.hpp"

namespace gsw {

/// Parse failure with 1-based line/column into the offending text.
struct ParseError : std::runtime_error {
  int line = 1, column = 1;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

namespace detail {

/// Canonical number rendering shared by all printers, so parse(print(x))
/// reproduces the text byte for byte.
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class SpecParser {
 public:
  explicit SpecParser(std::string text) : s_(std::move(text)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') { ++line; col = 1; } else ++col;
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() { skip_ws(); return pos_ >= s_.size(); }
  char peek() { skip_ws(); return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool try_eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  void expect(char c) {
    if (!try_eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
            s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }
  double number() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            s_[pos_] == 'e' || s_[pos_] == 'E' ||
            ((s_[pos_] == '+' || s_[pos_] == '-') &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
      ++pos_;
    if (pos_ == start) fail("expected a number");
    try {
      return std::stod(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("malformed number");
    }
  }
  /// key=value with a specific key
  double keyed_number(const std::string& key) {
    std::string k = ident();
    if (k != key) fail("expected '" + key + "='");
    expect('=');
    return number();
  }
  std::vector<double> bracket_list() {
    expect('[');
    std::vector<double> out;
    if (!try_eat(']')) {
      do out.push_back(number());
      while (try_eat(','));
      expect(']');
    }
    return out;
  }
  void expect_end() {
    if (!at_end()) fail("trailing input");
  }

  std::string rest_raw() { skip_ws(); return s_.substr(pos_); }
  const std::string& text() const { return s_; }
  std::size_t pos() const { return pos_; }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

inline BmtWeight parse_omega_at(SpecParser& p) {
  std::string head = p.ident();
  if (head == "pow") {
    p.expect('(');
    double rho = p.keyed_number("rho");
    p.expect(')');
    if (!(rho > 0.0)) p.fail("pow needs rho > 0");
    return BmtWeight::power_minus_one(rho);
  }
  if (head == "logpow") {
    p.expect('(');
    double a = p.keyed_number("a");
    p.expect(')');
    if (!(a >= 1.0)) p.fail("logpow needs a >= 1");
    return BmtWeight::log_power(a);
  }
  if (head == "phi-table") {
    p.expect(':');
    auto v = p.bracket_list();
    if (v.size() < 3) p.fail("phi-table needs x_max followed by at least two values");
    double x_max = v.front();
    v.erase(v.begin());
    if (!(x_max > 0.0)) p.fail("phi-table needs x_max > 0 as its first entry");
    return BmtWeight::sampled_phi(x_max, std::move(v));
  }
  p.fail("unknown weight-function spec '" + head + "'");
}

inline WeightSequence parse_sequence_at(SpecParser& p, int q_max) {
  std::string head = p.ident();
  if (head == "gevrey") {
    p.expect('(');
    double s = p.keyed_number("s");
    double h = 1.0;
    if (p.try_eat(',')) h = p.keyed_number("h");
    p.expect(')');
    if (!(s > 0.0) || !(h > 0.0)) p.fail("gevrey needs s > 0 and h > 0");
    return WeightSequence::gevrey(s, h, 1, q_max);
  }
  if (head == "table") {
    p.expect(':');
    auto v = p.bracket_list();
    if (v.size() < 3) p.fail("table needs at least three orders");
    return WeightSequence::iso_table(std::move(v));
  }
  if (head == "tensor") {
    p.expect('(');
    std::vector<WeightSequence> fs;
    fs.push_back(parse_sequence_at(p, q_max));
    while (p.try_eat(',')) fs.push_back(parse_sequence_at(p, q_max));
    p.expect(')');
    return WeightSequence::tensor(std::move(fs));
  }
  if (head == "bmt") {
    p.expect('(');
    BmtWeight w = parse_omega_at(p);
    double lambda = 1.0;
    if (p.try_eat(',')) lambda = p.keyed_number("lambda");
    p.expect(')');
    if (!(lambda > 0.0)) p.fail("bmt needs lambda > 0");
    return WeightSequence::from_bmt(std::move(w), lambda, 1, q_max);
  }
  p.fail("unknown weight-sequence spec '" + head + "'");
}

inline AnalyticFunction parse_function_at(SpecParser& p) {
  std::string head = p.ident();
  if (head == "gaussian") {
    double a = 1.0;
    if (p.try_eat('(')) {
      a = p.keyed_number("a");
      p.expect(')');
    }
    if (!(a > 0.0)) p.fail("gaussian needs a > 0");
    return AnalyticFunction::gaussian(a);
  }
  if (head == "sinc") return AnalyticFunction::sinc_phase(1);
  if (head == "bump") {
    int deg = 8;
    double r = 1.0;
    if (p.try_eat('(')) {
      deg = int(p.keyed_number("deg"));
      if (p.try_eat(',')) r = p.keyed_number("r");
      p.expect(')');
    }
    if (deg < 1 || !(r > 0.0)) p.fail("bump needs deg >= 1 and r > 0");
    return AnalyticFunction::bump(deg, r);
  }
  if (head == "trig") {
    p.expect(':');
    p.expect('[');
    std::vector<std::pair<std::vector<int>, cplx>> terms;
    do {
      p.expect('(');
      int k = int(p.number());
      p.expect(',');
      double c = p.number();
      p.expect(')');
      terms.push_back({{k}, cplx(c)});
    } while (p.try_eat(','));
    p.expect(']');
    return AnalyticFunction::trig(std::move(terms), 1);
  }
  p.fail("unknown function spec '" + head + "'");
}

}  // namespace detail

inline BmtWeight parse_omega(const std::string& text) {
  detail::SpecParser p(text);
  BmtWeight w = detail::parse_omega_at(p);
  p.expect_end();
  return w;
}

inline WeightSequence parse_weight_sequence(const std::string& text, int q_max = 64) {
  detail::SpecParser p(text);
  WeightSequence m = detail::parse_sequence_at(p, q_max);
  p.expect_end();
  return m;
}

inline AnalyticFunction parse_analytic_function(const std::string& text) {
  detail::SpecParser p(text);
  AnalyticFunction f = detail::parse_function_at(p);
  p.expect_end();
  return f;
}

/// A system spec plus the ability to re-instantiate it on another lambda-grid
/// (membership witnesses are checked on a clipped grid).
struct SequenceSystemSpec {
  std::string text;  // canonical form
  std::function<WeightSequenceSystem(std::vector<double>)> build;
  WeightSequenceSystem instantiate(std::vector<double> lambdas = default_lambda_grid()) const {
    return build(std::move(lambdas));
  }
};

struct FunctionSystemSpec {
  std::string text;
  std::function<WeightFunctionSystem(std::vector<double>)> build;
  WeightFunctionSystem instantiate(std::vector<double> lambdas = default_lambda_grid()) const {
    return build(std::move(lambdas));
  }
};

inline std::string print_omega(const BmtWeight& w);
inline std::string print_weight_sequence(const WeightSequence& m);

namespace detail {

inline SequenceSystemSpec parse_sequence_system_at(SpecParser& p, int q_max) {
  std::string head = p.ident();
  if (head == "dilated") {
    p.expect('(');
    WeightSequence m = parse_sequence_at(p, q_max);
    p.expect(')');
    SequenceSystemSpec out;
    out.text = "dilated(" + print_weight_sequence(m) + ")";
    out.build = [m](std::vector<double> ls) {
      return WeightSequenceSystem::dilated(m, std::move(ls));
    };
    return out;
  }
  if (head == "frombmt") {
    p.expect('(');
    BmtWeight w = parse_omega_at(p);
    p.expect(')');
    SequenceSystemSpec out;
    out.text = "frombmt(" + print_omega(w) + ")";
    out.build = [w, q_max](std::vector<double> ls) {
      return WeightSequenceSystem::from_bmt(w, std::move(ls), 1, q_max);
    };
    return out;
  }
  if (head == "explicit") {
    p.expect(':');
    p.expect('[');
    std::vector<std::pair<double, WeightSequence>> members;
    std::string body;
    do {
      p.expect('(');
      double l = p.number();
      p.expect(',');
      WeightSequence m = parse_sequence_at(p, q_max);
      p.expect(')');
      if (!body.empty()) body += ",";
      body += "(" + num(l) + "," + print_weight_sequence(m) + ")";
      members.push_back({l, std::move(m)});
    } while (p.try_eat(','));
    p.expect(']');
    SequenceSystemSpec out;
    out.text = "explicit:[" + body + "]";
    out.build = [members](std::vector<double>) {
      return WeightSequenceSystem::explicit_members(members);
    };
    return out;
  }
  p.fail("unknown sequence-system spec '" + head + "'");
}

inline FunctionSystemSpec parse_function_system_at(SpecParser& p, int q_max) {
  std::string head = p.ident();
  if (head == "dilated") {
    p.expect('(');
    WeightSequence a = parse_sequence_at(p, q_max);
    p.expect(')');
    FunctionSystemSpec out;
    out.text = "dilated(" + print_weight_sequence(a) + ")";
    out.build = [a](std::vector<double> ls) {
      return WeightFunctionSystem::dilated(a, std::move(ls));
    };
    return out;
  }
  if (head == "fromomega") {
    p.expect('(');
    BmtWeight w = parse_omega_at(p);
    p.expect(')');
    FunctionSystemSpec out;
    out.text = "fromomega(" + print_omega(w) + ")";
    out.build = [w](std::vector<double> ls) {
      return WeightFunctionSystem::from_omega(ScalarWeight(w), std::move(ls), 1);
    };
    return out;
  }
  if (head == "fromseq") {
    p.expect('(');
    SequenceSystemSpec m = parse_sequence_system_at(p, q_max);
    p.expect(')');
    FunctionSystemSpec out;
    out.text = "fromseq(" + m.text + ")";
    out.build = [m](std::vector<double> ls) {
      return WeightFunctionSystem::from_sequence_system(m.build(std::move(ls)));
    };
    return out;
  }
  if (head == "polyshift") {
    p.expect('(');
    double k = p.keyed_number("k");
    p.expect(',');
    FunctionSystemSpec base = parse_function_system_at(p, q_max);
    p.expect(')');
    FunctionSystemSpec out;
    out.text = "polyshift(k=" + num(k) + "," + base.text + ")";
    out.build = [k, base](std::vector<double> ls) {
      return WeightFunctionSystem::poly_shift_all(k, base.build(std::move(ls)));
    };
    return out;
  }
  p.fail("unknown function-system spec '" + head + "'");
}

}  // namespace detail

inline SequenceSystemSpec parse_sequence_system(const std::string& text, int q_max = 64) {
  detail::SpecParser p(text);
  SequenceSystemSpec out = detail::parse_sequence_system_at(p, q_max);
  p.expect_end();
  return out;
}

inline FunctionSystemSpec parse_function_system(const std::string& text, int q_max = 64) {
  detail::SpecParser p(text);
  FunctionSystemSpec out = detail::parse_function_system_at(p, q_max);
  p.expect_end();
  return out;
}

inline std::string print_omega(const BmtWeight& w) {
  if (auto* p = std::get_if<BmtWeight::PowerMinusOne>(&w.spec()))
    return "pow(rho=" + detail::num(p->rho) + ")";
  if (auto* p = std::get_if<BmtWeight::LogPower>(&w.spec()))
    return "logpow(a=" + detail::num(p->a) + ")";
  const auto& s = std::get<BmtWeight::SampledPhi>(w.spec());
  std::string out = "phi-table:[" + detail::num(s.x_max);
  for (double v : s.phi) out += "," + detail::num(v);
  return out + "]";
}

inline std::string print_weight_sequence(const WeightSequence& m) {
  if (auto* g = std::get_if<WeightSequence::GevreyIso>(&m.spec()))
    return "gevrey(s=" + detail::num(g->s) + ",h=" + detail::num(g->h) + ")";
  if (auto* t = std::get_if<WeightSequence::IsoTable>(&m.spec())) {
    std::string out = "table:[";
    for (std::size_t i = 0; i < t->logm.size(); ++i)
      out += (i ? "," : "") + detail::num(std::exp(t->logm[i]));
    return out + "]";
  }
  if (auto* t = std::get_if<WeightSequence::Tensor>(&m.spec())) {
    std::string out = "tensor(";
    for (std::size_t i = 0; i < t->factors.size(); ++i)
      out += (i ? "," : "") + print_weight_sequence(t->factors[i]);
    return out + ")";
  }
  if (auto* b = std::get_if<WeightSequence::FromBmt>(&m.spec()))
    return "bmt(" + print_omega(b->omega) + ",lambda=" + detail::num(b->lambda) + ")";
  throw std::invalid_argument("anisotropic tables have no canonical spec form");
}

inline std::string print_analytic_function(const std::string& canonical_text) {
  // functions are printed from the text they parsed from; re-parse to validate
  (void)parse_analytic_function(canonical_text);
  return canonical_text;
}

/// Config files: UTF-8 text, one `name = spec` per line, '#' comments.
inline std::vector<std::pair<std::string, std::string>> parse_config(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto strip = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      std::size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line needs 'name = spec'", line_no, 1);
    std::string name = strip(line.substr(0, eq));
    std::string spec = strip(line.substr(eq + 1));
    if (name.empty() || spec.empty())
      throw ParseError("config line needs 'name = spec'", line_no, 1);
    out.push_back({name, spec});
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace gsw
