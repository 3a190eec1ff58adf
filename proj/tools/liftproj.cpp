// Command-line front end. Every run prints its outcome as `RESULT key=value`
// lines on stdout; diagnostics go to stderr.
//
// Exit codes: 0 done (including negative verdicts such as member=false),
// 1 a checked property failed, 2 usage or input error, 3 size guard,
// 4 numerical failure or an inconclusive SDP verdict.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liftproj/certificate.hpp"
#include "liftproj/cone.hpp"
#include "liftproj/dual_cone.hpp"
#include "liftproj/exact_linalg.hpp"
#include "liftproj/lifted.hpp"
#include "liftproj/lsplus.hpp"
#include "liftproj/properties.hpp"
#include "liftproj/recurrence.hpp"

namespace {

using namespace liftproj;

constexpr int kOk = 0;
constexpr int kPropertyFailed = 1;
constexpr int kUsage = 2;
constexpr int kGuard = 3;
constexpr int kNumerical = 4;

struct UsageError : Error {
  using Error::Error;
};

template <typename T>
void result(const std::string& key, const T& value) {
  std::cout << "RESULT " << key << '=' << value << '\n';
}

void result(const std::string& key, bool value) { result(key, value ? "true" : "false"); }
void result(const std::string& key, const Rational& value) { result(key, render(value)); }
void result(const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  result(key, std::string(buf));
}

std::string join(const RVec& v) { return render(v, ","); }

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out.empty() ? "-" : out;
}

RVec parse_list(const std::string& text) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',' || ch == ';') ch = ' ';
  std::istringstream in(s);
  RVec out;
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  return out;
}

// Objective: `ones` is (0, e); `unit:i` is e_i with i in 0..d; a literal with
// d entries gets a leading 0.
RVec parse_objective(const std::string& spec, std::size_t d) {
  RVec c(d + 1);
  if (spec == "ones") {
    for (std::size_t i = 1; i <= d; ++i) c[i] = 1;
    return c;
  }
  if (spec.rfind("unit:", 0) == 0) {
    std::size_t i = 0;
    try {
      i = std::stoul(spec.substr(5));
    } catch (const std::exception&) {
      throw ParseError("bad objective '" + spec + "'");
    }
    if (i > d) throw DimensionError("unit index outside 0..d");
    c[i] = 1;
    return c;
  }
  RVec v = parse_list(spec);
  if (v.size() == d) v.insert(v.begin(), Rational(0));
  if (v.size() != d + 1) throw DimensionError("objective needs d or d+1 entries");
  return v;
}

// Point: `center` is (1, e/2); a literal with d entries gets a leading 1.
RVec parse_point(const std::string& spec, std::size_t d) {
  if (spec == "center") {
    RVec x(d + 1, frac(1, 2));
    x[0] = 1;
    return x;
  }
  RVec v = parse_list(spec);
  if (v.size() == d) v.insert(v.begin(), Rational(1));
  if (v.size() != d + 1) throw DimensionError("point needs d or d+1 entries");
  return v;
}

// Inequality `a1,...,ad<=alpha` or `ones<=alpha`, meaning a^T x <= alpha x0.
std::pair<RVec, Rational> parse_ineq(const std::string& spec, std::size_t d) {
  auto at = spec.find("<=");
  if (at == std::string::npos) throw ParseError("inequality needs '<=': '" + spec + "'");
  RVec a = parse_objective(spec.substr(0, at), d);
  if (sgn(a[0]) != 0) throw DomainError("inequality left side must not involve x0");
  return {a, parse_rational(spec.substr(at + 2))};
}

std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> out;
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    auto dash = tok.find('-');
    if (dash == std::string::npos) throw ParseError("edge needs 'u-v': '" + tok + "'");
    try {
      out.emplace_back(std::stoul(tok.substr(0, dash)), std::stoul(tok.substr(dash + 1)));
    } catch (const std::exception&) {
      throw ParseError("bad edge '" + tok + "'");
    }
  }
  return out;
}

HCone load_cone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cone file '" + path + "'");
  return read_cone(in);
}

RMat load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

// Tolerance and guard overrides shared by every subcommand.
struct Tuning {
  double eps = sdp_eps_from_env();
  Guards guards = Guards::from_env();

  void attach(CLI::App* sub) {
    sub->add_option("--eps", eps, "SDP tolerance (env LIFTPROJ_SDP_EPS)")->capture_default_str()->check(
        CLI::PositiveNumber);
    sub->add_option("--max-vars", guards.max_variables, "lifted variable guard (env LIFTPROJ_MAX_VARS)")
        ->capture_default_str();
    sub->add_option("--max-rows", guards.max_rows, "lifted row guard (env LIFTPROJ_MAX_ROWS)")->capture_default_str();
    sub->add_option("--max-subsets", guards.max_subsets, "partition relaxation guard (env LIFTPROJ_MAX_SUBSETS)")
        ->capture_default_str();
  }
};

OpKind parse_kind(const std::string& op) {
  if (op == "ntilde0") throw DomainError("ntilde0 is handled separately");
  return parse_op(op);
}

int sdp_verdict(const NPlusResult& p) {
  result("status", to_string(p.status));
  if (!p.outcome.message.empty()) std::cerr << "sdp: " << p.outcome.message << '\n';
  return kNumerical;
}

// gen --------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::size_t d = 0, n = 0;
  long p = 0;
  std::string graph = "complete", edges, a, b, out;
};

int run_gen(const GenArgs& g) {
  HCone k;
  if (g.family == "box") {
    k = gen_box(g.d);
  } else if (g.family == "example2") {
    k = gen_example2(g.d);
  } else if (g.family == "cross") {
    k = gen_cross(g.d, g.p);
  } else if (g.family == "frac") {
    if (!g.edges.empty()) {
      if (g.d == 0) throw UsageError("frac with --edges needs --d");
      k = gen_frac(g.d, parse_edges(g.edges));
    } else {
      if (g.n == 0) throw UsageError("frac needs --n or --edges");
      if (g.graph == "complete")
        k = gen_frac(g.n, complete_graph(g.n));
      else if (g.graph == "cycle")
        k = gen_frac(g.n, cycle_graph(g.n));
      else
        throw UsageError("unknown graph '" + g.graph + "'");
    }
  } else if (g.family == "matching") {
    k = gen_matching(g.n);
  } else if (g.family == "halfspace") {
    RVec a = parse_list(g.a);
    if (a.empty()) throw UsageError("halfspace needs --a");
    k = homogenize({a}, {parse_rational(g.b)}, a.size());
  } else {
    throw UsageError("unknown family '" + g.family + "'");
  }
  if (g.out.empty())
    std::cout << write_cone(k);
  else
    write_file(g.out, write_cone(k));
  result("d", k.d());
  result("rows", k.rows().size());
  return kOk;
}

// optimize / member / rank -------------------------------------------------

struct OpArgs {
  std::string cone, op = "n", obj = "ones", point, ineq, cert;
  std::size_t r = 1, r_max = 5;
  double tol = 1e-6;
};

int run_optimize(const OpArgs& o, const Tuning& t) {
  HCone k = load_cone(o.cone);
  RVec c = parse_objective(o.obj, k.d());
  if (o.op == "nplus") {
    NPlusResult p = nplus_optimize(k, o.r, c, t.guards, t.eps);
    if (p.status == SdpStatus::Infeasible) {
      result("status", "empty");
      result("margin", p.outcome.margin);
      return kOk;
    }
    if (p.status != SdpStatus::Optimal) return sdp_verdict(p);
    result("status", "optimal");
    result("value", p.value);
    if (o.r > 0) {
      result("gap", p.outcome.gap);
      result("iterations", p.outcome.iterations);
    }
    if (!p.outcome.message.empty()) std::cerr << "sdp: " << p.outcome.message << '\n';
    return kOk;
  }
  auto v = o.op == "ntilde0" ? ntilde0_optimize(k, o.r, c, t.guards) : n_optimize(k, o.r, parse_kind(o.op), c, t.guards);
  result("status", v ? "optimal" : "empty");
  if (v) result("value", *v);
  return kOk;
}

int run_feasible(const OpArgs& o, const Tuning& t) {
  HCone k = load_cone(o.cone);
  if (o.op == "nplus") {
    NPlusResult p = nplus_feasible(k, o.r, t.guards, t.eps);
    if (p.status != SdpStatus::Optimal && p.status != SdpStatus::Infeasible) return sdp_verdict(p);
    result("feasible", p.status == SdpStatus::Optimal);
    if (o.r > 0) result("margin", p.outcome.margin);
    return kOk;
  }
  RVec e0(k.d() + 1);
  e0[0] = 1;
  auto v = o.op == "ntilde0" ? ntilde0_optimize(k, o.r, e0, t.guards) : n_optimize(k, o.r, parse_kind(o.op), e0, t.guards);
  result("feasible", v.has_value());
  return kOk;
}

int run_member(const OpArgs& o, const Tuning& t) {
  HCone k = load_cone(o.cone);
  RVec x = parse_point(o.point, k.d());
  if (o.op == "nplus") {
    NPlusResult p = nplus_member(k, o.r, x, t.guards, t.eps);
    if (p.status == SdpStatus::Infeasible) {
      result("member", false);
      result("margin", p.outcome.margin);
      return kOk;
    }
    if (p.status != SdpStatus::Optimal) return sdp_verdict(p);
    result("member", true);
    if (!o.cert.empty() && o.r > 0) {
      std::vector<double> z(p.outcome.y.data(), p.outcome.y.data() + p.outcome.y.size());
      write_file(o.cert, write_certificate(evaluate_certificate<double>(p.system, z)));
      result("certificate", o.cert);
    }
    return kOk;
  }
  if (o.op == "ntilde0") {
    result("member", ntilde0_member(k, o.r, x, t.guards));
    return kOk;
  }
  MemberResult m = n_member(k, o.r, parse_kind(o.op), x, t.guards);
  result("member", m.member);
  if (!m.member) {
    result("separator", join(m.separator));
  } else if (!o.cert.empty()) {
    if (o.r == 0) throw UsageError("level 0 has no lifted certificate");
    write_file(o.cert, write_certificate(m.certificate));
    result("certificate", o.cert);
  }
  return kOk;
}

int run_rank(const OpArgs& o, const Tuning& t) {
  HCone k = load_cone(o.cone);
  auto report_rank = [&](const std::optional<std::size_t>& rank) {
    if (rank)
      result("rank", *rank);
    else
      result("rank", "exceeds_" + std::to_string(o.r_max));
  };
  if (o.ineq.empty()) {
    if (o.op == "nplus" || o.op == "ntilde0") throw UsageError("rank without --ineq supports n and n0 only");
    RankResult res = cone_rank(k, parse_kind(o.op), o.r_max, t.guards);
    report_rank(res.rank);
    return kOk;
  }
  auto [a, alpha] = parse_ineq(o.ineq, k.d());
  if (o.op == "nplus") {
    NPlusRank res = nplus_inequality_rank(k, a, alpha, o.r_max, o.tol, t.guards, t.eps);
    std::string values;
    for (std::size_t i = 0; i < res.values.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%s%.10g", i ? "," : "", res.values[i]);
      values += buf;
    }
    if (!values.empty()) result("values", values);
    if (res.status != SdpStatus::Optimal) {
      result("status", to_string(res.status));
      return kNumerical;
    }
    report_rank(res.rank);
    return kOk;
  }
  std::string values;
  std::optional<std::size_t> rank;
  for (std::size_t r = 0; r <= o.r_max && !rank; ++r) {
    auto v = o.op == "ntilde0" ? ntilde0_optimize(k, r, a, t.guards) : n_optimize(k, r, parse_kind(o.op), a, t.guards);
    values += (r ? "," : "") + (v ? render(*v) : std::string("empty"));
    if (!v || *v <= alpha) rank = r;
  }
  result("values", values);
  report_rank(rank);
  return kOk;
}

// recurrence ---------------------------------------------------------------

struct RecArgs {
  int d = 0;
  int r_max = -1;
  std::string kind = "both", value, out;
  bool figure3 = false, appendix = false, exact = false, rank = false, closed_form = false;
};

std::vector<RecKind> rec_kinds(const std::string& kind) {
  if (kind == "c") return {RecKind::C};
  if (kind == "c_plus") return {RecKind::CPlus};
  if (kind == "both") return {RecKind::C, RecKind::CPlus};
  throw UsageError("--kind must be c, c_plus or both");
}

int run_recurrence(const RecArgs& a) {
  if (!a.figure3 && !a.appendix && !a.rank && !a.closed_form && a.value.empty())
    throw UsageError("recurrence needs one of --figure3, --appendix, --rank, --closed-form, --value");
  int code = kOk;
  if (a.figure3) {
    auto rows = figure3_data(a.d);
    std::string csv = figure3_csv(rows, a.exact);
    if (a.out.empty())
      std::cout << csv;
    else
      write_file(a.out, csv);
    std::vector<std::size_t> violations;
    for (const auto& row : rows)
      if (row.r < a.d / 2 && !(row.c_plus > row.bound)) violations.push_back(static_cast<std::size_t>(row.r));
    result("rows", rows.size());
    result("last_c_plus", rows.back().c_plus);
    result("bound_violations", violations.size());
    if (!violations.empty()) result("bound_violation_rows", join(violations));
  }
  if (a.rank)
    for (RecKind k : rec_kinds(a.kind)) result("rank_" + to_string(k), example2_rank(a.d, k));
  if (a.closed_form) {
    ClosedFormReport rep = closed_form_check(a.d);
    result("closed_form_value", rep.value);
    result("closed_form_expected", rep.expected);
    result("closed_form_matches", rep.matches);
    if (!rep.matches) code = kPropertyFailed;
  }
  if (!a.value.empty()) {
    RVec v = parse_list(a.value);
    if (v.size() != 3) throw UsageError("--value needs r,n0,n1");
    int args[3];
    for (int i = 0; i < 3; ++i) {
      if (v[i].get_den() != 1 || !v[i].get_num().fits_sint_p()) throw ParseError("--value entries must be integers");
      args[i] = static_cast<int>(v[i].get_num().get_si());
    }
    for (RecKind k : rec_kinds(a.kind)) {
      Rational q = k == RecKind::C ? c_value(a.d, args[0], args[1], args[2]) : cplus_value(a.d, args[0], args[1], args[2]);
      result(to_string(k), q);
    }
  }
  if (a.appendix) {
    AppendixReport rep = appendix_suite(a.d, a.r_max < 0 ? a.d / 2 : a.r_max);
    result("appendix_checks", rep.checks);
    result("appendix_violations", rep.violations.size());
    for (const auto& v : rep.violations) std::cerr << "appendix: " << v << '\n';
    if (!rep.ok()) code = kPropertyFailed;
  }
  return code;
}

// duality ------------------------------------------------------------------

struct DualArgs {
  std::string cone, matrix, outer, diag, separator_out;
  bool nonsymmetric = false;
  std::size_t objectives = 0;
  std::uint64_t seed = 1;
};

RMat matrix_arg(const DualArgs& a, std::size_t d) {
  if (!a.matrix.empty() == !a.outer.empty()) throw UsageError("give exactly one of --matrix and --outer");
  if (!a.matrix.empty()) return load_matrix(a.matrix);
  RVec x = parse_list(a.outer);
  if (x.size() != d + 1) throw DimensionError("--outer needs d+1 entries");
  return RMat::outer(x, x);
}

int run_skew(const DualArgs& a, const Tuning& t) {
  HCone k = load_cone(a.cone);
  SkewCheck s = thm63_skew_check(k);
  result("holds", s.holds);
  if (!s.holds) {
    result("pair", std::to_string(s.i) + "," + std::to_string(s.j));
    result("sign", s.negative ? "-" : "+");
    return kOk;
  }
  if (a.objectives > 0) {
    // When the skew condition holds N and N0 should agree; compare optima.
    detail::PropRng g(a.seed);
    std::size_t mismatches = 0;
    for (std::size_t o = 0; o < a.objectives; ++o) {
      RVec c = detail::random_objective(g, k.d());
      for (std::size_t r : {1, 2})
        if (n_optimize(k, r, OpKind::N, c, t.guards) != n_optimize(k, r, OpKind::N0, c, t.guards)) ++mismatches;
    }
    result("n_n0_mismatches", mismatches);
    if (mismatches) return kPropertyFailed;
  }
  return kOk;
}

int run_dual_member(const DualArgs& a) {
  HCone k = load_cone(a.cone);
  RMat s = matrix_arg(a, k.d());
  ConeMembership m = member_t_dperp(k, s, a.nonsymmetric ? GenVariant::Nonsymmetric : GenVariant::Symmetric);
  result("member", m.member);
  if (!m.member) {
    result("separation", m.separation);
    if (!a.separator_out.empty()) {
      write_file(a.separator_out, write_matrix(m.separator));
      result("separator", a.separator_out);
    }
  }
  return kOk;
}

int run_dualmember(const DualArgs& a) {
  HCone k = load_cone(a.cone);
  DualCheck c = dual_member_check(k, matrix_arg(a, k.d()));
  result("member", c.member);
  if (!c.member) std::cerr << "dualmember: " << c.reason << '\n';
  return kOk;
}

int run_premise(const DualArgs& a, const Tuning& t) {
  HCone k = load_cone(a.cone);
  RVec s = parse_list(a.diag);
  DiagPremise p = diag_premise_check(k, s, t.eps);
  result("premise", to_string(p.premise));
  result("premise_margin", p.premise_margin);
  result("conclusion", p.conclusion);
  if (p.premise != SdpStatus::Optimal && p.premise != SdpStatus::Infeasible) return kNumerical;
  return kOk;
}

// verify / certify / psd / hull / props --------------------------------------

struct VerifyArgs {
  std::string cone, cert;
  bool exact = false;
  double tol = 1e-7;
};

int run_verify(const VerifyArgs& a) {
  HCone k = load_cone(a.cone);
  std::ifstream in(a.cert);
  if (!in) throw ParseError("cannot open certificate '" + a.cert + "'");
  CertificateReader reader(in);
  CertificateCheck chk;
  std::size_t nodes = reader.header().nodes;
  if (reader.header().exact)
    chk = verify_certificate(k, reader.read<Rational>());
  else if (a.exact)
    chk = verify_certificate(k, to_rational(reader.read<double>()));
  else
    chk = verify_certificate(k, reader.read<double>(), a.tol);
  result("valid", chk.valid);
  result("nodes", nodes);
  result("mode", reader.header().exact || a.exact ? "exact" : "float");
  if (!reader.header().exact && !a.exact) result("worst", chk.worst);
  if (!chk.valid) std::cerr << "verify: node " << chk.node << ": " << chk.reason << '\n';
  return kOk;
}

struct CertifyArgs {
  std::string cone, point, ineq, out;
  std::size_t r = 1;
};

int run_thm42(const CertifyArgs& a) {
  HCone k = load_cone(a.cone);
  Thm42Result res = thm42_certificate(k, parse_point(a.point, k.d()));
  result("ok", res.ok);
  if (!res.ok) {
    result("failing", res.failing);
  } else if (!a.out.empty()) {
    write_file(a.out, write_matrix(res.y));
    result("matrix", a.out);
  }
  return kOk;
}

int run_certify_rank(const CertifyArgs& a, const Tuning& t) {
  HCone k = load_cone(a.cone);
  auto [c, alpha] = parse_ineq(a.ineq, k.d());
  RankCertify res = thm36_rank_certify(k, c, alpha, a.r, t.guards);
  result("certified", res.certified);
  if (!res.certified) result("failing", join(res.failing));
  return kOk;
}

int run_psd(const std::string& path) {
  PsdCheck c = ldlt_psd_check(load_matrix(path));
  result("psd", c.psd);
  if (!c.psd) {
    result("witness", join(c.witness));
    result("value", c.value);
  }
  return kOk;
}

int run_hull(const std::string& cone, const std::string& out) {
  HCone k = load_cone(cone);
  auto points = integer_points(k);
  result("points", points.size());
  result("empty", points.empty());
  HCone h = integral_hull(k);
  if (!out.empty()) {
    write_file(out, write_cone(h));
    result("hull", out);
  }
  result("hull_rows", h.rows().size());
  return kOk;
}

struct PropsArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::size_t count = 20;
};

int run_props(const PropsArgs& a, const Tuning& t) {
  std::vector<std::string> names = a.suite == "all" ? property_names() : std::vector<std::string>{a.suite};
  bool ok = true;
  for (const auto& name : names) {
    PropertyReport rep = run_property(name, a.seed, a.count, t.guards, t.eps);
    result(name + ".instances", rep.instances);
    result(name + ".nontrivial", rep.nontrivial);
    result(name + ".violations", rep.violations.size());
    for (const auto& v : rep.violations) std::cerr << name << ": " << v << '\n';
    ok = ok && rep.ok();
  }
  return ok ? kOk : kPropertyFailed;
}

const std::vector<std::string> kOps{"n", "n0", "nplus", "ntilde0"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lift-and-project relaxations: exact N/N0, semidefinite N+, recurrences and duality checks"};
  app.require_subcommand(1);
  Tuning tuning;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a cone file");
  g->add_option("family", gen.family, "box | example2 | cross | frac | matching | halfspace")->required();
  g->add_option("--d", gen.d, "dimension")->capture_default_str();
  g->add_option("--p", gen.p, "cross: number of coordinates per row that may differ")->capture_default_str();
  g->add_option("--n", gen.n, "frac / matching: number of graph vertices")->capture_default_str();
  g->add_option("--graph", gen.graph, "frac: complete | cycle")->capture_default_str();
  g->add_option("--edges", gen.edges, "frac: explicit edges such as 1-2,2-3 (with --d)");
  g->add_option("--a", gen.a, "halfspace: coefficients of a^T x <= b");
  g->add_option("--b", gen.b, "halfspace: right-hand side")->capture_default_str();
  g->add_option("-o,--output", gen.out, "cone file to write (stdout when absent)");

  OpArgs opt, fea, mem, rnk;
  auto add_cone_op = [&](CLI::App* s, OpArgs& o) {
    s->add_option("--cone", o.cone, "cone file")->required();
    s->add_option("--op", o.op, "operator")->check(CLI::IsMember(kOps))->capture_default_str();
  };
  auto* so = app.add_subcommand("optimize", "max c^T x over the x0 = 1 slice of a level-r relaxation");
  add_cone_op(so, opt);
  so->add_option("--r", opt.r, "level")->capture_default_str();
  so->add_option("--obj", opt.obj, "ones | unit:i | literal vector")->capture_default_str();
  tuning.attach(so);

  auto* sf = app.add_subcommand("feasible", "whether the x0 = 1 slice of a level-r relaxation is nonempty");
  add_cone_op(sf, fea);
  sf->add_option("--r", fea.r, "level")->capture_default_str();
  tuning.attach(sf);

  auto* sm = app.add_subcommand("member", "membership of a point in a level-r relaxation");
  add_cone_op(sm, mem);
  sm->add_option("--r", mem.r, "level")->capture_default_str();
  sm->add_option("--point", mem.point, "center | literal vector (d entries get x0 = 1)")->required();
  sm->add_option("--cert", mem.cert, "write a certificate file when the point is a member");
  tuning.attach(sm);

  auto* sr = app.add_subcommand("rank", "smallest level at which an inequality (or the hull) is valid");
  add_cone_op(sr, rnk);
  sr->add_option("--ineq", rnk.ineq, "a1,...,ad<=alpha or ones<=alpha; absent: rank of the cone");
  sr->add_option("--r-max", rnk.r_max, "highest level tried")->capture_default_str();
  sr->add_option("--tol", rnk.tol, "nplus: slack when comparing the optimum with alpha")->capture_default_str();
  tuning.attach(sr);

  RecArgs rec;
  auto* sc = app.add_subcommand("recurrence", "symmetric-point recurrences of the Example 2 cone");
  sc->add_option("--d", rec.d, "even dimension")->required();
  sc->add_option("--kind", rec.kind, "c | c_plus | both")->capture_default_str();
  sc->add_flag("--figure3", rec.figure3, "CSV of r, c_plus(r,0,0), c(r,0,0) and the lower bound");
  sc->add_flag("--exact", rec.exact, "figure3: exact rationals instead of decimals");
  sc->add_flag("--appendix", rec.appendix, "exhaustive interlacing and agreement checks");
  sc->add_option("--r-max", rec.r_max, "appendix: highest level (default d/2)");
  sc->add_flag("--rank", rec.rank, "rank of the symmetric point");
  sc->add_flag("--closed-form", rec.closed_form, "compare c(d-3,0,0) with its closed form");
  sc->add_option("--value", rec.value, "r,n0,n1: print the recurrence value");
  sc->add_option("-o,--output", rec.out, "figure3: CSV file (stdout when absent)");

  DualArgs dual;
  auto* sd = app.add_subcommand("duality", "matrix-cone duality checks");
  sd->require_subcommand(1);
  auto* sds = sd->add_subcommand("skew", "skew-symmetric condition for N = N0");
  sds->add_option("--cone", dual.cone, "cone file")->required();
  sds->add_option("--objectives", dual.objectives, "also compare N and N0 optima at r = 1, 2 on this many objectives")
      ->capture_default_str();
  sds->add_option("--seed", dual.seed, "seed for the objectives")->capture_default_str();
  tuning.attach(sds);
  auto* sdm = sd->add_subcommand("member", "S in T(K) + D-perp");
  sdm->add_option("--cone", dual.cone, "cone file")->required();
  sdm->add_option("--matrix", dual.matrix, "matrix file");
  sdm->add_option("--outer", dual.outer, "x (d+1 entries): test x x^T");
  sdm->add_flag("--nonsymmetric", dual.nonsymmetric, "use the nonsymmetric generator variant");
  sdm->add_option("--separator-out", dual.separator_out, "write the separating matrix when not a member");
  auto* sdd = sd->add_subcommand("dualmember", "Y in the dual of T(K) with diag(Y) = Y e0");
  sdd->add_option("--cone", dual.cone, "cone file")->required();
  sdd->add_option("--matrix", dual.matrix, "matrix file");
  sdd->add_option("--outer", dual.outer, "x (d+1 entries): test x x^T");
  auto* sdp = sd->add_subcommand("premise", "Diag(s) in T(K) + D-perp + PSD implies Diag(s) in T(K) + D-perp");
  sdp->add_option("--cone", dual.cone, "cone file")->required();
  sdp->add_option("--diag", dual.diag, "s (d+1 entries)")->required();
  tuning.attach(sdp);

  VerifyArgs ver;
  auto* sv = app.add_subcommand("verify", "check a lifted certificate against a cone");
  sv->add_option("--cone", ver.cone, "cone file")->required();
  sv->add_option("--cert", ver.cert, "certificate file")->required();
  sv->add_flag("--exact", ver.exact, "convert a float certificate to rationals and check exactly");
  sv->add_option("--tol", ver.tol, "float certificates: tolerance")->capture_default_str();

  CertifyArgs cer;
  auto* sce = app.add_subcommand("certify", "sufficient certificates for N+");
  sce->require_subcommand(1);
  auto* sc42 = sce->add_subcommand("thm42", "coordinate-replacement certificate for x in N+(P)");
  sc42->add_option("--cone", cer.cone, "cone file")->required();
  sc42->add_option("--point", cer.point, "center | literal vector")->required();
  sc42->add_option("-o,--output", cer.out, "write the certifying matrix");
  auto* scr = sce->add_subcommand("rank", "face-based certificate that a^T x <= alpha holds at level r");
  scr->add_option("--cone", cer.cone, "cone file")->required();
  scr->add_option("--ineq", cer.ineq, "a1,...,ad<=alpha with a >= 0")->required();
  scr->add_option("--r", cer.r, "level")->capture_default_str();
  tuning.attach(scr);

  std::string psd_matrix;
  auto* sp = app.add_subcommand("psd", "exact PSD test with a witness");
  sp->add_option("--matrix", psd_matrix, "matrix file")->required();

  std::string hull_cone, hull_out;
  auto* sh = app.add_subcommand("hull", "integer points and integral hull of a cone");
  sh->add_option("--cone", hull_cone, "cone file")->required();
  sh->add_option("-o,--output", hull_out, "write the hull as a cone file");

  PropsArgs props;
  auto* spr = app.add_subcommand("props", "seeded random-instance property suites");
  spr->add_option("--suite", props.suite, "suite name or all")->capture_default_str();
  spr->add_option("--seed", props.seed, "seed")->capture_default_str();
  spr->add_option("--count", props.count, "instances per suite")->capture_default_str();
  tuning.attach(spr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (g->parsed()) return run_gen(gen);
    if (so->parsed()) return run_optimize(opt, tuning);
    if (sf->parsed()) return run_feasible(fea, tuning);
    if (sm->parsed()) return run_member(mem, tuning);
    if (sr->parsed()) return run_rank(rnk, tuning);
    if (sc->parsed()) return run_recurrence(rec);
    if (sds->parsed()) return run_skew(dual, tuning);
    if (sdm->parsed()) return run_dual_member(dual);
    if (sdd->parsed()) return run_dualmember(dual);
    if (sdp->parsed()) return run_premise(dual, tuning);
    if (sv->parsed()) return run_verify(ver);
    if (sc42->parsed()) return run_thm42(cer);
    if (scr->parsed()) return run_certify_rank(cer, tuning);
    if (sp->parsed()) return run_psd(psd_matrix);
    if (sh->parsed()) return run_hull(hull_cone, hull_out);
    if (spr->parsed()) return run_props(props, tuning);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    result("status", "guard_exceeded");
    return kGuard;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    result("status", "numerical_failure");
    return kNumerical;
  } catch (const Error& e) {
    // Usage, parse, dimension and domain errors.
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
