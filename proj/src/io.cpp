#include "zsv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace zsv {

namespace {

Rational json_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    auto r = parse_rational(j.get<std::string>());
    if (r) return *r;
  }
  if (j.is_number_float()) {
    auto r = parse_rational(std::to_string(j.get<double>()));
    if (r) return *r;
  }
  throw ScenarioError("cannot parse rational for " + what);
}

Json rational_json(const Rational& q) {
  if (q.get_den() == 1 && mpz_fits_slong_p(q.get_num_mpz_t()))
    return Json(q.get_num().get_si());
  return Json(to_string(q));
}

SignalTech parse_tech(const std::string& s) {
  if (s == "perfect") return SignalTech::PerfectNews;
  if (s == "aggregate") return SignalTech::AggregateNews;
  if (s == "distributional") return SignalTech::DistributionalNews;
  throw ScenarioError("unknown signal technology: " + s);
}

std::string tech_name(SignalTech t) {
  switch (t) {
    case SignalTech::PerfectNews: return "perfect";
    case SignalTech::AggregateNews: return "aggregate";
    case SignalTech::DistributionalNews: return "distributional";
  }
  return "?";
}

std::vector<Rational> parse_winner_block(const Json& j, int n, const std::string& ctx) {
  if (!j.is_object()) throw ScenarioError(ctx + ": winners must be an object");
  std::vector<Rational> dist(n + 1, Rational(0));
  if (j.contains("dist")) {
    const Json& d = j.at("dist");
    if (!d.is_array() || d.size() != static_cast<size_t>(n + 1))
      throw ScenarioError(ctx + ": winners.dist must list n+1 masses");
    for (int w = 0; w <= n; ++w) dist[w] = json_rational(d[w], "winners.dist");
  } else if (j.contains("fixed_fraction")) {
    Rational q = json_rational(j.at("fixed_fraction"), "winners.fixed_fraction");
    long w = rat_ceil(q * n).get_num().get_si();
    if (w < 0 || w > n) throw ScenarioError(ctx + ": fixed fraction out of range");
    dist[w] = 1;
  } else {
    throw ScenarioError(ctx + ": winners needs dist or fixed_fraction");
  }
  return dist;
}

BinaryChoiceSpec parse_binary(const Json& j) {
  BinaryChoiceSpec spec;
  spec.n = j.at("n").get<int>();
  spec.lambda = json_rational(j.at("lambda"), "lambda");
  spec.payoffs.vw = json_rational(j.at("payoffs").at("vw"), "payoffs.vw");
  spec.payoffs.vl = json_rational(j.at("payoffs").at("vl"), "payoffs.vl");
  spec.winner_dist = parse_winner_block(j.at("winners"), spec.n, "binary");
  spec.signal_tech = parse_tech(j.value("signals", "perfect"));
  return spec;
}

ExplicitProblem parse_explicit(const Json& j) {
  ExplicitProblem pr;
  pr.n = j.at("n").get<int>();
  for (const Json& g : j.at("good_signals")) pr.good_signals.push_back(g.get<int>());
  for (const Json& b : j.at("bad_signals")) pr.bad_signals.push_back(b.get<int>());
  for (const Json& s : j.at("states")) {
    ExplicitState st;
    for (const Json& v : s.at("payoffs")) st.payoff_diff.push_back(json_rational(v, "state payoff"));
    for (const Json& sig : s.at("signals")) st.signals.push_back(sig.get<int>());
    st.prob = json_rational(s.at("prob"), "state prob");
    pr.states.push_back(std::move(st));
  }
  return pr;
}

}  // namespace

Scenario parse_scenario(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  Scenario s;
  if (kind == "binary") {
    s.kind = Scenario::Kind::Binary;
    s.payload = parse_binary(j);
  } else if (kind == "explicit") {
    s.kind = Scenario::Kind::Explicit;
    s.payload = parse_explicit(j);
  } else if (kind == "elite") {
    s.kind = Scenario::Kind::Elite;
    EliteSpec e;
    e.base = parse_binary(j);
    e.elite_count = j.at("elites").at("count").get<int>();
    s.payload = e;
  } else if (kind == "population") {
    s.kind = Scenario::Kind::Population;
    PopulationSpec p;
    const Json& pop = j.at("population");
    for (const Json& n : pop.at("support")) p.support.push_back(n.get<int>());
    for (const Json& q : pop.at("probs")) p.probs.push_back(json_rational(q, "population.probs"));
    p.payoffs.vw = json_rational(j.at("payoffs").at("vw"), "payoffs.vw");
    p.payoffs.vl = json_rational(j.at("payoffs").at("vl"), "payoffs.vl");
    p.fraction = json_rational(j.at("winners").at("fixed_fraction"), "winners.fixed_fraction");
    p.lambda = json_rational(j.at("lambda"), "lambda");
    s.payload = p;
  } else {
    throw ScenarioError("unknown scenario kind: " + kind);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }
  return parse_scenario(j);
}

namespace {

Json binary_to_json(const BinaryChoiceSpec& spec) {
  Json j;
  j["kind"] = "binary";
  j["n"] = spec.n;
  j["lambda"] = rational_json(spec.lambda);
  j["payoffs"] = {{"vw", rational_json(spec.payoffs.vw)},
                  {"vl", rational_json(spec.payoffs.vl)}};
  Json dist = Json::array();
  for (const auto& p : spec.winner_dist) dist.push_back(rational_json(p));
  j["winners"] = {{"dist", dist}};
  j["signals"] = tech_name(spec.signal_tech);
  return j;
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  switch (s.kind) {
    case Scenario::Kind::Binary:
      return binary_to_json(std::get<BinaryChoiceSpec>(s.payload));
    case Scenario::Kind::Explicit: {
      const auto& pr = std::get<ExplicitProblem>(s.payload);
      Json j;
      j["kind"] = "explicit";
      j["n"] = pr.n;
      j["good_signals"] = pr.good_signals;
      j["bad_signals"] = pr.bad_signals;
      Json states = Json::array();
      for (const auto& st : pr.states) {
        Json s2;
        Json pays = Json::array();
        for (const auto& v : st.payoff_diff) pays.push_back(rational_json(v));
        s2["payoffs"] = pays;
        s2["signals"] = st.signals;
        s2["prob"] = rational_json(st.prob);
        states.push_back(s2);
      }
      j["states"] = states;
      return j;
    }
    case Scenario::Kind::Elite: {
      const auto& e = std::get<EliteSpec>(s.payload);
      Json j = binary_to_json(e.base);
      j["kind"] = "elite";
      j["elites"] = {{"count", e.elite_count}};
      return j;
    }
    case Scenario::Kind::Population: {
      const auto& p = std::get<PopulationSpec>(s.payload);
      Json j;
      j["kind"] = "population";
      j["lambda"] = rational_json(p.lambda);
      j["payoffs"] = {{"vw", rational_json(p.payoffs.vw)},
                      {"vl", rational_json(p.payoffs.vl)}};
      j["winners"] = {{"fixed_fraction", rational_json(p.fraction)}};
      Json probs = Json::array();
      for (const auto& q : p.probs) probs.push_back(rational_json(q));
      j["population"] = {{"support", p.support}, {"probs", probs}};
      return j;
    }
  }
  throw IoError("unreachable scenario kind");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {

const char* kstar_sign_str(KStarSign s) {
  switch (s) {
    case KStarSign::Negative: return "-";
    case KStarSign::Zero: return "0";
    case KStarSign::Positive: return "+";
  }
  return "?";
}

KStarSign kstar_sign_from(const std::string& s) {
  if (s == "-") return KStarSign::Negative;
  if (s == "0") return KStarSign::Zero;
  return KStarSign::Positive;
}

}  // namespace

Json correlation_report_to_json(const CorrelationReport& rep) {
  Json j;
  Json vg = Json::array();
  for (const auto& v : rep.vg_values) vg.push_back(rational_json(v));
  j["vg"] = vg;
  j["classification"] = rep.adverse ? "adverse" : "advantageous";
  if (rep.witness_min) j["witness_min"] = *rep.witness_min;
  if (rep.witness_max) j["witness_max"] = *rep.witness_max;
  if (rep.kappa_star) j["kappa_star"] = *rep.kappa_star;
  Json ks;
  ks["sign"] = kstar_sign_str(rep.kstar.sign);
  ks["value"] = rep.kstar.neg_infinity ? Json("-inf") : Json(format_double(rep.kstar.value));
  if (rep.kstar.witness_theta) ks["witness_theta"] = rational_json(*rep.kstar.witness_theta);
  ks["method"] = rep.kstar.method == KStarMethod::Exact ? "exact" : "numeric";
  j["kstar"] = ks;
  return j;
}

CorrelationReport correlation_report_from_json(const Json& j) {
  CorrelationReport rep;
  for (const Json& v : j.at("vg")) rep.vg_values.push_back(json_rational(v, "vg"));
  rep.adverse = j.at("classification").get<std::string>() == "adverse";
  if (j.contains("witness_min")) rep.witness_min = j["witness_min"].get<int>();
  if (j.contains("witness_max")) rep.witness_max = j["witness_max"].get<int>();
  if (j.contains("kappa_star")) rep.kappa_star = j["kappa_star"].get<int>();
  const Json& ks = j.at("kstar");
  rep.kstar.sign = kstar_sign_from(ks.at("sign").get<std::string>());
  if (ks.at("value").is_string() && ks["value"].get<std::string>() == "-inf")
    rep.kstar.neg_infinity = true;
  else
    rep.kstar.value = std::stod(ks.at("value").get<std::string>());
  if (ks.contains("witness_theta"))
    rep.kstar.witness_theta = json_rational(ks["witness_theta"], "witness_theta");
  rep.kstar.method =
      ks.at("method").get<std::string>() == "exact" ? KStarMethod::Exact : KStarMethod::Numeric;
  return rep;
}

std::string correlation_report_text(const CorrelationReport& rep) {
  std::ostringstream os;
  os << (rep.adverse ? "Adverse" : "Advantageous");
  if (rep.kappa_star) os << " (kappa*=" << *rep.kappa_star << ")";
  os << ", K* sign " << kstar_sign_str(rep.kstar.sign);
  if (rep.kstar.neg_infinity) os << " (value -inf)";
  os << "\n";
  os << "V^G(kappa):";
  for (size_t k = 0; k < rep.vg_values.size(); ++k)
    os << " [" << k << "]=" << to_string(rep.vg_values[k]);
  os << "\n";
  if (rep.kstar.witness_theta)
    os << "K(" << to_string(*rep.kstar.witness_theta) << ") < 0\n";
  return os.str();
}

Json equilibrium_result_to_json(const EquilibriumResult& res) {
  Json j;
  Json sigma = Json::array(), gaps = Json::array();
  for (const auto& s : res.profile.sigma) sigma.push_back(rational_json(s));
  for (const auto& g : res.gaps) gaps.push_back(rational_json(g));
  j["sigma"] = sigma;
  j["gaps"] = gaps;
  j["is_equilibrium"] = res.is_equilibrium;
  j["is_strict"] = res.is_strict;
  j["margin"] = rational_json(res.margin);
  j["lambda"] = rational_json(res.lambda);
  return j;
}

std::string equilibrium_result_text(const EquilibriumResult& res) {
  std::ostringstream os;
  os << "lambda=" << to_string(res.lambda)
     << (res.is_equilibrium ? (res.is_strict ? ": strict equilibrium" : ": equilibrium")
                            : ": not an equilibrium")
     << ", margin=" << to_string(res.margin) << "\n";
  for (size_t i = 0; i < res.gaps.size(); ++i) {
    int s = sgn(res.gaps[i]);
    os << "  voter " << i << ": sigma=" << to_string(res.profile.sigma[i])
       << "  Pi=" << (s > 0 ? "+" : s < 0 ? "-" : "0") << " (" << to_string(res.gaps[i])
       << ")\n";
  }
  return os.str();
}

std::string equilibrium_result_csv(const EquilibriumResult& res) {
  std::ostringstream os;
  os << "voter,sigma,pi,margin\n";
  for (size_t i = 0; i < res.gaps.size(); ++i)
    os << i << "," << to_string(res.profile.sigma[i]) << "," << to_string(res.gaps[i])
       << "," << to_string(res.margin) << "\n";
  return os.str();
}

Json outcome_to_json(const OutcomeDistribution& out) {
  Json j;
  if (out.exact) {
    j["method"] = "exact";
    j["p_star_win"] = rational_json(out.p_star_win);
    Json dist = Json::array();
    for (const auto& p : out.vote_dist) dist.push_back(rational_json(p));
    j["vote_dist"] = dist;
  } else {
    j["method"] = "monte_carlo";
    j["estimate"] = format_double(out.estimate);
    j["ci_halfwidth"] = format_double(out.ci_halfwidth);
    j["trials"] = out.trials;
    j["seed"] = out.seed;
  }
  return j;
}

std::string outcome_text(const OutcomeDistribution& out) {
  std::ostringstream os;
  if (out.exact) {
    os << "P(optimal policy wins) = " << to_string(out.p_star_win) << " ("
       << format_double(to_double(out.p_star_win)) << ")\n";
    os << "vote distribution:";
    for (size_t v = 0; v < out.vote_dist.size(); ++v)
      os << " " << v << ":" << to_string(out.vote_dist[v]);
    os << "\n";
  } else {
    os << "P(optimal policy wins) ~= " << format_double(out.estimate) << " +/- "
       << format_double(out.ci_halfwidth) << " (" << out.trials << " trials, seed "
       << out.seed << ")\n";
  }
  return os.str();
}

std::string validation_report_text(const ValidationReport& rep) {
  std::ostringstream os;
  if (rep.malformed) {
    os << "MALFORMED: " << rep.malformed_reason << "\n";
    return os.str();
  }
  for (const auto& c : rep.checks) {
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.name;
    if (!c.pass && !c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "param,profile,pi_min_margin,is_equilibrium,p_star_win\n";
  for (const auto& r : rows)
    os << r.param << "," << r.profile << "," << format_double(r.pi_min_margin) << ","
       << (r.is_equilibrium ? "true" : "false") << "," << format_double(r.p_star_win)
       << "\n";
  return os.str();
}

}  // namespace zsv
