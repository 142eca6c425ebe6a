#include "zsv/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "zsv/poly.hpp"

namespace zsv {

Poly kstar_poly(const ZTable& z) {
  Poly p;
  for (int k = 0; k <= z.tau(); ++k) p.add_term(k, binom(z.tau(), k) * z.z(k, k));
  return p;
}

namespace {

double numeric_min(const Poly& p, double* argmin) {
  // 1024-point log grid over [1e-6, 1e6] plus golden-section refinement
  const int kPoints = 1024;
  double best = std::numeric_limits<double>::infinity();
  double at = 1e-6;
  for (int i = 0; i < kPoints; ++i) {
    double t = std::pow(10.0, -6.0 + 12.0 * i / (kPoints - 1));
    double v = p.eval_double(t);
    if (v < best) {
      best = v;
      at = t;
    }
  }
  double lo = at / std::pow(10.0, 12.0 / (kPoints - 1));
  double hi = at * std::pow(10.0, 12.0 / (kPoints - 1));
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = p.eval_double(x1), f2 = p.eval_double(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = p.eval_double(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = p.eval_double(x2);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = p.eval_double(xm);
  if (fm < best) {
    best = fm;
    at = xm;
  }
  if (argmin) *argmin = at;
  return best;
}

KStarResult kstar_numeric(const Poly& p) {
  KStarResult r;
  r.method = KStarMethod::Numeric;
  if (p.is_zero()) throw std::domain_error("kstar: zero polynomial");
  if (sgn(p.coeff(p.degree())) < 0) {
    r.sign = KStarSign::Negative;
    r.neg_infinity = true;
    // walk outward for a witness
    Rational theta(1);
    while (sgn(p.eval(theta)) >= 0) theta *= 2;
    r.witness_theta = theta;
    return r;
  }
  double at = 1.0;
  double mn = numeric_min(p, &at);
  // the infimum may also be approached at theta -> 0+
  double at_zero = to_double(p.coeff(0));
  if (at_zero < mn) {
    mn = at_zero;
    at = 0.0;
  }
  r.value = mn;
  if (mn < 0) {
    r.sign = KStarSign::Negative;
    // pin an exact witness near the numeric argmin
    Rational theta(1);
    if (at > 0) {
      mpq_t q;
      mpq_init(q);
      mpq_set_d(q, at);
      theta = Rational(mpq_class(q));
      mpq_clear(q);
    }
    if (sgn(theta) > 0 && sgn(p.eval(theta)) < 0) {
      r.witness_theta = theta;
    } else {
      for (int k = -60; k <= 60 && !r.witness_theta; ++k) {
        Rational cand = k < 0 ? Rational(1) / rat_pow(Rational(2), -k)
                              : rat_pow(Rational(2), k);
        if (sgn(p.eval(cand)) < 0) r.witness_theta = cand;
      }
    }
  } else {
    r.sign = mn == 0 ? KStarSign::Zero : KStarSign::Positive;
  }
  return r;
}

KStarResult kstar_exact(const Poly& p) {
  KStarResult r;
  r.method = KStarMethod::Exact;
  if (p.is_zero()) throw std::domain_error("kstar: zero polynomial");
  if (p.degree() == 0) {
    r.sign = sgn(p.coeff(0)) > 0 ? KStarSign::Positive
                                 : (sgn(p.coeff(0)) < 0 ? KStarSign::Negative : KStarSign::Zero);
    r.value = to_double(p.coeff(0));
    return r;
  }
  if (sgn(p.coeff(p.degree())) < 0) {
    r.sign = KStarSign::Negative;
    r.neg_infinity = true;
    Rational theta(1);
    while (sgn(p.eval(theta)) >= 0) theta *= 2;
    r.witness_theta = theta;
    return r;
  }
  Rational bound = cauchy_bound(p);
  if (sgn(p.eval(bound)) == 0) bound += 1;
  // K(0) = Z(0,0) > 0 under the model assumptions; roots on (0, bound)
  std::vector<RootInterval> roots;
  if (sgn(p.eval(Rational(0))) != 0) {
    roots = isolate_real_roots(p, Rational(0), bound);
  } else {
    throw std::domain_error("kstar: K(0) = 0 contradicts strict preferences");
  }
  if (roots.empty()) {
    r.sign = KStarSign::Positive;
    r.value = numeric_min(p, nullptr);
    r.value = std::min(r.value, to_double(p.coeff(0)));
    return r;
  }
  // Crossing (odd multiplicity) vs touching (even): every distinct root sits
  // inside an isolating interval, so the sign of K is constant between
  // consecutive intervals. Sampling those gaps settles whether K ever goes
  // strictly negative on (0, bound).
  bool negative = false;
  Rational witness;
  std::vector<Rational> samples;
  for (size_t k = 0; k + 1 < roots.size(); ++k)
    samples.push_back((roots[k].hi + roots[k + 1].lo) / 2);
  samples.push_back((roots.back().hi + bound) / 2);
  for (const Rational& s : samples) {
    if (sgn(s) > 0 && sgn(p.eval(s)) < 0) {
      negative = true;
      witness = s;
      break;
    }
  }
  if (negative) {
    r.sign = KStarSign::Negative;
    r.witness_theta = witness;
    r.value = numeric_min(p, nullptr);
    return r;
  }
  // roots exist but K never goes negative: the infimum is 0 (touching)
  r.sign = KStarSign::Zero;
  r.value = 0.0;
  return r;
}

}  // namespace

KStarResult kstar(const ZTable& z, KStarMethod method) {
  Poly p = kstar_poly(z);
  return method == KStarMethod::Exact ? kstar_exact(p) : kstar_numeric(p);
}

CorrelationReport classify(const ZTable& z, KStarMethod method) {
  CorrelationReport rep;
  for (int k = 0; k <= z.tau(); ++k) rep.vg_values.push_back(z.vg(k));
  for (int k = 1; k <= z.tau(); ++k) {
    if (sgn(rep.vg_values[k]) < 0) {
      rep.adverse = true;
      if (!rep.witness_min) rep.witness_min = k;
      rep.witness_max = k;
    }
  }
  if (rep.adverse) rep.kappa_star = rep.witness_max;
  rep.kstar = kstar(z, method);
  return rep;
}

CorrelationReport classify(const BinaryChoiceSpec& spec, KStarMethod method) {
  return classify(ZTable::from_spec(spec), method);
}

CorrelationReport classify(const ExplicitProblem& problem, KStarMethod method) {
  return classify(ZTable::from_explicit(problem), method);
}

Rational rho_critical(const Rational& q) {
  if (!(q >= Rational(1, 2) && q < 1))
    throw std::invalid_argument("rho_critical: q must lie in [1/2, 1)");
  return (q - Rational(1, 2)) / (1 - q);
}

bool adverse_at_n(const Rational& q, const Payoffs& payoffs, int n) {
  Rational w(fixed_fraction_winners(n, q));
  Rational share = w / n;
  Rational threshold = (share - Rational(1, 2) + Rational(1, 2 * n)) / (1 - share);
  return payoffs.vl / payoffs.vw > threshold;
}

bool lr_dominates(const std::vector<Rational>& hi, const std::vector<Rational>& lo) {
  if (hi.size() != lo.size()) throw std::invalid_argument("lr_dominates: size mismatch");
  const int n = static_cast<int>(hi.size());
  for (int wp = 0; wp < n; ++wp)
    for (int w = 0; w < wp; ++w)
      if (hi[wp] * lo[w] < hi[w] * lo[wp]) return false;
  return true;
}

CompareAC compare_ac(const BinaryChoiceSpec& a, const BinaryChoiceSpec& b) {
  if (a.n != b.n) throw std::invalid_argument("compare_ac: population sizes differ");
  if (a.signal_tech == SignalTech::AggregateNews ||
      b.signal_tech == SignalTech::AggregateNews)
    throw std::invalid_argument("compare_ac: perfect-news specs only");
  CompareAC out;
  out.holds = true;
  for (int k = 1; k <= a.tau(); ++k) {
    Rational va = vg_closed_form(a, k);
    Rational vb = vg_closed_form(b, k);
    bool ok = !(sgn(vb) < 0) || (sgn(va) < 0);
    out.vg_a.push_back(va);
    out.vg_b.push_back(vb);
    out.implication_ok.push_back(ok);
    out.holds = out.holds && ok;
  }
  return out;
}

NewsKind news_kind_check(const ExplicitProblem& pr) {
  NewsKind out;
  const int n = pr.n;
  auto winners_of = [&](const std::vector<Rational>& v) {
    int w = 0;
    for (const auto& x : v) w += sgn(x) > 0;
    return w;
  };

  // joint and marginal tables
  std::map<std::vector<int>, Rational> p_s;
  std::map<std::vector<Rational>, Rational> p_v;
  std::map<std::pair<std::vector<int>, int>, Rational> p_sw;
  std::vector<Rational> p_w(n + 1, Rational(0));
  std::map<std::pair<std::vector<Rational>, std::vector<int>>, Rational> p_vs;
  for (const auto& st : pr.states) {
    int w = winners_of(st.payoff_diff);
    p_s[st.signals] += st.prob;
    p_v[st.payoff_diff] += st.prob;
    p_sw[{st.signals, w}] += st.prob;
    p_w[w] += st.prob;
    p_vs[{st.payoff_diff, st.signals}] += st.prob;
  }

  // aggregate news: P(V=v | S=s, W=w) == P(V=v | W=w) on non-null events
  bool aggregate = true;
  for (const auto& [v, pv] : p_v) {
    int w = winners_of(v);
    for (const auto& [s, ps] : p_s) {
      auto it_sw = p_sw.find({s, w});
      if (it_sw == p_sw.end() || sgn(it_sw->second) == 0) continue;
      Rational joint(0);
      auto it = p_vs.find({v, s});
      if (it != p_vs.end()) joint = it->second;
      // P(v | s, w) = joint / P(s, w);  P(v | w) = P(v) / P(w)
      if (joint * p_w[w] != pv * it_sw->second) {
        aggregate = false;
        break;
      }
    }
    if (!aggregate) break;
  }
  out.aggregate_only = aggregate;

  // distributional news: P(W=w | S=s) == P(W=w) on non-null signal profiles
  bool distributional = true;
  for (const auto& [s, ps] : p_s) {
    if (sgn(ps) == 0) continue;
    for (int w = 0; w <= n && distributional; ++w) {
      Rational joint(0);
      auto it = p_sw.find({s, w});
      if (it != p_sw.end()) joint = it->second;
      if (joint != p_w[w] * ps) distributional = false;
    }
    if (!distributional) break;
  }
  out.distributional_only = distributional;
  return out;
}

AdversarializeResult adversarialize(const ExplicitProblem& pr) {
  NewsKind kind = news_kind_check(pr);
  if (!kind.distributional_only)
    throw std::invalid_argument("adversarialize: signals must convey only distributional news");

  const int n = pr.n;
  // per-signal winner posteriors for any single voter (exchangeable)
  std::map<int, Rational> mass, win_mass;
  Rational prior_win(0);
  for (const auto& st : pr.states) {
    for (int i = 0; i < n; ++i) {
      if (st.signals[i] != 0) {
        mass[st.signals[i]] += st.prob;
        if (sgn(st.payoff_diff[i]) > 0) win_mass[st.signals[i]] += st.prob;
      }
    }
    if (sgn(st.payoff_diff[0]) > 0) prior_win += st.prob;
  }

  // partition by posterior against the prior, then find the least-bad signal
  std::vector<int> good_labels, bad_labels;
  std::optional<Rational> best_bad;
  for (const auto& [lbl, m] : mass) {
    if (sgn(m) == 0) continue;
    Rational post = win_mass[lbl] / m;
    if (post >= prior_win)
      good_labels.push_back(lbl);
    else {
      bad_labels.push_back(lbl);
      if (!best_bad || post > *best_bad) best_bad = post;
    }
  }
  if (good_labels.empty() || bad_labels.empty())
    throw std::invalid_argument("adversarialize: needs both good and bad posteriors");

  // P(W_h | S_h = s0, G' = M = 1): one informed voter, her signal good
  Rational ev_mass(0), ev_win(0);
  for (const auto& st : pr.states) {
    int informed = 0;
    int informed_label = 0;
    for (int j = 0; j < n; ++j)
      if (st.signals[j] != 0) {
        ++informed;
        informed_label = st.signals[j];
      }
    if (informed != 1) continue;
    bool label_good = std::find(good_labels.begin(), good_labels.end(), informed_label) !=
                      good_labels.end();
    if (!label_good) continue;
    for (int h = 0; h < n; ++h) {
      if (st.signals[h] != 0) continue;
      ev_mass += st.prob;
      if (sgn(st.payoff_diff[h]) > 0) ev_win += st.prob;
    }
  }
  Rational crowd_post = sgn(ev_mass) == 0 ? Rational(0) : ev_win / ev_mass;

  Rational p_star_post = std::max(*best_bad, crowd_post);
  if (!(prior_win > p_star_post))
    throw std::invalid_argument("adversarialize: posterior ordering violated");

  // Admissible ratio interval (open). The midpoint maximizes strictness
  // margins, but it can land exactly on the odds of some conditioning event
  // and violate strict preferences; fall back along a fixed ladder of
  // interior points until the re-payoffed problem validates.
  Rational lo = p_star_post / (1 - p_star_post);
  Rational hi = prior_win / (1 - prior_win);

  auto repayoff = [&](const Rational& ratio) {
    AdversarializeResult res;
    res.payoffs = {Rational(1), ratio};
    res.prior_winner_prob = prior_win;
    res.pivotal_winner_prob = p_star_post;
    res.repayoffed.n = n;
    res.repayoffed.good_signals = good_labels;
    res.repayoffed.bad_signals = bad_labels;
    for (const auto& st : pr.states) {
      ExplicitState ns;
      ns.signals = st.signals;
      ns.prob = st.prob;
      for (const auto& v : st.payoff_diff)
        ns.payoff_diff.push_back(sgn(v) > 0 ? res.payoffs.vw : -res.payoffs.vl);
      res.repayoffed.states.push_back(std::move(ns));
    }
    res.report = classify(res.repayoffed);
    return res;
  };

  const Rational ladder[] = {Rational(1, 2),  Rational(3, 7),  Rational(4, 7),
                             Rational(5, 11), Rational(6, 11), Rational(7, 13),
                             Rational(8, 17), Rational(9, 17)};
  for (const Rational& t : ladder) {
    AdversarializeResult res = repayoff(lo + (hi - lo) * t);
    if (res.report.adverse && validate_spec(res.repayoffed).ok()) return res;
  }
  return repayoff((lo + hi) / 2);
}

Rational elite_nonelite_conditional(const BinaryChoiceSpec& base, int e) {
  const int n = base.n, tau = base.tau();
  Rational num(0), den(0);
  for (int w = tau; w <= n; ++w) {
    const Rational& pw = base.winner_dist[w];
    if (sgn(pw) == 0) continue;
    Rational weight = binom(w - e, tau - e) * pw;
    if (sgn(weight) == 0) continue;
    den += weight;
    num += weight * (Rational(w - tau) / (n - tau) * base.payoffs.vw -
                     Rational(n - w) / (n - tau) * base.payoffs.vl);
  }
  if (sgn(den) == 0) return Rational(0);
  return num / den;
}

EliteAdverseReport elite_adverse(const EliteSpec& spec) {
  EliteAdverseReport rep;
  const int n = spec.base.n, e = spec.elite_count, tau = spec.base.tau();
  rep.minority = e < tau;

  // condition (b): elite voter, tau-e+1 good non-elites, no other news.
  // Winners nest, so the posterior runs over w >= tau+1 weighted by
  // binom(w-e, tau-e+1); the elite is then a winner outright.
  {
    Rational num(0), den(0);
    for (int w = 0; w <= n; ++w) {
      const Rational& pw = spec.base.winner_dist[w];
      if (sgn(pw) == 0) continue;
      Rational weight = binom(w - e, tau - e + 1) * pw;
      if (sgn(weight) == 0) continue;
      den += weight;
      num += weight * spec.base.payoffs.vw;
    }
    rep.elite_value = sgn(den) == 0 ? Rational(0) : num / den;
  }
  rep.nonelite_value = elite_nonelite_conditional(spec.base, e);
  rep.holds = rep.minority && sgn(rep.elite_value) > 0 && sgn(rep.nonelite_value) < 0;
  return rep;
}

}  // namespace zsv
