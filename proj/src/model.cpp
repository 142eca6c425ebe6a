#include "zsv/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace zsv {

Rational BinaryChoiceSpec::expected_winners() const {
  Rational ew(0);
  for (size_t w = 0; w < winner_dist.size(); ++w)
    ew += Rational(static_cast<long>(w)) * winner_dist[w];
  return ew;
}

Rational BinaryChoiceSpec::prior_gap() const {
  Rational pw = expected_winners() / n;
  return pw * payoffs.vw - (1 - pw) * payoffs.vl;
}

bool ExplicitProblem::is_good(int label) const {
  return std::find(good_signals.begin(), good_signals.end(), label) != good_signals.end();
}

bool ExplicitProblem::is_bad(int label) const {
  return std::find(bad_signals.begin(), bad_signals.end(), label) != bad_signals.end();
}

int ExplicitProblem::informed_count(const ExplicitState& s) const {
  int m = 0;
  for (int lbl : s.signals) m += (lbl != 0);
  return m;
}

int ExplicitProblem::good_count(const ExplicitState& s) const {
  int g = 0;
  for (int lbl : s.signals) g += is_good(lbl);
  return g;
}

int ExplicitProblem::bad_count(const ExplicitState& s) const {
  int b = 0;
  for (int lbl : s.signals) b += is_bad(lbl);
  return b;
}

Rational PopulationSpec::mean_size() const {
  Rational mu(0);
  for (size_t i = 0; i < support.size(); ++i) mu += Rational(support[i]) * probs[i];
  return mu;
}

BinaryChoiceSpec PopulationSpec::spec_for(int n) const {
  Rational wcount = rat_ceil(fraction * n);
  long w = wcount.get_num().get_si();
  BinaryChoiceSpec spec;
  spec.n = n;
  spec.winner_dist.assign(n + 1, Rational(0));
  spec.winner_dist[w] = 1;
  spec.payoffs = payoffs;
  spec.signal_tech = SignalTech::PerfectNews;
  spec.lambda = lambda;
  return spec;
}

bool ValidationReport::ok() const {
  if (malformed) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::summary() const {
  if (malformed) return "malformed: " + malformed_reason;
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : checks)
    if (!c.pass) {
      if (failed++) os << "; ";
      os << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")");
    }
  if (!failed) return "all checks pass";
  return os.str();
}

// ---------------------------------------------------------------------------
// realization

namespace {

long state_count_estimate(const BinaryChoiceSpec& spec) {
  if (spec.n > 20) return kEnumerationCap + 1;  // 2^21 alone exceeds the cap
  long total = 0;
  for (size_t w = 0; w < spec.winner_dist.size(); ++w) {
    if (sgn(spec.winner_dist[w]) == 0) continue;
    Rational c = binom(spec.n, static_cast<long>(w));
    total += c.get_num().get_si();
  }
  // dilution multiplies by 2^n
  return total << spec.n;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

constexpr int kGoodLabel = 1;
constexpr int kBadLabel = 2;

}  // namespace

ExplicitProblem realize_core(const BinaryChoiceSpec& spec) {
  if (spec.signal_tech == SignalTech::DistributionalNews) {
    int nonzero = 0;
    for (const auto& p : spec.winner_dist) nonzero += (sgn(p) != 0);
    if (nonzero != 1)
      throw std::invalid_argument(
          "distributional news requires a degenerate winner distribution");
  }
  ExplicitProblem core;
  core.n = spec.n;
  bool aggregate = spec.signal_tech == SignalTech::AggregateNews;
  for (int w = 0; w <= spec.n; ++w) {
    const Rational& pw = spec.winner_dist[w];
    if (sgn(pw) == 0) continue;
    Rational per_state = pw / binom(spec.n, w);
    int label_w = w + 1;
    for_each_subset(spec.n, w, [&](const std::vector<int>& winners) {
      ExplicitState st;
      st.payoff_diff.assign(spec.n, -spec.payoffs.vl);
      st.signals.assign(spec.n, aggregate ? label_w : kBadLabel);
      for (int i : winners) {
        st.payoff_diff[i] = spec.payoffs.vw;
        if (!aggregate) st.signals[i] = kGoodLabel;
      }
      st.prob = per_state;
      core.states.push_back(std::move(st));
    });
    if (aggregate) {
      // classification of the count signal by the sign of its posterior
      Rational post = Rational(w) / spec.n * spec.payoffs.vw -
                      Rational(spec.n - w) / spec.n * spec.payoffs.vl;
      if (sgn(post) > 0)
        core.good_signals.push_back(label_w);
      else
        core.bad_signals.push_back(label_w);
    }
  }
  if (!aggregate) {
    core.good_signals = {kGoodLabel};
    core.bad_signals = {kBadLabel};
  }
  return core;
}

ExplicitProblem dilute(const ExplicitProblem& core, const Rational& lambda) {
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("dilute: lambda must lie in (0,1)");
  for (const auto& st : core.states)
    for (int lbl : st.signals)
      if (lbl == 0) throw std::invalid_argument("dilute: core must be fully informed");

  int n = core.n;
  std::vector<Rational> keep_pow(n + 1), drop_pow(n + 1);
  for (int k = 0; k <= n; ++k) {
    keep_pow[k] = rat_pow(lambda, k);
    drop_pow[k] = rat_pow(1 - lambda, k);
  }

  using Key = std::pair<std::vector<Rational>, std::vector<int>>;
  std::map<Key, Rational> merged;
  for (const auto& st : core.states) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> sig = st.signals;
      int kept = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i))
          ++kept;
        else
          sig[i] = 0;
      }
      merged[{st.payoff_diff, std::move(sig)}] +=
          st.prob * keep_pow[kept] * drop_pow[n - kept];
    }
  }

  ExplicitProblem full;
  full.n = n;
  full.good_signals = core.good_signals;
  full.bad_signals = core.bad_signals;
  full.states.reserve(merged.size());
  for (auto& [key, prob] : merged)
    full.states.push_back({key.first, key.second, prob});
  return full;
}

std::pair<ExplicitProblem, Rational> extract_core(const ExplicitProblem& full) {
  Rational lambda(0);
  Rational informed_mass(0);
  ExplicitProblem core;
  core.n = full.n;
  core.good_signals = full.good_signals;
  core.bad_signals = full.bad_signals;
  for (const auto& st : full.states) {
    if (!st.signals.empty() && st.signals[0] != 0) lambda += st.prob;
    if (full.informed_count(st) == full.n) {
      core.states.push_back(st);
      informed_mass += st.prob;
    }
  }
  if (sgn(informed_mass) == 0)
    throw std::invalid_argument("extract_core: all-informed event has zero mass");
  for (auto& st : core.states) st.prob /= informed_mass;
  return {core, lambda};
}

ExplicitProblem realize_binary(const BinaryChoiceSpec& spec) {
  if (state_count_estimate(spec) > kEnumerationCap)
    throw EnumerationCapExceeded("realize_binary: state count exceeds cap");
  return dilute(realize_core(spec), spec.lambda);
}

ExplicitProblem realize_elite(const EliteSpec& spec) {
  const BinaryChoiceSpec& base = spec.base;
  if (base.signal_tech != SignalTech::PerfectNews)
    throw std::invalid_argument("realize_elite: base must use perfect news");
  int n = base.n, e = spec.elite_count;
  if (n > 20) throw EnumerationCapExceeded("realize_elite");
  long est = 0;
  for (size_t w = 0; w < base.winner_dist.size(); ++w) {
    if (sgn(base.winner_dist[w]) == 0) continue;
    long ways = static_cast<long>(w) >= e
                    ? binom(n - e, static_cast<long>(w) - e).get_num().get_si()
                    : binom(e, static_cast<long>(w)).get_num().get_si();
    est += ways;
  }
  if ((est << n) > kEnumerationCap) throw EnumerationCapExceeded("realize_elite");

  ExplicitProblem core;
  core.n = n;
  core.good_signals = {kGoodLabel};
  core.bad_signals = {kBadLabel};
  for (int w = 0; w <= n; ++w) {
    const Rational& pw = base.winner_dist[w];
    if (sgn(pw) == 0) continue;
    auto push = [&](const std::vector<int>& winners, const Rational& prob) {
      ExplicitState st;
      st.payoff_diff.assign(n, -base.payoffs.vl);
      st.signals.assign(n, kBadLabel);
      for (int i : winners) {
        st.payoff_diff[i] = base.payoffs.vw;
        st.signals[i] = kGoodLabel;
      }
      st.prob = prob;
      core.states.push_back(std::move(st));
    };
    if (w >= e) {
      // all elites win; w-e winners among the non-elites
      Rational per = pw / binom(n - e, w - e);
      for_each_subset(n - e, w - e, [&](const std::vector<int>& sub) {
        std::vector<int> winners;
        for (int i = 0; i < e; ++i) winners.push_back(i);
        for (int i : sub) winners.push_back(e + i);
        push(winners, per);
      });
    } else {
      // too few winners to cover the elites; w winners among elites only
      Rational per = pw / binom(e, w);
      for_each_subset(e, w, [&](const std::vector<int>& sub) { push(sub, per); });
    }
  }
  return dilute(core, base.lambda);
}

// ---------------------------------------------------------------------------
// validation

namespace {

void check(ValidationReport& rep, const std::string& name, bool pass,
           const std::string& detail = "") {
  rep.checks.push_back({name, pass, pass ? "" : detail});
}

bool distribution_malformed(const std::vector<Rational>& dist, std::string* why) {
  Rational total(0);
  for (const auto& p : dist) {
    if (sgn(p) < 0) {
      *why = "negative probability mass";
      return true;
    }
    total += p;
  }
  if (total != 1) {
    *why = "distribution sums to " + to_string(total) + ", not 1";
    return true;
  }
  return false;
}

std::string state_to_string(const ExplicitProblem& pr, const ExplicitState& st) {
  std::ostringstream os;
  os << "state v=(";
  for (int i = 0; i < pr.n; ++i) os << (i ? "," : "") << to_string(st.payoff_diff[i]);
  os << ") s=(";
  for (int i = 0; i < pr.n; ++i) os << (i ? "," : "") << st.signals[i];
  os << ")";
  return os.str();
}

}  // namespace

ValidationReport validate_spec(const BinaryChoiceSpec& spec) {
  ValidationReport rep;
  if (spec.n < 3 || spec.n % 2 == 0) {
    rep.malformed = true;
    rep.malformed_reason = "n must be an odd integer >= 3";
    return rep;
  }
  if (spec.winner_dist.size() != static_cast<size_t>(spec.n + 1)) {
    rep.malformed = true;
    rep.malformed_reason = "winner distribution must have n+1 entries";
    return rep;
  }
  std::string why;
  if (distribution_malformed(spec.winner_dist, &why)) {
    rep.malformed = true;
    rep.malformed_reason = why;
    return rep;
  }
  if (!(spec.lambda > 0 && spec.lambda < 1)) {
    rep.malformed = true;
    rep.malformed_reason = "lambda must lie in (0,1)";
    return rep;
  }
  if (sgn(spec.payoffs.vw) <= 0 || sgn(spec.payoffs.vl) <= 0) {
    rep.malformed = true;
    rep.malformed_reason = "payoffs must be strictly positive";
    return rep;
  }

  check(rep, "ex-ante optimality", sgn(spec.prior_gap()) > 0,
        "prior payoff gap " + to_string(spec.prior_gap()) + " is not positive");

  bool some_loser = false, enough_winners = false;
  for (int w = 0; w <= spec.n; ++w) {
    if (sgn(spec.winner_dist[w]) == 0) continue;
    if (w < spec.n) some_loser = true;
    if (w >= spec.tau()) enough_winners = true;
  }
  if (spec.signal_tech == SignalTech::AggregateNews) {
    // good/bad refer to count signals, so recompute from posteriors
    some_loser = false;
    enough_winners = false;
    for (int w = 0; w <= spec.n; ++w) {
      if (sgn(spec.winner_dist[w]) == 0) continue;
      Rational post = Rational(w) / spec.n * spec.payoffs.vw -
                      Rational(spec.n - w) / spec.n * spec.payoffs.vl;
      if (sgn(post) < 0) some_loser = true;
      if (sgn(post) > 0) enough_winners = true;  // all informed share it
    }
  }
  check(rep, "assumption 3(b): bad news possible", some_loser);
  check(rep, "assumption 3(b): enough good news possible", enough_winners);

  if (spec.signal_tech == SignalTech::AggregateNews) {
    bool strict = true;
    int offending = -1;
    for (int w = 0; w <= spec.n; ++w) {
      if (sgn(spec.winner_dist[w]) == 0) continue;
      Rational post = Rational(w) / spec.n * spec.payoffs.vw -
                      Rational(spec.n - w) / spec.n * spec.payoffs.vl;
      if (sgn(post) == 0) {
        strict = false;
        offending = w;
      }
    }
    check(rep, "assumption 3(a): strict signal posteriors", strict,
          strict ? "" : "count signal w=" + std::to_string(offending) +
                            " leaves voters indifferent");
  }
  if (spec.signal_tech == SignalTech::DistributionalNews) {
    int nonzero = 0;
    for (const auto& p : spec.winner_dist) nonzero += (sgn(p) != 0);
    check(rep, "distributional news: degenerate winner count", nonzero == 1,
          "canonical construction requires a single winner count");
  }
  return rep;
}

ValidationReport validate_spec(const ExplicitProblem& pr) {
  ValidationReport rep;
  const int n = pr.n;
  if (n < 3 || n % 2 == 0) {
    rep.malformed = true;
    rep.malformed_reason = "n must be an odd integer >= 3";
    return rep;
  }
  Rational total(0);
  for (const auto& st : pr.states) {
    if (sgn(st.prob) < 0) {
      rep.malformed = true;
      rep.malformed_reason = "negative state probability";
      return rep;
    }
    if (st.payoff_diff.size() != static_cast<size_t>(n) ||
        st.signals.size() != static_cast<size_t>(n)) {
      rep.malformed = true;
      rep.malformed_reason = "state arity does not match n";
      return rep;
    }
    total += st.prob;
  }
  if (total != 1) {
    rep.malformed = true;
    rep.malformed_reason = "state probabilities sum to " + to_string(total);
    return rep;
  }
  for (int g : pr.good_signals)
    for (int b : pr.bad_signals)
      if (g == b) {
        rep.malformed = true;
        rep.malformed_reason = "good/bad signal sets overlap";
        return rep;
      }

  using Key = std::pair<std::vector<Rational>, std::vector<int>>;
  std::map<Key, Rational> prob_of;
  for (const auto& st : pr.states) {
    auto [it, fresh] = prob_of.insert({{st.payoff_diff, st.signals}, st.prob});
    if (!fresh) {
      rep.malformed = true;
      rep.malformed_reason = "duplicate state";
      return rep;
    }
  }

  // Assumption 1: exchangeability via orbit counting. All states in one
  // orbit must carry equal mass and the orbit must be complete.
  {
    std::map<std::vector<std::pair<Rational, int>>, std::vector<const ExplicitState*>> orbits;
    for (const auto& st : pr.states) {
      std::vector<std::pair<Rational, int>> key(n);
      for (int i = 0; i < n; ++i) key[i] = {st.payoff_diff[i], st.signals[i]};
      std::sort(key.begin(), key.end());
      orbits[std::move(key)].push_back(&st);
    }
    bool pass = true;
    std::string detail;
    for (const auto& [key, members] : orbits) {
      for (const auto* st : members)
        if (st->prob != members.front()->prob) {
          pass = false;
          detail = "unequal mass within the orbit of " + state_to_string(pr, *st);
        }
      // expected orbit size: permutations of the multiset of (payoff, signal)
      Rational expected = 1;
      long total_slots = n;
      size_t i = 0;
      while (i < key.size()) {
        size_t j = i;
        while (j < key.size() && key[j] == key[i]) ++j;
        expected *= binom(total_slots, static_cast<long>(j - i));
        total_slots -= static_cast<long>(j - i);
        i = j;
      }
      if (expected != Rational(static_cast<long>(members.size())) &&
          sgn(members.front()->prob) != 0) {
        pass = false;
        detail = "orbit of " + state_to_string(pr, *members.front()) +
                 " is missing permuted states";
      }
    }
    check(rep, "assumption 1: exchangeability", pass, detail);
  }

  // marginal P(S_i = s^0) per voter
  std::vector<Rational> p_s0(n, Rational(0));
  for (const auto& st : pr.states)
    for (int i = 0; i < n; ++i)
      if (st.signals[i] == 0) p_s0[i] += st.prob;

  // Assumption 2(a): the uninformative signal is independent of everything.
  {
    bool pass = true;
    std::string detail;
    std::set<int> labels = {0};
    for (int lbl : pr.good_signals) labels.insert(lbl);
    for (int lbl : pr.bad_signals) labels.insert(lbl);
    for (const auto& st : pr.states) {
      for (int i = 0; i < n && pass; ++i) {
        if (st.signals[i] != 0) continue;
        Rational marg(0);
        // sum over all completions of voter i's signal
        std::vector<int> sig = st.signals;
        for (int lbl : labels) {
          sig[i] = lbl;
          auto it = prob_of.find({st.payoff_diff, sig});
          if (it != prob_of.end()) marg += it->second;
        }
        if (st.prob != marg * p_s0[i]) {
          pass = false;
          detail = "independence fails at " + state_to_string(pr, st);
        }
      }
      if (!pass) break;
    }
    check(rep, "assumption 2(a): uninformative signal independence", pass, detail);
  }

  // conditional payoff of a signal profile: sign of V_i^d(s) via its numerator
  std::map<std::vector<int>, std::vector<Rational>> v_sig;
  for (const auto& st : pr.states) {
    auto& acc = v_sig[st.signals];
    if (acc.empty()) acc.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) acc[i] += st.prob * st.payoff_diff[i];
  }

  // per-signal posteriors V_i^d(S_i = s^k)
  std::map<int, Rational> label_mass, label_value;
  for (const auto& st : pr.states)
    for (int i = 0; i < n; ++i) {
      if (st.signals[i] == 0) continue;
      label_mass[st.signals[i]] += st.prob;
      label_value[st.signals[i]] += st.prob * st.payoff_diff[i];
    }

  // Assumption 2(b): own signal settles the ordinal preference.
  {
    bool pass = true;
    std::string detail;
    for (const auto& st : pr.states) {
      if (sgn(st.prob) == 0) continue;
      for (int i = 0; i < n; ++i) {
        int lbl = st.signals[i];
        if (lbl == 0) continue;
        int state_sign = sgn(v_sig[st.signals][i]);
        int label_sign = sgn(label_value[lbl]);
        if (state_sign != label_sign) {
          pass = false;
          detail = "voter " + std::to_string(i) + " at " + state_to_string(pr, st);
        }
      }
      if (!pass) break;
    }
    check(rep, "assumption 2(b): informative signal sufficiency", pass, detail);
  }

  // good/bad partition must match posterior signs
  {
    bool pass = true;
    std::string detail;
    for (auto& [lbl, val] : label_value) {
      bool declared_good = pr.is_good(lbl);
      bool declared_bad = pr.is_bad(lbl);
      if (!declared_good && !declared_bad) {
        pass = false;
        detail = "signal " + std::to_string(lbl) + " is unclassified";
      } else if (declared_good != (sgn(val) > 0)) {
        pass = false;
        detail = "signal " + std::to_string(lbl) + " classified against its posterior";
      }
    }
    check(rep, "good/bad classification", pass, detail);
  }

  // Assumption 3(a) on every conditioning event the analysis machinery uses:
  // the prior, per-signal posteriors, and the (G,M) cells for voter 0.
  {
    bool pass = true;
    std::string detail;
    Rational prior(0);
    for (const auto& st : pr.states) prior += st.prob * st.payoff_diff[0];
    if (sgn(prior) == 0) {
      pass = false;
      detail = "prior indifference";
    }
    for (auto& [lbl, val] : label_value)
      if (sgn(label_mass[lbl]) != 0 && sgn(val) == 0) {
        pass = false;
        detail = "indifference conditional on signal " + std::to_string(lbl);
      }
    const int tau = pr.tau();
    std::vector<std::vector<Rational>> cell_mass(tau + 1), cell_val(tau + 1);
    for (int g = 0; g <= tau; ++g) {
      cell_mass[g].assign(2 * tau + 1, Rational(0));
      cell_val[g].assign(2 * tau + 1, Rational(0));
    }
    for (const auto& st : pr.states) {
      if (st.signals[0] != 0) continue;
      int g = 0, m = 0;
      for (int i = 1; i < n; ++i) {
        if (st.signals[i] == 0) continue;
        ++m;
        g += pr.is_good(st.signals[i]);
      }
      if (g <= tau && m <= tau + g) {
        cell_mass[g][m] += st.prob;
        cell_val[g][m] += st.prob * st.payoff_diff[0];
      }
    }
    for (int g = 0; g <= tau && pass; ++g)
      for (int m = g; m <= tau + g; ++m)
        if (sgn(cell_mass[g][m]) != 0 && sgn(cell_val[g][m]) == 0) {
          pass = false;
          detail = "indifference at (G=" + std::to_string(g) +
                   ", M=" + std::to_string(m) + ", S_i=s0)";
          break;
        }
    check(rep, "assumption 3(a): strict preferences on reachable events", pass, detail);
  }

  // Assumption 3(b)
  {
    Rational p_bad(0), p_enough_good(0);
    const int tau = pr.tau();
    for (const auto& st : pr.states) {
      if (pr.bad_count(st) >= 1) p_bad += st.prob;
      if (pr.good_count(st) >= tau) p_enough_good += st.prob;
    }
    check(rep, "assumption 3(b): bad news possible", sgn(p_bad) > 0);
    check(rep, "assumption 3(b): enough good news possible", sgn(p_enough_good) > 0);
  }

  return rep;
}

ValidationReport validate_spec(const EliteSpec& spec) {
  ValidationReport rep = validate_spec(spec.base);
  if (rep.malformed) return rep;
  if (spec.base.signal_tech != SignalTech::PerfectNews) {
    rep.malformed = true;
    rep.malformed_reason = "elite specs require perfect news";
    return rep;
  }
  int tau = spec.base.tau();
  check(rep, "elite count in range", spec.elite_count >= 0 && spec.elite_count < tau,
        "need 0 <= e < tau");
  if (spec.elite_count < 0 || spec.elite_count >= tau) return rep;

  // nested winners hold by construction; verify on the realized problem anyway
  ExplicitProblem realized = realize_elite(spec);
  bool nested = true;
  std::string detail;
  for (const auto& st : realized.states) {
    bool some_nonelite_winner = false;
    for (int i = spec.elite_count; i < spec.base.n; ++i)
      if (sgn(st.payoff_diff[i]) > 0) some_nonelite_winner = true;
    if (!some_nonelite_winner) continue;
    for (int j = 0; j < spec.elite_count; ++j)
      if (sgn(st.payoff_diff[j]) < 0) {
        nested = false;
        detail = state_to_string(realized, st);
      }
  }
  check(rep, "nested winners", nested, detail);
  return rep;
}

ValidationReport validate_spec(const PopulationSpec& spec) {
  ValidationReport rep;
  if (spec.support.empty() || spec.support.size() != spec.probs.size()) {
    rep.malformed = true;
    rep.malformed_reason = "support and probability arrays must align and be non-empty";
    return rep;
  }
  std::string why;
  if (distribution_malformed(spec.probs, &why)) {
    rep.malformed = true;
    rep.malformed_reason = why;
    return rep;
  }
  bool sorted = std::is_sorted(spec.support.begin(), spec.support.end());
  bool odd = true;
  for (int n : spec.support) odd = odd && (n >= 3) && (n % 2 == 1);
  if (!sorted || !odd) {
    rep.malformed = true;
    rep.malformed_reason = "support must be increasing odd integers >= 3";
    return rep;
  }
  check(rep, "finite support", true);
  bool per_n_ok = true;
  bool optimal_every_n = true;
  std::string detail;
  for (int n : spec.support) {
    BinaryChoiceSpec sub = spec.spec_for(n);
    ValidationReport sr = validate_spec(sub);
    if (!sr.ok()) {
      per_n_ok = false;
      detail = "n=" + std::to_string(n) + ": " + sr.summary();
    }
    if (sgn(sub.prior_gap()) <= 0) optimal_every_n = false;
  }
  check(rep, "per-size specs valid", per_n_ok, detail);
  check(rep, "optimal policy stable across sizes", optimal_every_n);
  return rep;
}

bool detect_binary_payoffs(const ExplicitProblem& problem, Payoffs* out) {
  Rational pos(0), neg(0);
  bool has_pos = false, has_neg = false;
  for (const auto& st : problem.states)
    for (const auto& v : st.payoff_diff) {
      if (sgn(v) > 0) {
        if (has_pos && v != pos) return false;
        pos = v;
        has_pos = true;
      } else if (sgn(v) < 0) {
        if (has_neg && v != neg) return false;
        neg = v;
        has_neg = true;
      } else {
        return false;
      }
    }
  if (!has_pos || !has_neg) return false;
  if (out) *out = {pos, -neg};
  return true;
}

}  // namespace zsv
