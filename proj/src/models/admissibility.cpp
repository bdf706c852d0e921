#include "decaylab/models/admissibility.hpp"

namespace decaylab::models {

AdmissibilityReport admissibility_for(Rational bR, Rational bS, Rational bT, int d, Rational theta) {
  AdmissibilityReport r;
  const Rational half_d(d, 2);
  const Rational mx = max(bS, bT), mn = min(bS, bT);
  r.theta = theta;
  r.beta_c = bR + bS + bT + half_d - 2 * theta;
  r.lower_terms = {Rational(2, 3) * bR + (bS + bT) / 3, Rational(1, 2) * bR + Rational(1, 2) * mx,
                   Rational(1, 2) * mx, Rational(1, 4) * (bR + bS + bT + half_d)};
  r.upper_terms = {bR + mn + d, bR + (bS + bT) / 2 + half_d};
  r.lower_bound = r.lower_terms[0];
  for (const Rational& t : r.lower_terms) r.lower_bound = max(r.lower_bound, t);
  r.upper_bound = min(r.upper_terms[0], r.upper_terms[1]);
  r.functional_ok = r.lower_bound < theta && theta < r.upper_bound;
  r.mild_lower = Rational(1, 2) * (bR + mx);
  r.mild_upper = bR + (bS + bT) / 2 + half_d;
  r.mild_ok = r.mild_lower < theta && theta < r.mild_upper;
  return r;
}

AdmissibilityReport check_admissibility(const ModelSpec& spec) {
  AdmissibilityReport r = admissibility_for(spec.beta_R(), spec.beta_S(), spec.beta_T(), spec.d, spec.theta);
  r.note = spec.note;
  if (spec.linear) {
    r.beta_c = spec.beta_c();
    r.note = "linear model: B = 0, every theta > 0 is admissible";
    r.functional_ok = r.mild_ok = spec.theta > Rational(0);
  }
  return r;
}

namespace {

struct Interval {
  Rational lo, hi;
  std::string lo_name, hi_name;
  void raise(Rational v, std::string name) {
    if (v > lo) {
      lo = v;
      lo_name = std::move(name);
    }
  }
  void lower(Rational v, std::string name) {
    if (v < hi) {
      hi = v;
      hi_name = std::move(name);
    }
  }
};

}  // namespace

ExponentResult admissible_exponents(const ModelSpec& spec) {
  const AdmissibilityReport adm = check_admissibility(spec);
  if (!adm.functional_ok) {
    if (!(adm.lower_bound < spec.theta))
      return InfeasibilityCertificate{"theta > max of the four lower-bound terms", adm.lower_bound, spec.theta};
    return InfeasibilityCertificate{"theta < min of the two upper-bound terms", spec.theta, adm.upper_bound};
  }
  const Rational bR = spec.beta_R(), bS = spec.beta_S(), bT = spec.beta_T(), bc = spec.beta_c();
  const Rational th = spec.theta, half_d(spec.d, 2);

  // delta0 + beta_T in (beta_c, 2 theta), beta_R + beta_S + zeta0 in
  // (beta_c, 2 theta) with zeta0 = d/2 - delta0, and 0 < delta0 < d/2.
  auto solve_delta = [&](Rational own, Rational other, const std::string& tag, const std::string& own_name,
                         const std::string& zeta_name) {
    const std::string zeta_sum = "beta_R + " + (own_name == "beta_T" ? std::string("beta_S") : "beta_T") + " + " +
                                 zeta_name;
    Interval iv{0, half_d, "0 < " + tag, tag + " < d/2"};
    iv.raise(bc - own, "beta_c < " + tag + " + " + own_name);
    iv.raise(bR + other + half_d - 2 * th, zeta_sum + " < 2 theta");
    iv.lower(2 * th - own, tag + " + " + own_name + " < 2 theta");
    iv.lower(bR + other + half_d - bc, "beta_c < " + zeta_sum);
    return iv;
  };
  const Interval d0 = solve_delta(bT, bS, "delta0", "beta_T", "zeta0");
  if (!(d0.lo < d0.hi)) return InfeasibilityCertificate{d0.lo_name + " against " + d0.hi_name, d0.lo, d0.hi};
  const Interval d0p = solve_delta(bS, bT, "delta0'", "beta_S", "zeta0'");
  if (!(d0p.lo < d0p.hi))
    return InfeasibilityCertificate{d0p.lo_name + " against " + d0p.hi_name, d0p.lo, d0p.hi};

  ExponentWitness w;
  w.delta0 = (d0.lo + d0.hi) / 2;
  w.zeta0 = half_d - w.delta0;
  w.delta0p = (d0p.lo + d0p.hi) / 2;
  w.zeta0p = half_d - w.delta0p;

  // beta_c <= gamma < min{delta0 + beta_T, delta0' + beta_S}; zeta > 0 adds
  // gamma < beta_c + theta, and the two remaining zeta bounds reduce to the
  // first two.
  Interval g{bc, w.delta0 + bT, "beta_c <= gamma", "gamma < delta0 + beta_T"};
  g.lower(w.delta0p + bS, "gamma < delta0' + beta_S");
  g.lower(bc + th, "zeta > 0");
  if (!(g.lo < g.hi)) return InfeasibilityCertificate{g.lo_name + " against " + g.hi_name, g.lo, g.hi};
  w.gamma = (g.lo + g.hi) / 2;
  w.zeta = Rational(1) - (w.gamma - bc) / th;
  return w;
}

std::string verify_witness(const ModelSpec& spec, const ExponentWitness& w) {
  const Rational bR = spec.beta_R(), bS = spec.beta_S(), bT = spec.beta_T(), bc = spec.beta_c();
  const Rational th = spec.theta, half_d(spec.d, 2);
  struct Check {
    bool ok;
    const char* what;
  };
  const Check checks[] = {
      {w.delta0 + w.zeta0 == half_d, "delta0 + zeta0 = d/2"},
      {w.delta0p + w.zeta0p == half_d, "delta0' + zeta0' = d/2"},
      {bc < w.delta0 + bT && w.delta0 + bT < 2 * th, "beta_c < delta0 + beta_T < 2 theta"},
      {bc < bR + bS + w.zeta0 && bR + bS + w.zeta0 < 2 * th, "beta_c < beta_R + beta_S + zeta0 < 2 theta"},
      {Rational(0) < w.delta0 && w.delta0 < half_d, "0 < delta0 < d/2"},
      {bc < w.delta0p + bS && w.delta0p + bS < 2 * th, "beta_c < delta0' + beta_S < 2 theta"},
      {bc < bR + bT + w.zeta0p && bR + bT + w.zeta0p < 2 * th, "beta_c < beta_R + beta_T + zeta0' < 2 theta"},
      {Rational(0) < w.delta0p && w.delta0p < half_d, "0 < delta0' < d/2"},
      {bc <= w.gamma && w.gamma < w.delta0 + bT && w.gamma < w.delta0p + bS,
       "beta_c <= gamma < min{delta0 + beta_T, delta0' + beta_S}"},
      {w.zeta == Rational(1) - (w.gamma - bc) / th, "zeta = 1 - (gamma - beta_c)/theta"},
      {w.zeta > Rational(0), "zeta > 0"},
      {w.zeta > (bR + bS + w.zeta0) / th - 1, "zeta > (beta_R + beta_S + zeta0)/theta - 1"},
      {w.zeta > (bR + bT + w.zeta0p) / th - 1, "zeta > (beta_R + beta_T + zeta0')/theta - 1"},
  };
  for (const Check& c : checks)
    if (!c.ok) return c.what;
  return {};
}

}  // namespace decaylab::models
