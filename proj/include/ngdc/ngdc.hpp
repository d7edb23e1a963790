// The geographical distance coefficient: a logistic score over the weighted
// ratio of distance to corpus size, with a hard penalty beyond a distance
// threshold. Lower is better; candidates are ranked ascending.

#ifndef NGDC_NGDC_HPP
#define NGDC_NGDC_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngdc/registry.hpp"

namespace ngdc {

struct NgdcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NgdcParams {
  double c = 0.4;            // weight coefficient, in (0,1)
  double d_max_km = 5000.0;  // hard-penalty threshold
  bool apply_penalty = true;
  double d_scale = 1000.0;   // D enters z in units of 10^3 km
  double s_scale = 1.0;      // S already in millions of sentences

  void validate() const {
    if (!(c > 0.0 && c < 1.0)) throw NgdcError("c must lie in (0,1)");
    if (!(d_max_km > 0.0)) throw NgdcError("d_max_km must be positive");
    if (!(d_scale > 0.0)) throw NgdcError("d_scale must be positive");
    if (!(s_scale > 0.0)) throw NgdcError("s_scale must be positive");
  }
};

struct NgdcScore {
  std::string code;
  double d_km = 0.0;
  double s_m = 0.0;
  double z = 0.0;
  double delta = 0.0;
  bool penalized = false;
};

using Ranking = std::vector<NgdcScore>;

inline double ngdc_z(double d_km, double s_m, const NgdcParams& p) {
  p.validate();
  if (d_km < 0.0) throw NgdcError("distance must be nonnegative");
  if (!(s_m > 0.0)) throw NgdcError("corpus size must be positive");
  return (p.c * (d_km / p.d_scale)) / ((1.0 - p.c) * (s_m / p.s_scale));
}

inline NgdcScore ngdc_delta(double d_km, double s_m, const NgdcParams& p) {
  NgdcScore score;
  score.d_km = d_km;
  score.s_m = s_m;
  score.z = ngdc_z(d_km, s_m, p);
  if (p.apply_penalty && d_km >= p.d_max_km) {
    score.delta = 1.0;
    score.penalized = true;
  } else {
    // stable logistic: exp(z)/(1+exp(z)) as 1/(1+exp(-z))
    score.delta = 1.0 / (1.0 + std::exp(-score.z));
    score.penalized = false;
  }
  return score;
}

inline NgdcScore score_entry(const LanguageEntry& entry, const LanguageEntry& target,
                             const NgdcParams& p, DistanceMethod method) {
  if (!entry.corpus_size_m)
    throw NgdcError("corpus size missing for '" + entry.code + "'");
  const DistanceResult d = resolve_distance_km(entry, target, method);
  NgdcScore score = ngdc_delta(d.km, *entry.corpus_size_m, p);
  score.code = entry.code;
  return score;
}

// Scores every non-target entry and sorts ascending delta, ties broken by
// ascending distance then code.
inline Ranking rank_candidates(const Registry& reg, const NgdcParams& p,
                               DistanceMethod method = DistanceMethod::PUBLISHED_FIRST) {
  p.validate();
  const LanguageEntry* target = reg.find(reg.target_code());
  auto cands = reg.candidates();
  if (cands.empty()) throw NgdcError("no candidate languages to rank");

  Ranking out;
  std::vector<std::string> failures;
  for (const LanguageEntry* e : cands) {
    try {
      LanguageEntry dummy_target;
      out.push_back(score_entry(*e, target ? *target : dummy_target, p, method));
    } catch (const std::runtime_error&) {
      failures.push_back(e->code);
    }
  }
  if (!failures.empty()) {
    std::string msg = "unresolvable candidates:";
    for (const auto& code : failures) msg += " " + code;
    throw NgdcError(msg);
  }
  std::sort(out.begin(), out.end(), [](const NgdcScore& a, const NgdcScore& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.d_km != b.d_km) return a.d_km < b.d_km;
    return a.code < b.code;
  });
  return out;
}

}  // namespace ngdc

#endif  // NGDC_NGDC_HPP
