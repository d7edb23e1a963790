// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ngdc/bleu.hpp"
#include "ngdc/geo.hpp"
#include "ngdc/ngdc.hpp"
#include "ngdc/registry.hpp"

using namespace ngdc;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok) {
  std::printf("criterion %d (%s): %s\n", criterion, name.c_str(), ok ? "PASS" : "FAIL");
  if (!ok) ++failures;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- criterion 1: published-table reproduction -----------------------------

bool table_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  Registry reg = builtin_registry();
  const LanguageEntry& target = reg.at("zul");

  struct Row {
    const char* code;
    double with_penalty;
    double without_penalty;  // NaN marks the documented divergence
    double oracle_without;
  };
  const double nan = std::nan("");
  const Row rows[] = {
      {"xho", 0.5080, 0.5080, 0.0}, {"swa", 0.5688, 0.5688, 0.0},
      {"sna", 0.9999, 0.9999, 0.0}, {"ara", 1.0000, 0.5084, 0.0},
      {"fra", 1.0000, 0.5045, 0.0}, {"twi", 1.0000, 1.0000, 0.0},
      {"lug", 1.0000, 1.0000, 0.0}, {"roa", 1.0000, nan, 0.50177},
  };
  bool ok = true;
  for (const Row& row : rows) {
    const LanguageEntry& e = reg.at(row.code);
    for (bool penalty : {true, false}) {
      NgdcParams p;  // c=0.4, d_scale=1000, d_max=5000
      p.apply_penalty = penalty;
      const double computed =
          score_entry(e, target, p, DistanceMethod::PUBLISHED_FIRST).delta;
      const double expected = penalty ? row.with_penalty : row.without_penalty;
      if (std::isnan(expected)) {
        // our own oracle value; the published 0.5007 is a documented divergence
        ok = ok && near(computed, row.oracle_without, 1e-4);
      } else {
        ok = ok && near(computed, expected, 1e-4);
      }
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return ok && elapsed < std::chrono::seconds(1);
}

// ---- criterion 2: selection claim ------------------------------------------

bool selection_claim() {
  const auto start = std::chrono::steady_clock::now();
  Ranking r = rank_candidates(builtin_registry(), NgdcParams{});
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return !r.empty() && r.front().code == "xho" && elapsed < std::chrono::seconds(1);
}

// ---- criterion 3: coefficient property suite -------------------------------

bool ngdc_properties() {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist_d(1.0, 4999.0);
  std::uniform_real_distribution<double> dist_s(5.0, 100.0);
  std::uniform_real_distribution<double> dist_c(0.1, 0.9);
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    const double d = dist_d(rng), s = dist_s(rng), c = dist_c(rng);
    NgdcParams p;
    p.c = c;
    p.apply_penalty = false;
    const double delta = ngdc_delta(d, s, p).delta;
    ok = ok && delta > 0.5 && delta < 1.0;
    ok = ok && ngdc_delta(d * 1.25, s, p).delta > delta;         // monotone in D
    ok = ok && ngdc_delta(d, s * 1.25, p).delta < delta;         // anti-monotone in S
    NgdcParams pc = p;
    pc.c = std::min(c + 0.03, 0.95);
    ok = ok && ngdc_delta(d, s, pc).delta > delta;               // monotone in c
    NgdcParams ps = p;
    ps.d_scale *= 7.0;
    ok = ok && std::abs(ngdc_delta(d * 7.0, s, ps).delta - delta) < 1e-15;
    NgdcParams pen = p;
    pen.apply_penalty = true;
    pen.d_max_km = d;  // at threshold: penalized
    const NgdcScore sc = ngdc_delta(d, s, pen);
    ok = ok && sc.penalized && sc.delta == 1.0;
  }
  // penalty dominance within a ranking
  Ranking r = rank_candidates(builtin_registry(), NgdcParams{});
  bool seen_penalized = false;
  for (const auto& s : r) {
    if (s.penalized) seen_penalized = true;
    if (seen_penalized && !s.penalized && s.delta < 1.0) ok = false;
  }
  return ok;
}

// ---- criterion 4: geodesy suite --------------------------------------------

bool geodesy_suite() {
  bool ok = true;
  ok = ok && near(haversine_km({0, 0}, {0, 90}), 10007.54, 0.01);
  auto v = vincenty_km({0, 0}, {0, 90});
  ok = ok && v && near(*v, 10018.75, 0.01);

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    GeoPoint p1{lat(rng), lon(rng)}, p2{lat(rng), lon(rng)};
    ok = ok && haversine_km(p1, p1) == 0.0;
    ok = ok && std::abs(haversine_km(p1, p2) - haversine_km(p2, p1)) < 1e-9;
    const double h = haversine_km(p1, p2);
    ok = ok && h >= 0.0 && h <= kPi * kMeanEarthRadiusKm;
    auto vv = vincenty_km(p1, p2);
    if (vv) worst = std::max(worst, std::abs(h - *vv) / std::max(*vv, 1.0));
  }
  ok = ok && worst < 0.006;

  // near-antipodal: non-convergence must surface, and the resolve layer must
  // still yield a sane fallback
  LanguageEntry a, b;
  a.code = "a";
  a.centroid = GeoPoint{0, 0};
  b.code = "b";
  b.centroid = GeoPoint{0.5, 179.7};
  auto res = resolve_distance_km(a, b, DistanceMethod::VINCENTY);
  ok = ok && res.km > 19000.0 && res.km < 20100.0;
  return ok;
}

// ---- criterion 5: BLEU suite -----------------------------------------------

std::map<std::string, long> oracle_ngrams(const Tokens& toks, std::size_t n) {
  std::map<std::string, long> m;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) key += toks[i + j] + "\x1f";
    ++m[key];
  }
  return m;
}

double oracle_bleu(const std::vector<SentencePair>& pairs, bool add_one) {
  std::array<long, 4> match{}, tot{};
  long hyp_len = 0, ref_len = 0;
  for (const auto& pair : pairs) {
    const long h = static_cast<long>(pair.hypothesis.size());
    hyp_len += h;
    long best = static_cast<long>(pair.references[0].size());
    for (const auto& ref : pair.references) {
      const long r = static_cast<long>(ref.size());
      if (std::llabs(r - h) < std::llabs(best - h) ||
          (std::llabs(r - h) == std::llabs(best - h) && r < best))
        best = r;
    }
    ref_len += best;
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const auto& [key, cnt] : oracle_ngrams(pair.hypothesis, n)) {
        tot[n - 1] += cnt;
        long best_ref = 0;
        for (const auto& ref : pair.references) {
          auto rg = oracle_ngrams(ref, n);
          if (auto it = rg.find(key); it != rg.end())
            best_ref = std::max(best_ref, it->second);
        }
        match[n - 1] += std::min(cnt, best_ref);
      }
    }
  }
  double log_sum = 0.0;
  long orders = 0;
  bool zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    if (tot[n] == 0) continue;  // vacuous order, excluded from the mean
    ++orders;
    const double p =
        (match[n] + (add_one ? 1.0 : 0.0)) / (tot[n] + (add_one ? 1.0 : 0.0));
    if (p <= 0.0)
      zero = true;
    else
      log_sum += std::log(p);
  }
  const double bp =
      hyp_len >= ref_len ? 1.0
                         : (hyp_len == 0 ? 0.0 : std::exp(1.0 - double(ref_len) / hyp_len));
  return (zero || orders == 0) ? 0.0 : 100.0 * bp * std::exp(log_sum / double(orders));
}

std::vector<SentencePair> random_corpus(std::mt19937& rng) {
  static const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<int> n_sent(1, 5);
  std::uniform_int_distribution<int> n_tok(1, 10);
  std::uniform_int_distribution<int> n_ref(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::vector<SentencePair> corpus;
  for (int s = n_sent(rng); s > 0; --s) {
    SentencePair pair;
    for (int t = n_tok(rng); t > 0; --t) pair.hypothesis.push_back(vocab[pick(rng)]);
    for (int r = n_ref(rng); r > 0; --r) {
      Tokens ref;
      for (int t = n_tok(rng); t > 0; --t) ref.push_back(vocab[pick(rng)]);
      pair.references.push_back(std::move(ref));
    }
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

bool bleu_suite() {
  bool ok = true;
  const Tokens sent = {"the", "cat", "sat"};
  ok = ok && corpus_bleu({{sent, {sent}}}).score == 100.0;
  ok = ok && corpus_bleu({{{"x", "y"}, {Tokens{"p", "q"}}}}).score == 0.0;

  std::mt19937 rng(2025);
  for (int i = 0; i < 100; ++i) {
    auto corpus = random_corpus(rng);
    for (bool add_one : {false, true}) {
      auto rep = corpus_bleu(corpus, 4,
                             add_one ? BleuSmoothing::ADD_ONE : BleuSmoothing::NONE);
      ok = ok && near(rep.score, oracle_bleu(corpus, add_one), 1e-12);
    }
    // permutation invariance
    auto shuffled = corpus;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ok = ok && corpus_bleu(shuffled, 4, BleuSmoothing::ADD_ONE).score ==
                   corpus_bleu(corpus, 4, BleuSmoothing::ADD_ONE).score;
    // extra same-length reference never hurts
    auto extended = corpus;
    for (auto& pair : extended) {
      Tokens extra = pair.references.back();
      std::shuffle(extra.begin(), extra.end(), rng);
      pair.references.push_back(extra);
    }
    ok = ok && corpus_bleu(extended, 4, BleuSmoothing::ADD_ONE).score >=
                   corpus_bleu(corpus, 4, BleuSmoothing::ADD_ONE).score - 1e-12;
  }
  return ok;
}

// ---- criterion 6: registry round-trip --------------------------------------

Registry random_registry(std::mt19937& rng) {
  Registry reg;
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    LanguageEntry e;
    e.code = "lang" + std::to_string(i);
    e.name = "Language " + std::to_string(i);
    if (unit(rng) < 0.5) e.family_path = {"Fam", "Sub" + std::to_string(i % 3)};
    if (unit(rng) < 0.5) e.centroid = GeoPoint{lat(rng), lon(rng)};
    if (unit(rng) < 0.8) e.corpus_size_m = unit(rng) * 100.0 + 0.001;
    if (unit(rng) < 0.8) e.published_gd_km = unit(rng) * 15000.0;
    if (unit(rng) < 0.5) e.bleu_test = unit(rng) * 40.0;
    reg.add(std::move(e));
  }
  if (n > 0) reg.set_target("lang0");
  return reg;
}

bool registry_round_trip() {
  auto trip = [](const Registry& reg, TableFormat fmt) {
    std::ostringstream out;
    export_registry(reg, out, fmt);
    std::istringstream in(out.str());
    return load_registry(in, fmt) == reg;
  };
  bool ok = true;
  Registry builtin = builtin_registry();
  ok = ok && trip(builtin, TableFormat::TSV) && trip(builtin, TableFormat::JSON);

  const std::pair<const char*, std::pair<double, double>> cells[] = {
      {"xho", {20.7, 1000.0}},  {"roa", {1232.7, 13094.4}}, {"ara", {102.8, 5205.0}},
      {"fra", {479.1, 13094.0}}, {"swa", {9.1, 3783.1}},     {"sna", {0.1, 1584.0}},
      {"twi", {0.047, 7962.0}},  {"lug", {0.039, 4883.7}},
  };
  for (const auto& [code, vals] : cells) {
    const LanguageEntry& e = builtin.at(code);
    ok = ok && e.corpus_size_m == vals.first && e.published_gd_km == vals.second;
  }

  std::mt19937 rng(77);
  for (int i = 0; i < 100; ++i) {
    Registry reg = random_registry(rng);
    ok = ok && trip(reg, TableFormat::TSV) && trip(reg, TableFormat::JSON);
  }
  return ok;
}

// ---- criterion 7: fine-tuning results are metadata only --------------------

bool published_scores_are_metadata() {
  // the published BLEU outcomes ride along as registry metadata; nothing in
  // the library recomputes them
  Registry reg = builtin_registry();
  return reg.at("xho").bleu_test && *reg.at("xho").bleu_test == 8.56 &&
         reg.at("xho").bleu_val && *reg.at("xho").bleu_val == 10.20 &&
         reg.at("lug").bleu_test && *reg.at("lug").bleu_test == 0.55;
}

}  // namespace

int main() {
  report(1, "coefficient table reproduction", table_reproduction());
  report(2, "selection claim: isiXhosa first", selection_claim());
  report(3, "coefficient property suite", ngdc_properties());
  report(4, "geodesy suite", geodesy_suite());
  report(5, "BLEU suite", bleu_suite());
  report(6, "registry round-trip", registry_round_trip());
  report(7, "published scores carried as metadata only", published_scores_are_metadata());
  return failures == 0 ? 0 : 1;
}
