// Corpus-level BLEU: clipped n-gram precisions aggregated over the corpus,
// geometric mean, brevity penalty. Reported on the 0-100 scale.

#ifndef NGDC_BLEU_HPP
#define NGDC_BLEU_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ngdc {

struct BleuError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Tokens = std::vector<std::string>;

struct SentencePair {
  Tokens hypothesis;
  std::vector<Tokens> references;  // at least one
};

struct BleuReport {
  std::vector<double> precisions;  // p1..p_max_n
  double brevity_penalty = 1.0;
  double score = 0.0;  // 0-100
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

enum class BleuSmoothing { NONE, ADD_ONE };

// Lowercase, split punctuation into separate tokens, split on whitespace.
inline Tokens tokenize_basic(const std::string& line) {
  Tokens out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char ch : line) {
    if (std::isspace(ch)) {
      flush();
    } else if (std::ispunct(ch)) {
      flush();
      out.push_back(std::string(1, static_cast<char>(ch)));
    } else {
      cur.push_back(static_cast<char>(std::tolower(ch)));
    }
  }
  flush();
  return out;
}

namespace detail {

inline std::map<Tokens, std::size_t> ngram_counts(const Tokens& toks, std::size_t n) {
  std::map<Tokens, std::size_t> counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i)
    ++counts[Tokens(toks.begin() + i, toks.begin() + i + n)];
  return counts;
}

}  // namespace detail

inline BleuReport corpus_bleu(const std::vector<SentencePair>& pairs,
                              std::size_t max_n = 4,
                              BleuSmoothing smoothing = BleuSmoothing::NONE) {
  if (pairs.empty()) throw BleuError("empty corpus");
  if (max_n == 0) throw BleuError("max_n must be at least 1");

  std::vector<std::size_t> matched(max_n, 0), total(max_n, 0);
  std::size_t hyp_len = 0, ref_len = 0;

  for (const SentencePair& pair : pairs) {
    if (pair.references.empty())
      throw BleuError("sentence pair without references");
    hyp_len += pair.hypothesis.size();

    // closest reference length; ties go to the shorter reference
    std::size_t best_ref = pair.references.front().size();
    for (const Tokens& ref : pair.references) {
      const auto diff = [&](std::size_t len) {
        return len > pair.hypothesis.size() ? len - pair.hypothesis.size()
                                            : pair.hypothesis.size() - len;
      };
      if (diff(ref.size()) < diff(best_ref) ||
          (diff(ref.size()) == diff(best_ref) && ref.size() < best_ref))
        best_ref = ref.size();
    }
    ref_len += best_ref;

    for (std::size_t n = 1; n <= max_n; ++n) {
      auto hyp_counts = detail::ngram_counts(pair.hypothesis, n);
      std::map<Tokens, std::size_t> max_ref_counts;
      for (const Tokens& ref : pair.references)
        for (const auto& [gram, cnt] : detail::ngram_counts(ref, n))
          max_ref_counts[gram] = std::max(max_ref_counts[gram], cnt);
      for (const auto& [gram, cnt] : hyp_counts) {
        total[n - 1] += cnt;
        auto it = max_ref_counts.find(gram);
        if (it != max_ref_counts.end()) matched[n - 1] += std::min(cnt, it->second);
      }
    }
  }

  BleuReport report;
  report.hyp_length = hyp_len;
  report.ref_length = ref_len;
  report.precisions.resize(max_n, 0.0);

  // orders with no n-grams at all (corpus shorter than n) are vacuous and
  // excluded from the geometric mean; their precision reports as 1
  double log_sum = 0.0;
  std::size_t effective_orders = 0;
  bool zero_precision = false;
  for (std::size_t n = 0; n < max_n; ++n) {
    if (total[n] == 0) {
      report.precisions[n] = 1.0;
      continue;
    }
    ++effective_orders;
    double num = static_cast<double>(matched[n]);
    double den = static_cast<double>(total[n]);
    if (smoothing == BleuSmoothing::ADD_ONE) {
      num += 1.0;
      den += 1.0;
    }
    report.precisions[n] = num / den;
    if (report.precisions[n] <= 0.0)
      zero_precision = true;
    else
      log_sum += std::log(report.precisions[n]);
  }

  report.brevity_penalty =
      (hyp_len >= ref_len || hyp_len == 0)
          ? (hyp_len == 0 && ref_len > 0 ? 0.0 : 1.0)
          : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));

  report.score = (zero_precision || effective_orders == 0)
                     ? 0.0
                     : 100.0 * report.brevity_penalty *
                           std::exp(log_sum / static_cast<double>(effective_orders));
  return report;
}

}  // namespace ngdc

#endif  // NGDC_BLEU_HPP
