// Command-line front end: candidate ranking, per-language scoring, published
// table reproduction, scatter export, geodesic distances and BLEU evaluation.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ngdc/bleu.hpp"
#include "ngdc/geo.hpp"
#include "ngdc/ngdc.hpp"
#include "ngdc/registry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInputFormat = 65;

using ngdc::DistanceMethod;
using ngdc::NgdcParams;
using ngdc::Registry;
using ngdc::TableFormat;

enum class OutputFormat { TABLE, CSV, JSON };

struct GlobalOpts {
  std::string registry = "builtin";
  std::string format = "table";
  std::string method = "published";
  NgdcParams params;
  bool no_penalty = false;
  std::string output;  // empty = stdout
};

OutputFormat parse_output_format(const std::string& s) {
  if (s == "table") return OutputFormat::TABLE;
  if (s == "csv") return OutputFormat::CSV;
  if (s == "json") return OutputFormat::JSON;
  throw CLI::ValidationError("--format", "expected table, csv or json");
}

DistanceMethod parse_method(const std::string& s) {
  if (s == "published") return DistanceMethod::PUBLISHED_FIRST;
  if (s == "haversine") return DistanceMethod::HAVERSINE;
  if (s == "lambert") return DistanceMethod::LAMBERT;
  if (s == "vincenty") return DistanceMethod::VINCENTY;
  throw CLI::ValidationError("--method", "expected published, haversine, lambert or vincenty");
}

Registry load_registry_arg(const std::string& arg) {
  if (arg == "builtin") return ngdc::builtin_registry();
  std::ifstream in(arg);
  if (!in) throw ngdc::RegistryError("cannot open registry file: " + arg);
  const bool json = arg.size() >= 5 && arg.compare(arg.size() - 5, 5, ".json") == 0;
  return ngdc::load_registry(in, json ? TableFormat::JSON : TableFormat::TSV);
}

std::ostream& open_output(const GlobalOpts& g, std::ofstream& file) {
  if (g.output.empty()) return std::cout;
  file.open(g.output);
  if (!file) throw ngdc::RegistryError("cannot open output file: " + g.output);
  return file;
}

// truncated, matching the published tables' convention (0.50805 -> 0.5080)
std::string fmt4(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << std::trunc(v * 10000.0) / 10000.0;
  return ss.str();
}

std::string fmt_full(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

NgdcParams effective_params(const GlobalOpts& g) {
  NgdcParams p = g.params;
  p.apply_penalty = !g.no_penalty;
  p.validate();
  return p;
}

void print_scores(const ngdc::Ranking& scores, OutputFormat fmt, std::ostream& out,
                  bool ranked) {
  if (fmt == OutputFormat::JSON) {
    nlohmann::json doc = nlohmann::json::array();
    int rank = 0;
    for (const auto& s : scores) {
      nlohmann::json row = {{"code", s.code},     {"d_km", s.d_km},
                            {"s_m", s.s_m},       {"z", s.z},
                            {"delta", s.delta},   {"penalized", s.penalized}};
      if (ranked) row["rank"] = ++rank;
      doc.push_back(std::move(row));
    }
    out << doc.dump(2) << "\n";
    return;
  }
  const char sep = fmt == OutputFormat::CSV ? ',' : '\t';
  out << "code" << sep << "d_km" << sep << "s_m" << sep << "z" << sep << "delta"
      << sep << "penalized";
  if (ranked) out << sep << "rank";
  out << "\n";
  int rank = 0;
  for (const auto& s : scores) {
    out << s.code << sep << s.d_km << sep << s.s_m << sep;
    if (fmt == OutputFormat::CSV)
      out << fmt_full(s.z) << sep << fmt_full(s.delta);
    else
      out << fmt4(s.z) << sep << fmt4(s.delta);
    out << sep << (s.penalized ? "yes" : "no");
    if (ranked) out << sep << ++rank;
    out << "\n";
  }
}

int cmd_rank(const GlobalOpts& g, bool sorted) {
  Registry reg = load_registry_arg(g.registry);
  NgdcParams p = effective_params(g);
  ngdc::Ranking scores;
  if (sorted) {
    scores = ngdc::rank_candidates(reg, p, parse_method(g.method));
  } else {
    const ngdc::LanguageEntry* target = reg.find(reg.target_code());
    ngdc::LanguageEntry dummy;
    for (const auto* e : reg.candidates())
      scores.push_back(
          ngdc::score_entry(*e, target ? *target : dummy, p, parse_method(g.method)));
  }
  std::ofstream file;
  print_scores(scores, parse_output_format(g.format), open_output(g, file), sorted);
  return kExitOk;
}

struct PublishedRow {
  const char* code;
  double with_penalty;
  double without_penalty;
  bool known_discrepancy_without;  // published value not reproducible
  double oracle_without;           // our own value for the discrepant cell
};

// Published coefficient table, with and without penalty.
const PublishedRow kPublishedTable[] = {
    {"xho", 0.5080, 0.5080, false, 0.0},
    {"roa", 1.0000, 0.5007, true, 0.50177},
    {"ara", 1.0000, 0.5084, false, 0.0},
    {"fra", 1.0000, 0.5045, false, 0.0},
    {"swa", 0.5688, 0.5688, false, 0.0},
    {"sna", 0.9999, 0.9999, false, 0.0},
    {"twi", 1.0000, 1.0000, false, 0.0},
    {"lug", 1.0000, 1.0000, false, 0.0},
};

int cmd_reproduce(const GlobalOpts& g) {
  Registry reg = ngdc::builtin_registry();
  NgdcParams base = g.params;
  base.validate();
  const ngdc::LanguageEntry& target = reg.at(reg.target_code());

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  out << "language\tmode\tcomputed\tpublished\tstatus\n";
  bool all_pass = true;
  for (const PublishedRow& row : kPublishedTable) {
    const ngdc::LanguageEntry& e = reg.at(row.code);
    for (bool penalty : {true, false}) {
      NgdcParams p = base;
      p.apply_penalty = penalty;
      const double computed =
          ngdc::score_entry(e, target, p, DistanceMethod::PUBLISHED_FIRST).delta;
      const double published = penalty ? row.with_penalty : row.without_penalty;
      std::string status;
      if (!penalty && row.known_discrepancy_without) {
        const bool oracle_ok = std::abs(computed - row.oracle_without) <= 1e-4;
        status = oracle_ok ? "KNOWN-DISCREPANCY" : "FAIL";
        if (!oracle_ok) all_pass = false;
      } else if (std::abs(computed - published) <= 1e-4) {
        status = "PASS";
      } else {
        status = "FAIL";
        all_pass = false;
      }
      std::ostringstream pub;  // already a 4-decimal constant, plain rounding
      pub << std::fixed << std::setprecision(4) << published;
      out << e.name << '\t' << (penalty ? "penalty" : "no-penalty") << '\t'
          << fmt4(computed) << '\t' << pub.str() << '\t' << status << "\n";
    }
  }
  return all_pass ? kExitOk : kExitDataError;
}

int cmd_scatter(const GlobalOpts& g) {
  Registry reg = load_registry_arg(g.registry);
  NgdcParams p = effective_params(g);
  const ngdc::LanguageEntry* target = reg.find(reg.target_code());
  ngdc::LanguageEntry dummy;

  struct Row {
    std::string code;
    double gd_km;
    double bleu_test;
    double delta;
  };
  std::vector<Row> rows;
  for (const auto* e : reg.candidates()) {
    if (!e->bleu_test) {
      std::cerr << "warning: skipping " << e->code << " (no bleu_test value)\n";
      continue;
    }
    auto s = ngdc::score_entry(*e, target ? *target : dummy, p, parse_method(g.method));
    rows.push_back({e->code, s.d_km, *e->bleu_test, s.delta});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.gd_km < b.gd_km; });

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  out << "code,gd_km,bleu_test,delta\n";
  for (const Row& r : rows)
    out << r.code << ',' << r.gd_km << ',' << r.bleu_test << ',' << fmt_full(r.delta)
        << "\n";
  return kExitOk;
}

int cmd_distance(double lat1, double lon1, double lat2, double lon2,
                 const std::string& method) {
  ngdc::GeoPoint p1{lat1, lon1}, p2{lat2, lon2};
  if (!p1.valid() || !p2.valid()) {
    std::cerr << "error: coordinates out of range\n";
    return kExitUsage;
  }
  double km = 0.0;
  std::string used = method;
  if (method == "haversine") {
    km = ngdc::haversine_km(p1, p2);
  } else if (method == "lambert") {
    km = ngdc::lambert_km(p1, p2);
  } else if (method == "vincenty") {
    if (auto d = ngdc::vincenty_km(p1, p2)) {
      km = *d;
    } else {
      km = ngdc::haversine_km(p1, p2);
      used = "haversine (vincenty did not converge)";
    }
  } else {
    std::cerr << "error: unknown method '" << method << "'\n";
    return kExitUsage;
  }
  std::cout << std::fixed << std::setprecision(3) << km << " km (" << used << ")\n";
  return kExitOk;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ngdc::BleuError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

int cmd_bleu(const std::string& hyp_path, const std::vector<std::string>& ref_paths,
             const std::string& smoothing, bool pretokenized, const GlobalOpts& g) {
  auto hyp_lines = read_lines(hyp_path);
  std::vector<std::vector<std::string>> ref_lines;
  for (const auto& rp : ref_paths) {
    ref_lines.push_back(read_lines(rp));
    if (ref_lines.back().size() != hyp_lines.size()) {
      std::cerr << "error: line count mismatch: " << hyp_path << " has "
                << hyp_lines.size() << " lines, " << rp << " has "
                << ref_lines.back().size() << "\n";
      return kExitInputFormat;
    }
  }

  auto tok = [&](const std::string& s) -> ngdc::Tokens {
    if (!pretokenized) return ngdc::tokenize_basic(s);
    ngdc::Tokens t;
    std::istringstream ss(s);
    std::string w;
    while (ss >> w) t.push_back(w);
    return t;
  };

  std::vector<ngdc::SentencePair> pairs;
  for (std::size_t i = 0; i < hyp_lines.size(); ++i) {
    ngdc::SentencePair pair;
    pair.hypothesis = tok(hyp_lines[i]);
    for (const auto& refs : ref_lines) pair.references.push_back(tok(refs[i]));
    pairs.push_back(std::move(pair));
  }

  const auto sm = smoothing == "add1" ? ngdc::BleuSmoothing::ADD_ONE
                                      : ngdc::BleuSmoothing::NONE;
  const ngdc::BleuReport report = ngdc::corpus_bleu(pairs, 4, sm);

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  if (parse_output_format(g.format) == OutputFormat::JSON) {
    nlohmann::json doc = {{"score", report.score},
                          {"precisions", report.precisions},
                          {"brevity_penalty", report.brevity_penalty},
                          {"hyp_length", report.hyp_length},
                          {"ref_length", report.ref_length}};
    out << doc.dump(2) << "\n";
  } else {
    out << std::fixed << std::setprecision(2) << "BLEU = " << report.score << "  (";
    for (std::size_t n = 0; n < report.precisions.size(); ++n)
      out << (n ? "/" : "") << std::setprecision(3) << report.precisions[n];
    out << std::setprecision(3) << ", BP = " << report.brevity_penalty
        << ", hyp_len = " << report.hyp_length << ", ref_len = " << report.ref_length
        << ")\n";
  }
  return kExitOk;
}

int cmd_export(const GlobalOpts& g) {
  Registry reg = load_registry_arg(g.registry);
  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const TableFormat fmt =
      g.format == "json" ? TableFormat::JSON : TableFormat::TSV;
  ngdc::export_registry(reg, out, fmt);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Source-language selection for low-resource translation transfer"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--registry", g.registry, "Registry file (.tsv/.json) or 'builtin'")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format: table, csv or json")
      ->capture_default_str();
  app.add_option("--method", g.method,
                 "Distance source: published, haversine, lambert or vincenty")
      ->capture_default_str();
  app.add_option("--c", g.params.c, "Weight coefficient, in (0,1)")
      ->capture_default_str();
  app.add_option("--d-max", g.params.d_max_km, "Penalty threshold in km")
      ->capture_default_str();
  app.add_option("--d-scale", g.params.d_scale, "Distance normalization divisor in km")
      ->capture_default_str();
  app.add_option("--s-scale", g.params.s_scale, "Corpus-size normalization divisor")
      ->capture_default_str();
  app.add_flag("--no-penalty", g.no_penalty, "Disable the hard distance penalty");
  app.add_option("-o,--output", g.output, "Write output to file instead of stdout");

  auto* rank = app.add_subcommand("rank", "Rank candidate languages by coefficient");
  auto* score = app.add_subcommand("score", "Score candidates without ranking");
  auto* reproduce =
      app.add_subcommand("reproduce", "Compare computed coefficients to published values");
  auto* scatter =
      app.add_subcommand("scatter", "Export distance/BLEU scatter data as CSV");

  auto* distance = app.add_subcommand("distance", "Distance between two points");
  double lat1 = 0, lon1 = 0, lat2 = 0, lon2 = 0;
  std::string dist_method = "haversine";
  distance->add_option("--lat1", lat1, "First point latitude (deg)")->required();
  distance->add_option("--lon1", lon1, "First point longitude (deg)")->required();
  distance->add_option("--lat2", lat2, "Second point latitude (deg)")->required();
  distance->add_option("--lon2", lon2, "Second point longitude (deg)")->required();
  distance->add_option("--algo", dist_method, "haversine, lambert or vincenty")
      ->capture_default_str();

  auto* bleu = app.add_subcommand("bleu", "Corpus BLEU of a hypothesis file");
  std::string hyp_path;
  std::vector<std::string> ref_paths;
  std::string smoothing = "none";
  bool pretokenized = false;
  bleu->add_option("--hyp", hyp_path, "Hypothesis file, one sentence per line")->required();
  bleu->add_option("--ref", ref_paths, "Reference file(s), equal line count")->required();
  bleu->add_option("--smoothing", smoothing, "none or add1")->capture_default_str();
  bleu->add_flag("--pretokenized", pretokenized, "Input is already tokenized");

  auto* exp = app.add_subcommand("export", "Export the registry as TSV or JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    g.params.validate();
    parse_output_format(g.format);
    parse_method(g.method);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (rank->parsed()) return cmd_rank(g, true);
    if (score->parsed()) return cmd_rank(g, false);
    if (reproduce->parsed()) return cmd_reproduce(g);
    if (scatter->parsed()) return cmd_scatter(g);
    if (distance->parsed()) return cmd_distance(lat1, lon1, lat2, lon2, dist_method);
    if (bleu->parsed()) return cmd_bleu(hyp_path, ref_paths, smoothing, pretokenized, g);
    if (exp->parsed()) return cmd_export(g);
  } catch (const ngdc::BleuError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputFormat;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}
