// Candidate-language registry: metadata storage, TSV/JSON ingestion and
// export, and the built-in eight-candidate dataset.

#ifndef NGDC_REGISTRY_HPP
#define NGDC_REGISTRY_HPP

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ngdc/geo.hpp"

namespace ngdc {

struct RegistryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LanguageEntry {
  std::string code;
  std::string name;
  std::vector<std::string> family_path;  // outermost family first
  std::optional<GeoPoint> centroid;
  std::optional<double> corpus_size_m;    // millions of parallel sentences
  std::optional<double> published_gd_km;  // distance to the target, verbatim
  std::optional<double> bleu_val;
  std::optional<double> bleu_test;

  bool operator==(const LanguageEntry& o) const {
    auto pt_eq = [](const std::optional<GeoPoint>& a, const std::optional<GeoPoint>& b) {
      if (a.has_value() != b.has_value()) return false;
      if (!a) return true;
      return a->lat_deg == b->lat_deg && a->lon_deg == b->lon_deg;
    };
    return code == o.code && name == o.name && family_path == o.family_path &&
           pt_eq(centroid, o.centroid) && corpus_size_m == o.corpus_size_m &&
           published_gd_km == o.published_gd_km && bleu_val == o.bleu_val &&
           bleu_test == o.bleu_test;
  }
};

class Registry {
 public:
  void add(LanguageEntry entry) {
    if (entry.code.empty())
      throw RegistryError("language code must be nonempty");
    if (entries_.count(entry.code))
      throw RegistryError("duplicate language code: " + entry.code);
    if (entry.corpus_size_m && *entry.corpus_size_m <= 0.0)
      throw RegistryError("corpus size must be positive for " + entry.code);
    if (entry.published_gd_km && *entry.published_gd_km < 0.0)
      throw RegistryError("published distance must be nonnegative for " + entry.code);
    if (entry.centroid && !entry.centroid->valid())
      throw RegistryError("centroid out of range for " + entry.code);
    entries_.emplace(entry.code, std::move(entry));
  }

  void set_target(std::string code) { target_code_ = std::move(code); }

  const std::string& target_code() const { return target_code_; }

  const LanguageEntry* find(const std::string& code) const {
    auto it = entries_.find(code);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const LanguageEntry& at(const std::string& code) const {
    const LanguageEntry* e = find(code);
    if (!e) throw RegistryError("unknown language code: " + code);
    return *e;
  }

  // sorted by code
  std::vector<const LanguageEntry*> entries() const {
    std::vector<const LanguageEntry*> out;
    out.reserve(entries_.size());
    for (const auto& [code, e] : entries_) out.push_back(&e);
    return out;
  }

  // entries except the target, sorted by code
  std::vector<const LanguageEntry*> candidates() const {
    std::vector<const LanguageEntry*> out;
    for (const auto& [code, e] : entries_)
      if (code != target_code_) out.push_back(&e);
    return out;
  }

  std::size_t size() const { return entries_.size(); }

  bool operator==(const Registry& o) const {
    return target_code_ == o.target_code_ && entries_ == o.entries_;
  }

 private:
  std::map<std::string, LanguageEntry> entries_;
  std::string target_code_;
};

enum class TableFormat { TSV, JSON };

namespace detail {

inline double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw RegistryError("malformed number '" + text + "' in " + where);
  return value;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

// Fixed TSV column order.
inline constexpr const char* kTsvHeader =
    "code\tname\tfamily_path\tlat\tlon\tcorpus_size_m\tpublished_gd_km\tbleu_val\tbleu_test";

inline std::string join_family(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ';';
    out += path[i];
  }
  return out;
}

// shortest representation that round-trips
inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline Registry load_registry_tsv(std::istream& in) {
  Registry reg;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::string target;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      // "# target: xyz" carries the target code through TSV round trips
      const std::string tag = "# target:";
      if (line.rfind(tag, 0) == 0) {
        target = line.substr(tag.size());
        target.erase(0, target.find_first_not_of(" \t"));
      }
      continue;
    }
    if (!header_seen) {
      if (line != detail::kTsvHeader)
        throw RegistryError("line " + std::to_string(line_no) + ": unexpected TSV header");
      header_seen = true;
      continue;
    }
    auto cells = detail::split(line, '\t');
    if (cells.size() < 2 || cells.size() > 9)
      throw RegistryError("line " + std::to_string(line_no) + ": expected 2-9 columns, got " +
                          std::to_string(cells.size()));
    cells.resize(9);
    const std::string where = "line " + std::to_string(line_no);
    LanguageEntry e;
    e.code = cells[0];
    e.name = cells[1];
    if (!cells[2].empty()) e.family_path = detail::split(cells[2], ';');
    if (cells[3].empty() != cells[4].empty())
      throw RegistryError(where + ": lat and lon must both be present or both empty");
    if (!cells[3].empty())
      e.centroid = GeoPoint{detail::parse_number(cells[3], where + " field lat"),
                            detail::parse_number(cells[4], where + " field lon")};
    if (!cells[5].empty())
      e.corpus_size_m = detail::parse_number(cells[5], where + " field corpus_size_m");
    if (!cells[6].empty())
      e.published_gd_km = detail::parse_number(cells[6], where + " field published_gd_km");
    if (!cells[7].empty())
      e.bleu_val = detail::parse_number(cells[7], where + " field bleu_val");
    if (!cells[8].empty())
      e.bleu_test = detail::parse_number(cells[8], where + " field bleu_test");
    reg.add(std::move(e));
  }
  if (!header_seen) throw RegistryError("missing TSV header line");
  reg.set_target(target);
  return reg;
}

inline Registry load_registry_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& ex) {
    throw RegistryError(std::string("JSON parse error: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("languages") || !doc["languages"].is_array())
    throw RegistryError("JSON registry must be an object with a 'languages' array");
  Registry reg;
  for (const auto& item : doc["languages"]) {
    LanguageEntry e;
    if (!item.contains("code") || !item.contains("name"))
      throw RegistryError("JSON entry missing required 'code' or 'name'");
    e.code = item["code"].get<std::string>();
    e.name = item["name"].get<std::string>();
    if (item.contains("family_path"))
      e.family_path = item["family_path"].get<std::vector<std::string>>();
    if (item.contains("centroid")) {
      const auto& c = item["centroid"];
      e.centroid = GeoPoint{c.at("lat").get<double>(), c.at("lon").get<double>()};
    }
    if (item.contains("corpus_size_m")) e.corpus_size_m = item["corpus_size_m"].get<double>();
    if (item.contains("published_gd_km"))
      e.published_gd_km = item["published_gd_km"].get<double>();
    if (item.contains("bleu_val")) e.bleu_val = item["bleu_val"].get<double>();
    if (item.contains("bleu_test")) e.bleu_test = item["bleu_test"].get<double>();
    reg.add(std::move(e));
  }
  if (doc.contains("target")) reg.set_target(doc["target"].get<std::string>());
  return reg;
}

inline Registry load_registry(std::istream& in, TableFormat format) {
  return format == TableFormat::TSV ? load_registry_tsv(in) : load_registry_json(in);
}

inline void export_registry_tsv(const Registry& reg, std::ostream& out) {
  if (!reg.target_code().empty()) out << "# target: " << reg.target_code() << "\n";
  out << detail::kTsvHeader << "\n";
  for (const LanguageEntry* e : reg.entries()) {
    out << e->code << '\t' << e->name << '\t' << detail::join_family(e->family_path) << '\t';
    if (e->centroid)
      out << detail::format_number(e->centroid->lat_deg) << '\t'
          << detail::format_number(e->centroid->lon_deg);
    else
      out << '\t';
    out << '\t';
    if (e->corpus_size_m) out << detail::format_number(*e->corpus_size_m);
    out << '\t';
    if (e->published_gd_km) out << detail::format_number(*e->published_gd_km);
    out << '\t';
    if (e->bleu_val) out << detail::format_number(*e->bleu_val);
    out << '\t';
    if (e->bleu_test) out << detail::format_number(*e->bleu_test);
    out << '\n';
  }
}

inline nlohmann::json registry_to_json(const Registry& reg) {
  nlohmann::json doc;
  doc["target"] = reg.target_code();
  doc["languages"] = nlohmann::json::array();
  for (const LanguageEntry* e : reg.entries()) {
    nlohmann::json item;
    item["code"] = e->code;
    item["name"] = e->name;
    if (!e->family_path.empty()) item["family_path"] = e->family_path;
    if (e->centroid)
      item["centroid"] = {{"lat", e->centroid->lat_deg}, {"lon", e->centroid->lon_deg}};
    if (e->corpus_size_m) item["corpus_size_m"] = *e->corpus_size_m;
    if (e->published_gd_km) item["published_gd_km"] = *e->published_gd_km;
    if (e->bleu_val) item["bleu_val"] = *e->bleu_val;
    if (e->bleu_test) item["bleu_test"] = *e->bleu_test;
    doc["languages"].push_back(std::move(item));
  }
  return doc;
}

inline void export_registry(const Registry& reg, std::ostream& out, TableFormat format) {
  if (format == TableFormat::TSV) {
    export_registry_tsv(reg, out);
  } else {
    out << registry_to_json(reg).dump(2) << "\n";
  }
}

// The eight candidates with their published distances to isiZulu and corpus
// sizes; coordinates are deliberately absent.
inline Registry builtin_registry() {
  Registry reg;
  auto add = [&](const char* code, const char* name,
                 std::vector<std::string> family, double bleu_val,
                 double bleu_test, double size_m, double gd_km) {
    LanguageEntry e;
    e.code = code;
    e.name = name;
    e.family_path = std::move(family);
    e.bleu_val = bleu_val;
    e.bleu_test = bleu_test;
    e.corpus_size_m = size_m;
    e.published_gd_km = gd_km;
    reg.add(std::move(e));
  };
  add("xho", "isiXhosa", {"Niger-Congo", "Bantu", "Nguni"}, 10.20, 8.56, 20.7, 1000.0);
  add("roa", "Romance", {"Indo-European", "Romance"}, 7.76, 5.83, 1232.7, 13094.4);
  add("ara", "Arabic", {"Afro-Asiatic", "Semitic"}, 5.76, 3.07, 102.8, 5205.0);
  add("fra", "French", {"Indo-European", "Romance"}, 5.42, 3.91, 479.1, 13094.0);
  add("swa", "Kiswahili", {"Niger-Congo", "Bantu", "Sabaki"}, 5.28, 3.97, 9.1, 3783.1);
  add("sna", "chiShona", {"Niger-Congo", "Bantu"}, 4.32, 2.83, 0.1, 1584.0);
  add("twi", "Twi", {"Niger-Congo", "Kwa", "Akan"}, 1.91, 1.34, 0.047, 7962.0);
  add("lug", "Luganda", {"Niger-Congo", "Bantu"}, 0.94, 0.55, 0.039, 4883.7);
  {
    LanguageEntry target;
    target.code = "zul";
    target.name = "isiZulu";
    target.family_path = {"Niger-Congo", "Bantu", "Nguni"};
    reg.add(std::move(target));
  }
  reg.set_target("zul");
  return reg;
}

enum class DistanceMethod { PUBLISHED_FIRST, HAVERSINE, LAMBERT, VINCENTY };

struct DistanceResult {
  double km = 0.0;
  bool haversine_fallback = false;  // Vincenty failed to converge
};

inline DistanceResult resolve_distance_km(const LanguageEntry& entry,
                                          const LanguageEntry& target,
                                          DistanceMethod method,
                                          const Ellipsoid& e = wgs84()) {
  auto need_centroids = [&]() {
    if (!entry.centroid || !target.centroid)
      throw RegistryError("distance unresolvable for '" + entry.code +
                          "': centroid required but absent");
  };
  auto vincenty_with_fallback = [&]() -> DistanceResult {
    need_centroids();
    if (auto d = vincenty_km(*entry.centroid, *target.centroid, e)) return {*d, false};
    return {haversine_km(*entry.centroid, *target.centroid), true};
  };
  switch (method) {
    case DistanceMethod::PUBLISHED_FIRST:
      if (entry.published_gd_km) return {*entry.published_gd_km, false};
      if (!entry.centroid || !target.centroid)
        throw RegistryError("distance unresolvable for '" + entry.code +
                            "': no published distance and no centroid");
      return vincenty_with_fallback();
    case DistanceMethod::HAVERSINE:
      need_centroids();
      return {haversine_km(*entry.centroid, *target.centroid), false};
    case DistanceMethod::LAMBERT:
      need_centroids();
      return {lambert_km(*entry.centroid, *target.centroid, e), false};
    case DistanceMethod::VINCENTY:
      return vincenty_with_fallback();
  }
  throw RegistryError("unknown distance method");
}

}  // namespace ngdc

#endif  // NGDC_REGISTRY_HPP
