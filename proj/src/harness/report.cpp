#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "slotwise/harness.hpp"

namespace slotwise {

namespace {

const std::vector<std::string> kFixedColumns{"kind",   "instance",  "label",       "seed",
                                             "scenarios", "profit", "reference",   "gap_percent",
                                             "coverage_percent", "wall_ms"};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ModelError("bad number '" + s + "' in report CSV");
  return v;
}

// Fields never contain commas or quotes except instance names; quote those.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Moments {
  int n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double v) {
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return n ? sum / n : 0.0; }
  double stddev() const {
    if (n < 2) return 0.0;
    const double var = (sum_sq - sum * sum / n) / (n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

}  // namespace

std::vector<Aggregate> ExperimentReport::aggregates() const {
  std::vector<Aggregate> out;
  std::vector<std::array<Moments, 3>> moments;
  for (const auto& r : records) {
    std::size_t k = 0;
    while (k < out.size() &&
           !(out[k].instance == r.instance && out[k].label == r.label && out[k].scenarios == r.scenarios))
      ++k;
    if (k == out.size()) {
      out.push_back({r.instance, r.label, r.scenarios});
      moments.emplace_back();
    }
    moments[k][0].add(r.profit);
    moments[k][1].add(r.gap_percent);
    moments[k][2].add(r.coverage_percent);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].count = moments[k][0].n;
    out[k].profit_mean = moments[k][0].mean();
    out[k].profit_std = moments[k][0].stddev();
    out[k].gap_mean = moments[k][1].mean();
    out[k].gap_std = moments[k][1].stddev();
    out[k].coverage_mean = moments[k][2].mean();
  }
  return out;
}

Json ExperimentReport::to_json() const {
  Json recs = Json::array();
  for (const auto& r : records) {
    recs.push_back({{"instance", r.instance},
                    {"label", r.label},
                    {"seed", r.seed},
                    {"scenarios", r.scenarios},
                    {"profit", r.profit},
                    {"reference", r.reference},
                    {"gap_percent", r.gap_percent},
                    {"coverage_percent", r.coverage_percent},
                    {"wall_ms", r.wall_ms},
                    {"metrics", r.metrics}});
  }
  Json aggs = Json::array();
  for (const auto& a : aggregates()) {
    aggs.push_back({{"instance", a.instance},
                    {"label", a.label},
                    {"scenarios", a.scenarios},
                    {"count", a.count},
                    {"profit_mean", a.profit_mean},
                    {"profit_std", a.profit_std},
                    {"gap_mean", a.gap_mean},
                    {"gap_std", a.gap_std},
                    {"coverage_mean", a.coverage_mean}});
  }
  return {{"kind", kind}, {"instances", instances}, {"records", recs}, {"aggregates", aggs}};
}

ExperimentReport ExperimentReport::from_json(const Json& j) {
  ExperimentReport rep;
  rep.kind = j.at("kind").get<std::string>();
  rep.instances = j.value("instances", std::vector<std::string>{});
  for (const auto& r : j.at("records")) {
    RunRecord rec;
    rec.instance = r.at("instance").get<std::string>();
    rec.label = r.value("label", std::string());
    rec.seed = r.at("seed").get<std::uint64_t>();
    rec.scenarios = r.at("scenarios").get<int>();
    rec.profit = r.at("profit").get<double>();
    rec.reference = r.value("reference", 0.0);
    rec.gap_percent = r.value("gap_percent", 0.0);
    rec.coverage_percent = r.value("coverage_percent", 0.0);
    rec.wall_ms = r.value("wall_ms", 0.0);
    rec.metrics = r.value("metrics", std::map<std::string, double>{});
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

std::string ExperimentReport::to_csv() const {
  std::set<std::string> metric_keys;
  for (const auto& r : records)
    for (const auto& [k, v] : r.metrics) metric_keys.insert(k);
  std::ostringstream out;
  for (std::size_t k = 0; k < kFixedColumns.size(); ++k) out << (k ? "," : "") << kFixedColumns[k];
  for (const auto& k : metric_keys) out << "," << csv_field(k);
  out << "\n";
  for (const auto& r : records) {
    out << csv_field(kind) << "," << csv_field(r.instance) << "," << csv_field(r.label) << "," << r.seed << ","
        << r.scenarios << "," << format_double(r.profit) << "," << format_double(r.reference) << ","
        << format_double(r.gap_percent) << "," << format_double(r.coverage_percent) << ","
        << format_double(r.wall_ms);
    for (const auto& k : metric_keys) {
      out << ",";
      if (auto it = r.metrics.find(k); it != r.metrics.end()) out << format_double(it->second);
    }
    out << "\n";
  }
  return out.str();
}

ExperimentReport ExperimentReport::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ModelError("empty report CSV");
  const auto header = split_csv_line(line);
  if (header.size() < kFixedColumns.size() ||
      !std::equal(kFixedColumns.begin(), kFixedColumns.end(), header.begin())) {
    throw ModelError("report CSV has an unexpected header");
  }
  ExperimentReport rep;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ModelError("report CSV row has the wrong number of fields");
    rep.kind = f[0];
    RunRecord r;
    r.instance = f[1];
    r.label = f[2];
    r.seed = std::stoull(f[3]);
    r.scenarios = std::stoi(f[4]);
    r.profit = parse_double(f[5]);
    r.reference = parse_double(f[6]);
    r.gap_percent = parse_double(f[7]);
    r.coverage_percent = parse_double(f[8]);
    r.wall_ms = parse_double(f[9]);
    for (std::size_t k = kFixedColumns.size(); k < f.size(); ++k)
      if (!f[k].empty()) r.metrics[header[k]] = parse_double(f[k]);
    if (std::find(rep.instances.begin(), rep.instances.end(), r.instance) == rep.instances.end())
      rep.instances.push_back(r.instance);
    rep.records.push_back(std::move(r));
  }
  return rep;
}

}  // namespace slotwise
