#include "uamfleet/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"

namespace uam::harness {

namespace {

std::string Num(double v) { return csv::FormatFixed(v, 3); }
std::string Opt(const std::optional<double>& v) { return v ? Num(*v) : ""; }
std::string Count(long long v) { return v < 0 ? "" : std::to_string(v); }

std::string Clean(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

std::set<int> AllSizes(const AggregateReport& report) {
  std::set<int> sizes;
  for (const auto& row : report.rows)
    for (const auto& [f, cell] : row.spill) sizes.insert(f);
  return sizes;
}

long long ParseCount(std::string_view field, std::size_t line) {
  if (field.empty()) return -1;
  long long v = 0;
  if (!csv::ParseInt(field, v)) throw ParseError(line, "expected an integer, got '" + std::string(field) + "'");
  return v;
}

double ParseNumber(std::string_view field, std::size_t line) {
  if (field.empty()) return 0.0;
  double v = 0.0;
  if (!csv::ParseDouble(field, v)) throw ParseError(line, "expected a number, got '" + std::string(field) + "'");
  return v;
}

}  // namespace

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<ScenarioSummary> Summarize(const AggregateReport& report) {
  std::vector<ScenarioSummary> out;
  for (std::size_t s = 0; s < report.scenarios.size(); ++s) {
    ScenarioSummary sum;
    sum.label = report.scenarios[s].Label();
    sum.add = report.scenarios[s].add;
    sum.ar_coeff = report.scenarios[s].ar_coeff;
    std::vector<double> passengers;
    std::vector<double> fleets;
    for (const auto& row : report.rows) {
      if (row.scenario != s) continue;
      ++sum.profiles;
      if (row.failed()) ++sum.failures;
      passengers.push_back(static_cast<double>(row.realized_passengers));
      if (row.fleet_size >= 0) fleets.push_back(static_cast<double>(row.fleet_size));
    }
    if (!passengers.empty()) {
      sum.passengers_q1 = Quantile(passengers, 0.25);
      sum.passengers_median = Quantile(passengers, 0.5);
      sum.passengers_q3 = Quantile(passengers, 0.75);
    }
    if (!fleets.empty()) {
      sum.fleet_min = Quantile(fleets, 0.0);
      sum.fleet_q1 = Quantile(fleets, 0.25);
      sum.fleet_median = Quantile(fleets, 0.5);
      sum.fleet_q3 = Quantile(fleets, 0.75);
      sum.fleet_max = Quantile(fleets, 1.0);
    }
    out.push_back(sum);
  }
  return out;
}

std::vector<SpillSummary> SummarizeSpill(const AggregateReport& report) {
  std::vector<SpillSummary> out;
  for (std::size_t s = 0; s < report.scenarios.size(); ++s) {
    std::map<int, std::vector<const SpillCell*>> by_size;
    for (const auto& row : report.rows) {
      if (row.scenario != s) continue;
      for (const auto& [f, cell] : row.spill) {
        if (cell.spill >= 0) by_size[f].push_back(&cell);
      }
    }
    for (const auto& [f, cells] : by_size) {
      SpillSummary sum;
      sum.label = report.scenarios[s].Label();
      sum.fleet_size = f;
      sum.profiles = static_cast<int>(cells.size());
      double total = 0.0;
      for (const auto* c : cells) total += static_cast<double>(c->spill);
      sum.mean_spill = total / static_cast<double>(cells.size());
      if (cells.size() > 1) {
        double sq = 0.0;
        for (const auto* c : cells) sq += std::pow(static_cast<double>(c->spill) - sum.mean_spill, 2);
        sum.variance_spill = sq / static_cast<double>(cells.size() - 1);
      }
      double lower = 0.0, upper = 0.0;
      int bounded = 0;
      for (const auto* c : cells) {
        if (c->lower < 0 || c->upper < 0) continue;
        lower += static_cast<double>(c->lower);
        upper += static_cast<double>(c->upper);
        ++bounded;
      }
      if (bounded > 0) {
        sum.mean_lower = lower / bounded;
        sum.mean_upper = upper / bounded;
      }
      out.push_back(sum);
    }
  }
  return out;
}

std::string SerializeReport(const AggregateReport& report) {
  const auto sizes = AllSizes(report);
  std::string out =
      "day,scenario,add,ar_coeff,realized_passengers,demanded_flights,fleet_size,fleet_status,fleet_gap,violations";
  for (int f : sizes) out += ",spill_F" + std::to_string(f);
  out += ",error\n";
  for (const auto& row : report.rows) {
    const Scenario& sc = report.scenarios.at(row.scenario);
    out += row.day + ',' + sc.Label() + ',' + csv::FormatShortest(sc.add) + ',' + csv::FormatShortest(sc.ar_coeff) +
           ',' + std::to_string(row.realized_passengers) + ',' + std::to_string(row.demanded_flights) + ',' +
           Count(row.fleet_size) + ',' + row.fleet_status + ',' + csv::FormatFixed(row.fleet_gap, 6) + ',' +
           std::to_string(row.violations);
    for (int f : sizes) {
      auto it = row.spill.find(f);
      out += ',';
      if (it != row.spill.end()) out += Count(it->second.spill);
    }
    out += ',' + Clean(row.error) + '\n';
  }
  return out;
}

std::string SerializeSpillTable(const AggregateReport& report) {
  std::string out = "scenario,day,fleet_size,spill,status,gap,lower,upper,violations\n";
  for (const auto& row : report.rows) {
    const std::string label = report.scenarios.at(row.scenario).Label();
    for (const auto& [f, c] : row.spill) {
      out += label + ',' + row.day + ',' + std::to_string(f) + ',' + Count(c.spill) + ',' + c.status + ',' +
             csv::FormatFixed(c.gap, 6) + ',' + Count(c.lower) + ',' + Count(c.upper) + ',' +
             std::to_string(c.violations) + '\n';
    }
  }
  return out;
}

std::string SerializeSummary(const std::vector<ScenarioSummary>& summary) {
  std::string out =
      "scenario,add,ar_coeff,profiles,failures,passengers_q1,passengers_median,passengers_q3,"
      "fleet_min,fleet_q1,fleet_median,fleet_q3,fleet_max\n";
  for (const auto& s : summary) {
    out += s.label + ',' + csv::FormatShortest(s.add) + ',' + csv::FormatShortest(s.ar_coeff) + ',' +
           std::to_string(s.profiles) + ',' + std::to_string(s.failures) + ',' + Opt(s.passengers_q1) + ',' +
           Opt(s.passengers_median) + ',' + Opt(s.passengers_q3) + ',' + Opt(s.fleet_min) + ',' + Opt(s.fleet_q1) +
           ',' + Opt(s.fleet_median) + ',' + Opt(s.fleet_q3) + ',' + Opt(s.fleet_max) + '\n';
  }
  return out;
}

std::string SerializeSpillSummary(const std::vector<SpillSummary>& summary) {
  std::string out = "scenario,fleet_size,profiles,mean_spill,variance_spill,mean_lower,mean_upper\n";
  for (const auto& s : summary) {
    out += s.label + ',' + std::to_string(s.fleet_size) + ',' + std::to_string(s.profiles) + ',' +
           Num(s.mean_spill) + ',' + Num(s.variance_spill) + ',' + Opt(s.mean_lower) + ',' + Opt(s.mean_upper) + '\n';
  }
  return out;
}

AggregateReport ParseReport(std::string_view report_csv, std::string_view spill_csv) {
  AggregateReport report;
  std::map<std::string, std::size_t> scenario_index;
  std::map<std::pair<std::string, std::string>, std::size_t> row_index;
  const auto lines = csv::SplitLines(report_csv);
  if (lines.empty() || !lines[0].starts_with("day,scenario,add,ar_coeff,realized_passengers")) {
    throw ParseError(1, "not a report.csv header");
  }
  const std::size_t columns = csv::SplitFields(lines[0]).size();
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const auto f = csv::SplitFields(lines[n]);
    if (f.size() != columns) throw ParseError(n + 1, "expected " + std::to_string(columns) + " fields");
    const std::string label(f[1]);
    auto it = scenario_index.find(label);
    if (it == scenario_index.end()) {
      Scenario sc{ParseNumber(f[2], n + 1), ParseNumber(f[3], n + 1), {}};
      it = scenario_index.emplace(label, report.scenarios.size()).first;
      report.scenarios.push_back(sc);
    }
    ProfileRow row;
    row.day = std::string(f[0]);
    row.scenario = it->second;
    row.realized_passengers = ParseCount(f[4], n + 1);
    row.demanded_flights = ParseCount(f[5], n + 1);
    row.fleet_size = ParseCount(f[6], n + 1);
    row.fleet_status = std::string(f[7]);
    row.fleet_gap = ParseNumber(f[8], n + 1);
    row.violations = static_cast<int>(ParseCount(f[9], n + 1));
    row.error = std::string(f.back());
    row_index[{label, row.day}] = report.rows.size();
    report.rows.push_back(std::move(row));
  }
  const auto spill_lines = csv::SplitLines(spill_csv);
  if (spill_lines.empty() || spill_lines[0] != "scenario,day,fleet_size,spill,status,gap,lower,upper,violations") {
    throw ParseError(1, "not a spill.csv header");
  }
  for (std::size_t n = 1; n < spill_lines.size(); ++n) {
    if (spill_lines[n].empty()) continue;
    const auto f = csv::SplitFields(spill_lines[n]);
    if (f.size() != 9) throw ParseError(n + 1, "expected 9 fields");
    auto it = row_index.find({std::string(f[0]), std::string(f[1])});
    if (it == row_index.end()) throw ParseError(n + 1, "row has no matching report.csv entry");
    SpillCell cell;
    cell.spill = ParseCount(f[3], n + 1);
    cell.status = std::string(f[4]);
    cell.gap = ParseNumber(f[5], n + 1);
    cell.lower = ParseCount(f[6], n + 1);
    cell.upper = ParseCount(f[7], n + 1);
    cell.violations = static_cast<int>(ParseCount(f[8], n + 1));
    report.rows[it->second].spill[static_cast<int>(ParseCount(f[2], n + 1))] = cell;
  }
  return report;
}

std::vector<std::string> WriteReport(const AggregateReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"report.csv", SerializeReport(report)},
      {"spill.csv", SerializeSpillTable(report)},
      {"summary.csv", SerializeSummary(Summarize(report))},
      {"spill_summary.csv", SerializeSpillSummary(SummarizeSpill(report))},
  };
  std::vector<std::string> written;
  for (const auto& [name, text] : files) {
    const std::string path = (fs::path(dir) / name).string();
    csv::WriteFile(path, text);
    written.push_back(path);
  }
  return written;
}

}  // namespace uam::harness
