#include "uamfleet/harness/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include "uamfleet/csv.hpp"
#include "uamfleet/harness/report.hpp"

namespace uam::harness {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string F(double v) { return csv::FormatFixed(v, 2); }

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;

  static Axis Of(double lo, double hi) {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
  }
  double Y(double v) const { return kTop + (kHeight - kTop - kBottom) * (1.0 - (v - lo) / (hi - lo)); }
  double X(double v) const { return kLeft + (kWidth - kLeft - kRight) * (v - lo) / (hi - lo); }
};

std::string Open(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + F(kWidth) + "\" height=\"" + F(kHeight) +
         "\" viewBox=\"0 0 " + F(kWidth) + " " + F(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<text x=\"" + F(kWidth / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + Escape(title) + "</text>\n";
}

std::string Line(double x1, double y1, double x2, double y2, const std::string& color, double width = 1.0) {
  return "<line x1=\"" + F(x1) + "\" y1=\"" + F(y1) + "\" x2=\"" + F(x2) + "\" y2=\"" + F(y2) + "\" stroke=\"" +
         color + "\" stroke-width=\"" + F(width) + "\"/>\n";
}

std::string Text(double x, double y, const std::string& text, const char* anchor, const std::string& extra = "") {
  return "<text x=\"" + F(x) + "\" y=\"" + F(y) + "\" text-anchor=\"" + anchor + "\"" + extra + ">" + Escape(text) +
         "</text>\n";
}

std::string YAxis(const Axis& axis, const std::string& label) {
  std::string out = Line(kLeft, kTop, kLeft, kHeight - kBottom, "black");
  for (int n = 0; n <= 4; ++n) {
    const double v = axis.lo + (axis.hi - axis.lo) * n / 4.0;
    const double y = axis.Y(v);
    out += Line(kLeft - 4, y, kLeft, y, "black");
    out += Text(kLeft - 6, y + 4, F(v), "end");
  }
  const double mid = (kTop + kHeight - kBottom) / 2;
  out += Text(18, mid, label, "middle", " transform=\"rotate(-90 18 " + F(mid) + ")\"");
  return out;
}

}  // namespace

std::string BoxPlotSvg(const std::string& title, const std::string& y_label, const std::vector<BoxGroup>& groups) {
  std::vector<const BoxGroup*> used;
  double lo = 0.0, hi = 0.0;
  for (const auto& g : groups) {
    if (g.values.empty()) continue;
    const auto [mn, mx] = std::minmax_element(g.values.begin(), g.values.end());
    if (used.empty()) {
      lo = *mn;
      hi = *mx;
    }
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
    used.push_back(&g);
  }
  const Axis axis = Axis::Of(lo, hi);
  std::string out = Open(title) + YAxis(axis, y_label);
  out += Line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom, "black");
  const double slot = (kWidth - kLeft - kRight) / static_cast<double>(std::max<std::size_t>(used.size(), 1));
  for (std::size_t n = 0; n < used.size(); ++n) {
    const auto& v = used[n]->values;
    const double cx = kLeft + slot * (static_cast<double>(n) + 0.5);
    const double half = std::min(30.0, slot * 0.3);
    const double q1 = Quantile(v, 0.25), q2 = Quantile(v, 0.5), q3 = Quantile(v, 0.75);
    const double mn = Quantile(v, 0.0), mx = Quantile(v, 1.0);
    const std::string color = kColors[n % std::size(kColors)];
    out += Line(cx, axis.Y(mn), cx, axis.Y(q1), color);
    out += Line(cx, axis.Y(q3), cx, axis.Y(mx), color);
    out += Line(cx - half / 2, axis.Y(mn), cx + half / 2, axis.Y(mn), color);
    out += Line(cx - half / 2, axis.Y(mx), cx + half / 2, axis.Y(mx), color);
    out += "<rect x=\"" + F(cx - half) + "\" y=\"" + F(axis.Y(q3)) + "\" width=\"" + F(2 * half) + "\" height=\"" +
           F(axis.Y(q1) - axis.Y(q3)) + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
    out += Line(cx - half, axis.Y(q2), cx + half, axis.Y(q2), color, 2.0);
    out += Text(cx, kHeight - kBottom + 18, used[n]->label, "middle");
  }
  out += "</svg>\n";
  return out;
}

std::string LinePlotSvg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<LineSeries>& series) {
  bool first = true;
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (first) {
        xlo = xhi = x;
        ylo = yhi = y;
        first = false;
      }
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  const Axis xa = Axis::Of(xlo, xhi);
  const Axis ya = Axis::Of(ylo, yhi);
  std::string out = Open(title) + YAxis(ya, y_label);
  out += Line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom, "black");
  for (int n = 0; n <= 4; ++n) {
    const double v = xa.lo + (xa.hi - xa.lo) * n / 4.0;
    out += Line(xa.X(v), kHeight - kBottom, xa.X(v), kHeight - kBottom + 4, "black");
    out += Text(xa.X(v), kHeight - kBottom + 16, F(v), "middle");
  }
  out += Text((kLeft + kWidth - kRight) / 2, kHeight - 18, x_label, "middle");
  for (std::size_t n = 0; n < series.size(); ++n) {
    const std::string color = kColors[n % std::size(kColors)];
    std::string pts;
    for (const auto& [x, y] : series[n].points) {
      if (!pts.empty()) pts += ' ';
      pts += F(xa.X(x)) + ',' + F(ya.Y(y));
    }
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    for (const auto& [x, y] : series[n].points) {
      out += "<circle cx=\"" + F(xa.X(x)) + "\" cy=\"" + F(ya.Y(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    const double ly = kTop + 14.0 * static_cast<double>(n);
    out += Line(kWidth - kRight - 130, ly, kWidth - kRight - 110, ly, color, 2.0);
    out += Text(kWidth - kRight - 105, ly + 4, series[n].name, "start");
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::string> EmitPlots(const AggregateReport& report, const std::string& dir, std::ostream& warn) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& svg) {
    fs::create_directories(dir);
    const std::string path = (fs::path(dir) / name).string();
    csv::WriteFile(path, svg);
    written.push_back(path);
  };
  std::vector<BoxGroup> passengers, fleets;
  for (std::size_t s = 0; s < report.scenarios.size(); ++s) {
    BoxGroup p{report.scenarios[s].Label(), {}}, f{report.scenarios[s].Label(), {}};
    for (const auto& row : report.rows) {
      if (row.scenario != s) continue;
      p.values.push_back(static_cast<double>(row.realized_passengers));
      if (row.fleet_size >= 0) f.values.push_back(static_cast<double>(row.fleet_size));
    }
    if (p.values.empty()) warn << "warning: scenario " << p.label << " has no profiles; not plotted\n";
    passengers.push_back(std::move(p));
    fleets.push_back(std::move(f));
  }
  auto any = [](const std::vector<BoxGroup>& g) {
    return std::any_of(g.begin(), g.end(), [](const BoxGroup& b) { return !b.values.empty(); });
  };
  if (any(passengers)) {
    write("passengers.svg", BoxPlotSvg("Daily realized passengers", "passengers", passengers));
  } else {
    warn << "warning: report has no profiles; no plots written\n";
    return written;
  }
  if (any(fleets)) {
    write("fleet_size.svg", BoxPlotSvg("Zero-spill fleet size", "aircraft", fleets));
  } else {
    warn << "warning: no fleet sizes in report; fleet_size.svg skipped\n";
  }

  const auto spill = SummarizeSpill(report);
  for (const auto& sc : report.scenarios) {
    const std::string label = sc.Label();
    LineSeries mean{"optimal", {}}, lower{"lower bound", {}}, upper{"upper bound", {}};
    for (const auto& s : spill) {
      if (s.label != label) continue;
      const double f = s.fleet_size;
      mean.points.emplace_back(f, s.mean_spill);
      if (s.mean_lower) lower.points.emplace_back(f, *s.mean_lower);
      if (s.mean_upper) upper.points.emplace_back(f, *s.mean_upper);
    }
    if (mean.points.empty()) {
      warn << "warning: scenario " << label << " has no spill results; spill plots skipped\n";
      continue;
    }
    std::vector<LineSeries> lines{mean};
    if (!lower.points.empty()) lines.push_back(lower);
    if (!upper.points.empty()) lines.push_back(upper);
    write("spill_" + label + ".svg", LinePlotSvg("Mean daily spill, " + label, "fleet size", "passengers", lines));

    std::map<int, BoxGroup> by_size;
    for (std::size_t s = 0; s < report.scenarios.size(); ++s) {
      if (report.scenarios[s].Label() != label) continue;
      for (const auto& row : report.rows) {
        if (row.scenario != s) continue;
        for (const auto& [f, cell] : row.spill) {
          if (cell.spill < 0) continue;
          auto& g = by_size[f];
          g.label = "F=" + std::to_string(f);
          g.values.push_back(static_cast<double>(cell.spill));
        }
      }
    }
    std::vector<BoxGroup> boxes;
    for (auto& [f, g] : by_size) boxes.push_back(std::move(g));
    write("spill_box_" + label + ".svg", BoxPlotSvg("Daily spill by fleet size, " + label, "passengers", boxes));
  }
  return written;
}

}  // namespace uam::harness
