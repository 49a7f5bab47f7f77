// Copyright 2026 The Consilience Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "consilience/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "consilience/critical.hpp"

namespace consilience {

using nlohmann::json;

double PlotFrame::px(double x) const {
  const double a = log_x ? std::log10(x_lo) : x_lo;
  const double b = log_x ? std::log10(x_hi) : x_hi;
  const double v = log_x ? std::log10(x) : x;
  return left + (v - a) / (b - a) * (width - left - right);
}

double PlotFrame::py(double y) const {
  return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom);
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void open_svg(std::ostringstream& os, const PlotFrame& f, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.width)
     << "\" height=\"" << num(f.height) << "\" viewBox=\"0 0 " << num(f.width)
     << ' ' << num(f.height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(f.width / 2) << "\" y=\"18\" text-anchor=\"middle\">"
     << escape(title) << "</text>\n";
  os << "<rect id=\"frame\" x=\"" << num(f.left) << "\" y=\"" << num(f.top)
     << "\" width=\"" << num(f.width - f.left - f.right) << "\" height=\""
     << num(f.height - f.top - f.bottom)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void axis_labels(std::ostringstream& os, const PlotFrame& f,
                 const std::string& xlab, const std::string& ylab) {
  os << "<text x=\"" << num((f.left + f.width - f.right) / 2) << "\" y=\""
     << num(f.height - 12) << "\" text-anchor=\"middle\">" << escape(xlab)
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << num((f.top + f.height - f.bottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num((f.top + f.height - f.bottom) / 2) << ")\">" << escape(ylab)
     << "</text>\n";
}

void x_tick(std::ostringstream& os, const PlotFrame& f, double x) {
  const double p = f.px(x);
  const double base = f.height - f.bottom;
  os << "<path d=\"M" << num(p) << ' ' << num(base) << " L" << num(p) << ' '
     << num(base + 5) << "\" stroke=\"black\"/>";
  os << "<text x=\"" << num(p) << "\" y=\"" << num(base + 18)
     << "\" text-anchor=\"middle\">" << label(x) << "</text>\n";
}

void y_tick(std::ostringstream& os, const PlotFrame& f, double y) {
  const double p = f.py(y);
  os << "<path d=\"M" << num(f.left - 5) << ' ' << num(p) << " L" << num(f.left)
     << ' ' << num(p) << "\" stroke=\"black\"/>";
  os << "<text x=\"" << num(f.left - 8) << "\" y=\"" << num(p + 4)
     << "\" text-anchor=\"end\">" << label(y) << "</text>\n";
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::fabs(t) < 1e-12 * span ? 0.0 : t);
  }
  return ticks;
}

// Line y = a + b x clipped to the frame's x range.
void line_path(std::ostringstream& os, const PlotFrame& f, const char* id,
               double a, double b, const char* style) {
  os << "<path id=\"" << id << "\" d=\"M" << num(f.px(f.x_lo)) << ' '
     << num(f.py(a + b * f.x_lo)) << " L" << num(f.px(f.x_hi)) << ' '
     << num(f.py(a + b * f.x_hi)) << "\" " << style << "/>\n";
}

}  // namespace

std::string scatter_svg(const json& series) {
  const auto obs = series.at("yobs").get<std::vector<double>>();
  const auto mod = series.at("ymod").get<std::vector<double>>();
  double lo = obs.front(), hi = obs.front();
  for (const auto* v : {&obs, &mod}) {
    for (double x : *v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  const double margin = hi > lo ? 0.05 * (hi - lo) : 1.0;
  PlotFrame f;
  f.width = f.height = 520.0;
  f.x_lo = f.y_lo = lo - margin;
  f.x_hi = f.y_hi = hi + margin;

  std::ostringstream os;
  const auto name = series.at("name").get<std::string>();
  open_svg(os, f, name + ": C = " + label(series.at("c").get<double>()));
  for (double t : linear_ticks(f.x_lo, f.x_hi)) {
    x_tick(os, f, t);
    y_tick(os, f, t);
  }
  // Clip lines to the frame.
  os << "<clipPath id=\"plot-area\"><rect x=\"" << num(f.left) << "\" y=\""
     << num(f.top) << "\" width=\"" << num(f.width - f.left - f.right)
     << "\" height=\"" << num(f.height - f.top - f.bottom) << "\"/></clipPath>\n";
  os << "<g clip-path=\"url(#plot-area)\">\n";
  line_path(os, f, "identity-line", 0.0, 1.0,
            "stroke=\"gray\" stroke-dasharray=\"6 4\" fill=\"none\"");
  line_path(os, f, "projection-line", series.at("intercept").get<double>(),
            series.at("slope").get<double>(),
            "stroke=\"firebrick\" stroke-width=\"1.5\" fill=\"none\"");
  os << "</g>\n<g id=\"points\" fill=\"steelblue\">\n";
  for (std::size_t k = 0; k < obs.size(); ++k) {
    os << "<circle cx=\"" << num(f.px(obs[k])) << "\" cy=\"" << num(f.py(mod[k]))
       << "\" r=\"3.5\"/>\n";
  }
  os << "</g>\n";
  axis_labels(os, f, "Yobs", "Ymod");
  os << "</svg>\n";
  return os.str();
}

PlotFrame nomogram_frame(const json& report) {
  PlotFrame f;
  f.log_x = true;
  f.x_lo = 2.0;
  f.x_hi = 1000.0;
  f.y_lo = -0.2;
  f.y_hi = 1.0;
  auto include = [&](double m_effn, double c) {
    f.x_hi = std::max(f.x_hi, m_effn * 1.2);
    f.y_lo = std::min(f.y_lo, std::floor(c * 5.0) / 5.0);
  };
  if (!report.is_null()) {
    for (const auto& s : report.at("series")) {
      include(s.at("assessment").at("m_effn").get<double>(), s.at("c").get<double>());
    }
    if (report.at("series").size() > 1) {
      include(report.at("joint").at("assessment").at("m_effn").get<double>(),
              report.at("joint").at("joint_c").get<double>());
    }
  }
  return f;
}

std::string nomogram_svg(const json& report) {
  const PlotFrame f = nomogram_frame(report);
  std::ostringstream os;
  open_svg(os, f, "Critical C vs. M*effN");
  for (double t : {2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0,
                   2000.0, 5000.0, 10000.0}) {
    if (t >= f.x_lo && t <= f.x_hi) x_tick(os, f, t);
  }
  for (double t : linear_ticks(f.y_lo, f.y_hi)) y_tick(os, f, t);

  static const char* kColors[] = {"#d7191c", "#fdae61", "#2b83ba", "#abdda4",
                                  "#5e3c99"};
  const auto rows = nomogram(f.x_lo, f.x_hi, 240);
  for (std::size_t l = 0; l < kCriticalLevels.size(); ++l) {
    os << "<path id=\"isopleth-" << label(kCriticalLevels[l].alpha) << "\" d=\"";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      os << (k == 0 ? "M" : " L") << num(f.px(rows[k].m_effn)) << ' '
         << num(f.py(rows[k].critical[l]));
    }
    os << "\" fill=\"none\" stroke=\"" << kColors[l] << "\" stroke-width=\"1.5\"/>\n";
    const auto& last = rows.back();
    os << "<text x=\"" << num(f.px(last.m_effn) - 4) << "\" y=\""
       << num(f.py(last.critical[l]) - 4) << "\" text-anchor=\"end\" fill=\""
       << kColors[l] << "\">alpha=" << label(kCriticalLevels[l].alpha)
       << "</text>\n";
  }

  if (!report.is_null()) {
    os << "<g id=\"points\">\n";
    auto point = [&](const std::string& name, double m_effn, double c,
                     const char* fill) {
      os << "<circle data-name=\"" << escape(name) << "\" data-m-effn=\""
         << label(m_effn) << "\" data-c=\"" << label(c) << "\" cx=\""
         << num(f.px(m_effn)) << "\" cy=\"" << num(f.py(c))
         << "\" r=\"4\" fill=\"" << fill << "\"/>\n";
    };
    for (const auto& s : report.at("series")) {
      point(s.at("name").get<std::string>(),
            s.at("assessment").at("m_effn").get<double>(), s.at("c").get<double>(),
            "black");
    }
    if (report.at("series").size() > 1) {
      point("joint", report.at("joint").at("assessment").at("m_effn").get<double>(),
            report.at("joint").at("joint_c").get<double>(), "gold");
    }
    os << "</g>\n";
  }
  axis_labels(os, f, "M*effN (log scale)", "critical C");
  os << "</svg>\n";
  return os.str();
}

}  // namespace consilience
