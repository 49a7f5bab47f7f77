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

#ifndef CONSILIENCE_SVG_HPP_
#define CONSILIENCE_SVG_HPP_

#include <string>

#include "json.hpp"

namespace consilience {

// Plot geometry shared by the SVG writers. Both axes map data to pixel
// coordinates inside a fixed frame; the nomogram x axis is log10.
struct PlotFrame {
  double width = 640.0;
  double height = 480.0;
  double left = 70.0;
  double right = 20.0;
  double top = 30.0;
  double bottom = 55.0;
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
  bool log_x = false;

  double px(double x) const;
  double py(double y) const;
};

// Frame the nomogram uses for a given report (or for no points at all).
PlotFrame nomogram_frame(const nlohmann::json& report);

// Scatter of ymod against yobs with the identity and projection lines,
// for one entry of report["series"].
std::string scatter_svg(const nlohmann::json& series);

// Critical-C isopleths against M*effN with the report's series C values
// (at N) and joint C (at M*effN) overlaid. Pass a null json for the bare
// chart.
std::string nomogram_svg(const nlohmann::json& report);

}  // namespace consilience

#endif  // CONSILIENCE_SVG_HPP_
