#pragma once

#include "sweep.hpp"

namespace vlcsec {

// Static SVG: one polyline per method with markers and error bars, labeled
// axes, legend. Throws on an empty table.
std::string svg_string(const CurveTable& table);
void render_plot(const CurveTable& table, const std::string& path);

}  // namespace vlcsec
