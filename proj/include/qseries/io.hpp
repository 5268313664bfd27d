#pragma once

#include <string>

#include "qseries/quaternion.hpp"
#include "qseries/series.hpp"
#include "qseries/sigma.hpp"

namespace qseries {

/// Formats v with %.17g so that parsing the text reproduces the double
/// bit-exactly.
std::string format_double(double v);

/// "[w, x, y, z]"
std::string format_quaternion(const Quaternion& q);

/// Series JSON: {"center":[w,x,y,z],"radius":R|null,"coeffs":[[w,x,y,z],...]}
/// Coefficients index from n = 0; numbers may be integers or floating
/// literals. A non-finite declared radius is stored as null.
std::string series_to_json(const RegularSeries& f);
RegularSeries series_from_json(const std::string& text);

RegularSeries load_series(const std::string& path);
void save_series(const RegularSeries& f, const std::string& path);

/// CSV with header x,y,curve,inside; curve is one of H, K, circle, none.
std::string region_to_csv(const RegionSample& sample);

/// Optional SVG rendering of the (Re, |Im|) half-plane cross-section.
std::string region_to_svg(const RegionSample& sample);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qseries
