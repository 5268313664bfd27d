#include "qseries/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qseries {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_quaternion(const Quaternion& q) {
  return "[" + format_double(q.w) + ", " + format_double(q.x) + ", " +
         format_double(q.y) + ", " + format_double(q.z) + "]";
}

namespace {

json quaternion_to_json(const Quaternion& q) {
  return json::array({q.w, q.x, q.y, q.z});
}

Quaternion quaternion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument(
        "quaternion must be a 4-array [w, x, y, z] of numbers");
  }
  for (const auto& c : j) {
    if (!c.is_number()) {
      throw std::invalid_argument("quaternion components must be numbers");
    }
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

}  // namespace

std::string series_to_json(const RegularSeries& f) {
  json j;
  j["center"] = quaternion_to_json(f.center());
  if (f.declared_radius() && std::isfinite(*f.declared_radius())) {
    j["radius"] = *f.declared_radius();
  } else {
    j["radius"] = nullptr;
  }
  json coeffs = json::array();
  for (const Quaternion& a : f.coeffs()) coeffs.push_back(quaternion_to_json(a));
  j["coeffs"] = std::move(coeffs);
  return j.dump(2) + "\n";
}

RegularSeries series_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("series JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("center") || !j.contains("coeffs")) {
    throw std::invalid_argument(
        "series JSON must be an object with center and coeffs");
  }
  const Quaternion center = quaternion_from_json(j["center"]);
  std::optional<double> radius;
  if (j.contains("radius") && !j["radius"].is_null()) {
    if (!j["radius"].is_number()) {
      throw std::invalid_argument("series radius must be a number or null");
    }
    radius = j["radius"].get<double>();
  }
  if (!j["coeffs"].is_array()) {
    throw std::invalid_argument("series coeffs must be an array");
  }
  std::vector<Quaternion> coeffs;
  coeffs.reserve(j["coeffs"].size());
  for (const auto& c : j["coeffs"]) coeffs.push_back(quaternion_from_json(c));
  return {center, std::move(coeffs), radius};
}

RegularSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open series file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return series_from_json(buf.str());
}

void save_series(const RegularSeries& f, const std::string& path) {
  write_text_file(path, series_to_json(f));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

namespace {

const char* curve_name(CurveTag tag) {
  switch (tag) {
    case CurveTag::hyperbola_h:
      return "H";
    case CurveTag::hyperbola_k:
      return "K";
    case CurveTag::circle:
      return "circle";
    case CurveTag::none:
      break;
  }
  return "none";
}

std::string format_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string region_to_csv(const RegionSample& sample) {
  std::string out = "x,y,curve,inside\n";
  for (const RegionPoint& pt : sample.points) {
    out += format_coord(pt.x);
    out += ',';
    out += format_coord(pt.y);
    out += ',';
    out += curve_name(pt.curve);
    out += ',';
    out += pt.inside ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string region_to_svg(const RegionSample& sample) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const RegionPoint& pt : sample.points) {
    if (first) {
      xmin = xmax = pt.x;
      ymin = ymax = pt.y;
      first = false;
    } else {
      xmin = std::min(xmin, pt.x);
      xmax = std::max(xmax, pt.x);
      ymin = std::min(ymin, pt.y);
      ymax = std::max(ymax, pt.y);
    }
  }
  const double w = 720.0, h = 480.0, pad = 24.0;
  const double sx = (w - 2 * pad) / std::max(xmax - xmin, 1e-12);
  const double sy = (h - 2 * pad) / std::max(ymax - ymin, 1e-12);
  auto X = [&](double x) { return pad + (x - xmin) * sx; };
  auto Y = [&](double y) { return h - pad - (y - ymin) * sy; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const RegionPoint& pt : sample.points) {
    if (pt.curve != CurveTag::none) continue;
    if (!pt.inside) continue;
    svg << "<rect x=\"" << format_coord(X(pt.x) - 1.4) << "\" y=\""
        << format_coord(Y(pt.y) - 1.4)
        << "\" width=\"2.8\" height=\"2.8\" fill=\"#9ecae1\"/>\n";
  }
  for (const RegionPoint& pt : sample.points) {
    const char* color = nullptr;
    switch (pt.curve) {
      case CurveTag::hyperbola_h:
        color = "#d62728";
        break;
      case CurveTag::hyperbola_k:
        color = "#2ca02c";
        break;
      case CurveTag::circle:
        color = "#555555";
        break;
      case CurveTag::none:
        break;
    }
    if (!color) continue;
    svg << "<circle cx=\"" << format_coord(X(pt.x)) << "\" cy=\""
        << format_coord(Y(pt.y))
        << "\" r=\"1.2\" fill=\"" << color << "\"/>\n";
  }
  svg << "<line x1=\"" << format_coord(X(xmin)) << "\" y1=\""
      << format_coord(Y(0.0)) << "\" x2=\"" << format_coord(X(xmax))
      << "\" y2=\"" << format_coord(Y(0.0))
      << "\" stroke=\"#000\" stroke-width=\"0.6\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qseries
