#include "aspmtqs/cli/svg.hpp"

#include "aspmtqs/error.hpp"
#include "aspmtqs/spatial/shape.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

namespace aspmtqs::cli {

namespace {

struct Drawn {
  std::string name;
  spatial::Shape shape;
  std::vector<double> v;
  bool approximate = false;
};

std::string num(double d) {
  if (d == 0) d = 0;  // no "-0"
  std::ostringstream s;
  s << std::setprecision(6) << d;
  return s.str();
}

}  // namespace

std::string render_svg(const Program& program, const smt::Model& model, const std::vector<Term>& extras) {
  std::vector<Drawn> shapes;
  for (const auto& obj : program.objects) {
    auto shape = program.shape_of(obj.name);
    if (!shape) continue;
    Drawn d{obj.name, *shape, {}, false};
    bool complete = true;
    for (const auto& p : spatial::parameter_names(*shape)) {
      std::vector<Term> args = {Term::object(obj.name)};
      args.insert(args.end(), extras.begin(), extras.end());
      auto it = model.reals.find(instance_key(Term::apply(p, args)));
      if (it == model.reals.end()) {
        complete = false;
        break;
      }
      d.v.push_back(it->second.value.get_d());
      d.approximate = d.approximate || it->second.approximate;
    }
    if (!complete) continue;
    if (shape->kind == spatial::GeomKind::Interval)
      throw SpatialError("object '" + obj.name + "' has unsupported sort interval for drawing");
    shapes.push_back(std::move(d));
  }
  if (shapes.empty()) {
    std::string with;
    for (const auto& e : extras) with += (with.empty() ? "" : ", ") + to_string(e);
    throw Error("no model" + (with.empty() ? std::string() : " values for extra arguments (" + with + ")"));
  }

  double inf = std::numeric_limits<double>::infinity();
  double x0 = inf, y0 = inf, x1 = -inf, y1 = -inf;
  auto extend = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, -y);
    y1 = std::max(y1, -y);
  };
  for (const auto& s : shapes) {
    const auto& v = s.v;
    switch (s.shape.kind) {
      case spatial::GeomKind::Circle:
        extend(v[0] - v[2], v[1] - v[2]);
        extend(v[0] + v[2], v[1] + v[2]);
        break;
      case spatial::GeomKind::Rectangle:
        extend(v[0], v[2]);
        extend(v[1], v[3]);
        break;
      default:
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) extend(v[i], v[i + 1]);
    }
  }
  double size = std::max(x1 - x0, y1 - y0);
  if (size <= 0) size = 1;
  double margin = 0.1 * size;
  double font = 0.04 * size;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(x0 - margin) << " "
      << num(y0 - margin) << " " << num(x1 - x0 + 2 * margin) << " " << num(y1 - y0 + 2 * margin) << "\">\n";
  double stroke = 0.005 * size;
  for (const auto& s : shapes) {
    const auto& v = s.v;
    std::string style = "fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"";
    if (s.approximate) style += " stroke-dasharray=\"" + num(4 * stroke) + "," + num(2 * stroke) + "\"";
    double lx = 0, ly = 0;
    out << "  <g id=\"" << s.name << "\">\n    ";
    switch (s.shape.kind) {
      case spatial::GeomKind::Point:
        out << "<circle cx=\"" << num(v[0]) << "\" cy=\"" << num(-v[1]) << "\" r=\"" << num(2 * stroke)
            << "\" fill=\"black\"/>";
        lx = v[0];
        ly = v[1];
        break;
      case spatial::GeomKind::Segment:
        out << "<line x1=\"" << num(v[0]) << "\" y1=\"" << num(-v[1]) << "\" x2=\"" << num(v[2]) << "\" y2=\""
            << num(-v[3]) << "\" " << style << "/>";
        lx = (v[0] + v[2]) / 2;
        ly = (v[1] + v[3]) / 2;
        break;
      case spatial::GeomKind::Circle:
        out << "<circle cx=\"" << num(v[0]) << "\" cy=\"" << num(-v[1]) << "\" r=\"" << num(v[2]) << "\" "
            << style << "/>";
        lx = v[0];
        ly = v[1];
        break;
      case spatial::GeomKind::Rectangle:
        out << "<rect x=\"" << num(v[0]) << "\" y=\"" << num(-v[3]) << "\" width=\"" << num(v[1] - v[0])
            << "\" height=\"" << num(v[3] - v[2]) << "\" " << style << "/>";
        lx = (v[0] + v[1]) / 2;
        ly = (v[2] + v[3]) / 2;
        break;
      case spatial::GeomKind::Polygon: {
        out << "<polygon points=\"";
        std::size_t n = v.size() / 2;
        for (std::size_t i = 0; i < n; ++i) {
          out << (i ? " " : "") << num(v[2 * i]) << "," << num(-v[2 * i + 1]);
          lx += v[2 * i] / static_cast<double>(n);
          ly += v[2 * i + 1] / static_cast<double>(n);
        }
        out << "\" " << style << "/>";
        break;
      }
      case spatial::GeomKind::Interval:
        break;
    }
    out << "\n    <text x=\"" << num(lx) << "\" y=\"" << num(-ly) << "\" font-size=\"" << num(font)
        << "\" text-anchor=\"middle\">" << s.name << "</text>\n  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace aspmtqs::cli
