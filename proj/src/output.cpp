#include "nonoverlap/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "nonoverlap/error.hpp"

namespace nov {

namespace {

using json = nlohmann::ordered_json;

constexpr double kWidth = 800.0;
constexpr double kHeight = 800.0;
constexpr int kTicks = 5;

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const TraceResult& trace) {
  std::string out = "alpha,re_I,im_I,re_w1,im_w1,re_w2,im_w2,A,B,residual_norm\n";
  for (const auto& p : trace.points) {
    const double row[] = {p.alpha,      p.I0.real(), p.I0.imag(), p.w1.real(), p.w1.imag(),
                          p.w2.real(), p.w2.imag(), p.A,         p.B,         p.residual_norm};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string trace_json(const TraceResult& trace) {
  json points = json::array();
  for (const auto& p : trace.points) {
    points.push_back({{"alpha", p.alpha},
                      {"normal_angle", p.normal_angle},
                      {"I", cjson(p.I0)},
                      {"w1", cjson(p.w1)},
                      {"w2", cjson(p.w2)},
                      {"A", p.A},
                      {"B", p.B},
                      {"residual_norm", p.residual_norm},
                      {"branch_log", p.branch_log}});
  }
  json failures = json::array();
  for (const auto& f : trace.failures) failures.push_back({{"alpha", f.alpha}, {"reason", f.reason}});
  json doc = {{"config",
               {{"functional", trace.functional}, {"r", trace.config.r}, {"rho", trace.config.rho},
                {"alpha_steps", trace.steps}}},
              {"closed", trace.closed},
              {"closure_defect", std::isfinite(trace.closure_defect) ? json(trace.closure_defect) : json(nullptr)},
              {"diameter", trace.diameter},
              {"points", points},
              {"failures", failures}};
  return doc.dump(2) + "\n";
}

std::string cloud_csv(const std::vector<CloudPoint>& cloud) {
  std::string out = "re_I,im_I,R,theta1,theta2,re_a,im_a\n";
  for (const auto& c : cloud) {
    const double row[] = {c.I.real(),      c.I.imag(),      c.pair.R,        c.pair.theta1,
                          c.pair.theta2,   c.pair.a.real(), c.pair.a.imag()};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const TraceResult& trace, const std::vector<CloudPoint>* cloud) {
  if (trace.points.empty()) throw Error(ErrorCode::Config, "cannot plot an empty trace");
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  auto extend = [&](cplx z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const auto& p : trace.points) extend(p.I0);
  if (cloud)
    for (const auto& c : *cloud) extend(c.I);
  double dx = xmax - xmin, dy = ymax - ymin;
  if (dx <= 0.0) dx = std::max(std::abs(xmin), 1.0);
  if (dy <= 0.0) dy = std::max(std::abs(ymin), 1.0);
  xmin -= 0.1 * dx;
  xmax += 0.1 * dx;
  ymin -= 0.1 * dy;
  ymax += 0.1 * dy;
  // Equal scale on both axes, centred.
  const double scale = std::min(kWidth / (xmax - xmin), kHeight / (ymax - ymin));
  const double ox = 0.5 * (kWidth - scale * (xmax - xmin));
  const double oy = 0.5 * (kHeight - scale * (ymax - ymin));
  auto sx = [&](double x) { return ox + scale * (x - xmin); };
  auto sy = [&](double y) { return kHeight - oy - scale * (y - ymin); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
       "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"white\"/>\n";

  // Axes through the origin when visible, otherwise along the plot edges.
  const double ax_y = (ymin <= 0.0 && 0.0 <= ymax) ? 0.0 : ymin;
  const double ax_x = (xmin <= 0.0 && 0.0 <= xmax) ? 0.0 : xmin;
  s += "<g stroke=\"#888888\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + px(sx(xmin)) + "\" y1=\"" + px(sy(ax_y)) + "\" x2=\"" + px(sx(xmax)) + "\" y2=\"" +
       px(sy(ax_y)) + "\"/>\n";
  s += "<line x1=\"" + px(sx(ax_x)) + "\" y1=\"" + px(sy(ymin)) + "\" x2=\"" + px(sx(ax_x)) + "\" y2=\"" +
       px(sy(ymax)) + "\"/>\n";
  s += "</g>\n<g font-family=\"monospace\" font-size=\"11\" fill=\"#444444\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double x = xmin + (xmax - xmin) * i / kTicks;
    const double y = ymin + (ymax - ymin) * i / kTicks;
    s += "<line x1=\"" + px(sx(x)) + "\" y1=\"" + px(sy(ax_y) - 4) + "\" x2=\"" + px(sx(x)) + "\" y2=\"" +
         px(sy(ax_y) + 4) + "\" stroke=\"#888888\"/>\n";
    s += "<text x=\"" + px(sx(x)) + "\" y=\"" + px(sy(ax_y) + 16) + "\" text-anchor=\"middle\">" +
         short_number(x) + "</text>\n";
    s += "<line x1=\"" + px(sx(ax_x) - 4) + "\" y1=\"" + px(sy(y)) + "\" x2=\"" + px(sx(ax_x) + 4) + "\" y2=\"" +
         px(sy(y)) + "\" stroke=\"#888888\"/>\n";
    s += "<text x=\"" + px(sx(ax_x) + 6) + "\" y=\"" + px(sy(y) - 3) + "\">" + short_number(y) + "</text>\n";
  }
  s += "<text x=\"" + px(kWidth - 40) + "\" y=\"" + px(sy(ax_y) - 8) + "\">Re I</text>\n";
  s += "<text x=\"" + px(sx(ax_x) + 8) + "\" y=\"20\">Im I</text>\n";
  s += "</g>\n";

  if (cloud && !cloud->empty()) {
    s += "<g fill=\"#3070b0\" fill-opacity=\"0.5\">\n";
    for (const auto& c : *cloud)
      s += "<circle cx=\"" + px(sx(c.I.real())) + "\" cy=\"" + px(sy(c.I.imag())) + "\" r=\"1.2\"/>\n";
    s += "</g>\n";
  }

  s += "<polyline fill=\"none\" stroke=\"#c03020\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    if (i) s += ' ';
    s += px(sx(trace.points[i].I0.real())) + "," + px(sy(trace.points[i].I0.imag()));
  }
  s += "\"/>\n";
  if (trace.closed && trace.points.size() > 1) {
    const cplx a = trace.points.back().I0, b = trace.points.front().I0;
    s += "<line x1=\"" + px(sx(a.real())) + "\" y1=\"" + px(sy(a.imag())) + "\" x2=\"" + px(sx(b.real())) +
         "\" y2=\"" + px(sy(b.imag())) + "\" stroke=\"#c03020\" stroke-width=\"1.5\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace nov
