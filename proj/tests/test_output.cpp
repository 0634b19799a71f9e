#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <regex>
#include <sstream>

#include "nonoverlap/output.hpp"
#include "support.hpp"

using namespace nov;
using nov::test::error_of;

namespace {

const TraceResult& small_trace() {
  static const TraceResult t =
      trace_curve(parse_functional("w1/w3"), "w1/w3", ProblemConfig{}, TraceOptions{.steps = 24});
  return t;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("seventeen significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.0) == "-2");
  for (double v : {1.0 / 3.0, 2.0e-300, -7.125e12}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("trace CSV") {
  const TraceResult& t = small_trace();
  const auto rows = lines(trace_csv(t));
  REQUIRE(rows.size() == t.points.size() + 1);
  CHECK(rows[0] == "alpha,re_I,im_I,re_w1,im_w1,re_w2,im_w2,A,B,residual_norm");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream in(rows[i]);
    std::vector<double> v;
    for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 10);
    const BoundaryPoint& p = t.points[i - 1];
    CHECK(v[0] == p.alpha);
    CHECK(v[1] == p.I0.real());
    CHECK(v[2] == p.I0.imag());
    CHECK(v[7] == p.A);
    // round trip: I0 is w1 / w2 recomputed from the printed coordinates
    CHECK(std::abs(cplx{v[3], v[4]} / cplx{v[5], v[6]} - cplx{v[1], v[2]}) <= 1e-15);
  }
}

TEST_CASE("trace JSON echoes the configuration") {
  const TraceResult& t = small_trace();
  const auto j = nlohmann::json::parse(trace_json(t));
  CHECK(j.at("config").at("functional") == "w1/w3");
  CHECK(j.at("config").at("r") == 0.5);
  CHECK(j.at("config").at("rho") == 2.0);
  CHECK(j.at("closed") == true);
  CHECK(j.at("points").size() == t.points.size());
  CHECK(j.at("failures").empty());
}

TEST_CASE("cloud CSV") {
  const auto cloud = sample_cloud(parse_functional("w1/w3"), {}, 5, 3);
  const auto rows = lines(cloud_csv(cloud));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "re_I,im_I,R,theta1,theta2,re_a,im_a");
}

TEST_CASE("SVG without a cloud") {
  const std::string svg = render_svg(small_trace());
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<svg") == 1);
  CHECK(count(svg, "</svg>") == 1);
  CHECK(count(svg, "<polyline") == 1);
  CHECK(count(svg, "<circle") == 0);
  // polyline vertex count equals accepted points
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
  const std::string pts = m[1];
  CHECK(count(pts, ",") == static_cast<int>(small_trace().points.size()));
  CHECK(count(svg, "<text") >= 10);
}

TEST_CASE("SVG with a cloud is byte stable") {
  const auto cloud = sample_cloud(parse_functional("w1/w3"), {}, 50, 3);
  const std::string a = render_svg(small_trace(), &cloud);
  CHECK(count(a, "<circle") == 50);
  const TraceResult again =
      trace_curve(parse_functional("w1/w3"), "w1/w3", ProblemConfig{}, TraceOptions{.steps = 24});
  const auto cloud2 = sample_cloud(parse_functional("w1/w3"), {}, 50, 3);
  CHECK(render_svg(again, &cloud2) == a);
  CHECK(trace_csv(again) == trace_csv(small_trace()));
  CHECK(trace_json(again) == trace_json(small_trace()));
}

TEST_CASE("empty trace cannot be plotted") {
  CHECK(error_of([] { render_svg(TraceResult{}); }) == ErrorCode::Config);
}

TEST_CASE("file output") {
  const auto dir = std::filesystem::temp_directory_path() / "nov_output_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "x.txt").string();
  write_text_file(path, "abc\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "abc");
  CHECK(error_of([&] { write_text_file((dir / "missing" / "x.txt").string(), "a"); }) == ErrorCode::Io);
}
