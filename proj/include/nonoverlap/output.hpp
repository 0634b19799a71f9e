#pragma once

#include <string>
#include <vector>

#include "nonoverlap/sampler.hpp"
#include "nonoverlap/tracer.hpp"

namespace nov {

/// "%.17g"; lossless for doubles.
std::string format_double(double v);

/// alpha,re_I,im_I,re_w1,im_w1,re_w2,im_w2,A,B,residual_norm
std::string trace_csv(const TraceResult& trace);
std::string trace_json(const TraceResult& trace);

/// re_I,im_I,R,theta1,theta2,re_a,im_a
std::string cloud_csv(const std::vector<CloudPoint>& cloud);

/// Static plot of the traced curve with optional sample dots, axes and
/// numeric tick labels, fitted with a 10% margin.
std::string render_svg(const TraceResult& trace, const std::vector<CloudPoint>* cloud = nullptr);

/// Throws Error(Io).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nov
