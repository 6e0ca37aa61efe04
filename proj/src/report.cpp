#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pbro/experiment.hpp"

namespace pbro {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

bool geometric(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2 || sizes.front() == 0) return false;
  const double ratio = static_cast<double>(sizes[1]) / static_cast<double>(sizes[0]);
  if (ratio <= 1.0) return false;
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    const double r = static_cast<double>(sizes[k]) / static_cast<double>(sizes[k - 1]);
    if (std::abs(r - ratio) > 1e-9 * ratio) return false;
  }
  return true;
}

double nice_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void emit_svg_plot(const std::vector<SummaryRow>& summary, std::ostream& out, std::string_view title) {
  std::vector<std::string> series;
  std::vector<std::size_t> sizes;
  for (const SummaryRow& r : summary) {
    if (std::find(series.begin(), series.end(), r.series) == series.end()) series.push_back(r.series);
    sizes.push_back(r.size);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  const bool log_x = geometric(sizes);
  const auto xval = [&](std::size_t s) { return log_x ? std::log2(static_cast<double>(s)) : static_cast<double>(s); };
  double x_lo = sizes.empty() ? 0.0 : xval(sizes.front());
  double x_hi = sizes.empty() ? 1.0 : xval(sizes.back());
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  double y_hi = 0.0;
  for (const SummaryRow& r : summary) y_hi = std::max(y_hi, r.mean + r.sd);
  const double y_step = nice_step(y_hi > 0.0 ? y_hi : 1.0);
  y_hi = std::ceil((y_hi > 0.0 ? y_hi : 1.0) / y_step) * y_step;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - std::clamp(y, 0.0, y_hi) / y_hi * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
  }

  // Axes, ticks and grid.
  out << "<g stroke=\"#000\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(kLeft + plot_w)
      << "\" y2=\"" << fixed(kTop + plot_h) << "\"/>\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
      << fixed(kTop + plot_h) << "\"/>\n</g>\n";
  for (std::size_t s : sizes) {
    const double x = px(xval(s));
    out << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(x) << "\" y2=\""
        << fixed(kTop + plot_h + 5) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kTop + plot_h + 19) << "\" text-anchor=\"middle\">" << s
        << "</text>\n";
  }
  for (double y = 0.0; y <= y_hi + 1e-9 * y_hi; y += y_step) {
    out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(py(y)) << "\" x2=\"" << fixed(kLeft + plot_w)
        << "\" y2=\"" << fixed(py(y)) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(py(y) + 4) << "\" text-anchor=\"end\">"
        << fixed(y) << "</text>\n";
  }
  out << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 10)
      << "\" text-anchor=\"middle\">size" << (log_x ? " (log scale)" : "") << "</text>\n";
  out << "<text x=\"16\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(kTop + plot_h / 2) << ")\">iterations</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    std::vector<const SummaryRow*> rows;
    for (const SummaryRow& r : summary) {
      if (r.series == series[k]) rows.push_back(&r);
    }
    std::sort(rows.begin(), rows.end(), [](const SummaryRow* a, const SummaryRow* b) { return a->size < b->size; });

    out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const SummaryRow* r : rows) out << fixed(px(xval(r->size))) << ',' << fixed(py(r->mean + r->sd)) << ' ';
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      out << fixed(px(xval((*it)->size))) << ',' << fixed(py((*it)->mean - (*it)->sd)) << ' ';
    }
    out << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const SummaryRow* r : rows) out << fixed(px(xval(r->size))) << ',' << fixed(py(r->mean)) << ' ';
    out << "\"/>\n";
    for (const SummaryRow* r : rows) {
      out << "<circle cx=\"" << fixed(px(xval(r->size))) << "\" cy=\"" << fixed(py(r->mean)) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    const double lx = kLeft + plot_w + 15;
    out << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 20) << "\" y2=\""
        << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fixed(lx + 26) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(series[k]) << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_svg_plot(const std::vector<SummaryRow>& summary, const std::filesystem::path& path,
                   std::string_view title) {
  std::ostringstream buffer;
  emit_svg_plot(summary, buffer, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot to " + path.string());
  out << buffer.str();
  if (!out) throw std::runtime_error("failed writing plot to " + path.string());
}

}  // namespace pbro
