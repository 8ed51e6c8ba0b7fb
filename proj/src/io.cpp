#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "akepler/errors.hpp"
#include "akepler/harness.hpp"
#include "akepler/theory.hpp"

namespace akepler {
namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

double parse_number(std::string_view field) {
  if (field == "nan") return kNaN;
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError("malformed CSV number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// SVG coordinate with fixed precision; keeps files small and stable.
std::string px(double v) {
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return ec == std::errc() ? std::string(buf, ptr) : "0";
}

struct Frame {
  double width = 640, height = 480, margin = 60;
  double x_lo, x_hi, y_lo, y_hi;

  double sx(double x) const {
    return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
  }
  double sy(double y) const {
    return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
  }
};

void svg_open(std::ostringstream& s, const Frame& f) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width
    << "\" height=\"" << f.height << "\" viewBox=\"0 0 " << f.width << ' '
    << f.height << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ostringstream& s, const Frame& f, const std::string& xlabel,
              const std::string& ylabel) {
  s << "<rect x=\"" << px(f.margin) << "\" y=\"" << px(f.margin)
    << "\" width=\"" << px(f.width - 2 * f.margin) << "\" height=\""
    << px(f.height - 2 * f.margin)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x_lo + (f.x_hi - f.x_lo) * i / 4.0;
    const double y = f.y_lo + (f.y_hi - f.y_lo) * i / 4.0;
    s << "<text x=\"" << px(f.sx(x)) << "\" y=\"" << px(f.height - f.margin + 18)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << format_number(
             std::round(x * 100) / 100)
      << "</text>\n";
    s << "<text x=\"" << px(f.margin - 8) << "\" y=\"" << px(f.sy(y) + 4)
      << "\" font-size=\"12\" text-anchor=\"end\">"
      << format_number(std::round(y * 100) / 100) << "</text>\n";
  }
  s << "<text x=\"" << px(f.width / 2) << "\" y=\"" << px(f.height - 15)
    << "\" font-size=\"14\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  s << "<text x=\"18\" y=\"" << px(f.height / 2)
    << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << px(f.height / 2) << ")\">" << ylabel << "</text>\n";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

SweepRow to_sweep_row(const RunRecord& r) {
  return {r.theta,
          std::cos(r.theta),
          r.omega0,
          r.tau,
          r.cos_phi_3d,
          r.cos_phi_projected,
          r.cos_phi_pred,
          r.abs_err_3d,
          r.z_residual,
          r.energy_initial,
          r.energy_final,
          r.steps,
          r.error_code};
}

std::string format_sweep_csv(std::span<const RunRecord> records) {
  if (records.empty()) throw EmptyResult("no records to write");
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& rec : records) {
    const SweepRow row = to_sweep_row(rec);
    for (double v : {row.theta, row.cos_theta, row.omega0, row.tau,
                     row.cos_phi_3d, row.cos_phi_projected, row.cos_phi_pred,
                     row.abs_err_3d, row.z_residual, row.energy_initial,
                     row.energy_final}) {
      out += format_number(v);
      out += ',';
    }
    out += std::to_string(row.steps);
    out += ',';
    out += row.error_code;
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw IoError("sweep CSV header mismatch");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 13) {
      throw IoError("sweep CSV row has " + std::to_string(f.size()) +
                    " fields, expected 13");
    }
    SweepRow r{};
    double* nums[] = {&r.theta,        &r.cos_theta,         &r.omega0,
                      &r.tau,          &r.cos_phi_3d,        &r.cos_phi_projected,
                      &r.cos_phi_pred, &r.abs_err_3d,        &r.z_residual,
                      &r.energy_initial, &r.energy_final};
    for (std::size_t i = 0; i < 11; ++i) *nums[i] = parse_number(f[i]);
    const auto [ptr, ec] =
        std::from_chars(f[11].data(), f[11].data() + f[11].size(), r.steps);
    if (ec != std::errc()) throw IoError("malformed step count");
    r.error_code = std::string(f[12]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_csv(std::span<const RunRecord> records, const std::string& path) {
  write_file(path, format_sweep_csv(records));
}

std::string format_trajectory_csv(const HamiltonianSpec& spec,
                                  const Trajectory& traj) {
  if (traj.size() == 0) throw EmptyResult("trajectory has no samples");
  std::string out = kTrajectoryCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const PhaseState& s = traj.states[i];
    // A and L about the instantaneous Coulomb centre.
    const PhaseState rel{
        s.r - spec.center(t),
        spec.nucleus_path()
            ? Vec3(s.p - spec.kepler_params().m * spec.nucleus_path()->velocity(t))
            : s.p};
    const Vec3 a = runge_lenz(rel, spec.kepler_params());
    const Vec3 l = angular_momentum(rel);
    const double vals[] = {t,        s.r.x(), s.r.y(), s.r.z(),
                           s.p.x(),  s.p.y(), s.p.z(),
                           total_energy(spec, s, t),
                           a.x(),    a.y(),   a.z(),   l.z()};
    for (std::size_t j = 0; j < std::size(vals); ++j) {
      if (j) out += ',';
      out += format_number(vals[j]);
    }
    out += '\n';
  }
  return out;
}

void write_trajectory_csv(const HamiltonianSpec& spec, const Trajectory& traj,
                          const std::string& path) {
  write_file(path, format_trajectory_csv(spec, traj));
}

std::string render_sweep_svg(std::span<const RunRecord> records) {
  if (records.empty()) throw EmptyResult("no records to plot");
  Frame f;
  f.x_lo = -1.0;
  f.x_hi = 1.0;
  f.y_lo = -1.05;
  f.y_hi = 1.05;

  std::ostringstream s;
  svg_open(s, f);
  svg_axes(s, f, "cos(theta)", "cos(phi)");

  // Prediction as a dense curve over the swept range.
  double lo = records.front().theta, hi = lo;
  for (const auto& r : records) {
    lo = std::min(lo, r.theta);
    hi = std::max(hi, r.theta);
  }
  s << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"";
  constexpr int kCurve = 200;
  for (int i = 0; i <= kCurve; ++i) {
    const double th = lo + (hi - lo) * i / kCurve;
    const double c = predicted_cos_phi(th);
    s << px(f.sx(std::cos(th))) << ',' << px(f.sy(c)) << ' ';
  }
  s << "\"/>\n";

  for (const auto& r : records) {
    if (!r.ok() || std::isnan(r.cos_phi_3d)) continue;
    const double x = f.sx(std::cos(r.theta)), y = f.sy(r.cos_phi_3d);
    s << "<polygon fill=\"blue\" points=\"" << px(x) << ',' << px(y - 5) << ' '
      << px(x - 5) << ',' << px(y + 4) << ' ' << px(x + 5) << ','
      << px(y + 4) << "\"/>\n";
  }
  s << "<text x=\"" << px(f.width - f.margin - 4) << "\" y=\""
    << px(f.margin + 16)
    << "\" font-size=\"12\" text-anchor=\"end\">red: cos(2 pi (1 - cos theta)),"
       " blue: simulation</text>\n";
  s << "</svg>\n";
  return s.str();
}

void emit_svg(std::span<const RunRecord> records, const std::string& path) {
  write_file(path, render_sweep_svg(records));
}

std::string render_orbit_svg(std::span<const Vec3> initial,
                             std::span<const Vec3> final) {
  if (initial.empty() && final.empty()) throw EmptyResult("no orbit samples");
  double extent = 0.0;
  for (auto pts : {initial, final}) {
    for (const auto& p : pts) {
      extent = std::max({extent, std::abs(p.x()), std::abs(p.y())});
    }
  }
  extent = extent > 0.0 ? 1.1 * extent : 1.0;
  Frame f;
  f.width = 520;
  f.height = 520;
  f.x_lo = f.y_lo = -extent;
  f.x_hi = f.y_hi = extent;

  std::ostringstream s;
  svg_open(s, f);
  svg_axes(s, f, "x", "y");
  auto polyline = [&](std::span<const Vec3> pts, const char* style) {
    if (pts.empty()) return;
    s << "<polyline fill=\"none\" " << style << " points=\"";
    for (const auto& p : pts) s << px(f.sx(p.x())) << ',' << px(f.sy(p.y())) << ' ';
    s << "\"/>\n";
  };
  polyline(initial, "stroke=\"gray\" stroke-dasharray=\"6 4\"");
  polyline(final, "stroke=\"black\"");
  s << "<circle cx=\"" << px(f.sx(0)) << "\" cy=\"" << px(f.sy(0))
    << "\" r=\"3\" fill=\"black\"/>\n";
  s << "</svg>\n";
  return s.str();
}

void emit_orbit_svg(std::span<const Vec3> initial, std::span<const Vec3> final,
                    const std::string& path) {
  write_file(path, render_orbit_svg(initial, final));
}

}  // namespace akepler
