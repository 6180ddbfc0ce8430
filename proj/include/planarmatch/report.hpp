#pragma once
// Report serialization: JSON (schema_version 1, round-trips losslessly),
// RFC-4180 CSV of per-trial values, and a plain SVG 1.1 scatter plot. All
// output is a deterministic function of the report contents, so identical
// runs produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "planarmatch/montecarlo.hpp"

namespace planarmatch {

// File-system failures carry their own type so the CLI can map them to its
// dedicated exit code.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Mode mode_from_string(const std::string& s) {
  if (s == "rainbow") return Mode::rainbow;
  if (s == "dependent") return Mode::dependent;
  throw std::invalid_argument("unknown mode: " + s);
}

inline Solver solver_from_string(const std::string& s) {
  if (s == "exact") return Solver::exact;
  if (s == "greedy") return Solver::greedy;
  if (s == "lis") return Solver::lis;
  throw std::invalid_argument("unknown solver: " + s);
}

inline CheckStatus check_status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "flagged") return CheckStatus::flagged;
  throw std::invalid_argument("unknown check status: " + s);
}

inline nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json j;
  j["schema_version"] = r.schema_version;
  j["rng_algorithm"] = r.rng_algorithm;

  nlohmann::json cfg;
  cfg["mode"] = to_string(r.mode);
  cfg["solver"] = to_string(r.solver);
  cfg["n"] = r.n;
  cfg["trials"] = r.trials;
  cfg["seed"] = r.seed;
  cfg["eps"] = r.eps;
  if (r.mode == Mode::rainbow) {
    cfg["r"] = r.r;
    cfg["alpha"] = r.alpha;
  } else {
    cfg["k"] = r.k;
    cfg["t_requested"] = r.t_sqrt ? nlohmann::json("sqrt") : nlohmann::json(r.t);
    cfg["t"] = r.t;
    cfg["s"] = r.s;
    cfg["b"] = r.b == 0.0 ? nlohmann::json(nullptr) : nlohmann::json(r.b);
  }
  j["config"] = cfg;

  j["statistic"] = r.primary_name;
  j["sample_mean"] = r.primary.mean;
  j["sample_variance"] = r.primary.variance;
  j["standard_error"] = r.primary.se;
  if (r.has_secondary) {
    nlohmann::json sec;
    sec["statistic"] = r.secondary_name;
    sec["sample_mean"] = r.secondary.mean;
    sec["sample_variance"] = r.secondary.variance;
    sec["standard_error"] = r.secondary.se;
    j["secondary"] = sec;
  } else {
    j["secondary"] = nullptr;
  }

  j["empirical_tail"] = nlohmann::json::array();
  for (const TailEntry& t : r.empirical_tail)
    j["empirical_tail"].push_back({{"statistic", t.statistic},
                                   {"side", t.side},
                                   {"threshold", t.threshold},
                                   {"frequency", t.frequency}});
  j["bound_values"] = nlohmann::json::array();
  for (const BoundEntry& b : r.bound_values)
    j["bound_values"].push_back({{"name", b.name}, {"value", b.value}, {"in_regime", b.in_regime}});
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"analytic", c.analytic},
                           {"empirical", c.empirical},
                           {"status", to_string(c.status)}});
  j["notes"] = r.notes;
  return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.rng_algorithm = j.at("rng_algorithm").get<std::string>();
  const nlohmann::json& cfg = j.at("config");
  r.mode = mode_from_string(cfg.at("mode").get<std::string>());
  r.solver = solver_from_string(cfg.at("solver").get<std::string>());
  r.n = cfg.at("n").get<std::size_t>();
  r.trials = cfg.at("trials").get<std::size_t>();
  r.seed = cfg.at("seed").get<std::uint64_t>();
  r.eps = cfg.at("eps").get<double>();
  if (r.mode == Mode::rainbow) {
    r.r = cfg.at("r").get<std::size_t>();
    r.alpha = cfg.at("alpha").get<double>();
  } else {
    r.k = cfg.at("k").get<std::uint64_t>();
    r.t_sqrt = cfg.at("t_requested").is_string();
    r.t = cfg.at("t").get<std::size_t>();
    r.s = cfg.at("s").get<std::uint64_t>();
    r.b = cfg.at("b").is_null() ? 0.0 : cfg.at("b").get<double>();
  }
  r.primary_name = j.at("statistic").get<std::string>();
  r.primary.mean = j.at("sample_mean").get<double>();
  r.primary.variance = j.at("sample_variance").get<double>();
  r.primary.se = j.at("standard_error").get<double>();
  if (!j.at("secondary").is_null()) {
    const nlohmann::json& sec = j.at("secondary");
    r.has_secondary = true;
    r.secondary_name = sec.at("statistic").get<std::string>();
    r.secondary.mean = sec.at("sample_mean").get<double>();
    r.secondary.variance = sec.at("sample_variance").get<double>();
    r.secondary.se = sec.at("standard_error").get<double>();
  }
  for (const auto& t : j.at("empirical_tail"))
    r.empirical_tail.push_back({t.at("statistic").get<std::string>(),
                                t.at("side").get<std::string>(),
                                t.at("threshold").get<double>(),
                                t.at("frequency").get<double>()});
  for (const auto& b : j.at("bound_values"))
    r.bound_values.push_back({b.at("name").get<std::string>(), b.at("value").get<double>(),
                              b.at("in_regime").get<bool>()});
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("analytic").get<double>(),
                        c.at("empirical").get<double>(),
                        check_status_from_string(c.at("status").get<std::string>())});
  for (const auto& nt : j.at("notes")) r.notes.push_back(nt.get<std::string>());
  return r;
}

inline std::string serialize_report(const ExperimentReport& r) { return to_json(r).dump(2) + "\n"; }

inline std::string serialize_reports(const std::vector<ExperimentReport>& rs) {
  if (rs.size() == 1) return serialize_report(rs.front());
  nlohmann::json arr = nlohmann::json::array();
  for (const ExperimentReport& r : rs) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

inline bool reports_equal(const ExperimentReport& a, const ExperimentReport& b) {
  return to_json(a) == to_json(b);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);  // binary: line endings are ours
  if (!out) throw io_error("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

// CSV per RFC 4180: CRLF line endings, fixed documented header. One row per
// trial; trial indices are 1-based.
inline std::string csv_for_run(const ExperimentReport& rep, const TrialTable& table) {
  std::string out;
  if (rep.mode == Mode::rainbow) {
    out += "trial,n,r,R_n,solver_exact\r\n";
    const char* exact = rep.solver == Solver::exact ? "true" : "false";
    for (std::size_t i = 0; i < table.primary.size(); ++i) {
      out += std::to_string(i + 1) + ',' + std::to_string(rep.n) + ',' + std::to_string(rep.r) +
             ',' + std::to_string(table.primary[i]) + ',' + exact + "\r\n";
    }
  } else {
    out += "trial,n,k,t,s,T_n,X_t\r\n";
    for (std::size_t i = 0; i < table.primary.size(); ++i) {
      out += std::to_string(i + 1) + ',' + std::to_string(rep.n) + ',' + std::to_string(rep.k) +
             ',' + std::to_string(rep.t) + ',' + std::to_string(rep.s) + ',' +
             std::to_string(table.primary[i]) + ',' + std::to_string(table.secondary[i]) + "\r\n";
    }
  }
  return out;
}

// Multi-run CSV: same schema, rows concatenated (n varies per block).
inline std::string csv_for_runs(const std::vector<ExperimentReport>& reps,
                                const std::vector<TrialTable>& tables) {
  std::string out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::string block = csv_for_run(reps[i], tables[i]);
    if (i == 0) {
      out = block;
    } else {
      out += block.substr(block.find("\r\n") + 2);  // drop repeated header
    }
  }
  return out;
}

namespace detail {

inline std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

// Plain SVG 1.1 scatter: one series of (x, y) points plus optional emphasis
// points (drawn larger, e.g. per-x means). No interactivity by design.
inline std::string svg_scatter(const std::string& title, const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<std::pair<double, double>>& points,
                               const std::vector<std::pair<double, double>>& emphasis = {}) {
  const double width = 640, height = 440;
  const double ml = 70, mr = 20, mt = 40, mb = 50;  // margins
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  auto widen = [&](const std::pair<double, double>& p) {
    if (first) {
      xmin = xmax = p.first;
      ymin = ymax = p.second;
      first = false;
    } else {
      xmin = std::min(xmin, p.first);
      xmax = std::max(xmax, p.first);
      ymin = std::min(ymin, p.second);
      ymax = std::max(ymax, p.second);
    }
  };
  for (const auto& p : points) widen(p);
  for (const auto& p : emphasis) widen(p);
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad, xmax += xpad, ymin -= ypad, ymax += ypad;
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto Y = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       detail::fmt_num(width) + "\" height=\"" + detail::fmt_num(height) + "\" viewBox=\"0 0 " +
       detail::fmt_num(width) + " " + detail::fmt_num(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + detail::fmt_num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
  // axes
  s += "<line x1=\"" + detail::fmt_num(ml) + "\" y1=\"" + detail::fmt_num(height - mb) +
       "\" x2=\"" + detail::fmt_num(width - mr) + "\" y2=\"" + detail::fmt_num(height - mb) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + detail::fmt_num(ml) + "\" y1=\"" + detail::fmt_num(mt) + "\" x2=\"" +
       detail::fmt_num(ml) + "\" y2=\"" + detail::fmt_num(height - mb) + "\" stroke=\"black\"/>\n";
  // axis labels and extreme tick values
  s += "<text x=\"" + detail::fmt_num((ml + width - mr) / 2) + "\" y=\"" +
       detail::fmt_num(height - 12) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">" + x_label + "</text>\n";
  s += "<text x=\"18\" y=\"" + detail::fmt_num((mt + height - mb) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
       detail::fmt_num((mt + height - mb) / 2) + ")\">" + y_label + "</text>\n";
  s += "<text x=\"" + detail::fmt_num(ml) + "\" y=\"" + detail::fmt_num(height - mb + 16) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
       detail::fmt_num(xmin + xpad) + "</text>\n";
  s += "<text x=\"" + detail::fmt_num(width - mr) + "\" y=\"" + detail::fmt_num(height - mb + 16) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
       detail::fmt_num(xmax - xpad) + "</text>\n";
  s += "<text x=\"" + detail::fmt_num(ml - 8) + "\" y=\"" + detail::fmt_num(height - mb + 4) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
       detail::fmt_num(ymin + ypad) + "</text>\n";
  s += "<text x=\"" + detail::fmt_num(ml - 8) + "\" y=\"" + detail::fmt_num(mt + 4) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
       detail::fmt_num(ymax - ypad) + "</text>\n";
  // points, deterministically thinned so files stay small
  const std::size_t stride = points.size() > 2000 ? (points.size() + 1999) / 2000 : 1;
  for (std::size_t i = 0; i < points.size(); i += stride)
    s += "<circle cx=\"" + detail::fmt_num(X(points[i].first)) + "\" cy=\"" +
         detail::fmt_num(Y(points[i].second)) + "\" r=\"2\" fill=\"#4477aa\" fill-opacity=\"0.5\"/>\n";
  for (const auto& p : emphasis)
    s += "<circle cx=\"" + detail::fmt_num(X(p.first)) + "\" cy=\"" + detail::fmt_num(Y(p.second)) +
         "\" r=\"5\" fill=\"#cc3311\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace planarmatch
