#include "erdiff/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "erdiff/csv.hpp"
#include "erdiff/errors.hpp"

namespace erdiff::report {

namespace {

// Shortest round-trip form, so reruns are byte-identical.
std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string esc(const std::string& field) { return csv::escape(std::string_view(field)); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string fixed(const std::optional<double>& v, int digits) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string linearity_csv(const std::vector<std::pair<std::string, LinearityResult>>& rows) {
  std::ostringstream out;
  out << "dataset,measure,f1_max,t_best\n";
  for (const auto& [dataset, r] : rows) {
    csv::write_row(out, {esc(dataset), std::string(to_string(r.measure)), num(r.f1_max), num(r.t_best)});
  }
  return out.str();
}

std::string linearity_curve_csv(const std::vector<std::pair<std::string, LinearityResult>>& rows) {
  std::ostringstream out;
  out << "dataset,measure,threshold,f1\n";
  for (const auto& [dataset, r] : rows) {
    for (std::size_t k = 0; k < r.curve.size(); ++k) {
      csv::write_row(out, {esc(dataset), std::string(to_string(r.measure)), num(grid_threshold(static_cast<int>(k) + 1)),
                           num(r.curve[k])});
    }
  }
  return out.str();
}

nlohmann::json linearity_json(const LinearityResult& result) {
  return {{"measure", std::string(to_string(result.measure))},
          {"f1_max", result.f1_max},
          {"t_best", result.t_best},
          {"curve", result.curve}};
}

nlohmann::json complexity_json(const ComplexityReport& report) {
  nlohmann::json measures = nlohmann::json::object();
  for (std::size_t i = 0; i < kMeasureCount; ++i) measures[std::string(kMeasureNames[i])] = report.values[i];
  return {
      {"dataset", report.dataset},
      {"scheme", report.scheme},
      {"seed", report.seed},
      {"epsilon", report.epsilon},
      {"pairs", report.pairs},
      {"used", report.used},
      {"cap", report.cap},
      {"measures", std::move(measures)},
      {"mean", report.mean()},
      {"easy_threshold", report.easy_threshold},
      {"verdict", report.easy() ? "easy" : "hard"},
  };
}

std::string complexity_csv(const std::vector<ComplexityReport>& reports) {
  std::ostringstream out;
  std::vector<std::string> header{"dataset", "scheme"};
  for (auto name : kMeasureNames) header.emplace_back(name);
  header.emplace_back("mean");
  csv::write_row(out, header);
  for (const auto& r : reports) {
    std::vector<std::string> row{esc(r.dataset), esc(r.scheme)};
    for (double v : r.values) row.push_back(num(v));
    row.push_back(num(r.mean()));
    csv::write_row(out, row);
  }
  return out.str();
}

nlohmann::json verdict_json(const DifficultyVerdict& v) {
  return {
      {"dataset", v.inputs.dataset},
      {"inputs",
       {{"f1_cs", opt_json(v.inputs.f1_cs)},
        {"f1_js", opt_json(v.inputs.f1_js)},
        {"complexity_mean", opt_json(v.inputs.complexity_mean)},
        {"nlb", opt_json(v.inputs.nlb)},
        {"lbm", opt_json(v.inputs.lbm)}}},
      {"thresholds",
       {{"linearity", v.thresholds.linearity},
        {"complexity", v.thresholds.complexity},
        {"nlb", v.thresholds.nlb},
        {"lbm", v.thresholds.lbm},
        {"strong", v.thresholds.strong}}},
      {"flags",
       {{"linearly_easy", v.linearly_easy},
        {"complexity_easy", v.complexity_easy},
        {"nlb_low", v.nlb_low},
        {"lbm_low", v.lbm_low},
        {"strongly_challenging", v.strongly_challenging}}},
      {"verdict", v.overall()},
  };
}

DifficultyVerdict verdict_from_json(const nlohmann::json& j) {
  VerdictInputs in;
  in.dataset = j.at("dataset").get<std::string>();
  const auto& inputs = j.at("inputs");
  in.f1_cs = opt_from(inputs, "f1_cs");
  in.f1_js = opt_from(inputs, "f1_js");
  in.complexity_mean = opt_from(inputs, "complexity_mean");
  in.nlb = opt_from(inputs, "nlb");
  in.lbm = opt_from(inputs, "lbm");
  VerdictThresholds t;
  if (j.contains("thresholds")) {
    const auto& th = j.at("thresholds");
    t.linearity = th.value("linearity", t.linearity);
    t.complexity = th.value("complexity", t.complexity);
    t.nlb = th.value("nlb", t.nlb);
    t.lbm = th.value("lbm", t.lbm);
    t.strong = th.value("strong", t.strong);
  }
  return verdict(in, t);
}

std::string verdict_csv(const std::vector<DifficultyVerdict>& verdicts) {
  std::ostringstream out;
  out << "dataset,f1_cs,f1_js,complexity_mean,nlb,lbm,linearly_easy,complexity_easy,nlb_low,lbm_low,"
         "strongly_challenging,verdict\n";
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  for (const auto& v : verdicts) {
    csv::write_row(out, {esc(v.inputs.dataset), opt_num(v.inputs.f1_cs), opt_num(v.inputs.f1_js),
                         opt_num(v.inputs.complexity_mean), opt_num(v.inputs.nlb), opt_num(v.inputs.lbm),
                         flag(v.linearly_easy), flag(v.complexity_easy), flag(v.nlb_low), flag(v.lbm_low),
                         flag(v.strongly_challenging), v.overall()});
  }
  return out.str();
}

std::string markdown_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "| Dataset | Linearity CS | Linearity JS | Complexity mean | NLB (pp) | LBM (pp) | Verdict |\n";
  out << "|---|---:|---:|---:|---:|---:|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.dataset << " | " << fixed(r.f1_cs, 3) << " | " << fixed(r.f1_js, 3) << " | "
        << fixed(r.complexity_mean, 3) << " | " << fixed(r.nlb, 2) << " | " << fixed(r.lbm, 2) << " | "
        << (r.verdict ? *r.verdict : std::string("n/a")) << " |\n";
  }
  return out.str();
}

std::string svg_bar_chart(const std::string& title, const std::vector<Bar>& bars, double max_value,
                          std::optional<double> reference) {
  const int bar_width = 28;
  const int gap = 12;
  const int left = 48;
  const int top = 36;
  const int plot_height = 220;
  const int label_space = 70;
  const int width = left + static_cast<int>(bars.size()) * (bar_width + gap) + gap;
  const int height = top + plot_height + label_space;
  if (max_value <= 0) max_value = 1.0;
  auto y_of = [&](double v) {
    double clamped = std::clamp(v, 0.0, max_value);
    return top + plot_height - static_cast<int>(clamped / max_value * plot_height + 0.5);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "  <text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_height
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top + plot_height << "\" x2=\"" << width << "\" y2=\""
      << top + plot_height << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    double v = max_value * tick / 4.0;
    out << "  <text x=\"" << left - 6 << "\" y=\"" << y_of(v) + 4 << "\" text-anchor=\"end\">" << fixed(v, 2)
        << "</text>\n";
  }
  for (std::size_t i = 0; i < bars.size(); ++i) {
    int x = left + gap + static_cast<int>(i) * (bar_width + gap);
    int y = y_of(bars[i].value);
    out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_width << "\" height=\""
        << top + plot_height - y << "\" fill=\"#4a7ab5\"><title>" << xml_escape(bars[i].label) << ": "
        << fixed(bars[i].value, 3) << "</title></rect>\n";
    int lx = x + bar_width / 2;
    int ly = top + plot_height + 10;
    out << "  <text x=\"" << lx << "\" y=\"" << ly << "\" transform=\"rotate(45 " << lx << ' ' << ly << ")\">"
        << xml_escape(bars[i].label) << "</text>\n";
  }
  if (reference) {
    int y = y_of(*reference);
    out << "  <line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width << "\" y2=\"" << y
        << "\" stroke=\"#c0392b\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::MissingFile, "cannot write " + path.string());
  out << content;
}

}  // namespace erdiff::report
