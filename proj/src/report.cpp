#include "emoarc/report.hpp"

#include <cmath>

#include "detail/json_conv.hpp"
#include "detail/strings.hpp"

namespace emoarc {

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::degenerate_arc: return "degenerate_arc";
    case CellStatus::empty_window: return "empty_window";
    case CellStatus::invalid_config: return "invalid_config";
    case CellStatus::error: return "error";
  }
  return "error";
}

CellStatus status_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::degenerate_arc: return CellStatus::degenerate_arc;
    case ErrorCategory::empty_window: return CellStatus::empty_window;
    case ErrorCategory::invalid_argument: return CellStatus::invalid_config;
    default: return CellStatus::error;
  }
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fixed6(double v) { return std::isfinite(v) ? detail::format_fixed(v, 6) : std::string(); }

}  // namespace

std::string serialize_reports_csv(std::span<const EvalReport> reports) {
  std::string out =
      "corpus,emotion,method,lexicon,accuracy,granularity,oov,tau,tau_mode,bin,stride,n_windows,trials,"
      "rho,rho_min,rho_max,status\n";
  for (const auto& r : reports) {
    const auto& thr = r.config.threshold;
    out += csv_field(r.corpus) + ',';
    out += csv_field(r.emotion) + ',';
    out += csv_field(r.method) + ',';
    out += csv_field(r.lexicon) + ',';
    out += (r.accuracy ? detail::format_double(*r.accuracy) : std::string()) + ',';
    out += (r.has_oov ? std::string(to_string(r.config.granularity)) : std::string()) + ',';
    out += (r.has_oov ? std::string(to_string(r.config.oov)) : std::string()) + ',';
    out += (thr ? detail::format_double(thr->tau) : std::string()) + ',';
    out += (thr ? std::string(to_string(thr->mode)) : std::string()) + ',';
    out += std::to_string(r.config.bin_size) + ',';
    out += std::to_string(r.config.stride) + ',';
    out += std::to_string(r.n_windows) + ',';
    out += (r.trials ? std::to_string(r.trials) : std::string()) + ',';
    out += fixed6(r.rho) + ',';
    out += (r.rho_min ? fixed6(*r.rho_min) : std::string()) + ',';
    out += (r.rho_max ? fixed6(*r.rho_max) : std::string()) + ',';
    out += std::string(to_string(r.status)) + '\n';
  }
  return out;
}

std::string serialize_reports_json(std::span<const EvalReport> reports, std::string_view provenance_json) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json cells = json::array();
  for (const auto& r : reports) {
    json c = {
        {"corpus", r.corpus},
        {"emotion", r.emotion},
        {"method", r.method},
        {"lexicon", r.lexicon},
        {"accuracy", r.accuracy ? json(*r.accuracy) : json(nullptr)},
        {"config", detail::to_json(r.config)},
        {"n_windows", r.n_windows},
        {"trials", r.trials},
        {"rho", num(r.rho)},
        {"rho_min", r.rho_min ? num(*r.rho_min) : json(nullptr)},
        {"rho_max", r.rho_max ? num(*r.rho_max) : json(nullptr)},
        {"lexicon_entries", r.lexicon_entries ? json(*r.lexicon_entries) : json(nullptr)},
        {"gold_standardized", r.gold_standardized},
        {"pred_standardized", r.pred_standardized},
        {"status", std::string(to_string(r.status))},
        {"message", r.message},
    };
    if (!r.has_oov) c["config"]["oov"] = nullptr;
    cells.push_back(std::move(c));
  }
  json doc;
  doc["provenance"] = provenance_json.empty() ? json::object()
                                              : detail::parse_json_object(provenance_json, "report provenance");
  doc["reports"] = std::move(cells);
  return doc.dump(2) + "\n";
}

void write_reports(std::span<const EvalReport> reports, const std::filesystem::path& csv,
                   std::string_view provenance_json) {
  const auto json_text = serialize_reports_json(reports, provenance_json);
  detail::write_file(csv.string(), serialize_reports_csv(reports));
  detail::write_file(sidecar_path(csv).string(), json_text);
}

}  // namespace emoarc
