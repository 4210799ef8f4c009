// Page files, report and manifest serialization.
//
// Page file: UTF-8 plain text, one physical line per text line, reading
// order = file order. Pages are paired across directories by relative path.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "htreval/agg.hpp"
#include "htreval/core.hpp"
#include "htreval/sim.hpp"

namespace htreval {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kManifestSchemaVersion = 1;

/// Relative paths ('/'-separated) of the regular files below root, sorted.
/// Hidden files and directories are skipped.
std::vector<std::string> list_page_files(const std::filesystem::path& root);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Reads and tokenizes one page file; IngestError messages name the file.
PageTranscript read_page(const std::filesystem::path& path, std::string page_id);
void write_page(const std::filesystem::path& path, const PageTranscript& page);

/// A page that could not be evaluated.
struct PageError {
  std::string page_id;
  std::string message;
};

struct ReportOptions {
  double gamma = kDefaultGamma;
  bool per_page = false;
  bool timings = true;
};

/// Report for a run: corpus aggregate (absent if no page could be
/// evaluated), per-page entries, pages with missing hypotheses, errors.
struct EvalRun {
  std::optional<CorpusReport> corpus;
  std::vector<std::string> missing_hypotheses;
  std::vector<PageError> errors;
};

nlohmann::ordered_json rate_json(const Ratio& r);
nlohmann::ordered_json counts_json(const EditCounts& c);
nlohmann::ordered_json page_report_json(const PageReport& p, bool timings);
nlohmann::ordered_json report_json(const EvalRun& run, const ReportOptions& opts);

/// Tab-separated table with columns page_id, NSFD, DeltaWER, WER, bWER,
/// hWER, CER, hCER as percentages with one decimal. The last row is the
/// corpus ("ALL").
std::string report_tsv(const EvalRun& run, const ReportOptions& opts);

/// One-decimal percentage, e.g. 0.7 -> "70.0".
std::string percent1(double fraction);

nlohmann::ordered_json manifest_json(const DistortionConfig& cfg,
                                     const std::vector<PageManifest>& pages);

}  // namespace htreval
