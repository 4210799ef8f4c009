// Batch commands behind the htreval executable. Each returns a process exit
// status: 0 success, 1 usage error, 2 data error.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "htreval/io.hpp"
#include "htreval/sim.hpp"

namespace htreval {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

enum class ReportFormat { kJson, kTsv };

struct EvalOptions {
  std::filesystem::path ref_dir;
  std::filesystem::path hyp_dir;
  double gamma = kDefaultGamma;
  ReportFormat format = ReportFormat::kJson;
  /// Report destination; stdout when empty.
  std::filesystem::path out;
  bool per_page = false;
  bool timings = true;
  unsigned jobs = 1;
};

/// Evaluates pages paired by relative path. A missing hypothesis is scored
/// as an empty page and listed in missing_hypotheses. Results keep the
/// sorted page order whatever the number of workers.
EvalRun evaluate_directories(const std::filesystem::path& ref_dir,
                             const std::filesystem::path& hyp_dir, double gamma, unsigned jobs);

/// Same as above on in-memory pages; hyps[i] pairs with refs[i].
EvalRun evaluate_pages(const std::vector<PageTranscript>& refs,
                       const std::vector<std::optional<PageTranscript>>& hyps, double gamma,
                       unsigned jobs);

int run_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  std::filesystem::path ref_dir;
  std::filesystem::path out_dir;
  DistortionConfig config;
  /// Iterate the step (character modes) or S (line modes) from 0 to the
  /// configured value, writing one corpus per value and sweep.tsv.
  bool sweep = false;
  double gamma = kDefaultGamma;
  unsigned jobs = 1;
};

int run_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct SynthOptions {
  std::filesystem::path out_dir;
  std::size_t pages = 30;
  std::size_t lines = 15;
  std::size_t words = 8;
  std::uint64_t seed = 0;
};

/// Writes a synthetic corpus, one file per page named <page_id>.txt.
int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

/// One row of a simulation sweep.
struct SweepRow {
  std::size_t param = 0;
  CorpusReport report;
  double target_cer = -1.0;   // character modes
  double target_wer = -1.0;   // character modes
  double target_nsfd = -1.0;  // line modes
  double target_dbwer = -1.0; // split mode, from realized in-word splits
  std::size_t in_word_splits = 0;
};

/// Distorts the pages once per parameter value in [0, last] and evaluates
/// each distorted corpus against the originals.
std::vector<SweepRow> run_sweep(const std::vector<PageTranscript>& pages, DistortionConfig cfg,
                                std::size_t last, double gamma, unsigned jobs,
                                std::vector<std::vector<PageTranscript>>* corpora = nullptr,
                                std::vector<std::vector<PageManifest>>* manifests = nullptr);

std::string sweep_tsv(const std::vector<SweepRow>& rows, DistortionMode mode);

}  // namespace htreval
