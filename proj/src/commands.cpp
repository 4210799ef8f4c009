#include "htreval/commands.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace htreval {

namespace fs = std::filesystem;

namespace {

// Runs body(i) for i in [0, n) on up to `jobs` threads.
template <class Body>
void parallel_for(std::size_t n, unsigned jobs, Body body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

struct PageOutcome {
  std::optional<PageReport> report;
  std::string error;
};

EvalRun collect(const std::vector<PageTranscript>& refs,
                const std::vector<std::optional<PageTranscript>>& hyps,
                std::vector<PageOutcome>& outcomes) {
  EvalRun run;
  std::vector<PageReport> reports;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!hyps[i]) run.missing_hypotheses.push_back(refs[i].page_id);
    if (outcomes[i].report) {
      reports.push_back(std::move(*outcomes[i].report));
    } else {
      run.errors.push_back({refs[i].page_id, outcomes[i].error});
    }
  }
  if (!reports.empty()) run.corpus = aggregate(std::move(reports));
  return run;
}

void ensure_directory(const fs::path& p, const char* what) {
  if (!fs::is_directory(p)) throw ConfigError(std::string(what) + " is not a directory: " + p.string());
}

std::string fmt(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

EvalRun evaluate_pages(const std::vector<PageTranscript>& refs,
                       const std::vector<std::optional<PageTranscript>>& hyps, double gamma,
                       unsigned jobs) {
  if (refs.size() != hyps.size()) throw std::invalid_argument("reference/hypothesis count mismatch");
  std::vector<PageOutcome> outcomes(refs.size());
  parallel_for(refs.size(), jobs, [&](std::size_t i) {
    try {
      const PageTranscript empty{refs[i].page_id, {}};
      outcomes[i].report = evaluate_page(refs[i], hyps[i] ? *hyps[i] : empty, gamma);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });
  return collect(refs, hyps, outcomes);
}

EvalRun evaluate_directories(const fs::path& ref_dir, const fs::path& hyp_dir, double gamma,
                             unsigned jobs) {
  ensure_directory(ref_dir, "reference directory");
  ensure_directory(hyp_dir, "hypothesis directory");
  const std::vector<std::string> names = list_page_files(ref_dir);

  // Reading is cheap next to scoring; parse inside the pool so that one bad
  // file only costs its own page.
  std::vector<PageTranscript> refs(names.size());
  std::vector<std::optional<PageTranscript>> hyps(names.size());
  std::vector<PageOutcome> outcomes(names.size());
  parallel_for(names.size(), jobs, [&](std::size_t i) {
    refs[i].page_id = names[i];
    try {
      refs[i] = read_page(ref_dir / names[i], names[i]);
      const fs::path hp = hyp_dir / names[i];
      if (fs::is_regular_file(hp)) hyps[i] = read_page(hp, names[i]);
      const PageTranscript empty{names[i], {}};
      outcomes[i].report = evaluate_page(refs[i], hyps[i] ? *hyps[i] : empty, gamma);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
      if (!hyps[i] && fs::is_regular_file(hyp_dir / names[i])) hyps[i] = PageTranscript{};
    }
  });
  return collect(refs, hyps, outcomes);
}

int run_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  if (!(opts.gamma >= 0.0)) {
    err << "error: --gamma must be non-negative\n";
    return kExitUsage;
  }
  EvalRun run;
  try {
    run = evaluate_directories(opts.ref_dir, opts.hyp_dir, opts.gamma, opts.jobs);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  const ReportOptions ro{opts.gamma, opts.per_page, opts.timings};
  const std::string text = opts.format == ReportFormat::kJson
                               ? report_json(run, ro).dump(2) + "\n"
                               : report_tsv(run, ro);
  try {
    if (opts.out.empty()) {
      out << text;
    } else {
      write_file(opts.out, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  for (const auto& id : run.missing_hypotheses) {
    err << "warning: no hypothesis for '" << id << "', scored as an empty page\n";
  }
  for (const auto& e : run.errors) err << "error: " << e.message << '\n';
  return run.errors.empty() && run.missing_hypotheses.empty() ? kExitOk : kExitData;
}

std::vector<SweepRow> run_sweep(const std::vector<PageTranscript>& pages, DistortionConfig cfg,
                                std::size_t last, double gamma, unsigned jobs,
                                std::vector<std::vector<PageTranscript>>* corpora,
                                std::vector<std::vector<PageManifest>>* manifests) {
  cfg.validate();
  const bool char_mode =
      cfg.mode == DistortionMode::kCharWordLevel || cfg.mode == DistortionMode::kCharLineLevel;

  std::vector<std::size_t> line_counts, word_counts;
  std::size_t total_words = 0, letters = 0;
  for (const auto& p : pages) {
    line_counts.push_back(p.line_count());
    word_counts.push_back(p.word_count());
    total_words += p.word_count();
    for (const auto& l : p.lines) {
      for (const auto& w : l) letters += w.length();
    }
  }
  const double avg_word_len =
      total_words ? static_cast<double>(letters) / static_cast<double>(total_words) : 0.0;

  std::vector<SweepRow> rows;
  for (std::size_t v = 0; v <= last; ++v) {
    if (char_mode) {
      cfg.tcer_step = static_cast<int>(v);
    } else {
      cfg.count = v;
    }
    std::vector<PageTranscript> distorted(pages.size());
    std::vector<PageManifest> mans(pages.size());
    parallel_for(pages.size(), jobs,
                 [&](std::size_t i) { distorted[i] = distort_page(pages[i], cfg, &mans[i]); });

    std::vector<std::optional<PageTranscript>> hyps(distorted.begin(), distorted.end());
    EvalRun run = evaluate_pages(pages, hyps, gamma, jobs);
    if (!run.errors.empty()) {
      throw EvalError("page '" + run.errors.front().page_id + "': " + run.errors.front().message);
    }

    SweepRow row;
    row.param = v;
    row.report = std::move(*run.corpus);
    for (const auto& m : mans) row.in_word_splits += m.in_word_splits();
    switch (cfg.mode) {
      case DistortionMode::kCharWordLevel:
      case DistortionMode::kCharLineLevel:
        row.target_cer = cfg.target_cer();
        row.target_wer = predict_twer(cfg.tcer_step, avg_word_len);
        break;
      case DistortionMode::kLineSwap:
        row.target_nsfd = predict_nsfd_swaps(v, cfg.range_min, cfg.range_max, line_counts);
        break;
      case DistortionMode::kLineSplit:
        row.target_nsfd = predict_nsfd_splits(v, line_counts, word_counts);
        row.target_dbwer = predict_bwer_increase(row.in_word_splits, total_words);
        break;
    }
    rows.push_back(std::move(row));
    if (corpora) corpora->push_back(std::move(distorted));
    if (manifests) manifests->push_back(std::move(mans));
  }
  return rows;
}

std::string sweep_tsv(const std::vector<SweepRow>& rows, DistortionMode mode) {
  const bool char_mode =
      mode == DistortionMode::kCharWordLevel || mode == DistortionMode::kCharLineLevel;
  std::ostringstream out;
  out << (char_mode ? "step" : "S")
      << "\tWER\tbWER\thWER\tCER\thCER\tNSFD\ttCER\ttWER\ttNSFD\tt_dbWER\tin_word_splits\n";
  auto opt = [](double v) { return v < 0 ? std::string("NA") : fmt(100.0 * v, 3); };
  for (const auto& r : rows) {
    const CorpusReport& c = r.report;
    out << r.param << '\t' << fmt(100.0 * c.wer.value(), 3) << '\t'
        << fmt(100.0 * c.bwer.value(), 3) << '\t' << fmt(100.0 * c.hwer.value(), 3) << '\t'
        << fmt(100.0 * c.cer.value(), 3) << '\t' << fmt(100.0 * c.hcer.value(), 3) << '\t'
        << fmt(100.0 * c.nsfd, 3) << '\t' << opt(r.target_cer) << '\t' << opt(r.target_wer)
        << '\t' << opt(r.target_nsfd) << '\t' << opt(r.target_dbwer) << '\t'
        << r.in_word_splits << '\n';
  }
  return out.str();
}

int run_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    opts.config.validate();
    ensure_directory(opts.ref_dir, "reference directory");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<std::string> names;
  std::vector<std::string> raw;
  std::vector<PageTranscript> pages;
  try {
    names = list_page_files(opts.ref_dir);
    for (const auto& n : names) {
      raw.push_back(read_file(opts.ref_dir / n));
      pages.push_back(tokenize_page(raw.back(), n));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  // Unchanged pages keep their original bytes.
  auto write_tree = [&](const fs::path& dir, const std::vector<PageTranscript>& corpus) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i] == pages[i]) {
        write_file(dir / names[i], raw[i]);
      } else {
        write_page(dir / names[i], corpus[i]);
      }
    }
  };

  try {
    if (!opts.sweep) {
      std::vector<PageTranscript> distorted(pages.size());
      std::vector<PageManifest> mans(pages.size());
      parallel_for(pages.size(), opts.jobs, [&](std::size_t i) {
        distorted[i] = distort_page(pages[i], opts.config, &mans[i]);
      });
      write_tree(opts.out_dir, distorted);
      write_file(opts.out_dir.parent_path() / (opts.out_dir.filename().string() + ".manifest.json"),
                 manifest_json(opts.config, mans).dump(2) + "\n");
      out << "wrote " << distorted.size() << " pages to " << opts.out_dir.string() << '\n';
      return kExitOk;
    }

    const bool char_mode = opts.config.mode == DistortionMode::kCharWordLevel ||
                           opts.config.mode == DistortionMode::kCharLineLevel;
    const std::size_t last =
        char_mode ? static_cast<std::size_t>(opts.config.tcer_step) : opts.config.count;
    std::vector<std::vector<PageTranscript>> corpora;
    std::vector<std::vector<PageManifest>> manifests;
    const auto rows =
        run_sweep(pages, opts.config, last, opts.gamma, opts.jobs, &corpora, &manifests);
    for (std::size_t v = 0; v < rows.size(); ++v) {
      const std::string tag = (char_mode ? "step_" : "S_") + std::to_string(v);
      DistortionConfig cfg = opts.config;
      if (char_mode) {
        cfg.tcer_step = static_cast<int>(v);
      } else {
        cfg.count = v;
      }
      write_tree(opts.out_dir / tag, corpora[v]);
      write_file(opts.out_dir / (tag + ".manifest.json"),
                 manifest_json(cfg, manifests[v]).dump(2) + "\n");
    }
    const std::string table = sweep_tsv(rows, opts.config.mode);
    write_file(opts.out_dir / "sweep.tsv", table);
    out << table;
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.pages == 0 || opts.lines == 0 || opts.words == 0) {
    err << "error: pages, lines and words must be positive\n";
    return kExitUsage;
  }
  try {
    const auto corpus = synthetic_corpus(opts.pages, opts.lines, opts.words, opts.seed);
    for (const auto& p : corpus) write_page(opts.out_dir / (p.page_id + ".txt"), p);
    out << "wrote " << corpus.size() << " pages to " << opts.out_dir.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace htreval
