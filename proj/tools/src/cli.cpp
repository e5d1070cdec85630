#include "erdiff/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "erdiff/benchgen.hpp"
#include "erdiff/complexity.hpp"
#include "erdiff/corpus.hpp"
#include "erdiff/errors.hpp"
#include "erdiff/esde.hpp"
#include "erdiff/forest.hpp"
#include "erdiff/linearity.hpp"
#include "erdiff/parallel.hpp"
#include "erdiff/report.hpp"
#include "erdiff/results.hpp"
#include "erdiff/version.hpp"

namespace fs = std::filesystem;

namespace erdiff::cli {

namespace {

std::string describe(const Error& e) { return std::string(to_string(e.code())) + ": " + e.what(); }

std::string default_name(const fs::path& dir) {
  auto normal = dir.lexically_normal();
  auto name = normal.filename().string();
  if (name.empty()) name = normal.parent_path().filename().string();
  return name.empty() ? std::string("dataset") : name;
}

std::vector<std::string> dataset_names(const std::vector<fs::path>& dirs, const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != dirs.size()) {
    fail(ErrorCode::InvalidConfig, "--name must be given once per --dataset");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dirs.size(); ++i) out.push_back(names.empty() ? default_name(dirs[i]) : names[i]);
  return out;
}

// Dataset names end up in file names.
std::string file_stem(std::string_view name) {
  std::string out(name);
  for (char& c : out) {
    if (c == '/' || c == '\\' || c == ':' || c == ' ') c = '_';
  }
  return out;
}

void write_json(const fs::path& path, const nlohmann::json& j) { report::write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingFile, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedRow, path.string() + ": " + e.what());
  }
}

// Files whose names end in `suffix` under each directory; plain files
// are taken as given. Directory hits are sorted for a stable order.
std::vector<fs::path> collect(const std::vector<fs::path>& paths, std::string_view suffix) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() >= suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      out.push_back(p);
    } else {
      fail(ErrorCode::MissingFile, p.string() + " not found");
    }
  }
  return out;
}

double linearity_max(const DifficultyVerdict& v) {
  return std::max(v.inputs.f1_cs.value_or(0.0), v.inputs.f1_js.value_or(0.0));
}

}  // namespace

int cmd_profile(const ProfileOptions& options, std::ostream& out, std::ostream& err) {
  if (options.datasets.empty()) fail(ErrorCode::InvalidConfig, "profile needs at least one --dataset");
  SchemeTag scheme;
  if (options.scheme == "cs-js" || options.scheme == "CSJS") {
    scheme = SchemeTag::CSJS;
  } else if (options.scheme == "schema-based") {
    scheme = SchemeTag::CSJS_SB;
  } else {
    fail(ErrorCode::InvalidConfig, "unknown --scheme '" + options.scheme + "' (cs-js or schema-based)");
  }
  auto names = dataset_names(options.datasets, options.names);

  struct Outcome {
    LinearityResult cs, js;
    ComplexityReport complexity;
    std::optional<std::string> error;
  };
  std::vector<Outcome> outcomes(options.datasets.size());
  TokenizeOptions tokenize{options.strip_punctuation};
  ComplexityOptions copts;
  copts.epsilon = options.epsilon;
  copts.seed = options.seed;
  copts.max_samples = options.max_samples;
  copts.easy_threshold = options.thresholds.complexity;

  parallel_for(
      options.datasets.size(),
      [&](std::size_t i) {
        auto& o = outcomes[i];
        try {
          SplitOptions sopts;
          sopts.name = names[i];
          Dataset d = load_split(options.datasets[i], sopts);
          o.cs = degree_of_linearity(d, SimilarityMeasure::CS, tokenize);
          o.js = degree_of_linearity(d, SimilarityMeasure::JS, tokenize);
          o.complexity = complexity_profile(d, scheme, copts, tokenize);
        } catch (const Error& e) {
          o.error = describe(e);
        }
      },
      1);

  std::vector<std::pair<std::string, LinearityResult>> lin_rows;
  std::vector<ComplexityReport> reports;
  std::vector<report::Bar> lin_bars, cx_bars;
  int code = kOk;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.error) {
      err << names[i] << ": " << *o.error << '\n';
      code = kInputError;
      continue;
    }
    VerdictInputs inputs;
    inputs.dataset = names[i];
    inputs.f1_cs = o.cs.f1_max;
    inputs.f1_js = o.js.f1_max;
    inputs.complexity_mean = o.complexity.mean();
    auto v = verdict(inputs, options.thresholds);

    fs::path dir = options.out / file_stem(names[i]);
    std::vector<std::pair<std::string, LinearityResult>> mine{{names[i], o.cs}, {names[i], o.js}};
    write_json(dir / "profile.json", {{"dataset", names[i]},
                                      {"scheme", options.scheme},
                                      {"linearity", {{"cs", report::linearity_json(o.cs)},
                                                     {"js", report::linearity_json(o.js)}}},
                                      {"complexity", report::complexity_json(o.complexity)},
                                      {"verdict", report::verdict_json(v)}});
    report::write_text(dir / "linearity.csv", report::linearity_csv(mine));
    report::write_text(dir / "linearity_curve.csv", report::linearity_curve_csv(mine));
    report::write_text(dir / "complexity.csv", report::complexity_csv({o.complexity}));

    lin_rows.insert(lin_rows.end(), mine.begin(), mine.end());
    reports.push_back(o.complexity);
    lin_bars.push_back({names[i], std::max(o.cs.f1_max, o.js.f1_max)});
    cx_bars.push_back({names[i], o.complexity.mean()});
    out << names[i] << ": linearity CS " << o.cs.f1_max << " JS " << o.js.f1_max << ", complexity mean "
        << o.complexity.mean() << " (" << (o.complexity.easy() ? "easy" : "hard") << ")\n";
  }
  if (!reports.empty()) {
    report::write_text(options.out / "linearity.csv", report::linearity_csv(lin_rows));
    report::write_text(options.out / "linearity_curve.csv", report::linearity_curve_csv(lin_rows));
    report::write_text(options.out / "complexity.csv", report::complexity_csv(reports));
    if (options.svg) {
      report::write_text(options.out / "linearity.svg",
                         report::svg_bar_chart("Degree of linearity", lin_bars, 1.0, options.thresholds.linearity));
      report::write_text(options.out / "complexity.svg",
                         report::svg_bar_chart("Mean complexity", cx_bars, 1.0, options.thresholds.complexity));
    }
  }
  return code;
}

int cmd_esde(const EsdeOptions& options, std::ostream& out, std::ostream& err) {
  if (options.datasets.empty()) fail(ErrorCode::InvalidConfig, "esde needs at least one --dataset");
  auto names = dataset_names(options.datasets, options.names);
  std::vector<SchemeTag> schemes;
  if (options.schemes.empty()) {
    auto all = esde_schemes();
    schemes.assign(all.begin(), all.end());
  } else {
    for (const auto& s : options.schemes) {
      SchemeTag tag = parse_scheme(s);
      if (tag == SchemeTag::CSJS || tag == SchemeTag::CSJS_SB) {
        fail(ErrorCode::InvalidConfig, "'" + s + "' is not an ESDE scheme");
      }
      schemes.push_back(tag);
    }
  }
  if (!options.embeddings.empty() && options.embeddings.size() != 1 &&
      options.embeddings.size() != options.datasets.size()) {
    fail(ErrorCode::InvalidConfig, "--embeddings must be given once or once per --dataset");
  }
  std::vector<EmbeddingStore> stores;
  for (const auto& path : options.embeddings) stores.push_back(load_embeddings(path));

  std::vector<MatcherResult> rows;
  int code = kOk;
  for (std::size_t i = 0; i < options.datasets.size(); ++i) {
    const EmbeddingStore* store = nullptr;
    if (!stores.empty()) store = &stores[stores.size() == 1 ? 0 : i];
    try {
      SplitOptions sopts;
      sopts.name = names[i];
      Dataset d = load_split(options.datasets[i], sopts);
      bool same_schema = d.left.schema() == d.right.schema();
      std::size_t produced = 0;
      for (SchemeTag tag : schemes) {
        if (is_embedding_scheme(tag) && !store) {
          err << "warning: " << names[i] << ": " << esde_name(tag) << " skipped, no embedding store\n";
          code = std::max(code, static_cast<int>(kPartial));
          continue;
        }
        if (is_schema_based(tag) && !same_schema) {
          err << "warning: " << names[i] << ": " << esde_name(tag) << " skipped, the two schemas differ\n";
          code = std::max(code, static_cast<int>(kPartial));
          continue;
        }
        FeatureScheme scheme;
        scheme.tag = tag;
        scheme.embeddings = store;
        scheme.tokenize.strip_punctuation = options.strip_punctuation;
        auto run = esde_run(d, scheme);
        run.result.dataset = names[i];
        rows.push_back(run.result);
        ++produced;
      }
      if (produced == 0) fail(ErrorCode::InvalidConfig, "every requested scheme was skipped");
      if (options.baselines) {
        FeatureScheme scheme;
        scheme.tag = same_schema ? SchemeTag::SB : SchemeTag::SA;
        scheme.tokenize.strip_punctuation = options.strip_punctuation;
        for (auto kind : {BaselineKind::Tree, BaselineKind::Forest}) {
          auto r = baseline_run(d, scheme, kind, options.seed);
          r.dataset = names[i];
          rows.push_back(r);
        }
      }
    } catch (const Error& e) {
      err << names[i] << ": " << describe(e) << '\n';
      code = kInputError;
    }
  }
  for (const auto& r : rows) {
    char f1[16];
    std::snprintf(f1, sizeof f1, "%.2f", r.f1);
    out << r.dataset << '\t' << r.matcher << '\t' << f1 << '\n';
  }
  if (!rows.empty()) {
    if (options.out.has_parent_path()) fs::create_directories(options.out.parent_path());
    write_results(rows, options.out);
  }
  return code;
}

int cmd_verdict(const VerdictOptions& options, std::ostream& out, std::ostream& err) {
  if (options.profiles.empty() && options.results.empty()) {
    fail(ErrorCode::InvalidConfig, "verdict needs --profile or --results inputs");
  }
  std::vector<std::string> order;
  std::map<std::string, VerdictInputs> inputs;
  auto touch = [&](const std::string& name) -> VerdictInputs& {
    auto [it, inserted] = inputs.try_emplace(name);
    if (inserted) {
      it->second.dataset = name;
      order.push_back(name);
    }
    return it->second;
  };

  for (const auto& path : collect(options.profiles, "profile.json")) {
    auto j = read_json(path);
    try {
      auto& in = touch(j.at("dataset").get<std::string>());
      in.f1_cs = j.at("linearity").at("cs").at("f1_max").get<double>();
      in.f1_js = j.at("linearity").at("js").at("f1_max").get<double>();
      in.complexity_mean = j.at("complexity").at("mean").get<double>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedRow, path.string() + ": " + e.what());
    }
  }
  std::vector<MatcherResult> all;
  for (const auto& path : options.results) {
    auto rows = ingest_results(path);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  for (const auto& r : all) touch(r.dataset);

  int code = kOk;
  std::vector<DifficultyVerdict> verdicts;
  for (const auto& name : order) {
    auto& in = inputs[name];
    auto mine = results_for(all, name);
    if (!mine.empty()) {
      in.lbm = lbm(mine);
      try {
        in.nlb = nlb(mine);
      } catch (const Error& e) {
        err << "warning: " << name << ": " << describe(e) << '\n';
        code = kPartial;
      }
    }
    auto v = verdict(in, options.thresholds);
    write_json(options.out / (file_stem(name) + ".verdict.json"), report::verdict_json(v));
    out << name << ": " << v.overall() << (v.strongly_challenging ? " (strongly)" : "") << '\n';
    verdicts.push_back(std::move(v));
  }
  report::write_text(options.out / "verdicts.csv", report::verdict_csv(verdicts));
  return code;
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream&) {
  TableOptions topts;
  topts.id_column = options.id_column;
  Table left = load_table(options.left, topts);
  Table right = load_table(options.right, topts);
  GroundTruth gold = load_gold(options.gold, left, right);

  ConfigSpace space = ConfigSpace::defaults(left, right);
  if (!options.attributes.empty()) {
    space.attributes.clear();
    for (const auto& a : options.attributes) {
      space.attributes.push_back(a == "all" ? std::nullopt : std::optional<std::string>(a));
    }
  }
  if (options.clean == "on") {
    space.clean = {true};
  } else if (options.clean == "off") {
    space.clean = {false};
  } else if (options.clean != "both") {
    fail(ErrorCode::InvalidConfig, "--clean must be both, on or off");
  }
  if (options.indexed == "left") {
    space.indexed = {Side::Left};
  } else if (options.indexed == "right") {
    space.indexed = {Side::Right};
  } else if (options.indexed != "both") {
    fail(ErrorCode::InvalidConfig, "--indexed must be both, left or right");
  }
  std::optional<EmbeddingStore> store;
  if (options.blocker == "embedding") {
    if (!options.embeddings) fail(ErrorCode::MissingEmbedding, "the embedding blocker needs --embeddings");
    space.kind = BlockerKind::Embedding;
    store = load_embeddings(*options.embeddings);
  } else if (options.blocker != "tfidf") {
    fail(ErrorCode::InvalidConfig, "--blocker must be tfidf or embedding");
  }

  erdiff::GenerateOptions gopts;
  gopts.recall_min = options.recall_min;
  gopts.space = space;
  gopts.seed = options.seed;
  gopts.name = options.name;
  gopts.profile = options.profile;
  gopts.embeddings = store ? &*store : nullptr;
  auto bundle = generate_benchmark(left, right, gold, gopts);
  write_bundle(bundle, gold, options.out);

  const auto& o = bundle.outcome;
  out << "config: " << bundle.config.describe() << '\n'
      << "PC " << o.pc << "  PQ " << o.pq << "  |C| " << o.candidate_count << "  |P| " << o.positives << "  IR "
      << bundle.imbalance_ratio() << '\n'
      << "splits: " << bundle.dataset.splits.train.size() << '/' << bundle.dataset.splits.validation.size() << '/'
      << bundle.dataset.splits.test.size() << '\n';
  if (bundle.profile) out << "verdict: " << bundle.profile->verdict.overall() << '\n';
  return kOk;
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream&) {
  auto files = collect(options.inputs, ".verdict.json");
  if (files.empty()) fail(ErrorCode::EmptyInput, "no verdict files found");
  std::vector<report::SummaryRow> rows;
  std::vector<report::Bar> lin, cx, nlb_bars, lbm_bars;
  VerdictThresholds thresholds;
  for (const auto& path : files) {
    DifficultyVerdict v;
    try {
      v = report::verdict_from_json(read_json(path));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedRow, path.string() + ": " + e.what());
    }
    thresholds = v.thresholds;
    const auto& in = v.inputs;
    std::string label = v.overall();
    if (v.strongly_challenging) label += " (strongly)";
    rows.push_back({in.dataset, in.f1_cs, in.f1_js, in.complexity_mean, in.nlb, in.lbm, label});
    if (in.f1_cs || in.f1_js) lin.push_back({in.dataset, linearity_max(v)});
    if (in.complexity_mean) cx.push_back({in.dataset, *in.complexity_mean});
    if (in.nlb) nlb_bars.push_back({in.dataset, *in.nlb});
    if (in.lbm) lbm_bars.push_back({in.dataset, *in.lbm});
  }
  std::string table = report::markdown_summary(rows);
  if (options.out) {
    report::write_text(*options.out, table);
  } else {
    out << table;
  }
  if (options.svg_dir) {
    auto scale = [](const std::vector<report::Bar>& bars, double floor) {
      double m = floor;
      for (const auto& b : bars) m = std::max(m, b.value);
      return m;
    };
    const auto& d = *options.svg_dir;
    report::write_text(d / "linearity.svg", report::svg_bar_chart("Degree of linearity", lin, 1.0, thresholds.linearity));
    report::write_text(d / "complexity.svg", report::svg_bar_chart("Mean complexity", cx, 1.0, thresholds.complexity));
    report::write_text(d / "nlb.svg",
                       report::svg_bar_chart("Non-linear boost (pp)", nlb_bars, scale(nlb_bars, 20.0), thresholds.nlb));
    report::write_text(d / "lbm.svg",
                       report::svg_bar_chart("Learning-based margin (pp)", lbm_bars, scale(lbm_bars, 20.0), thresholds.lbm));
  }
  return kOk;
}

namespace {

void add_thresholds(CLI::App* cmd, VerdictThresholds& t) {
  cmd->add_option("--linearity-threshold", t.linearity, "Degree of linearity above which a dataset is easy")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--complexity-threshold", t.complexity, "Mean complexity below which a dataset is easy")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--nlb-threshold", t.nlb, "NLB (pp) below which a dataset is easy")
      ->capture_default_str()
      ->check(CLI::Range(-100.0, 100.0));
  cmd->add_option("--lbm-threshold", t.lbm, "LBM (pp) below which a dataset is easy")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 100.0));
  cmd->add_option("--strong-threshold", t.strong, "NLB and LBM (pp) for the strongly challenging flag")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 100.0));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark difficulty profiling and generation for entity matching"};
  app.name("erdiff");
  app.set_config("--config", "", "TOML file with option values; command-line flags take precedence");
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1, 1);

  ProfileOptions po;
  auto* profile = app.add_subcommand("profile", "Degree of linearity and complexity measures per dataset");
  profile->add_option("-d,--dataset", po.datasets, "Split directory (repeatable)")->required();
  profile->add_option("--name", po.names, "Dataset name, once per --dataset");
  profile->add_option("--scheme", po.scheme, "cs-js or schema-based")->capture_default_str();
  profile->add_option("--seed", po.seed, "Seed for the stochastic measures")->capture_default_str();
  profile->add_option("--epsilon", po.epsilon, "Gower distance threshold of the network measures")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  profile->add_option("--max-samples", po.max_samples, "Subsampling cap for the quadratic measures (0: off)")
      ->capture_default_str();
  profile->add_flag("--strip-punctuation", po.strip_punctuation, "Drop punctuation before tokenizing");
  profile->add_flag("--svg", po.svg, "Also write SVG bar charts");
  profile->add_option("-o,--out", po.out, "Output directory")->capture_default_str();
  add_thresholds(profile, po.thresholds);

  EsdeOptions eo;
  auto* esde = app.add_subcommand("esde", "Run the ESDE linear matchers and write MatcherResult rows");
  esde->add_option("-d,--dataset", eo.datasets, "Split directory (repeatable)")->required();
  esde->add_option("--name", eo.names, "Dataset name, once per --dataset");
  esde->add_option("--scheme", eo.schemes, "Schemes to run (default: all eight)");
  esde->add_option("--embeddings", eo.embeddings, "Embedding file, once or once per --dataset");
  esde->add_flag("--baselines", eo.baselines, "Also train the decision tree and random forest baselines");
  esde->add_flag("--strip-punctuation", eo.strip_punctuation, "Drop punctuation before tokenizing");
  esde->add_option("--seed", eo.seed, "Seed for the baselines")->capture_default_str();
  esde->add_option("-o,--out", eo.out, "Results CSV")->capture_default_str();

  VerdictOptions vo;
  auto* verdict_cmd = app.add_subcommand("verdict", "Combine profiles and matcher results into verdicts");
  verdict_cmd->add_option("--profile", vo.profiles, "profile.json or a directory containing them");
  verdict_cmd->add_option("--results", vo.results, "Results CSV (repeatable)")->check(CLI::ExistingFile);
  verdict_cmd->add_option("-o,--out", vo.out, "Output directory")->capture_default_str();
  add_thresholds(verdict_cmd, vo.thresholds);

  GenerateOptions go;
  auto* generate = app.add_subcommand("generate", "Build a new benchmark by recall-constrained blocking");
  generate->add_option("--left", go.left, "Left table CSV")->required()->check(CLI::ExistingFile);
  generate->add_option("--right", go.right, "Right table CSV")->required()->check(CLI::ExistingFile);
  generate->add_option("--gold", go.gold, "Gold matches CSV (left_id,right_id)")->required()->check(CLI::ExistingFile);
  generate->add_option("--id-column", go.id_column, "Id column of both tables");
  generate->add_option("--recall-min", go.recall_min, "Minimum pair completeness")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", go.seed, "Split seed")->capture_default_str();
  generate->add_option("--attribute", go.attributes, "Attribute to block on, or 'all' (repeatable)");
  generate->add_option("--clean", go.clean, "Stop-word removal and stemming: both, on, off")->capture_default_str();
  generate->add_option("--indexed", go.indexed, "Indexed table: both, left, right")->capture_default_str();
  generate->add_option("--blocker", go.blocker, "tfidf or embedding")->capture_default_str();
  generate->add_option("--embeddings", go.embeddings, "Embedding file for the embedding blocker");
  generate->add_flag("--profile", go.profile, "Profile the new benchmark and attach a verdict");
  generate->add_option("--name", go.name, "Benchmark name")->capture_default_str();
  generate->add_option("-o,--out", go.out, "Output directory")->capture_default_str();

  ReportOptions ro;
  auto* report_cmd = app.add_subcommand("report", "Cross-dataset Markdown summary of verdicts");
  report_cmd->add_option("inputs", ro.inputs, "Verdict JSON files or directories")->required();
  report_cmd->add_option("-o,--out", ro.out, "Markdown file (default: stdout)");
  report_cmd->add_option("--svg", ro.svg_dir, "Directory for SVG bar charts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*profile) return cmd_profile(po, out, err);
    if (*esde) return cmd_esde(eo, out, err);
    if (*verdict_cmd) return cmd_verdict(vo, out, err);
    if (*generate) return cmd_generate(go, out, err);
    return cmd_report(ro, out, err);
  } catch (const Error& e) {
    err << "error: " << describe(e) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace erdiff::cli
