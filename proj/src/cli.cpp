// Copyright 2026 The pairminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pairminer/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pairminer/analytics.hpp"
#include "pairminer/catalog.hpp"
#include "pairminer/error.hpp"
#include "pairminer/evaluation.hpp"
#include "pairminer/github_client.hpp"
#include "pairminer/ingest.hpp"
#include "pairminer/jsonl.hpp"
#include "pairminer/matcher.hpp"
#include "pairminer/parallel.hpp"
#include "pairminer/prospect.hpp"
#include "pairminer/repo_host.hpp"
#include "pairminer/stats.hpp"
#include "pairminer/text_table.hpp"

namespace pairminer {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Globals {
  std::vector<std::string> tags;
  fs::path out = "out";
  std::size_t jobs = 0;
  std::uint64_t seed = 1;
  std::optional<double> threshold;
  std::string similarity_norm = "max-norm";
  std::string catalog;
  std::string cache;
  bool allow_self_edits = false;

  fs::path cache_path() const { return cache.empty() ? out / "timelines.json" : fs::path(cache); }
};

std::string lower(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return r;
}

void write_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot write {}", path.string()));
  f << text;
  if (!f) throw Error(fmt::format("error writing {}", path.string()));
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

class TagFilter {
 public:
  explicit TagFilter(const std::vector<std::string>& tags) {
    for (const auto& t : tags) tags_.insert(lower(t));
  }
  bool active() const { return !tags_.empty(); }
  bool keep(std::string_view tag) const { return tags_.empty() || tags_.count(lower(tag)) > 0; }

  // Records of answers missing from `tag_of` are kept so that downstream
  // validation still reports them.
  bool keep_answer(const TagMap& tag_of, PostId answer) const {
    if (!active()) return true;
    auto it = tag_of.find(answer);
    return it == tag_of.end() || keep(it->second);
  }

 private:
  std::set<std::string> tags_;
};

template <typename T>
std::vector<T> keep_answers(std::vector<T> items, const TagFilter& filter, const TagMap& tag_of) {
  std::erase_if(items, [&](const T& x) { return !filter.keep_answer(tag_of, x.answer_id); });
  return items;
}

struct Corpus {
  std::vector<AnswerTimeline> timelines;  // after the tag filter
  TagMap tag_of;                          // every cached answer
};

Corpus load_corpus(const Globals& g, const TagFilter& filter) {
  Corpus c;
  auto all = read_timeline_cache(g.cache_path());
  c.tag_of = tags_of(all);
  for (auto& t : all)
    if (filter.keep(t.answer.tag)) c.timelines.push_back(std::move(t));
  return c;
}

MatchConfig match_config(const Globals& g) {
  MatchConfig cfg;
  if (g.threshold) cfg.threshold = *g.threshold;
  cfg.similarity_norm = parse_similarity_norm(g.similarity_norm);
  cfg.require_distinct_authors = !g.allow_self_edits;
  return cfg;
}

RegexCatalog catalog_of(const Globals& g) {
  return g.catalog.empty() ? RegexCatalog::builtin() : load_catalog(g.catalog);
}

fs::path pairs_default(const Globals& g, bool baseline) {
  return g.out / (baseline ? "baseline_pairs.jsonl" : "pairs.jsonl");
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string dump;
  std::string posts, versions, comments;
};

int cmd_ingest(const Globals& g, const IngestArgs& a, std::ostream& out, std::ostream& err) {
  DumpPaths paths;
  fs::path dir = a.dump.empty() ? fs::path(".") : fs::path(a.dump);
  paths.posts = a.posts.empty() ? dir / "posts.jsonl" : fs::path(a.posts);
  paths.versions = a.versions.empty() ? dir / "versions.jsonl" : fs::path(a.versions);
  paths.comments = a.comments.empty() ? dir / "comments.jsonl" : fs::path(a.comments);
  if (a.dump.empty() && (a.posts.empty() || a.versions.empty() || a.comments.empty()))
    throw InputError("ingest needs --dump <dir> or all of --posts, --versions, --comments");

  LoadOptions opts;
  opts.parallel = resolve_jobs(g.jobs) > 1;
  LoadedDump dump = load_dump(paths, opts);
  TagFilter filter(g.tags);
  std::erase_if(dump.timelines, [&](const AnswerTimeline& t) { return !filter.keep(t.answer.tag); });

  write_timeline_cache(g.cache_path(), dump.timelines);

  struct Counts {
    std::size_t answers = 0, edits = 0, comments = 0;
  };
  std::map<std::string, Counts> by_tag;
  Counts total;
  for (const auto& t : dump.timelines) {
    auto& c = by_tag[t.answer.tag];
    for (Counts* x : {&c, &total}) {
      x->answers += 1;
      x->edits += t.edit_count();
      x->comments += t.comments.size();
    }
  }
  TextTable table({"Tag", "Answers", "Edits", "Comments"});
  for (const auto& [tag, c] : by_tag)
    table.row({tag, with_commas(c.answers), with_commas(c.edits), with_commas(c.comments)});
  table.rule();
  table.row({kOverallTag, with_commas(total.answers), with_commas(total.edits), with_commas(total.comments)});
  std::string text = table.str();
  write_file(g.out / "ingest.txt", text);
  out << text;
  if (dump.rejected_comments > 0 || dump.dropped_answers > 0)
    err << fmt::format("ingest: skipped {} comment(s) not on a code-bearing answer, {} answer(s) without code\n",
                       dump.rejected_comments, dump.dropped_answers);
  return 0;
}

// ---------------------------------------------------------------- match

struct MatchArgs {
  bool baseline = false;
  std::string pairs_out;
};

int cmd_match(const Globals& g, const MatchArgs& a, std::ostream& out) {
  TagFilter filter(g.tags);
  Corpus corpus = load_corpus(g, filter);
  CorpusOptions copts{g.jobs};
  std::vector<CommentEditPair> pairs =
      a.baseline ? baseline_corpus(corpus.timelines, copts)
                 : match_corpus(corpus.timelines, catalog_of(g), match_config(g), copts);
  fs::path dest = a.pairs_out.empty() ? pairs_default(g, a.baseline) : fs::path(a.pairs_out);
  write_pairs(dest, pairs);

  std::map<std::string, std::pair<std::size_t, std::size_t>> by_tag;  // answers, pairs
  for (const auto& t : corpus.timelines) by_tag[t.answer.tag].first += 1;
  for (const auto& p : pairs) by_tag[corpus.tag_of.at(p.answer_id)].second += 1;
  TextTable table({"Tag", "Answers", "Pairs"});
  for (const auto& [tag, c] : by_tag) table.row({tag, with_commas(c.first), with_commas(c.second)});
  table.rule();
  table.row({kOverallTag, with_commas(corpus.timelines.size()), with_commas(pairs.size())});
  out << table.str();
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string ground_truth;
  std::string pairs;
  std::string baseline_pairs;
  std::string agreement;
};

std::vector<GroundTruthEntry> load_ground_truth(const std::string& path, const TagFilter& filter,
                                                const TagMap& tag_of) {
  if (path.empty()) throw InputError("--ground-truth is required");
  return keep_answers(read_ground_truth(path), filter, tag_of);
}

int cmd_evaluate(const Globals& g, const EvaluateArgs& a, std::ostream& out) {
  TagFilter filter(g.tags);
  Corpus corpus = load_corpus(g, filter);
  auto gt = load_ground_truth(a.ground_truth, filter, corpus.tag_of);
  auto pairs = keep_answers(read_pairs(a.pairs.empty() ? pairs_default(g, false) : fs::path(a.pairs)),
                            filter, corpus.tag_of);
  EvalReport report = score(pairs, gt, corpus.tag_of);

  std::optional<EvalReport> baseline;
  if (!a.baseline_pairs.empty())
    baseline = score(keep_answers(read_pairs(a.baseline_pairs), filter, corpus.tag_of), gt, corpus.tag_of);

  std::string text = format_eval_report(report, baseline ? &*baseline : nullptr);
  ordered_json j;
  j["code_check"] = eval_report_to_json(report);
  if (baseline) j["baseline"] = eval_report_to_json(*baseline);
  if (!a.agreement.empty()) {
    double kappa = cohen_kappa(read_agreement_table(a.agreement));
    text += fmt::format("\nCohen's kappa: {:.3f}\n", kappa);
    j["kappa"] = kappa;
  }
  write_file(g.out / "evaluation.txt", text);
  write_file(g.out / "evaluation.json", json_text(j));
  out << text;
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string ground_truth;
  std::vector<double> thresholds{60, 70, 80, 90, 100};
};

int cmd_sweep(const Globals& g, const SweepArgs& a, std::ostream& out) {
  TagFilter filter(g.tags);
  Corpus corpus = load_corpus(g, filter);
  auto gt = load_ground_truth(a.ground_truth, filter, corpus.tag_of);
  auto points = threshold_sweep(corpus.timelines, catalog_of(g), gt, a.thresholds, match_config(g),
                                CorpusOptions{g.jobs});
  std::string csv = format_sweep_csv(points);
  write_file(g.out / "sweep.csv", csv);
  write_file(g.out / "sweep.json", json_text(sweep_to_json(points)));
  out << csv;
  return 0;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::string annotations;
  std::string pairs;
  std::string agreement;
  std::optional<double> outlier_hours;
};

std::string format_pvalue(double p) { return p < 0.001 ? "<0.001" : fmt::format("{:.3f}", p); }

std::string format_chi_line(const std::string& label, const Contingency& c) {
  if (c.categories.size() < 2) return fmt::format("{}: fewer than two categories, no test\n", label);
  try {
    auto r = chi_squared_independence(c.counts);
    return fmt::format("{}: chi-squared = {:.3f}, dof = {}, p = {}\n", label, r.statistic, r.dof,
                       format_pvalue(r.p));
  } catch (const Error& e) {
    return fmt::format("{}: not testable ({})\n", label, e.what());
  }
}

ordered_json chi_json(const Contingency& c) {
  ordered_json j;
  j["categories"] = ordered_json::array();
  for (auto cat : c.categories) j["categories"].push_back(std::string(to_string(cat)));
  j["counts"] = c.counts;
  try {
    auto r = chi_squared_independence(c.counts);
    j["statistic"] = r.statistic;
    j["dof"] = r.dof;
    j["p"] = r.p;
  } catch (const Error&) {
    j["statistic"] = nullptr;
  }
  return j;
}

std::string format_pairwise(std::string_view title, std::span<const PairwiseTest> tests) {
  std::string s = fmt::format("{}\n", title);
  if (tests.empty()) return s + "  (no testable category pairs)\n";
  TextTable table({"Categories", "U", "p", "p (BH)", "Method"});
  for (const auto& t : tests)
    table.row({fmt::format("{} vs {}", to_string(t.first), to_string(t.second)), fmt::format("{:.1f}", t.result.u),
               format_pvalue(t.result.p), format_pvalue(t.p_adjusted), t.result.exact ? "exact" : "normal"});
  return s + table.str();
}

ordered_json pairwise_json(std::span<const PairwiseTest> tests) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : tests) {
    ordered_json j;
    j["first"] = std::string(to_string(t.first));
    j["second"] = std::string(to_string(t.second));
    j["u"] = t.result.u;
    j["p"] = t.result.p;
    j["p_adjusted"] = t.p_adjusted;
    j["exact"] = t.result.exact;
    arr.push_back(std::move(j));
  }
  return arr;
}

int cmd_stats(const Globals& g, const StatsArgs& a, std::ostream& out, std::ostream& err) {
  if (a.annotations.empty()) throw InputError("--annotations is required");
  TagFilter filter(g.tags);
  Corpus corpus = load_corpus(g, filter);
  auto annotations = keep_answers(read_annotations(a.annotations), filter, corpus.tag_of);
  for (const auto& an : annotations)
    if (!corpus.tag_of.count(an.answer_id))
      throw Error(fmt::format("annotation for answer {} which is not in the timeline cache", an.answer_id));

  std::string text;
  ordered_json j;

  auto tangled = tangled_rate(annotations, corpus.tag_of);
  text += "Confirmed, tangled and useful pairs\n" + format_tangled(tangled);
  j["tangled"] = tangled_to_json(tangled);

  std::vector<std::pair<std::string, CategoryCounts>> by_tag;
  std::set<std::string> tags;
  for (const auto& an : annotations) tags.insert(corpus.tag_of.at(an.answer_id));
  j["categories"] = ordered_json::object();
  for (const auto& tag : tags) {
    auto counts = category_counts(filter_by_tag(annotations, corpus.tag_of, tag));
    j["categories"][tag] = category_counts_to_json(counts);
    by_tag.emplace_back(tag, std::move(counts));
  }
  auto overall = category_counts(annotations);
  j["categories"][kOverallTag] = category_counts_to_json(overall);
  text += "\nPairs per category (all, useful)\n" + format_category_counts(by_tag, overall);

  fs::path pairs_path = a.pairs.empty() ? pairs_default(g, false) : fs::path(a.pairs);
  if (!a.pairs.empty() || fs::exists(pairs_path)) {
    auto pairs = read_pairs(pairs_path);
    auto facts = derive_pair_facts(pairs, annotations, corpus.timelines);
    RelationshipOptions ropts;
    if (a.outlier_hours) ropts.response_outlier_seconds = *a.outlier_hours * 3600.0;
    auto rows = aggregate_relationships(facts, ropts);
    text += "\nParticipants, score and response time per category\n" + format_relationships(rows);
    j["relationships"] = relationships_to_json(rows);

    text += "\nQuestioner as commenter by category\n";
    j["questioner_commenter"] = ordered_json::object();
    for (const auto& tag : tags) {
      std::vector<PairFacts> sub;
      std::copy_if(facts.begin(), facts.end(), std::back_inserter(sub),
                   [&](const PairFacts& f) { return f.tag == tag; });
      auto c = questioner_contingency(sub);
      text += format_chi_line("  " + tag, c);
      j["questioner_commenter"][tag] = chi_json(c);
    }
    auto pooled = questioner_contingency(facts);
    text += format_chi_line(std::string("  ") + kOverallTag, pooled);
    j["questioner_commenter"][kOverallTag] = chi_json(pooled);

    auto by_score = pairwise_rank_sum(facts, FactMeasure::score, ropts);
    auto by_time = pairwise_rank_sum(facts, FactMeasure::response_time, ropts);
    text += "\n" + format_pairwise("Answer score between categories (rank-sum)", by_score);
    text += "\n" + format_pairwise("Response time between categories (rank-sum)", by_time);
    j["score_tests"] = pairwise_json(by_score);
    j["response_time_tests"] = pairwise_json(by_time);
  } else {
    err << fmt::format("stats: {} not found, skipping participant analysis\n", pairs_path.string());
  }

  if (!a.agreement.empty()) {
    double kappa = cohen_kappa(read_agreement_table(a.agreement));
    text += fmt::format("\nCohen's kappa: {:.3f}\n", kappa);
    j["kappa"] = kappa;
  }
  write_file(g.out / "stats.txt", text);
  write_file(g.out / "stats.json", json_text(j));
  out << text;
  return 0;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::vector<std::string> positional;
  std::string pairs;
  double confidence = 0.95;
  double interval = 0.05;
};

// Uniform in [0, n) by rejection, independent of the standard library's
// distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

double parse_rational(const std::string& s, const char* what) {
  auto v = parse_number(s);
  if (!v) throw InputError(fmt::format("{} '{}' is not a number", what, s));
  return *v;
}

int cmd_sample(const Globals& g, const SampleArgs& a, std::ostream& out) {
  if (!a.positional.empty()) {
    if (a.positional.size() != 3) throw InputError("sample takes <population> <confidence> <interval>");
    auto pop = parse_integer(a.positional[0]);
    if (!pop) throw InputError(fmt::format("population '{}' is not an integer", a.positional[0]));
    out << sample_size(*pop, parse_rational(a.positional[1], "confidence"),
                       parse_rational(a.positional[2], "interval"))
        << '\n';
    return 0;
  }

  TagFilter filter(g.tags);
  Corpus corpus = load_corpus(g, filter);
  auto pairs = keep_answers(read_pairs(a.pairs.empty() ? pairs_default(g, false) : fs::path(a.pairs)),
                            filter, corpus.tag_of);
  std::map<std::string, std::vector<const CommentEditPair*>> by_tag;
  for (const auto& p : pairs) {
    auto it = corpus.tag_of.find(p.answer_id);
    if (it == corpus.tag_of.end()) throw Error(fmt::format("pair for unknown answer {}", p.answer_id));
    by_tag[it->second].push_back(&p);
  }

  std::mt19937_64 rng(g.seed);
  std::string csv = fmt::format("# seed={} confidence={} interval={}\n", g.seed, a.confidence, a.interval);
  csv += "tag,answer_id,comment_id,edit_version\n";
  TextTable table({"Tag", "Pairs", "Sample"});
  for (auto& [tag, group] : by_tag) {
    auto n = static_cast<std::size_t>(sample_size(static_cast<std::int64_t>(group.size()), a.confidence, a.interval));
    n = std::min(n, group.size());
    for (std::size_t i = 0; i < n; ++i) std::swap(group[i], group[i + bounded(rng, group.size() - i)]);
    std::vector<const CommentEditPair*> chosen(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(chosen.begin(), chosen.end(), [](auto* x, auto* y) {
      return std::tie(x->answer_id, x->comment_id) < std::tie(y->answer_id, y->comment_id);
    });
    for (const auto* p : chosen)
      csv += fmt::format("{},{},{},{}\n", csv_escape(tag), p->answer_id, p->comment_id, p->edit_version);
    table.row({tag, with_commas(static_cast<long long>(group.size())), with_commas(static_cast<long long>(n))});
  }
  write_file(g.out / "sample.csv", csv);
  out << table.str();
  return 0;
}

// ---------------------------------------------------------------- prospect

struct ProspectArgs {
  std::string pairs;
  std::string replay;
  std::string record;
  bool clone = false;
  std::string clone_url = "https://github.com/{repo}.git";
  std::string clone_dir;
  std::string now;
  std::string annotations;
  std::string before_strategy = "containing-block";
  std::string language;
  std::int64_t min_stars = 5;
  std::int64_t max_days = 90;
  std::int64_t min_closed_prs = 1;
};

int cmd_prospect(const Globals& g, const ProspectArgs& a, std::ostream& out) {
  TagFilter filter(g.tags);
  Corpus corpus = load_corpus(g, filter);
  auto pairs = keep_answers(read_pairs(a.pairs.empty() ? pairs_default(g, false) : fs::path(a.pairs)),
                            filter, corpus.tag_of);
  if (!a.annotations.empty()) {
    std::set<std::pair<PostId, CommentId>> useful;
    for (const auto& an : read_annotations(a.annotations))
      if (an.confirmed && an.useful.value_or(false)) useful.emplace(an.answer_id, an.comment_id);
    std::erase_if(pairs, [&](const CommentEditPair& p) { return !useful.count({p.answer_id, p.comment_id}); });
  }

  ProspectOptions opts;
  opts.criteria.language = a.language;
  opts.criteria.min_stars = a.min_stars;
  opts.criteria.max_days_since_push = a.max_days;
  opts.criteria.min_closed_prs = a.min_closed_prs;
  opts.before_strategy = parse_before_strategy(a.before_strategy);
  opts.now = a.now.empty() ? std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now())
                           : parse_timestamp(a.now);

  std::unique_ptr<RepoHost> base;
  if (!a.replay.empty())
    base = std::make_unique<ReplayHost>(HostRecording::load(a.replay));
  else
    base = std::make_unique<GitHubHost>(make_github_transport(), GitHubHost::token_from_env());

  RepoHost* host = base.get();
  std::unique_ptr<CloningHost> cloning;
  if (a.clone) {
    cloning = std::make_unique<CloningHost>(*host, a.clone_dir.empty() ? g.out / "clones" : fs::path(a.clone_dir),
                                            a.clone_url);
    host = cloning.get();
  }
  std::unique_ptr<RecordingHost> recording;
  if (!a.record.empty()) {
    recording = std::make_unique<RecordingHost>(*host);
    host = recording.get();
  }

  auto candidates = prospect(corpus.timelines, pairs, *host, opts);
  write_file(g.out / "candidates.jsonl", format_candidates_jsonl(candidates));
  if (recording) recording->recording().save(a.record);
  out << fmt::format("{} candidate(s) from {} pair(s)\n", candidates.size(), pairs.size());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine comment-edit pairs from answer edit histories.", "pairminer"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults ([match], [stats], ... sections)");

  Globals g;
  app.add_option("--tag", g.tags, "Restrict to answers with this tag (repeatable)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads; 0 = available parallelism")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for sampling")->capture_default_str();
  app.add_option("--threshold", g.threshold, "Similarity threshold, 0..100 (default 90)")
      ->check(CLI::Range(0.0, 100.0));
  app.add_option("--similarity-norm", g.similarity_norm, "max-norm or sum-norm")
      ->check(CLI::IsMember({"max-norm", "sum-norm"}))
      ->capture_default_str();
  app.add_option("--catalog", g.catalog, "Code-term pattern catalog (JSON); default is built in");
  app.add_option("--cache", g.cache, "Timeline cache (default <out>/timelines.json)");
  app.add_flag("--allow-self-edits", g.allow_self_edits, "Also pair comments with edits by the commenter");

  IngestArgs ia;
  auto* ingest = app.add_subcommand("ingest", "Load a dump, validate timelines and write the cache");
  ingest->add_option("--dump", ia.dump, "Directory holding posts.jsonl, versions.jsonl, comments.jsonl");
  ingest->add_option("--posts", ia.posts, "Posts file");
  ingest->add_option("--versions", ia.versions, "Versions file");
  ingest->add_option("--comments", ia.comments, "Comments file");

  MatchArgs ma;
  auto* match = app.add_subcommand("match", "Pair comments with the edits they caused");
  match->add_flag("--baseline", ma.baseline, "Use the proximity baseline instead");
  match->add_option("--pairs-out", ma.pairs_out, "Pairs file (default <out>/pairs.jsonl)");

  MatchArgs ba{true, {}};
  auto* baseline = app.add_subcommand("baseline", "Pair each comment with the nearest later edit");
  baseline->add_option("--pairs-out", ba.pairs_out, "Pairs file (default <out>/baseline_pairs.jsonl)");

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Score pairs against a ground truth");
  evaluate->add_option("--ground-truth", ea.ground_truth, "CSV answer_id,comment_id,edit_version");
  evaluate->add_option("--pairs", ea.pairs, "Pairs file (default <out>/pairs.jsonl)");
  evaluate->add_option("--baseline-pairs", ea.baseline_pairs, "Baseline pairs to report alongside");
  evaluate->add_option("--agreement", ea.agreement, "Rater agreement matrix for Cohen's kappa");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Precision and recall over similarity thresholds");
  sweep->add_option("--ground-truth", sa.ground_truth, "CSV answer_id,comment_id,edit_version");
  sweep->add_option("--thresholds", sa.thresholds, "Ascending thresholds")->delimiter(',')->capture_default_str();

  StatsArgs sta;
  auto* stats = app.add_subcommand("stats", "Category, tangledness and participant analytics");
  stats->add_option("--annotations", sta.annotations, "CSV answer_id,comment_id,confirmed,tangled,useful,category");
  stats->add_option("--pairs", sta.pairs, "Pairs file (default <out>/pairs.jsonl, skipped if absent)");
  stats->add_option("--agreement", sta.agreement, "Rater agreement matrix for Cohen's kappa");
  stats->add_option("--response-outlier-hours", sta.outlier_hours,
                    "Leave slower pairs out of the mean response time");

  SampleArgs spa;
  auto* sample = app.add_subcommand("sample", "Sample size, or a seeded per-tag sample of pairs");
  sample->add_option("values", spa.positional, "<population> <confidence> <interval>");
  sample->add_option("--pairs", spa.pairs, "Pairs to sample from (default <out>/pairs.jsonl)");
  sample->add_option("--confidence", spa.confidence)->capture_default_str();
  sample->add_option("--interval", spa.interval)->capture_default_str();

  ProspectArgs pa;
  auto* prosp = app.add_subcommand("prospect", "Find repository code matching pairs' pre-edit snippets");
  prosp->add_option("--pairs", pa.pairs, "Pairs file (default <out>/pairs.jsonl)");
  prosp->add_option("--replay", pa.replay, "Answer host requests from a recording instead of GitHub");
  prosp->add_option("--record", pa.record, "Save every host response to this file");
  prosp->add_flag("--clone", pa.clone, "Read repository files from shallow clones");
  prosp->add_option("--clone-url", pa.clone_url, "Clone URL template containing {repo}")->capture_default_str();
  prosp->add_option("--clone-dir", pa.clone_dir, "Clone directory (default <out>/clones)");
  prosp->add_option("--now", pa.now, "Reference time for the recency criterion (default: current time)");
  prosp->add_option("--annotations", pa.annotations, "Only prospect pairs annotated as confirmed and useful");
  prosp->add_option("--before-strategy", pa.before_strategy, "containing-block or whole-version")
      ->check(CLI::IsMember({"containing-block", "whole-version"}))
      ->capture_default_str();
  prosp->add_option("--language", pa.language, "Repository language (default: from each answer's tag)");
  prosp->add_option("--min-stars", pa.min_stars)->capture_default_str();
  prosp->add_option("--max-days-since-push", pa.max_days)->capture_default_str();
  prosp->add_option("--min-closed-prs", pa.min_closed_prs)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "pairminer: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (app.got_subcommand(ingest)) return cmd_ingest(g, ia, out, err);
    if (app.got_subcommand(match)) return cmd_match(g, ma, out);
    if (app.got_subcommand(baseline)) return cmd_match(g, ba, out);
    if (app.got_subcommand(evaluate)) return cmd_evaluate(g, ea, out);
    if (app.got_subcommand(sweep)) return cmd_sweep(g, sa, out);
    if (app.got_subcommand(stats)) return cmd_stats(g, sta, out, err);
    if (app.got_subcommand(sample)) return cmd_sample(g, spa, out);
    if (app.got_subcommand(prosp)) return cmd_prospect(g, pa, out);
  } catch (const InputError& e) {
    err << "pairminer: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "pairminer: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace pairminer
