// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "polaris/agent/champion.hpp"
#include "polaris/agent/engine.hpp"
#include "polaris/cli/commands.hpp"
#include "polaris/cli/replay.hpp"
#include "polaris/cli/report.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/clock.hpp"
#include "polaris/core/ledger.hpp"
#include "polaris/core/text.hpp"
#include "polaris/eval/bootstrap.hpp"
#include "polaris/eval/cot_sc.hpp"
#include "polaris/eval/metrics.hpp"
#include "polaris/llm/json_enforce.hpp"
#include "polaris/llm/scripted.hpp"
#include "polaris/policylang/patch.hpp"
#include "polaris/repair/integrate.hpp"

namespace fs = std::filesystem;
using namespace polaris;

namespace {

struct Failed {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

const testing::GoldenScenario& golden() {
  static const auto g = testing::GoldenScenario::load(testing::fixture_dir() / "golden");
  return g;
}

// ---------------------------------------------------------------- 1

std::string golden_run() {
  testing::TempDir tmp;
  std::vector<fs::path> runs;
  double slowest = 0;
  for (int rep = 0; rep < 3; ++rep) {
    const auto runs_dir = tmp.path() / ("rep" + std::to_string(rep));
    const auto t0 = std::chrono::steady_clock::now();
    const auto rec = cli::execute_run(golden().config(runs_dir));
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    expect(rec.category == agent::RunCategory::successful, "category " + agent::to_string(rec.category));
    expect(rec.base_validation_score == 0.40, "base validation " + num(rec.base_validation_score));
    expect(rec.champion.validation_score == 0.95, "champion validation " + num(rec.champion.validation_score));
    expect(rec.iterations_completed == 2, "iterations " + std::to_string(rec.iterations_completed));
    runs.push_back(runs_dir / "golden");
  }
  const std::string scores = read_file(runs[0] / "scores.csv");
  expect(scores.find("0,validation,0.400000,") != std::string::npos, "scores.csv lacks the 0.40 base row");
  expect(scores.find("2,validation,0.950000,") != std::string::npos, "scores.csv lacks the 0.95 repaired row");
  for (int rep = 1; rep < 3; ++rep) {
    const auto cmp = cli::compare_run_dirs(runs[0], runs[static_cast<std::size_t>(rep)]);
    expect(cmp.identical, "repetition " + std::to_string(rep) + " differs at " + cmp.first_divergence);
  }
  expect(slowest < 30.0, "slowest run took " + num(slowest) + " s");
  std::ostringstream d;
  d << "0.40 -> 0.95, successful, 3 identical runs, slowest " << std::fixed;
  d.precision(3);
  d << slowest << " s";
  return d.str();
}

// ---------------------------------------------------------------- 2

std::string retry_semantics() {
  const std::string policy =
      "PROMPT p <<< {task_input} >>>\n"
      "CALL c = LLM(role=\"r\", temperature=0.0, n=1, prompt=p, require=[answer])\n"
      "EXTRACT a = c[0].answer\n"
      "RETURN answer=a\n";
  const std::string valid = "@ INSERT AFTER 3\nEXTRACT b = MATCH(a, \"(-?[0-9]+)\")\n";
  const std::string broken = "@ REPLACE 4\nRETURN reasoning=a\n";  // applies, but fails validation
  const std::map<int, std::pair<std::size_t, repair::CycleOutcome>> want{
      {0, {1, repair::CycleOutcome::integrated}},
      {2, {3, repair::CycleOutcome::integrated}},
      {4, {4, repair::CycleOutcome::archived_after_retries}}};
  std::string detail;
  for (const auto& [bad, expected] : want) {
    testing::TempDir tmp;
    testing::TagOracle oracle([&, bad = bad](const llm::ChatRequest& r) -> std::vector<std::string> {
      const auto parts = text::split(r.tag, '/');
      if (parts.size() != 3 || parts[0] != "patch_retry") throw Error("unexpected request " + r.tag);
      return {testing::patch_section("Keep the sign", std::stoi(parts[2]) <= bad ? broken : valid)};
    });
    MemoryLedger ledger;
    LogicalClock clock;
    Recorder recorder(ledger, clock);
    recorder.set_iteration(1);
    ArtifactStore store(tmp.path());
    repair::RepairContext ctx{oracle, recorder, &store, "", PatchMode::anchored, 3};
    const std::vector<Strategy> s{Strategy::make("Keep the sign", 1)};
    const auto base = PolicyVersion::make_base(policy, "");
    const auto r = repair::integrate_patch(base, AgentState{}, {{s[0].id, bad > 0 ? broken : valid, PatchMode::anchored}},
                                           s, Json{{"score", 0.5}}, ctx);
    const std::string label = std::to_string(bad) + " invalid";
    expect(r.outcome == expected.second, label + ": wrong outcome");
    expect(r.attempts.size() == expected.first,
           label + ": " + std::to_string(r.attempts.size()) + " attempts, want " + std::to_string(expected.first));
    expect(oracle.count("patch_retry/") == static_cast<int>(std::min<std::size_t>(expected.first - 1, 3)),
           label + ": wrong number of retry requests");
    const Json* outcome = nullptr;
    bool updated = false;
    for (const auto& e : ledger.entries()) {
      if (e.kind == EntryKind::patch_outcome) outcome = &e.payload;
      if (e.kind == EntryKind::policy_update) updated = true;
    }
    expect(outcome && (*outcome)["attempts_used"] == expected.first, label + ": patch_outcome entry missing or wrong");
    if (expected.second == repair::CycleOutcome::archived_after_retries) {
      expect(!r.policy && !updated, label + ": policy changed");
      expect(!store.exists("policies/v1.policy"), label + ": a new policy file was written");
      expect(base.source == policy, label + ": policy bytes changed");
      expect((*outcome)["outcome"] == "archived_after_retries", label + ": ledger outcome");
    } else {
      expect(r.policy && r.policy->version == 1 && updated, label + ": not integrated");
    }
    detail += (detail.empty() ? "" : ", ") + std::to_string(bad) + " bad -> " + std::to_string(r.attempts.size()) +
              " attempt" + (r.attempts.size() == 1 ? "" : "s");
  }
  return detail + " (archived, policy unchanged)";
}

// ---------------------------------------------------------------- 3

std::string memory_bounding() {
  testing::TempDir tmp;
  std::mt19937_64 rng(31);
  const EntryKind kinds[] = {EntryKind::action, EntryKind::feedback, EntryKind::reflection,
                             EntryKind::strategy, EntryKind::patch_outcome, EntryKind::policy_update};
  const int sequences = 1000;
  std::size_t total = 0;
  for (int seq = 0; seq < sequences; ++seq) {
    const auto path = tmp.path() / ("m" + std::to_string(seq) + ".log");
    MemoryLedger ledger(path);
    const int len = static_cast<int>(rng() % 40);
    int iteration = 0;
    for (int i = 0; i < len; ++i) {
      if (rng() % 4 == 0) ++iteration;
      ledger.append({kinds[rng() % 6], Json{{"seq", seq}, {"i", i}}, iteration, ""});
      for (std::size_t k : {std::size_t{3}, std::size_t{6}}) {
        const auto w = ledger.context_window(k);
        expect(w.size() <= k, "window of " + std::to_string(w.size()) + " for k=" + std::to_string(k));
        expect(w.size() == std::min<std::size_t>(k, ledger.size()), "window shorter than available history");
        expect(w.back().payload["i"] == i, "window does not end at the newest entry");
        expect(w.front().payload["i"] == i + 1 - static_cast<int>(w.size()), "window is not the most recent span");
      }
    }
    const auto back = MemoryLedger::load(path);
    expect(back.size() == static_cast<std::size_t>(len), "on-disk ledger lost entries in sequence " + std::to_string(seq));
    for (int i = 0; i < len; ++i) expect(back[static_cast<std::size_t>(i)].payload["i"] == i, "on-disk order");
    total += back.size();
  }

  // the engine presents the same bounded window
  for (int k : {3, 6}) {
    testing::TempDir run;
    testing::TagOracle oracle(golden().responder());
    LogicalClock clock;
    RunConfig cfg = golden().config(run.path());
    cfg.memory_window = k;
    agent::Engine engine(cfg, {golden().validation, golden().test, golden().base_policy}, oracle, clock);
    for (int i = 0; i < 10; ++i) {
      engine.execute_action({agent::ActionName::self_state, ""});
      expect(engine.self_inspect().ledger_window.size() <= static_cast<std::size_t>(k), "engine window exceeds k");
    }
    expect(engine.ledger().size() >= 10, "engine ledger dropped entries");
  }
  return std::to_string(sequences) + " sequences, " + std::to_string(total) + " entries, k in {3, 6}";
}

// ---------------------------------------------------------------- 4

std::string random_line(std::mt19937_64& rng) {
  static const std::string alphabet = "abcXYZ 019=\"(){}<>#\t,.-_\xc3\xa9";
  std::string s;
  const auto len = rng() % 14;
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
  return s;
}

std::string patch_locality() {
  std::mt19937_64 rng(47);
  const int cases = 600;
  int ops_total = 0;
  for (int c = 0; c < cases; ++c) {
    const int n = static_cast<int>(rng() % 16);
    std::vector<std::string> lines;
    for (int i = 0; i < n; ++i) lines.push_back(random_line(rng));
    const bool trailing_newline = rng() % 5 != 0;
    // without a final newline an empty last line would not be a line at all
    if (!trailing_newline && n > 0 && lines.back().empty()) lines.back() = "z";
    std::string source;
    for (int i = 0; i < n; ++i) source += lines[static_cast<std::size_t>(i)] + (i + 1 < n || trailing_newline ? "\n" : "");

    // spans first, then inserts at anchors that lie outside every span
    policylang::AnchoredPatch patch;
    std::vector<int> span_of(static_cast<std::size_t>(n + 1), 0);  // 1 = replaced, 2 = deleted
    std::map<int, std::vector<std::string>> replacement;            // first line of a replace span
    std::map<int, std::vector<std::string>> inserted;
    for (int i = 1; i <= n;) {
      if (rng() % 4 == 0) {
        const int last = std::min(n, i + static_cast<int>(rng() % 3));
        if (rng() % 2) {
          std::vector<std::string> repl;
          for (auto k = rng() % 3; k > 0; --k) repl.push_back("R" + random_line(rng));
          if (repl.empty()) repl.push_back("R");
          patch.ops.push_back(policylang::ReplaceOp{i, last, repl});
          replacement[i] = repl;
          for (int k = i; k <= last; ++k) span_of[static_cast<std::size_t>(k)] = 1;
        } else {
          patch.ops.push_back(policylang::DeleteOp{i, last});
          for (int k = i; k <= last; ++k) span_of[static_cast<std::size_t>(k)] = 2;
        }
        i = last + 1;
      } else {
        ++i;
      }
    }
    for (int a = 0; a <= n; ++a) {
      if (span_of[static_cast<std::size_t>(a)] == 0 && rng() % 5 == 0) {
        std::vector<std::string> ins{"I" + random_line(rng)};
        if (rng() % 2) ins.push_back("I" + random_line(rng));
        patch.ops.push_back(policylang::InsertAfterOp{a, ins});
        inserted[a] = ins;
      }
    }
    std::shuffle(patch.ops.begin(), patch.ops.end(), rng);
    ops_total += static_cast<int>(patch.ops.size());
    const std::string where = "case " + std::to_string(c);

    expect(policylang::apply_patch(source, {}) == source, where + ": empty patch is not identity");
    if (patch.ops.empty()) continue;
    try {
      policylang::check_patch(patch, static_cast<std::size_t>(n));
    } catch (const Error& e) {
      throw Failed{where + ": valid patch rejected: " + e.what()};
    }
    // round trip through the text form the model writes
    const auto reparsed = policylang::parse_patch_body(policylang::format_patch_body(patch));
    const std::string out = policylang::apply_patch(source, reparsed);

    std::vector<std::string> want;
    auto add = [&](const std::vector<std::string>& v) { want.insert(want.end(), v.begin(), v.end()); };
    if (inserted.count(0)) add(inserted[0]);
    for (int i = 1; i <= n; ++i) {
      const int s = span_of[static_cast<std::size_t>(i)];
      if (s == 0) want.push_back(lines[static_cast<std::size_t>(i - 1)]);
      if (replacement.count(i)) add(replacement[i]);
      if (s == 0 && inserted.count(i)) add(inserted[i]);
    }
    std::string expected;
    for (std::size_t i = 0; i < want.size(); ++i) expected += (i ? "\n" : "") + want[i];
    // lines added to an empty source are newline-terminated
    if ((trailing_newline || n == 0) && !want.empty()) expected += "\n";
    expect(out == expected, where + ": output differs from the hand-spliced result");
  }
  return std::to_string(cases) + " programs, " + std::to_string(ops_total) + " ops";
}

// ---------------------------------------------------------------- 5

// Each pool maps a surface string to the class an answer of that form denotes.
const std::vector<std::pair<std::string, std::string>> kAnswerPool{
    {"7", "7"},       {"7.0", "7"},     {" 7 ", "7"},      {"07", "7"},       {"7.5", "7.5"},
    {"-0", "0"},      {"0", "0"},       {"-7", "-7"},      {"Paris", "paris"}, {"paris ", "paris"},
    {"PARIS", "paris"}, {"seven", "seven"}, {"Seven", "seven"}};
const std::vector<std::pair<std::string, std::string>> kTokenPool{
    {"10", "10"},     {"10.0", "10"},   {"10.00", "10"},   {"-3", "-3"},       {"-3.0", "-3"},
    {"7.5", "7.5"},   {"yards", "yards"}, {"Yards", "yards"}, {"yards,", "yards"}, {"the", "the"},
    {"The", "the"},   {"dog.", "dog"},  {"dog", "dog"},    {"!!", ""}};
const std::vector<std::pair<std::string, char>> kPreferencePool{
    {"A", 'A'}, {"a", 'A'}, {" A ", 'A'}, {"Story A is better", 'A'}, {"B", 'B'},  {"b", 'B'},
    {"Response B", 'B'}, {"A or B", 0}, {"neither", 0}, {"", 0}};

double brute_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  std::map<std::string, int> p, g;
  int np = 0, ng = 0;
  for (const auto& t : pred) {
    if (!t.empty()) ++p[t], ++np;
  }
  for (const auto& t : gold) {
    if (!t.empty()) ++g[t], ++ng;
  }
  if (np == 0 && ng == 0) return 1.0;
  if (np == 0 || ng == 0) return 0.0;
  int common = 0;
  for (const auto& [t, c] : p) common += std::min(c, g.count(t) ? g[t] : 0);
  return 2.0 * common / (np + ng);
}

std::string metric_oracles() {
  expect(eval::token_f1("10 yards", "10") == 2.0 / 3.0, "F1(\"10 yards\", \"10\") = " + num(eval::token_f1("10 yards", "10")));
  std::mt19937_64 rng(53);
  const int fixtures = 50;
  int instances = 0;
  for (int f = 0; f < fixtures; ++f) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<bool> acc_flags;
    std::vector<double> f1s;
    std::vector<bool> pref_flags;
    int acc_hits = 0, pref_hits = 0;
    double f1_sum = 0;
    for (int i = 0; i < n; ++i, ++instances) {
      const auto& pa = kAnswerPool[rng() % kAnswerPool.size()];
      const auto& ga = kAnswerPool[rng() % kAnswerPool.size()];
      const bool acc = eval::score_instance(Metric::accuracy_ci, pa.first, ga.first) == 1.0;
      expect(acc == (pa.second == ga.second), "accuracy on '" + pa.first + "' vs '" + ga.first + "'");
      acc_flags.push_back(acc);
      acc_hits += pa.second == ga.second;

      std::string ps, gs;
      std::vector<std::string> pc, gc;
      for (auto k = rng() % 5; k > 0; --k) {
        const auto& t = kTokenPool[rng() % kTokenPool.size()];
        ps += (ps.empty() ? "" : " ") + t.first;
        pc.push_back(t.second);
      }
      for (auto k = rng() % 5; k > 0; --k) {
        const auto& t = kTokenPool[rng() % kTokenPool.size()];
        gs += (gs.empty() ? "" : " ") + t.first;
        gc.push_back(t.second);
      }
      const double f1 = eval::score_instance(Metric::macro_f1, ps, gs);
      const double want = brute_f1(pc, gc);
      expect(f1 == want, "F1('" + ps + "', '" + gs + "') = " + num(f1) + ", brute force " + num(want));
      f1s.push_back(f1);
      f1_sum += want;

      const auto& pp = kPreferencePool[rng() % kPreferencePool.size()];
      const auto& gp = kPreferencePool[rng() % kPreferencePool.size()];
      const bool pref = eval::score_instance(Metric::preference_accuracy, pp.first, gp.first) == 1.0;
      const bool pref_want = pp.second != 0 && pp.second == gp.second;
      expect(pref == pref_want, "preference on '" + pp.first + "' vs '" + gp.first + "'");
      pref_flags.push_back(pref);
      pref_hits += pref_want;
    }
    expect(eval::accuracy(acc_flags) == static_cast<double>(acc_hits) / n, "aggregate accuracy");
    expect(eval::mean(f1s) == f1_sum / n, "aggregate macro F1");
    expect(eval::accuracy(pref_flags) == static_cast<double>(pref_hits) / n, "aggregate preference accuracy");
  }
  return std::to_string(fixtures) + " fixtures, " + std::to_string(instances) + " instances x 3 metrics; F1 = 2/3";
}

// ---------------------------------------------------------------- 6

std::string bootstrap_ci() {
  const int B = 200000;
  const double level = 0.95;
  int vectors = 0;
  double worst = 0;
  for (int n = 1; n <= 8; ++n) {
    // The resample mean depends only on how many ones the vector holds, so the
    // exact distribution is enumerated once per (n, ones): all n^n index tuples.
    long total = 1;
    for (int i = 0; i < n; ++i) total *= n;
    std::vector<std::vector<long>> hist(static_cast<std::size_t>(n + 1), std::vector<long>(static_cast<std::size_t>(n + 1), 0));
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (long t = 0; t < total; ++t) {
      std::vector<int> picks(static_cast<std::size_t>(n + 1), 0);  // picks[k] = indices < k drawn
      for (int i : idx) ++picks[static_cast<std::size_t>(i + 1)];
      for (int k = 1; k <= n; ++k) picks[static_cast<std::size_t>(k)] += picks[static_cast<std::size_t>(k - 1)];
      for (int ones = 0; ones <= n; ++ones) ++hist[static_cast<std::size_t>(ones)][static_cast<std::size_t>(picks[static_cast<std::size_t>(ones)])];
      for (int i = 0; i < n && ++idx[static_cast<std::size_t>(i)] == n; ++i) idx[static_cast<std::size_t>(i)] = 0;
    }
    // smallest m/n whose exact CDF reaches q, in integer arithmetic (q = num/1000)
    auto exact_quantile = [&](int ones, long q_num) {
      long cum = 0;
      for (int m = 0; m <= n; ++m) {
        cum += hist[static_cast<std::size_t>(ones)][static_cast<std::size_t>(m)];
        if (cum * 1000 >= q_num * total) return static_cast<double>(m) / n;
      }
      return 1.0;
    };
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
      std::vector<double> v;
      int ones = 0;
      for (int i = 0; i < n; ++i) {
        v.push_back((bits >> i) & 1u ? 1.0 : 0.0);
        ones += (bits >> i) & 1u;
      }
      const auto ci = eval::bootstrap_ci(v, level, B, 1000 + bits);
      const double lo = exact_quantile(ones, 25), hi = exact_quantile(ones, 975);
      const double err = std::max(std::abs(ci.lo - lo), std::abs(ci.hi - hi));
      worst = std::max(worst, err);
      expect(err <= 0.01, "n=" + std::to_string(n) + " bits=" + std::to_string(bits) + ": [" + num(ci.lo) + ", " +
                              num(ci.hi) + "] vs exact [" + num(lo) + ", " + num(hi) + "]");
      if (ones == n) expect(ci.lo == 1.0 && ci.hi == 1.0, "all-ones interval is not (1, 1)");
      ++vectors;
    }
  }
  return std::to_string(vectors) + " vectors, B=" + std::to_string(B) + ", max error " + num(worst);
}

// ---------------------------------------------------------------- 7

std::string cot_sc() {
  std::mt19937_64 rng(71);
  const std::vector<std::string> alphabet{"3", "8", "12", "40", "-5"};
  const int fixtures = 100;
  int ties = 0;
  for (int f = 0; f < fixtures; ++f) {
    const int variety = 2 + static_cast<int>(rng() % 4);
    std::vector<std::string> votes;
    for (int p = 0; p < 5; ++p) votes.push_back(alphabet[rng() % static_cast<std::size_t>(variety)]);
    // brute force: highest count, earliest first occurrence among the tied
    std::string want;
    int best = -1;
    for (std::size_t i = 0; i < votes.size(); ++i) {
      const int c = static_cast<int>(std::count(votes.begin(), votes.end(), votes[i]));
      bool first = std::find(votes.begin(), votes.end(), votes[i]) == votes.begin() + static_cast<long>(i);
      if (first && c > best) best = c, want = votes[i];
    }
    std::set<std::string> at_best;
    for (const auto& v : votes) {
      if (std::count(votes.begin(), votes.end(), v) == best) at_best.insert(v);
    }
    ties += at_best.size() > 1;

    int requests = 0;
    testing::TagOracle oracle([&](const llm::ChatRequest& r) -> std::vector<std::string> {
      ++requests;
      expect(r.n_responses == 5, "CoT-SC asked for " + std::to_string(r.n_responses) + " paths");
      std::vector<std::string> out;
      for (const auto& v : votes) out.push_back(testing::solver_reply(v, "path"));
      return out;
    });
    const auto o = eval::cot_sc({"q" + std::to_string(f), "question", want, {}}, 5, oracle);
    expect(requests == 1, "more than one request per query");
    expect(o.answer == want, "fixture " + std::to_string(f) + ": chose " + o.answer + ", brute force " + want);
    expect(o.path_answers == votes, "path answers not kept in order");
  }
  return std::to_string(fixtures) + " fixtures, 5 paths each, " + std::to_string(ties) + " with tied counts";
}

// ---------------------------------------------------------------- 8

std::string champion_monotonicity() {
  std::mt19937_64 rng(89);
  const int sequences = 1000;
  testing::TempDir tmp;
  for (int seq = 0; seq < sequences; ++seq) {
    const int len = 1 + static_cast<int>(rng() % 12);
    std::vector<double> scores;
    // two decimals so the values survive the CSV round trip exactly and ties occur
    for (int i = 0; i < len; ++i) scores.push_back(static_cast<double>(rng() % 21) / 20.0);
    auto ch = agent::Champion::first(0, 0, scores[0]);
    for (int i = 1; i < len; ++i) ch = agent::update_champion(ch, i, i, scores[static_cast<std::size_t>(i)]);
    expect(ch.history.size() == scores.size(), "history length");
    double prefix = scores[0];
    int best_at = 0;
    for (int i = 0; i < len; ++i) {
      if (scores[static_cast<std::size_t>(i)] > prefix) prefix = scores[static_cast<std::size_t>(i)], best_at = i;
      expect(ch.history[static_cast<std::size_t>(i)].champion_score == prefix,
             "sequence " + std::to_string(seq) + ": champion history is not the prefix max at " + std::to_string(i));
    }
    expect(ch.policy_version == best_at, "champion version is not the first best candidate");

    if (seq % 10) continue;
    // the report curve over a scores.csv built from the same sequence
    const auto run = tmp.path() / ("r" + std::to_string(seq));
    std::string csv = "iteration,split,score,ci_lo,ci_hi,n_failures\n";
    for (int i = 0; i < len; ++i) {
      const double s = scores[static_cast<std::size_t>(i)];
      csv += std::to_string(i) + ",validation," + text::fixed(s) + "," + text::fixed(s) + "," + text::fixed(s) + ",0\n";
    }
    write_file(run / "scores.csv", csv);
    const auto report = cli::build_report(run);
    expect(report.curve.size() == scores.size(), "report curve length");
    for (int i = 0; i < len; ++i) {
      expect(report.curve[static_cast<std::size_t>(i)].champion ==
                 ch.history[static_cast<std::size_t>(i)].champion_score,
             "report curve disagrees with the champion history");
    }
  }

  // and on the real golden run
  testing::TempDir run;
  cli::execute_run(golden().config(run.path()));
  const auto report = cli::build_report(run.path() / "golden");
  double prefix = -1;
  for (const auto& p : report.curve) {
    prefix = std::max(prefix, p.candidate);
    expect(p.champion == prefix, "golden report curve is not the running max");
  }
  return std::to_string(sequences) + " sequences; golden curve " + std::to_string(report.curve.size()) + " points";
}

// ---------------------------------------------------------------- 9

std::string words_of(const std::string& s) {
  std::string out, w;
  for (char c : s + " ") {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!w.empty()) {
      out += (out.empty() ? "" : " ") + w;
      w.clear();
    }
  }
  return out;
}

std::string strategy_discipline() {
  const int cycles = 10;
  std::map<int, std::string> replies;
  replies[1] = "- Keep the minus sign when extracting numbers.\n- Accept decimal answers.\n- Check the arithmetic twice.\n";
  int attempted_duplicates = 0;
  for (int t = 2; t <= cycles; ++t) {
    const std::string fresh = "Verify intermediate step " + std::to_string(t) + " before answering";
    if (t % 2) {
      // repeats an earlier directive in different case and punctuation
      replies[t] = "1. KEEP the minus-sign, when extracting numbers!\n2. " + fresh + ".\n3. Accept decimal answers\n";
      ++attempted_duplicates;
    } else {
      // repeats itself within the cycle
      replies[t] = "* " + fresh + "\n* " + text::to_lower(fresh) + "!!\n* Another idea " + std::to_string(t) + "\n";
      ++attempted_duplicates;
    }
  }
  auto patches = [](const llm::ChatRequest& r) -> std::vector<std::string> {
    if (r.tag.rfind("patch", 0) != 0) throw Error("unexpected request " + r.tag);
    return {testing::patch_section("first", "@ INSERT AFTER 0\n# note a") +
            testing::patch_section("second", "@ INSERT AFTER 1\n# note b")};
  };
  testing::TagOracle oracle(testing::repair_responder(
      testing::arithmetic_model({&golden().validation, &golden().test}), replies, {}, patches));
  const agent::EngineInputs inputs{golden().validation, golden().test, golden().base_policy};
  {
    testing::TempDir scratch;
    LogicalClock clock;
    RunConfig cfg = golden().config(scratch.path());
    cfg.budget = {cycles, std::nullopt};
    agent::Engine(cfg, inputs, oracle, clock).run();
  }

  // the recorded conversation, replayed through the scripted backend
  testing::TempDir tmp;
  llm::ScriptedBackend scripted(oracle.transcript());
  LogicalClock clock;
  RunConfig cfg = golden().config(tmp.path());
  cfg.budget = {cycles, std::nullopt};
  agent::Engine engine(cfg, inputs, scripted, clock);
  const auto rec = engine.run();
  expect(rec.iterations_completed == cycles, "completed " + std::to_string(rec.iterations_completed) + " cycles");

  std::map<int, int> per_cycle;
  std::set<std::string> seen;
  for (const auto& e : engine.ledger().entries()) {
    if (e.kind != EntryKind::strategy) continue;
    ++per_cycle[e.iteration];
    const std::string key = words_of(e.payload.at("text").get<std::string>());
    expect(seen.insert(key).second, "duplicate strategy retained: " + key);
  }
  for (const auto& [cycle, n] : per_cycle) {
    expect(n <= 2, "cycle " + std::to_string(cycle) + " retained " + std::to_string(n) + " strategies");
  }
  std::set<std::string> global;
  for (const auto& s : engine.strategies()) expect(global.insert(words_of(s.text)).second, "global set has duplicates");
  expect(global.size() == seen.size(), "global set and ledger disagree");
  const int proposed = 3 * cycles;
  return std::to_string(cycles) + " cycles, " + std::to_string(proposed) + " proposed (" +
         std::to_string(attempted_duplicates) + " duplicates), " + std::to_string(global.size()) + " retained";
}

// ---------------------------------------------------------------- 10

std::string json_enforcement() {
  const std::vector<std::string> required{"reasoning", "answer"};
  int helper_calls = 0;
  std::string helper_reply;
  testing::TagOracle helper([&](const llm::ChatRequest& r) -> std::vector<std::string> {
    ++helper_calls;
    expect(r.messages.size() == 2 && r.messages[0].content == llm::kJsonHelperSystemPrompt,
           "helper request does not carry the helper prompt");
    return {helper_reply};
  });
  const llm::HelperChannel channel{&helper, "json_helper/x", ""};

  const std::vector<std::string> local_fixes{
      "{\"reasoning\": \"add\", \"answer\": \"5\",}",
      "```json\n{\"reasoning\": \"add\", \"answer\": \"5\"}\n```",
      "Sure:\n```\n{\"reasoning\": \"add\", \"answer\": \"5\",}\n```\n"};
  for (const auto& raw : local_fixes) {
    const auto r = llm::json_enforce(raw, required, channel);
    expect(r.stage <= 2, "fixture needed stage " + std::to_string(r.stage));
    expect(r.record["answer"] == "5", "repaired record lost the answer");
  }
  expect(helper_calls == 0, "local repairs called the helper");

  const std::string hopeless = "the answer is five, I think";
  helper_reply = "{\"reasoning\": \"guess\", \"answer\": \"5\"}";
  const auto via_helper = llm::json_enforce(hopeless, required, channel);
  expect(via_helper.stage == 3 && helper_calls == 1, "helper stage did not make exactly one call");
  expect(helper.transcript().back().tag == "json_helper/x", "helper tag");
  helper_reply = "still not json";
  bool threw = false;
  try {
    llm::json_enforce(hopeless, required, channel);
  } catch (const llm::FormatError& e) {
    threw = e.raw() == hopeless;
  }
  expect(threw, "unrecoverable reply did not raise FormatError with the raw text");
  expect(helper_calls == 2, "a failed helper reply was retried");

  const std::vector<Json> valid{
      {{"reasoning", "r"}, {"answer", "5"}},
      {{"reasoning", "multi\nline \"quoted\""}, {"answer", "-3.25"}, {"extra", {1, 2}}},
      via_helper.record};
  for (const auto& j : valid) {
    const auto once = llm::json_enforce(j.dump(), required, channel);
    const auto twice = llm::json_enforce(once.record.dump(), required, channel);
    expect(once.stage == 1 && once.record == j && twice.record == once.record, "not idempotent on " + j.dump());
  }
  expect(helper_calls == 2, "valid input reached the helper");
  return "3 local repairs with no calls; helper called once per unrecoverable reply; idempotent on 3 records";
}

// ---------------------------------------------------------------- 11

std::string replay_integrity() {
  testing::TempDir a, b;
  cli::execute_run(golden().config(a.path()));
  cli::execute_run(golden().config(b.path()));
  const auto run = a.path() / "golden", reference = b.path() / "golden";
  const auto replay = cli::replay_run(run);
  expect(replay.identical, "replay of the untouched run diverged at " + replay.first_divergence);

  int mutations = 0;
  std::mt19937_64 rng(97);
  for (const auto& entry : fs::directory_iterator(run / "policies")) {
    const auto rel = "policies/" + entry.path().filename().string();
    const std::string original = read_file(entry.path());
    for (std::size_t pos = 0; pos < original.size(); ++pos) {
      for (unsigned char flip : {static_cast<unsigned char>(1u << (rng() % 8)), static_cast<unsigned char>(1 + rng() % 255)}) {
        std::string bad = original;
        bad[pos] = static_cast<char>(static_cast<unsigned char>(bad[pos]) ^ flip);
        write_file(entry.path(), bad);
        const auto cmp = cli::compare_run_dirs(run, reference);
        expect(!cmp.identical && cmp.first_divergence == rel,
               "mutation at " + rel + ":" + std::to_string(pos) + " reported as '" + cmp.first_divergence + "'");
        ++mutations;
      }
    }
    // end to end through the replay command for one mutation per file
    std::string bad = original;
    bad[original.size() / 2] ^= 0x04;
    write_file(entry.path(), bad);
    const auto r = cli::replay_run(run);
    expect(!r.identical && r.first_divergence == rel, "replay missed the mutation in " + rel);
    write_file(entry.path(), original);
  }
  expect(cli::replay_run(run).identical, "restored run no longer replays");
  return "identical replay; " + std::to_string(mutations) + " single-byte policy mutations all detected";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"golden self-repair run", golden_run},
      {"retry semantics", retry_semantics},
      {"memory bounding", memory_bounding},
      {"patch locality", patch_locality},
      {"metric oracles", metric_oracles},
      {"bootstrap CI", bootstrap_ci},
      {"CoT-SC baseline", cot_sc},
      {"champion monotonicity", champion_monotonicity},
      {"strategy discipline", strategy_discipline},
      {"JSON enforcement", json_enforcement},
      {"replay integrity", replay_integrity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string status, detail;
    try {
      detail = criteria[i].second();
      status = "PASS";
    } catch (const Failed& f) {
      status = "FAIL";
      detail = f.why;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    failed += status == "FAIL";
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << status << " [" << (i + 1) << "] " << criteria[i].first << " - " << detail << " (" << timing << ")"
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed ? 1 : 0;
}
