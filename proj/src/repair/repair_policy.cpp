#include "polaris/repair/repair_policy.hpp"

#include "polaris/core/rng.hpp"
#include "polaris/eval/sampling.hpp"

namespace polaris::repair {

Json to_json(const RepairCycleRecord& r) {
  Json j{{"iteration", r.iteration}, {"outcome", to_string(r.outcome)}, {"notes", r.notes}};
  j["reflections"] = Json::array();
  for (const auto& x : r.reflections) j["reflections"].push_back(x);
  j["strategies"] = Json::array();
  for (const auto& x : r.strategies) j["strategies"].push_back(x);
  j["patches"] = Json::array();
  for (const auto& x : r.patches) j["patches"].push_back(x);
  j["attempts"] = Json::array();
  for (const auto& x : r.attempts) j["attempts"].push_back(to_json(x));
  j["candidate_version"] = r.candidate_version ? Json(*r.candidate_version) : Json();
  return j;
}

namespace {

void write_ndjson(const RepairContext& ctx, const std::string& rel, const Json& items) {
  if (!ctx.store) return;
  std::string out;
  for (const auto& i : items) out += i.dump() + "\n";
  ctx.store->write(rel, out);
}

}  // namespace

PolicyVersion repair_policy(const PolicyVersion& policy, const AgentState& state,
                            const std::vector<FailureRecord>& failures, const Json& feedback, const RunConfig& config,
                            std::vector<Strategy>& strategy_set, RepairContext& ctx, RepairCycleRecord* record) {
  RepairCycleRecord local;
  RepairCycleRecord& rec = record ? *record : local;
  rec = RepairCycleRecord{};
  rec.iteration = ctx.iteration();
  const std::string it = std::to_string(rec.iteration);

  auto finish = [&](CycleOutcome o, const std::string& note) {
    rec.outcome = o;
    if (!note.empty()) rec.notes.push_back(note);
    if (o != CycleOutcome::integrated && o != CycleOutcome::archived_after_retries) {
      ctx.recorder.record(EntryKind::patch_outcome,
                          Json{{"outcome", to_string(o)}, {"notes", rec.notes}, {"policy_version", policy.version}});
    }
    return policy;
  };

  if (failures.empty()) return finish(CycleOutcome::skipped_no_failures, "");

  const auto sampled =
      eval::sample_failures(failures, config.n_failures, derive_seed(config.seed, "failures/" + it));

  // Failure analysis
  std::vector<Reflection> usable;
  for (const auto& f : sampled) {
    try {
      Reflection r = analyze_failure(policy, state, f, ctx);
      rec.reflections.push_back(r);
      if (r.complete()) {
        usable.push_back(r);
      } else {
        rec.notes.push_back("reflection for " + f.task.id + " is incomplete");
      }
    } catch (const llm::TransportError& e) {
      rec.notes.push_back("analysis of " + f.task.id + " failed: " + e.what());
    }
  }
  {
    Json items = Json::array();
    for (const auto& r : rec.reflections) items.push_back(r);
    write_ndjson(ctx, "reflections/iter_" + it + ".ndjson", items);
  }
  if (usable.empty()) return finish(CycleOutcome::skipped_no_reflections, "no complete reflection");

  // Strategy synthesis
  SynthesisResult synth;
  try {
    synth = synthesize_strategies(policy, state, usable, strategy_set, ctx);
  } catch (const llm::TransportError& e) {
    return finish(CycleOutcome::skipped_no_strategies, std::string("strategy synthesis failed: ") + e.what());
  }
  for (const auto& d : synth.dropped) rec.notes.push_back("strategy dropped: " + d);
  rec.strategies = synth.kept;
  strategy_set.insert(strategy_set.end(), synth.kept.begin(), synth.kept.end());
  {
    Json items = Json::array();
    for (const auto& s : rec.strategies) items.push_back(s);
    write_ndjson(ctx, "strategies/iter_" + it + ".ndjson", items);
  }
  if (rec.strategies.empty()) return finish(CycleOutcome::skipped_no_strategies, "no novel strategy");

  // Patch generation
  PatchGenerationResult gen;
  try {
    gen = generate_patches(policy, rec.strategies, ctx);
  } catch (const llm::TransportError& e) {
    return finish(CycleOutcome::skipped_no_patches, std::string("patch generation failed: ") + e.what());
  }
  for (const auto& p : gen.problems) rec.notes.push_back("patch problem: " + p);
  if (gen.patches.empty()) {
    if (ctx.store) {
      std::string raw;
      for (const auto& r : gen.responses) raw += r + (r.empty() || r.back() != '\n' ? "\n" : "");
      ctx.store->write("patches/iter_" + it + ".txt", raw);
    }
    return finish(CycleOutcome::skipped_no_patches, "no usable patch");
  }

  // Integration
  IntegrationResult integ;
  try {
    integ = integrate_patch(policy, state, gen.patches, rec.strategies, feedback, ctx);
  } catch (const llm::TransportError& e) {
    rec.patches = gen.patches;
    ctx.recorder.record(EntryKind::patch_outcome, Json{{"outcome", to_string(CycleOutcome::archived_after_retries)},
                                                       {"error", e.what()},
                                                       {"feedback", feedback},
                                                       {"policy_version", policy.version}});
    rec.outcome = CycleOutcome::archived_after_retries;
    rec.notes.push_back(std::string("integration failed: ") + e.what());
    return policy;
  }
  rec.patches = integ.patches;
  rec.attempts = integ.attempts;
  rec.outcome = integ.outcome;
  if (ctx.store) {
    std::vector<policylang::PatchSection> sections;
    for (const auto& p : rec.patches) {
      std::string label = p.strategy_id;
      for (const auto& s : rec.strategies) {
        if (s.id == p.strategy_id) label = s.text;
      }
      sections.push_back({label, p.body});
    }
    ctx.store->write("patches/iter_" + it + ".txt", policylang::format_patch_sections(sections));
  }
  if (integ.policy) {
    rec.candidate_version = integ.policy->version;
    return *integ.policy;
  }
  return policy;
}

}  // namespace polaris::repair
