#pragma once

#include <string>
#include <vector>

#include "cise/report.hpp"

namespace cise::synth {

/// A set of parameter disequalities to impose on a failing pair, tagged with
/// the evidence from the triggering counterexample: whether each
/// disequality's two parameters were equal in the model (equal-valued
/// parameters are the likeliest culprits, so they are tried first).
struct RestrictionCandidate {
  std::vector<vc::ParamDisequality> diseqs;
  std::vector<bool> evidence_equal;
};

/// Candidate restrictions for a failing stability pair: one singleton per
/// unordered pair of same-sorted parameters drawn one from each instance
/// (matching positions first for self-pairs), evidence-ordered, followed by
/// the two-element unions of those singletons in the same order.
std::vector<RestrictionCandidate> candidates(const logic::OpInstance& inst_i,
                                             const logic::OpInstance& inst_j,
                                             const report::Counterexample& cex);

struct TokenTemplate {
  std::string name;
  std::string op_name;
  std::vector<std::string> arg_params;  // parameter names of the operation
};

struct PairRestriction {
  std::string op_i;
  std::string op_j;
  std::vector<vc::ParamDisequality> diseqs;
  std::string description;  // "parameter 1 != parameter 3" phrasing
};

struct TokenModel {
  std::vector<PairRestriction> restrictions;
  std::vector<TokenTemplate> tokens;
  std::vector<std::pair<std::string, std::string>> conflicts;  // normalized
};

struct SearchStep {
  std::string pair;       // "(withdraw, withdraw)"
  std::string candidate;  // position phrasing
  enum class Status { Accepted, Rejected, ViableNotSelected } status = Status::Rejected;
};

struct SynthesisResult {
  bool applicable = false;  // stage 1 passed and some stability task failed
  bool success = false;     // every failing pair got a restriction
  bool validated = false;   // full plan passes with the tokens injected
  TokenModel model;
  std::vector<SearchStep> log;
  std::string failure;  // no-solution pair or failed validation check
};

/// Runs the restriction search for one pair over an explicit candidate list
/// (first Unsat across all failing directions wins). Exposed so forced
/// orderings can be exercised directly.
struct PairSearch {
  bool found = false;
  RestrictionCandidate accepted;
  std::vector<SearchStep> log;
};
PairSearch search_pair(const vc::SpecPtr& spec, const vc::TaskChecker& checker,
                       std::size_t op_i, std::size_t op_j,
                       const std::vector<std::pair<std::size_t, std::size_t>>& failing_directions,
                       const std::vector<RestrictionCandidate>& ordered,
                       const std::string& pair_name, bool record_all_singletons);

/// Derives restrictions from each failing pair's counterexample, searches
/// candidates size-ascending (the first accepted set is minimal), builds the
/// token model, injects it, and validates the full plan.
SynthesisResult synthesize(const vc::SpecPtr& spec, const vc::TaskChecker& checker,
                           const vc::PlanResult& plan, const DomainBounds& bounds);

/// Copy of the specification with the synthesized tokens, conflicts and
/// acquires clauses added.
Specification inject_tokens(const Specification& spec, const TokenModel& model);

std::string render_token_model(const SynthesisResult& result);
nlohmann::ordered_json to_json(const SynthesisResult& result);

}  // namespace cise::synth
