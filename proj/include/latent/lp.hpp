#pragma once

#include <map>
#include <string>
#include <vector>

#include "latent/box.hpp"
#include "latent/graph.hpp"
#include "latent/qfield.hpp"

namespace latent {

struct FloatTargetRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificateInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Generic exact feasibility core: find q >= 0 with rows * q = rhs, all
/// arithmetic over Q(sqrt 2). Infeasibility comes with a Farkas vector y
/// satisfying yᵀA <= 0 componentwise and yᵀrhs > 0, re-verified exactly.
struct ExactLp {
  int variables = 0;
  std::vector<std::vector<QField>> rows;
  std::vector<QField> rhs;
};

struct ExactLpResult {
  bool feasible = false;
  std::vector<QField> point;   // when feasible: exact solution
  std::vector<QField> farkas;  // when infeasible: exact row multipliers
};

/// Phase-1 simplex with Bland's rule; deterministic for a fixed row and
/// variable order. Always terminates.
ExactLpResult solve_nonneg_feasibility(const ExactLp& lp);

enum class RowKind { Normalization, NoSignaling, Compatibility };

struct LpRow {
  std::vector<QField> coeffs;
  QField rhs;
  RowKind kind = RowKind::Normalization;
  std::string provenance;
  // Compatibility rows remember which coordinate of the original-scenario
  // box they pin.
  int compat_outcome = -1;
  int compat_context = -1;
};

/// Feasibility program for "does this box extend to the interrupted
/// scenario": variables Q(outcomes | interrupted settings), lexicographic by
/// (outcome index, context index).
struct LinearProgram {
  BoxShape interrupted_shape;
  BoxShape original_shape;
  std::vector<LpRow> rows;
  int variable_count() const {
    return interrupted_shape.outcome_size() * interrupted_shape.context_size();
  }
};

/// Builds normalization + no-signaling rows of the interrupted scenario and
/// compatibility rows pinning merged settings to `target`. `merge_map` sends
/// each interrupted setting name to the original setting it reproduces; empty
/// map = no compatibility rows.
LinearProgram assemble(const CausalScenario& interrupted,
                       const Box<QField>& target,
                       const std::map<std::string, std::string>& merge_map);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<QField> assignment;       // exact point when feasible
  std::vector<QField> row_multipliers;  // exact certificate when infeasible
};

FeasibilityResult solve(const LinearProgram& lp);

struct Witness {
  LinearFunctional<QField> functional;  // over the original shape
  QField bound;                         // evaluate(functional, P) <= bound
};

/// Contracts the Farkas multipliers against the compatibility rows: the
/// result is a monogamy-type inequality valid for every box compatible with
/// the un-interrupted scenario, normalized to smallest integer-like
/// coefficients, with a correlator-form presentation when outcomes are
/// binary.
Witness extract_witness(const FeasibilityResult& result, const LinearProgram& lp);

}  // namespace latent
