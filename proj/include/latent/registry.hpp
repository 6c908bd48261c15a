#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latent/box.hpp"
#include "latent/graph.hpp"

namespace latent {

/// Built-in scenarios, keyed by canonical id:
///   bell            two-party Bell DAG
///   ext_bell_exo    extended Bell, exogenous source only
///   ext_bell_bc     extended Bell with a BC intermediate fed by Y
///   ext_bell_ac     extended Bell with an AC intermediate fed by X
///   ext_bell_2il    both intermediates
///   tetra           four parties, four tripartite face sources
///   tetra_bc        tetra with a BC intermediate (fed by ABC and BCD)
///   tetra_ac_ad_bd  tetra with AC, AD, BD intermediates
///   fig12a          classical BC intermediate plus pass-through arrows
///   fig12b          classical BC intermediate, no pass-through arrows
///   app_d_three_bipartite / app_d_tripartite  config-only open pair
CausalScenario scenario(const std::string& id);
std::vector<std::string> scenario_ids();

/// Named witness functionals over the extended Bell shape (or Bell shape for
/// chsh): chsh, monogamy_bc, monogamy_bc00, monogamy_ac, monogamy_ac00.
LinearFunctional<QField> functional(const std::string& id);
std::vector<std::string> functional_ids();

/// Reference values used by the reporting layer.
namespace refval {
/// Deterministic maximum of CHSH.
inline const QField chsh_classical{2};
/// Quantum maximum of CHSH (2*sqrt(2)).
inline const QField chsh_tsirelson{Rational(0), Rational(2)};
/// Deterministic maximum of CHSH + 2<B_y C_xy>.
inline const QField monogamy_classical{4};
/// Value of the monogamy functional at the broadcast composition of the
/// Tsirelson box (2*sqrt(2) + 2).
inline const QField monogamy_tsirelson{Rational(2), Rational(2)};
/// Quantum maximum of CHSH + 2<B_0 C_00> with an AC-routed intermediate,
/// 8/sqrt(3); float because it lives outside Q(sqrt 2).
inline const double ac_intermediate_bound = 4.618802153517007;
}  // namespace refval

/// Parses "2layer:tsirelson", "2layer:deterministic(7)", "2lt:pr",
/// "box:uniform" into a concrete exact box.
Box<QField> parse_target(const std::string& spec);

/// Non-fanout inflation of the tetra scenario: one ABC copy, two copies of
/// the other faces, two D copies, wired so the four adjacent pairs are
/// injectable.
InflationSpec tetra_inflation_spec();

/// Same construction for the AC/AD/BD-intermediate variant: the intermediates
/// are copied alongside the faces.
InflationSpec tetra_acadbd_inflation_spec();

}  // namespace latent
