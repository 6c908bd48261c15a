#include "doctest.h"

#include "latent/lp.hpp"
#include "latent/registry.hpp"

using namespace latent;

namespace {

LinearProgram ext_bell_lp(const Box<QField>& target) {
  FullInterruption fi = full_interruption(scenario("ext_bell_exo"));
  return assemble(fi.graph, target, fi.merge);
}

}  // namespace

TEST_SUITE_BEGIN("lp");

TEST_CASE("assembled program has the expected structure") {
  LinearProgram lp = ext_bell_lp(compose_2layer(named_box("tsirelson")));
  // settings X, X', Y, Y': private wires for each reader
  CHECK(lp.variable_count() == 128);
  int norm = 0, ns = 0, compat = 0;
  for (const auto& r : lp.rows) {
    if (r.kind == RowKind::Normalization) ++norm;
    if (r.kind == RowKind::NoSignaling) ++ns;
    if (r.kind == RowKind::Compatibility) ++compat;
  }
  CHECK(norm == 16);
  CHECK(compat == 32);
  CHECK(ns > 0);

  // Assembly is target-independent except for the right-hand side.
  LinearProgram lp2 = ext_bell_lp(compose_2layer(named_box("uniform")));
  REQUIRE(lp2.rows.size() == lp.rows.size());
  for (size_t i = 0; i < lp.rows.size(); ++i)
    CHECK(lp.rows[i].coeffs == lp2.rows[i].coeffs);

  // Empty merge map: no compatibility rows.
  FullInterruption fi = full_interruption(scenario("ext_bell_exo"));
  LinearProgram bare = assemble(fi.graph, compose_2layer(named_box("uniform")), {});
  for (const auto& r : bare.rows) CHECK(r.kind != RowKind::Compatibility);
}

TEST_CASE("broadcast of a CHSH-violating box is infeasible, with certificate") {
  LinearProgram lp = ext_bell_lp(compose_2layer(named_box("tsirelson")));
  FeasibilityResult r = solve(lp);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.row_multipliers.size() == lp.rows.size());

  // Determinism: identical program, identical certificate.
  FeasibilityResult r2 = solve(lp);
  CHECK(r.row_multipliers == r2.row_multipliers);

  Witness w = extract_witness(r, lp);
  Box<QField> target = compose_2layer(named_box("tsirelson"));
  CHECK(evaluate(w.functional, target) > w.bound);
  const BoxShape ext = box_shape(scenario("ext_bell_exo"));
  CHECK(classical_bound(w.functional, ext) <= w.bound);
  CHECK_FALSE(w.functional.presentation.empty());
}

TEST_CASE("interrupting only the shared Y wire is too weak to reject") {
  // With X still read jointly by A and C, the d-separation family misses the
  // constraints that tell A's copy of x apart from C's, and an extension of
  // the broadcast box exists. This is why the compatibility program always
  // splits every wire.
  CausalScenario partial =
      interrupt(scenario("ext_bell_exo"), "Y", {{"B"}, {"C"}});
  LinearProgram lp =
      assemble(partial, compose_2layer(named_box("tsirelson")),
               {{"X", "X"}, {"Y", "Y"}, {"Y'", "Y"}});
  CHECK(lp.variable_count() == 64);
  CHECK(solve(lp).feasible);
}

TEST_CASE("deterministic and classical targets are feasible") {
  for (int k : {0, 3, 7, 12, 15}) {
    Box<QField> det = named_box("deterministic(" + std::to_string(k) + ")");
    FeasibilityResult r = solve(ext_bell_lp(compose_2layer(det)));
    CHECK(r.feasible);
  }
  CHECK(solve(ext_bell_lp(compose_2layer(named_box("uniform")))).feasible);

  // Boundary: an even mixture of two aligned strategies sits at CHSH = 2.
  Box<QField> d0 = named_box("deterministic(0)");
  Box<QField> d15 = named_box("deterministic(15)");
  Box<QField> mix(bell_shape());
  for (size_t i = 0; i < mix.entries().size(); ++i)
    mix.entries()[i] =
        QField(Rational(1, 2)) * (d0.entries()[i] + d15.entries()[i]);
  CHECK(chsh_value(mix) == QField(2));
  CHECK(evaluate(functional("monogamy_bc"), compose_2layer(mix)) == QField(4));
  CHECK(solve(ext_bell_lp(compose_2layer(mix))).feasible);
}

TEST_CASE("the PR broadcast is rejected on no-signaling grounds alone") {
  LinearProgram lp = ext_bell_lp(opt_copy_box());
  FeasibilityResult r = solve(lp);
  CHECK_FALSE(r.feasible);
  Witness w = extract_witness(r, lp);
  CHECK(evaluate(w.functional, opt_copy_box()) > w.bound);
}

TEST_CASE("the mirrored witness family is valid and violated") {
  const BoxShape ext = box_shape(scenario("ext_bell_exo"));
  Box<QField> target = compose_2layer(named_box("tsirelson"));
  for (const auto& id : {"monogamy_ac", "monogamy_ac00"}) {
    LinearFunctional<QField> f = functional(id);
    CHECK(classical_bound(f, ext) == QField(4));
    CHECK(evaluate(f, target) > QField(4));  // 3*sqrt(2) at the broadcast box
  }
}

TEST_CASE("witness extraction demands an infeasibility certificate") {
  LinearProgram lp = ext_bell_lp(compose_2layer(named_box("uniform")));
  FeasibilityResult r = solve(lp);
  REQUIRE(r.feasible);
  CHECK_THROWS_AS(extract_witness(r, lp), CertificateInvalid);
}

TEST_CASE("generic feasibility core handles small systems") {
  // x + y = 1, x - y = 1 -> x = 1, y = 0
  ExactLp lp;
  lp.variables = 2;
  lp.rows = {{QField(1), QField(1)}, {QField(1), QField(-1)}};
  lp.rhs = {QField(1), QField(1)};
  ExactLpResult r = solve_nonneg_feasibility(lp);
  REQUIRE(r.feasible);
  CHECK(r.point == std::vector<QField>{QField(1), QField(0)});

  // x + y = -1 with x, y >= 0: infeasible.
  ExactLp bad;
  bad.variables = 2;
  bad.rows = {{QField(1), QField(1)}};
  bad.rhs = {QField(-1)};
  ExactLpResult rb = solve_nonneg_feasibility(bad);
  CHECK_FALSE(rb.feasible);
}

TEST_SUITE_END();
