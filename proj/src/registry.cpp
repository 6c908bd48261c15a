#include "latent/registry.hpp"

namespace latent {

namespace {

using E = std::pair<std::string, std::string>;
constexpr auto Obs = NodeKind::Observed;
constexpr auto LQ = NodeKind::LatentQuantum;
constexpr auto LC = NodeKind::LatentClassical;

CausalScenario build(const std::string& id) {
  if (id == "bell")
    return CausalScenario({{"X", Obs, 2},
                           {"Y", Obs, 2},
                           {"A", Obs, 2},
                           {"B", Obs, 2},
                           {"L_AB", LQ}},
                          {E{"X", "A"}, E{"Y", "B"}, E{"L_AB", "A"}, E{"L_AB", "B"}});
  if (id == "ext_bell_exo")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"L_ABC", LQ}},
        {E{"X", "A"}, E{"X", "C"}, E{"Y", "B"}, E{"Y", "C"},
         E{"L_ABC", "A"}, E{"L_ABC", "B"}, E{"L_ABC", "C"}});
  if (id == "ext_bell_bc")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"L_ABC", LQ}, {"M_BC", LQ}},
        {E{"X", "A"}, E{"X", "C"}, E{"L_ABC", "A"}, E{"L_ABC", "M_BC"},
         E{"Y", "M_BC"}, E{"M_BC", "B"}, E{"M_BC", "C"}});
  if (id == "ext_bell_ac")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"L_ABC", LQ}, {"M_AC", LQ}},
        {E{"Y", "B"}, E{"Y", "C"}, E{"L_ABC", "B"}, E{"L_ABC", "M_AC"},
         E{"X", "M_AC"}, E{"M_AC", "A"}, E{"M_AC", "C"}});
  if (id == "ext_bell_2il")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"L_ABC", LQ}, {"M_AC", LQ}, {"M_BC", LQ}},
        {E{"X", "M_AC"}, E{"Y", "M_BC"}, E{"L_ABC", "M_AC"}, E{"L_ABC", "M_BC"},
         E{"M_AC", "A"}, E{"M_AC", "C"}, E{"M_BC", "B"}, E{"M_BC", "C"}});
  if (id == "tetra")
    return CausalScenario(
        {{"A", Obs, 4}, {"B", Obs, 4}, {"C", Obs, 8}, {"D", Obs, 4},
         {"L_ABC", LQ}, {"L_ABD", LQ}, {"L_ACD", LQ}, {"L_BCD", LQ}},
        {E{"L_ABC", "A"}, E{"L_ABC", "B"}, E{"L_ABC", "C"},
         E{"L_ABD", "A"}, E{"L_ABD", "B"}, E{"L_ABD", "D"},
         E{"L_ACD", "A"}, E{"L_ACD", "C"}, E{"L_ACD", "D"},
         E{"L_BCD", "B"}, E{"L_BCD", "C"}, E{"L_BCD", "D"}});
  if (id == "tetra_bc")
    return CausalScenario(
        {{"A", Obs, 4}, {"B", Obs, 4}, {"C", Obs, 8}, {"D", Obs, 4},
         {"L_ABC", LQ}, {"L_ABD", LQ}, {"L_ACD", LQ}, {"L_BCD", LQ},
         {"M_BC", LQ}},
        {E{"L_ABC", "A"}, E{"L_ABC", "M_BC"},
         E{"L_BCD", "M_BC"}, E{"L_BCD", "D"},
         E{"M_BC", "B"}, E{"M_BC", "C"},
         E{"L_ABD", "A"}, E{"L_ABD", "B"}, E{"L_ABD", "D"},
         E{"L_ACD", "A"}, E{"L_ACD", "C"}, E{"L_ACD", "D"}});
  if (id == "tetra_ac_ad_bd")
    return CausalScenario(
        {{"A", Obs, 4}, {"B", Obs, 4}, {"C", Obs, 8}, {"D", Obs, 4},
         {"L_ABC", LQ}, {"L_ABD", LQ}, {"L_ACD", LQ}, {"L_BCD", LQ},
         {"M_AC", LQ}, {"M_AD", LQ}, {"M_BD", LQ}},
        {E{"L_ABC", "M_AC"}, E{"L_ACD", "M_AC"}, E{"M_AC", "A"}, E{"M_AC", "C"},
         E{"L_ABD", "M_AD"}, E{"L_ACD", "M_AD"}, E{"M_AD", "A"}, E{"M_AD", "D"},
         E{"L_ABD", "M_BD"}, E{"L_BCD", "M_BD"}, E{"M_BD", "B"}, E{"M_BD", "D"},
         E{"L_ABC", "B"}, E{"L_BCD", "C"}});
  if (id == "fig12a")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"L_ABC", LQ}, {"M_BC", LC}},
        {E{"X", "A"}, E{"X", "C"}, E{"Y", "B"}, E{"Y", "C"},
         E{"L_ABC", "A"}, E{"L_ABC", "B"}, E{"L_ABC", "C"},
         E{"L_ABC", "M_BC"}, E{"Y", "M_BC"}, E{"M_BC", "B"}, E{"M_BC", "C"}});
  if (id == "fig12b")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"L_ABC", LQ}, {"M_BC", LC}},
        {E{"X", "A"}, E{"X", "C"}, E{"L_ABC", "A"}, E{"L_ABC", "M_BC"},
         E{"Y", "M_BC"}, E{"M_BC", "B"}, E{"M_BC", "C"}});
  if (id == "app_d_three_bipartite")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"D", Obs, 2}, {"L", LQ},
         {"M_BC", LQ}, {"M_BD", LQ}, {"M_CD", LQ}},
        {E{"X", "A"}, E{"L", "A"},
         E{"L", "M_BC"}, E{"L", "M_BD"}, E{"L", "M_CD"},
         E{"Y", "M_BC"}, E{"Y", "M_BD"}, E{"Y", "M_CD"},
         E{"M_BC", "B"}, E{"M_BC", "C"}, E{"M_BD", "B"}, E{"M_BD", "D"},
         E{"M_CD", "C"}, E{"M_CD", "D"}});
  if (id == "app_d_tripartite")
    return CausalScenario(
        {{"X", Obs, 2}, {"Y", Obs, 2}, {"A", Obs, 2}, {"B", Obs, 2},
         {"C", Obs, 2}, {"D", Obs, 2}, {"L", LQ}, {"M_BCD", LQ}},
        {E{"X", "A"}, E{"L", "A"}, E{"L", "M_BCD"}, E{"Y", "M_BCD"},
         E{"M_BCD", "B"}, E{"M_BCD", "C"}, E{"M_BCD", "D"}});
  throw UnknownId("unknown scenario id: " + id);
}

}  // namespace

CausalScenario scenario(const std::string& id) { return build(id); }

std::vector<std::string> scenario_ids() {
  return {"bell",          "ext_bell_exo", "ext_bell_bc",
          "ext_bell_ac",   "ext_bell_2il", "tetra",
          "tetra_bc",      "tetra_ac_ad_bd", "fig12a",
          "fig12b",        "app_d_three_bipartite", "app_d_tripartite"};
}

LinearFunctional<QField> functional(const std::string& id) {
  if (id == "chsh") return make_chsh(bell_shape());
  const BoxShape ext = box_shape(scenario("ext_bell_exo"));
  if (id == "monogamy_bc") return make_monogamy_bc(ext, std::nullopt);
  if (id == "monogamy_bc00") return make_monogamy_bc(ext, std::pair{0, 0});
  if (id == "monogamy_ac") return make_monogamy_ac(ext, std::nullopt);
  if (id == "monogamy_ac00") return make_monogamy_ac(ext, std::pair{0, 0});
  throw UnknownId("unknown functional id: " + id);
}

std::vector<std::string> functional_ids() {
  return {"chsh", "monogamy_bc", "monogamy_bc00", "monogamy_ac", "monogamy_ac00"};
}

InflationSpec tetra_inflation_spec() {
  InflationSpec s;
  s.latent_copies = {{"L_ABC", 1}, {"L_ABD", 2}, {"L_ACD", 2}, {"L_BCD", 2}};
  s.observed_copies = {{"D", 2}};
  s.wiring = {
      {{"A", 1, "L_ABC"}, 1}, {{"A", 1, "L_ABD"}, 1}, {{"A", 1, "L_ACD"}, 1},
      {{"B", 1, "L_ABC"}, 1}, {{"B", 1, "L_ABD"}, 2}, {{"B", 1, "L_BCD"}, 1},
      {{"C", 1, "L_ABC"}, 1}, {{"C", 1, "L_ACD"}, 1}, {{"C", 1, "L_BCD"}, 1},
      {{"D", 1, "L_ABD"}, 1}, {{"D", 1, "L_ACD"}, 1}, {{"D", 1, "L_BCD"}, 2},
      {{"D", 2, "L_ABD"}, 2}, {{"D", 2, "L_ACD"}, 2}, {{"D", 2, "L_BCD"}, 1},
  };
  return s;
}

InflationSpec tetra_acadbd_inflation_spec() {
  InflationSpec s;
  s.latent_copies = {{"L_ABC", 1}, {"L_ABD", 2}, {"L_ACD", 2}, {"L_BCD", 2},
                     {"M_AC", 1},  {"M_AD", 2},  {"M_BD", 2}};
  s.observed_copies = {{"D", 2}};
  s.wiring = {
      {{"M_AC", 1, "L_ABC"}, 1}, {{"M_AC", 1, "L_ACD"}, 1},
      {{"M_AD", 1, "L_ABD"}, 1}, {{"M_AD", 1, "L_ACD"}, 1},
      {{"M_AD", 2, "L_ABD"}, 2}, {{"M_AD", 2, "L_ACD"}, 2},
      {{"M_BD", 1, "L_ABD"}, 1}, {{"M_BD", 1, "L_BCD"}, 2},
      {{"M_BD", 2, "L_ABD"}, 2}, {{"M_BD", 2, "L_BCD"}, 1},
      {{"A", 1, "M_AC"}, 1},     {{"A", 1, "M_AD"}, 1},
      {{"B", 1, "L_ABC"}, 1},    {{"B", 1, "M_BD"}, 2},
      {{"C", 1, "M_AC"}, 1},     {{"C", 1, "L_BCD"}, 1},
      {{"D", 1, "M_AD"}, 1},     {{"D", 1, "M_BD"}, 1},
      {{"D", 2, "M_AD"}, 2},     {{"D", 2, "M_BD"}, 2},
  };
  return s;
}

Box<QField> parse_target(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) return named_box(spec);
  std::string head = spec.substr(0, colon);
  std::string tail = spec.substr(colon + 1);
  if (head == "box") return named_box(tail);
  if (head == "2layer") return compose_2layer(named_box(tail));
  if (head == "2lt") return compose_2lt(named_box(tail));
  throw UnknownId("unknown target spec: " + spec);
}

}  // namespace latent
