#include "latent/box.hpp"

#include <algorithm>
#include <cctype>

namespace latent {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  return s;
}

}  // namespace

BoxShape box_shape(const CausalScenario& g) {
  BoxShape shape;
  std::vector<int> outs = g.outcomes();
  std::vector<int> sets = g.settings();
  auto by_name = [&](int a, int b) { return g.node(a).name < g.node(b).name; };
  std::sort(outs.begin(), outs.end(), by_name);
  std::sort(sets.begin(), sets.end(), by_name);
  for (int s : sets)
    shape.settings.push_back({g.node(s).name, g.node(s).cardinality});
  for (int o : outs) {
    PartyShape p;
    p.name = g.node(o).name;
    p.components.push_back({lower(g.node(o).name), g.node(o).cardinality});
    std::set<int> anc = g.ancestors({o});
    for (size_t k = 0; k < sets.size(); ++k)
      if (anc.count(sets[k])) p.setting_parents.push_back(static_cast<int>(k));
    shape.parties.push_back(std::move(p));
  }
  return shape;
}

BoxShape bell_shape() {
  BoxShape s;
  s.settings = {{"X", 2}, {"Y", 2}};
  s.parties = {{"A", {{"a", 2}}, {0}}, {"B", {{"b", 2}}, {1}}};
  return s;
}

std::vector<Box<QField>> deterministic_boxes(const BoxShape& shape) {
  const auto sdims = shape.setting_dims();
  struct PartyPlan {
    std::vector<int> parent_dims;
    int n_ctx = 1;
    int card = 2;
  };
  std::vector<PartyPlan> plan;
  long total = 1;
  for (const auto& p : shape.parties) {
    PartyPlan pp;
    pp.card = p.cardinality();
    for (int s : p.setting_parents) pp.parent_dims.push_back(sdims[s]);
    for (int d : pp.parent_dims) pp.n_ctx *= d;
    for (int i = 0; i < pp.n_ctx; ++i) total *= pp.card;
    plan.push_back(pp);
  }

  std::vector<Box<QField>> out;
  out.reserve(total);
  // One response table per party, enumerated as a mixed-radix odometer.
  std::vector<std::vector<int>> resp;
  for (const auto& pp : plan) resp.emplace_back(pp.n_ctx, 0);
  for (;;) {
    Box<QField> b(shape);
    for (int ctx = 0; ctx < shape.context_size(); ++ctx) {
      auto sdigits = unpack_index(sdims, ctx);
      std::vector<int> odigits(shape.parties.size());
      for (size_t p = 0; p < shape.parties.size(); ++p) {
        std::vector<int> local;
        for (int s : shape.parties[p].setting_parents) local.push_back(sdigits[s]);
        int lctx = plan[p].parent_dims.empty()
                       ? 0
                       : pack_index(plan[p].parent_dims, local);
        odigits[p] = resp[p][lctx];
      }
      b.at(pack_index(shape.outcome_dims(), odigits), ctx) = QField(1);
    }
    out.push_back(std::move(b));
    // advance odometer
    bool carried = true;
    for (size_t p = 0; p < plan.size() && carried; ++p)
      for (int i = 0; i < plan[p].n_ctx && carried; ++i) {
        if (++resp[p][i] < plan[p].card)
          carried = false;
        else
          resp[p][i] = 0;
      }
    if (carried) break;
  }
  return out;
}

Box<QField> named_box(const std::string& id) {
  BoxShape s = bell_shape();
  Box<QField> b(s);
  if (id == "tsirelson") {
    // P(a,b|x,y) = (2 +- sqrt2)/8, positive sign iff a^b == x&y fails...
    for (int a = 0; a < 2; ++a)
      for (int bo = 0; bo < 2; ++bo)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) {
            bool aligned = (a ^ bo) == (x & y);
            b.at({a, bo}, {x, y}) =
                QField(Rational(1, 4), Rational(aligned ? 1 : -1, 8));
          }
    return b;
  }
  if (id == "pr") {
    for (int a = 0; a < 2; ++a)
      for (int bo = 0; bo < 2; ++bo)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            if ((a ^ bo) == (x & y))
              b.at({a, bo}, {x, y}) = QField(Rational(1, 2));
    return b;
  }
  if (id == "uniform") {
    for (auto& e : b.entries()) e = QField(Rational(1, 4));
    return b;
  }
  if (id.rfind("deterministic(", 0) == 0 && id.back() == ')') {
    int k = std::stoi(id.substr(14, id.size() - 15));
    if (k < 0 || k >= 16) throw UnknownId("deterministic index out of range");
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        int a = (k >> x) & 1;
        int bo = (k >> (2 + y)) & 1;
        b.at({a, bo}, {x, y}) = QField(1);
      }
    return b;
  }
  throw UnknownId("unknown box id: " + id);
}

namespace {

void require_bell_shape(const Box<QField>& inner) {
  const BoxShape& s = inner.shape();
  if (s.parties.size() != 2 || s.settings.size() != 2 ||
      s.parties[0].cardinality() != 2 || s.parties[1].cardinality() != 2 ||
      s.settings[0].cardinality != 2 || s.settings[1].cardinality != 2)
    throw ShapeMismatch("expected a binary (A,B|X,Y) box");
}

BoxShape extended_bell_box_shape() {
  BoxShape s;
  s.settings = {{"X", 2}, {"Y", 2}};
  s.parties = {{"A", {{"a", 2}}, {0}},
               {"B", {{"b", 2}}, {1}},
               {"C", {{"c", 2}}, {0, 1}}};
  return s;
}

BoxShape two_layer_tetra_shape() {
  BoxShape s;
  s.parties = {{"A", {{"a_x", 2}, {"a_o", 2}}, {}},
               {"B", {{"b_y", 2}, {"b_o", 2}}, {}},
               {"C", {{"c_x", 2}, {"c_y", 2}, {"c_o", 2}}, {}},
               {"D", {{"d_x", 2}, {"d_y", 2}}, {}}};
  return s;
}

}  // namespace

Box<QField> compose_2layer(const Box<QField>& inner) {
  require_bell_shape(inner);
  Box<QField> out(extended_bell_box_shape());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          out.at({a, b, b}, {x, y}) = inner.at({a, b}, {x, y});
  return out;
}

Box<QField> compose_2lt(const Box<QField>& inner) {
  require_bell_shape(inner);
  Box<QField> out(two_layer_tetra_shape());
  const QField quarter(Rational(1, 4));
  for (int ax = 0; ax < 2; ++ax)
    for (int ao = 0; ao < 2; ++ao)
      for (int by = 0; by < 2; ++by)
        for (int bo = 0; bo < 2; ++bo) {
          QField v = quarter * inner.at({ao, bo}, {ax, by});
          // c = (c_x, c_y, c_o) = (a_x, b_y, b_o); d = (a_x, b_y)
          out.at({ax * 2 + ao, by * 2 + bo, ((ax * 2 + by) * 2) + bo,
                  ax * 2 + by},
                 {}) = v;
        }
  return out;
}

Box<QField> tetra_reduce(const Box<QField>& p2lt) {
  if (!(p2lt.shape() == two_layer_tetra_shape()))
    throw ShapeMismatch("tetra_reduce expects the two-layer tetra shape");
  // Support check: all mass must sit on a_x=c_x=d_x, b_y=c_y=d_y, b_o=c_o.
  const auto dims = p2lt.shape().outcome_dims();
  for (int o = 0; o < p2lt.shape().outcome_size(); ++o) {
    if (p2lt.at(o, 0).is_zero()) continue;
    auto d = unpack_index(dims, o);
    int ax = d[0] >> 1, ao = d[0] & 1;
    int by = d[1] >> 1, bo = d[1] & 1;
    int cx = d[2] >> 2, cy = (d[2] >> 1) & 1, co = d[2] & 1;
    int dx = d[3] >> 1, dy = d[3] & 1;
    (void)ao;
    if (ax != cx || ax != dx || by != cy || by != dy || bo != co)
      throw SupportViolation("mass outside the delta pattern");
  }
  Box<QField> out(extended_bell_box_shape());
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy) {
      QField mass;
      for (int ao = 0; ao < 2; ++ao)
        for (int bo = 0; bo < 2; ++bo)
          for (int co = 0; co < 2; ++co)
            mass += p2lt.at({dx * 2 + ao, dy * 2 + bo,
                             ((dx * 2 + dy) * 2) + co, dx * 2 + dy},
                            {});
      if (mass.is_zero())
        throw SupportViolation("context (d_x,d_y) has no mass");
      for (int ao = 0; ao < 2; ++ao)
        for (int bo = 0; bo < 2; ++bo)
          for (int co = 0; co < 2; ++co)
            out.at({ao, bo, co}, {dx, dy}) =
                p2lt.at({dx * 2 + ao, dy * 2 + bo, ((dx * 2 + dy) * 2) + co,
                         dx * 2 + dy},
                        {}) /
                mass;
    }
  return out;
}

Box<QField> opt_copy_box() {
  Box<QField> out = compose_2layer(named_box("pr"));
  // On the PR support b = a xor x*y, so the copier's output c=b equals
  // a xor x*y entrywise; keep that as a construction check.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            if (!out.at({a, b, c}, {x, y}).is_zero() && c != (a ^ (x & y)))
              throw SupportViolation("PR copy protocol support broken");
  return out;
}

namespace {

// Adds w * <P_i P_j> at the given contexts to f's term list.
void add_correlator_terms(LinearFunctional<QField>& f, int pi, int pj,
                          const std::vector<std::pair<int, int>>& contexts,
                          const QField& w) {
  const auto odims = f.shape.outcome_dims();
  const auto sdims = f.shape.setting_dims();
  for (const auto& [x, y] : contexts) {
    int ctx = pack_index(sdims, {x, y});
    for (int o = 0; o < f.shape.outcome_size(); ++o) {
      auto digits = unpack_index(odims, o);
      QField coef = ((digits[pi] ^ digits[pj]) ? -w : w);
      f.terms.push_back({coef, o, ctx});
    }
  }
}

void merge_terms(LinearFunctional<QField>& f) {
  std::map<std::pair<int, int>, QField> acc;
  for (const auto& t : f.terms) acc[{t.outcome_index, t.context_index}] += t.coef;
  f.terms.clear();
  for (const auto& [key, coef] : acc)
    if (!coef.is_zero()) f.terms.push_back({coef, key.first, key.second});
}

}  // namespace

LinearFunctional<QField> make_chsh(const BoxShape& shape) {
  if (shape.settings.size() != 2) throw ShapeMismatch("CHSH needs two settings");
  LinearFunctional<QField> f;
  f.shape = shape;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      add_correlator_terms(f, 0, 1, {{x, y}},
                           QField((x == 1 && y == 1) ? -1 : 1));
  merge_terms(f);
  f.presentation = "CHSH(A,B|X,Y)";
  return f;
}

LinearFunctional<QField> make_monogamy_bc(
    const BoxShape& shape, std::optional<std::pair<int, int>> context) {
  LinearFunctional<QField> f = make_chsh(shape);
  int b = shape.party_index("B");
  int c = shape.party_index("C");
  if (context) {
    add_correlator_terms(f, b, c, {*context}, QField(2));
    f.presentation = "CHSH(A,B|X,Y) + 2<B_" + std::to_string(context->second) +
                     " C_" + std::to_string(context->first) +
                     std::to_string(context->second) + ">";
  } else {
    add_correlator_terms(f, b, c, {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                         QField(Rational(1, 2)));
    f.presentation = "CHSH(A,B|X,Y) + 2<B_y C_xy>";
  }
  merge_terms(f);
  return f;
}

LinearFunctional<QField> make_monogamy_ac(
    const BoxShape& shape, std::optional<std::pair<int, int>> context) {
  LinearFunctional<QField> f = make_chsh(shape);
  int a = shape.party_index("A");
  int c = shape.party_index("C");
  if (context) {
    add_correlator_terms(f, a, c, {*context}, QField(2));
    f.presentation = "CHSH(A,B|X,Y) + 2<A_" + std::to_string(context->first) +
                     " C_" + std::to_string(context->first) +
                     std::to_string(context->second) + ">";
  } else {
    add_correlator_terms(f, a, c, {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                         QField(Rational(1, 2)));
    f.presentation = "CHSH(A,B|X,Y) + 2<A_x C_xy>";
  }
  merge_terms(f);
  return f;
}

LinearFunctional<QField> make_chsh_plus_ab00(const BoxShape& shape) {
  LinearFunctional<QField> f = make_chsh(shape);
  add_correlator_terms(f, 0, 1, {{0, 0}}, QField(2));
  merge_terms(f);
  f.presentation = "CHSH(A,B|X,Y) + 2<A_0 B_0>";
  return f;
}

QField classical_bound(const LinearFunctional<QField>& f, const BoxShape& shape) {
  if (!(f.shape == shape)) throw ShapeMismatch("functional/shape mismatch");
  bool first = true;
  QField best;
  for (const auto& b : deterministic_boxes(shape)) {
    QField v = evaluate(f, b);
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  if (first) throw ShapeMismatch("shape has no deterministic strategies");
  return best;
}

}  // namespace latent
