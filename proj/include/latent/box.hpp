#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latent/graph.hpp"
#include "latent/qfield.hpp"

namespace latent {

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownId : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SupportViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComponentShape {
  std::string name;
  int cardinality = 2;
  bool operator==(const ComponentShape&) const = default;
};

struct PartyShape {
  std::string name;
  std::vector<ComponentShape> components;
  std::vector<int> setting_parents;  // indices into BoxShape::settings
  int cardinality() const {
    int c = 1;
    for (const auto& comp : components) c *= comp.cardinality;
    return c;
  }
  bool operator==(const PartyShape&) const = default;
};

struct SettingShape {
  std::string name;
  int cardinality = 2;
  bool operator==(const SettingShape&) const = default;
};

struct BoxShape {
  std::vector<PartyShape> parties;
  std::vector<SettingShape> settings;

  int outcome_size() const {
    int n = 1;
    for (const auto& p : parties) n *= p.cardinality();
    return n;
  }
  int context_size() const {
    int n = 1;
    for (const auto& s : settings) n *= s.cardinality;
    return n;
  }
  std::vector<int> outcome_dims() const {
    std::vector<int> d;
    for (const auto& p : parties) d.push_back(p.cardinality());
    return d;
  }
  std::vector<int> setting_dims() const {
    std::vector<int> d;
    for (const auto& s : settings) d.push_back(s.cardinality);
    return d;
  }
  int party_index(const std::string& name) const {
    for (size_t i = 0; i < parties.size(); ++i)
      if (parties[i].name == name) return static_cast<int>(i);
    throw ShapeMismatch("no party named " + name);
  }
  int setting_index(const std::string& name) const {
    for (size_t i = 0; i < settings.size(); ++i)
      if (settings[i].name == name) return static_cast<int>(i);
    throw ShapeMismatch("no setting named " + name);
  }
  bool operator==(const BoxShape&) const = default;
};

/// Mixed-radix helpers; index 0 is the most significant digit.
inline int pack_index(const std::vector<int>& dims, const std::vector<int>& digits) {
  int idx = 0;
  for (size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
  return idx;
}
inline std::vector<int> unpack_index(const std::vector<int>& dims, int idx) {
  std::vector<int> digits(dims.size());
  for (size_t i = dims.size(); i-- > 0;) {
    digits[i] = idx % dims[i];
    idx /= dims[i];
  }
  return digits;
}

/// Shape induced by a scenario: parties are its outcome nodes (name order),
/// settings its setting nodes (name order), and each party may respond to its
/// setting ancestors.
BoxShape box_shape(const CausalScenario& g);

/// Conditional probability tensor P(outcomes | settings). Entries are stored
/// dense, outcomes-major; exact (QField) and float instantiations share the
/// implementation. Boxes are immutable values in practice: construct, fill,
/// then share.
template <class Scalar>
class Box {
 public:
  Box() = default;
  explicit Box(BoxShape shape)
      : shape_(std::move(shape)),
        entries_(static_cast<size_t>(shape_.outcome_size()) *
                 shape_.context_size()) {}

  const BoxShape& shape() const { return shape_; }

  Scalar& at(int outcome_index, int context_index) {
    return entries_[static_cast<size_t>(outcome_index) * shape_.context_size() +
                    context_index];
  }
  const Scalar& at(int outcome_index, int context_index) const {
    return entries_[static_cast<size_t>(outcome_index) * shape_.context_size() +
                    context_index];
  }
  Scalar& at(const std::vector<int>& outcomes, const std::vector<int>& settings) {
    return at(pack_index(shape_.outcome_dims(), outcomes),
              pack_index(shape_.setting_dims(), settings));
  }
  const Scalar& at(const std::vector<int>& outcomes,
                   const std::vector<int>& settings) const {
    return at(pack_index(shape_.outcome_dims(), outcomes),
              pack_index(shape_.setting_dims(), settings));
  }

  const std::vector<Scalar>& entries() const { return entries_; }
  std::vector<Scalar>& entries() { return entries_; }

  /// Entries nonnegative and each context summing to one. Exact for QField;
  /// within tol for floats.
  bool well_formed(double tol = 1e-12) const {
    for (int ctx = 0; ctx < shape_.context_size(); ++ctx) {
      Scalar sum{};
      for (int o = 0; o < shape_.outcome_size(); ++o) {
        if (!nonneg(at(o, ctx), tol)) return false;
        sum += at(o, ctx);
      }
      if (!is_one(sum, tol)) return false;
    }
    return true;
  }

 private:
  static bool nonneg(const QField& v, double) { return v.sign() >= 0; }
  static bool nonneg(double v, double tol) { return v >= -tol; }
  static bool is_one(const QField& v, double) { return v == QField(1); }
  static bool is_one(double v, double tol) { return std::abs(v - 1.0) <= tol; }

  BoxShape shape_;
  std::vector<Scalar> entries_;
};

inline Box<double> to_float(const Box<QField>& b) {
  Box<double> out(b.shape());
  for (size_t i = 0; i < b.entries().size(); ++i)
    out.entries()[i] = b.entries()[i].to_double();
  return out;
}

/// Sums out all parties not listed; `keep` holds party indices in their
/// original order. Settings are untouched.
template <class Scalar>
Box<Scalar> marginal_box(const Box<Scalar>& b, const std::vector<int>& keep) {
  BoxShape s;
  for (int p : keep) s.parties.push_back(b.shape().parties[p]);
  s.settings = b.shape().settings;
  Box<Scalar> out(s);
  const auto dims = b.shape().outcome_dims();
  for (int o = 0; o < b.shape().outcome_size(); ++o) {
    auto digits = unpack_index(dims, o);
    std::vector<int> kept;
    for (int p : keep) kept.push_back(digits[p]);
    int oo = pack_index(s.outcome_dims(), kept);
    for (int c = 0; c < b.shape().context_size(); ++c)
      out.at(oo, c) += b.at(o, c);
  }
  return out;
}

/// P(outputs-subset | settings) must not depend on the chosen setting; exact
/// for QField boxes, within tol otherwise.
template <class Scalar>
bool marginal_independent(const Box<Scalar>& b, const std::vector<int>& parties,
                          int setting, double tol = 1e-12) {
  Box<Scalar> m = marginal_box(b, parties);
  const auto sdims = m.shape().setting_dims();
  for (int o = 0; o < m.shape().outcome_size(); ++o) {
    for (int c = 0; c < m.shape().context_size(); ++c) {
      auto digits = unpack_index(sdims, c);
      if (digits[setting] == 0) continue;
      auto base = digits;
      base[setting] = 0;
      Scalar diff = m.at(o, c) - m.at(o, pack_index(sdims, base));
      if constexpr (std::is_same_v<Scalar, QField>) {
        if (!diff.is_zero()) return false;
      } else {
        if (std::abs(diff) > tol) return false;
      }
    }
  }
  return true;
}

/// Two-party correlator <P_x Q_y> with the (-1)^outcome convention, summing
/// out any other parties. Component-resolution: parties must be binary.
template <class Scalar>
Scalar correlator(const Box<Scalar>& b, int party_a, int party_b,
                  const std::vector<int>& context) {
  const auto dims = b.shape().outcome_dims();
  if (dims[party_a] != 2 || dims[party_b] != 2)
    throw ShapeMismatch("correlator needs binary parties");
  Scalar total{};
  int ctx = pack_index(b.shape().setting_dims(), context);
  for (int o = 0; o < b.shape().outcome_size(); ++o) {
    auto digits = unpack_index(dims, o);
    int parity = digits[party_a] ^ digits[party_b];
    if (parity)
      total -= b.at(o, ctx);
    else
      total += b.at(o, ctx);
  }
  return total;
}

/// CHSH = <A0B0> + <A0B1> + <A1B0> - <A1B1> on a (A,B|X,Y) box (extra
/// parties are summed out; the first two parties and the two settings are
/// used).
template <class Scalar>
Scalar chsh_value(const Box<Scalar>& b) {
  if (b.shape().settings.size() != 2 || b.shape().parties.size() < 2)
    throw ShapeMismatch("chsh_value needs two binary settings and parties");
  Scalar total{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Scalar c = correlator(b, 0, 1, {x, y});
      if (x == 1 && y == 1)
        total -= c;
      else
        total += c;
    }
  return total;
}

/// All local deterministic strategies of the shape: each party's outcome is a
/// function of its setting parents.
std::vector<Box<QField>> deterministic_boxes(const BoxShape& shape);

/// Bipartite (A,B|X,Y) shape with A responding to X and B to Y.
BoxShape bell_shape();

/// ids: tsirelson | pr | uniform | deterministic(k) with k in [0,16)
Box<QField> named_box(const std::string& id);

/// P(a,b,c|x,y) = inner(a,b|x,y) * [b=c]: the third party broadcasts the
/// second's outcome.
Box<QField> compose_2layer(const Box<QField>& inner);

/// Four-party outcome-only box: P = 1/4 inner(a_o,b_o|a_x,b_y)
/// [b_o=c_o][a_x=c_x=d_x][b_y=c_y=d_y]; the 1/4 is the weight of the
/// classically correlated setting sources.
Box<QField> compose_2lt(const Box<QField>& inner);

/// Conditions a 2lt-shaped box on (d_x,d_y) and reads (a_o,b_o,c_o); the
/// input must be supported on the delta pattern.
Box<QField> tetra_reduce(const Box<QField>& p2lt);

/// PR-box copy protocol: compose_2layer(pr); on the support c = a xor x*y.
Box<QField> opt_copy_box();

template <class Scalar>
struct FunctionalTerm {
  Scalar coef;
  int outcome_index = 0;
  int context_index = 0;
};

/// Linear functional over the probability coordinates of a fixed box shape.
template <class Scalar>
struct LinearFunctional {
  BoxShape shape;
  std::vector<FunctionalTerm<Scalar>> terms;
  std::string presentation;  // optional correlator-form rendering
};

template <class Scalar>
Scalar evaluate(const LinearFunctional<Scalar>& f, const Box<Scalar>& box) {
  if (!(f.shape == box.shape())) throw ShapeMismatch("functional/box shapes differ");
  Scalar total{};
  for (const auto& t : f.terms) total += t.coef * box.at(t.outcome_index, t.context_index);
  return total;
}

inline LinearFunctional<double> to_float(const LinearFunctional<QField>& f) {
  LinearFunctional<double> out;
  out.shape = f.shape;
  out.presentation = f.presentation;
  for (const auto& t : f.terms)
    out.terms.push_back({t.coef.to_double(), t.outcome_index, t.context_index});
  return out;
}

/// CHSH as a functional over any shape whose first two parties are binary
/// with two binary settings.
LinearFunctional<QField> make_chsh(const BoxShape& shape);

/// CHSH(A,B|X,Y) + 2<B_y C_xy>; `context` fixes (x,y) for the correlator,
/// or averages the four contexts when absent. Classical bound 4 either way.
LinearFunctional<QField> make_monogamy_bc(
    const BoxShape& shape, std::optional<std::pair<int, int>> context);

/// Mirror-image witness with <A_x C_xy> instead.
LinearFunctional<QField> make_monogamy_ac(
    const BoxShape& shape, std::optional<std::pair<int, int>> context);

/// Bipartite payoff CHSH + 2<A_0 B_0>; its quantum maximum is 8/sqrt(3).
LinearFunctional<QField> make_chsh_plus_ab00(const BoxShape& shape);

/// max of evaluate(f, .) over deterministic_boxes(shape).
QField classical_bound(const LinearFunctional<QField>& f, const BoxShape& shape);

}  // namespace latent
