#include "latent/lp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace latent {

ExactLpResult solve_nonneg_feasibility(const ExactLp& lp) {
  const int n = lp.variables;
  const int m = static_cast<int>(lp.rows.size());

  // Tableau over columns [vars | artificials | rhs], rhs made nonnegative.
  std::vector<std::vector<QField>> t(m, std::vector<QField>(n + m + 1));
  std::vector<bool> flipped(m, false);
  for (int i = 0; i < m; ++i) {
    bool flip = lp.rhs[i].sign() < 0;
    flipped[i] = flip;
    for (int j = 0; j < n; ++j) t[i][j] = flip ? -lp.rows[i][j] : lp.rows[i][j];
    t[i][n + i] = QField(1);
    t[i][n + m] = flip ? -lp.rhs[i] : lp.rhs[i];
  }
  // Phase-1 objective: minimize the artificial sum. Reduced-cost row.
  std::vector<QField> z(n + m + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n + m; ++j)
      if (j < n || j == n + m) z[j] -= t[i][j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: smallest column with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (z[j].sign() < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    QField best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      QField ratio = t[i][n + m] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen in phase 1; bail safely
    QField piv = t[leave][enter];
    for (int j = 0; j <= n + m; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      QField f = t[i][enter];
      for (int j = 0; j <= n + m; ++j)
        if (!t[leave][j].is_zero()) t[i][j] -= f * t[leave][j];
    }
    if (!z[enter].is_zero()) {
      QField f = z[enter];
      for (int j = 0; j <= n + m; ++j)
        if (!t[leave][j].is_zero()) z[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  QField objective = -z[n + m];  // = current artificial mass

  ExactLpResult res;
  if (objective.is_zero()) {
    res.feasible = true;
    res.point.assign(n, QField(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) res.point[basis[i]] = t[i][n + m];
    // Exact re-substitution into every row.
    for (int i = 0; i < m; ++i) {
      QField lhs;
      for (int j = 0; j < n; ++j)
        if (!lp.rows[i][j].is_zero()) lhs += lp.rows[i][j] * res.point[j];
      if (lhs != lp.rhs[i])
        throw CertificateInvalid("feasible point fails row re-substitution");
    }
    for (const QField& q : res.point)
      if (q.sign() < 0) throw CertificateInvalid("feasible point negative");
  } else {
    res.feasible = false;
    // Simplex multipliers from the artificial reduced costs: z_art = 1 - y.
    res.farkas.assign(m, QField(0));
    for (int i = 0; i < m; ++i) {
      QField y = QField(1) - z[n + i];
      res.farkas[i] = flipped[i] ? -y : y;
    }
    // Exact re-verification: yᵀA <= 0 componentwise, yᵀb > 0.
    for (int j = 0; j < n; ++j) {
      QField col;
      for (int i = 0; i < m; ++i)
        if (!lp.rows[i][j].is_zero()) col += res.farkas[i] * lp.rows[i][j];
      if (col.sign() > 0)
        throw CertificateInvalid("Farkas certificate fails column check");
    }
    QField val;
    for (int i = 0; i < m; ++i)
      if (!res.farkas[i].is_zero()) val += res.farkas[i] * lp.rhs[i];
    if (val.sign() <= 0)
      throw CertificateInvalid("Farkas certificate has nonpositive value");
  }
  return res;
}

namespace {

std::string assignment_tag(const BoxShape& shape, const std::vector<int>& sdigits) {
  std::ostringstream os;
  for (size_t i = 0; i < shape.settings.size(); ++i) {
    if (i) os << ",";
    os << shape.settings[i].name << "=" << sdigits[i];
  }
  return os.str();
}

}  // namespace

LinearProgram assemble(const CausalScenario& interrupted,
                       const Box<QField>& target,
                       const std::map<std::string, std::string>& merge_map) {
  LinearProgram lp;
  lp.interrupted_shape = box_shape(interrupted);
  lp.original_shape = target.shape();
  const BoxShape& is = lp.interrupted_shape;
  const int nvar = lp.variable_count();
  const int nctx = is.context_size();
  const int nout = is.outcome_size();
  auto var = [&](int o, int c) { return o * nctx + c; };

  if (!merge_map.empty()) {
    // Same parties and outcome indexing; the setting lists differ by design.
    bool parties_ok = is.parties.size() == lp.original_shape.parties.size();
    for (size_t i = 0; parties_ok && i < is.parties.size(); ++i)
      parties_ok = is.parties[i].name == lp.original_shape.parties[i].name &&
                   is.parties[i].components == lp.original_shape.parties[i].components;
    if (!parties_ok) throw ShapeMismatch("interrupted and target parties differ");
    for (const auto& s : is.settings)
      if (!merge_map.count(s.name))
        throw ShapeMismatch("merge_map misses setting " + s.name);
  }

  const auto sdims = is.setting_dims();
  // Normalization per interrupted context.
  for (int c = 0; c < nctx; ++c) {
    LpRow row;
    row.coeffs.assign(nvar, QField(0));
    for (int o = 0; o < nout; ++o) row.coeffs[var(o, c)] = QField(1);
    row.rhs = QField(1);
    row.kind = RowKind::Normalization;
    row.provenance = "normalization " + assignment_tag(is, unpack_index(sdims, c));
    lp.rows.push_back(std::move(row));
  }

  // No-signaling rows: marginal of S at (free=v) equals marginal at (free=0).
  const auto odims = is.outcome_dims();
  for (const auto& con : nosignaling_constraints(interrupted)) {
    std::vector<int> party_ids;
    for (const auto& name : con.outputs) party_ids.push_back(is.party_index(name));
    std::sort(party_ids.begin(), party_ids.end());
    int free_setting = is.setting_index(con.free_settings.at(0));

    // Enumerate assignments of the S-outcomes and of the other settings.
    std::vector<int> sdim_masked = sdims;
    sdim_masked[free_setting] = 1;
    int n_other = 1;
    for (int d : sdim_masked) n_other *= d;
    std::vector<int> pdims;
    for (int p : party_ids) pdims.push_back(odims[p]);
    int n_sout = 1;
    for (int d : pdims) n_sout *= d;

    for (int so = 0; so < n_sout; ++so) {
      auto sout = pdims.empty() ? std::vector<int>{} : unpack_index(pdims, so);
      for (int oc = 0; oc < n_other; ++oc) {
        auto base = unpack_index(sdim_masked, oc);
        for (int v = 1; v < sdims[free_setting]; ++v) {
          LpRow row;
          row.coeffs.assign(nvar, QField(0));
          for (int o = 0; o < nout; ++o) {
            auto digs = unpack_index(odims, o);
            bool match = true;
            for (size_t k = 0; k < party_ids.size(); ++k)
              if (digs[party_ids[k]] != sout[k]) match = false;
            if (!match) continue;
            auto ctx_hi = base;
            ctx_hi[free_setting] = v;
            auto ctx_lo = base;
            ctx_lo[free_setting] = 0;
            row.coeffs[var(o, pack_index(sdims, ctx_hi))] += QField(1);
            row.coeffs[var(o, pack_index(sdims, ctx_lo))] -= QField(1);
          }
          row.rhs = QField(0);
          row.kind = RowKind::NoSignaling;
          std::ostringstream tag;
          tag << "nosignaling {";
          for (size_t k = 0; k < con.outputs.size(); ++k)
            tag << (k ? "," : "") << con.outputs[k] << "=" << sout[k];
          tag << "} free " << con.free_settings[0] << "=" << v << " at "
              << assignment_tag(is, base);
          row.provenance = tag.str();
          lp.rows.push_back(std::move(row));
        }
      }
    }
  }

  // Compatibility: Q at merged settings equals the target coordinatewise.
  if (!merge_map.empty()) {
    const auto osdims = lp.original_shape.setting_dims();
    for (int octx = 0; octx < lp.original_shape.context_size(); ++octx) {
      auto odig = unpack_index(osdims, octx);
      std::vector<int> idig(is.settings.size());
      for (size_t k = 0; k < is.settings.size(); ++k) {
        const std::string& orig = merge_map.at(is.settings[k].name);
        idig[k] = odig[lp.original_shape.setting_index(orig)];
      }
      int ictx = pack_index(sdims, idig);
      for (int o = 0; o < nout; ++o) {
        LpRow row;
        row.coeffs.assign(nvar, QField(0));
        row.coeffs[var(o, ictx)] = QField(1);
        row.rhs = target.at(o, octx);
        row.kind = RowKind::Compatibility;
        row.compat_outcome = o;
        row.compat_context = octx;
        std::ostringstream tag;
        tag << "compatibility outcome#" << o << " at "
            << assignment_tag(lp.original_shape, odig);
        row.provenance = tag.str();
        lp.rows.push_back(std::move(row));
      }
    }
  }
  return lp;
}

FeasibilityResult solve(const LinearProgram& lp) {
  ExactLp core;
  core.variables = lp.variable_count();
  for (const auto& row : lp.rows) {
    core.rows.push_back(row.coeffs);
    core.rhs.push_back(row.rhs);
  }
  ExactLpResult r = solve_nonneg_feasibility(core);
  FeasibilityResult out;
  out.feasible = r.feasible;
  out.assignment = std::move(r.point);
  out.row_multipliers = std::move(r.farkas);
  return out;
}

namespace {

/// Correlator-form rendering of a witness over binary single-bit parties.
std::string correlator_presentation(const LinearFunctional<QField>& f) {
  const BoxShape& s = f.shape;
  for (const auto& p : s.parties)
    if (p.cardinality() != 2 || p.components.size() != 1) return {};
  const int np = static_cast<int>(s.parties.size());
  const auto odims = s.outcome_dims();
  std::map<std::pair<int, int>, QField> coef;  // (party mask, context)
  for (const auto& t : f.terms) {
    auto digs = unpack_index(odims, t.outcome_index);
    for (int mask = 0; mask < (1 << np); ++mask) {
      int parity = 0;
      for (int p = 0; p < np; ++p)
        if (mask & (1 << p)) parity ^= digs[p];
      QField c = t.coef / QField(1 << np);
      coef[{mask, t.context_index}] += parity ? -c : c;
    }
  }
  std::ostringstream os;
  bool first = true;
  const auto sdims = s.setting_dims();
  for (const auto& [key, c] : coef) {
    if (c.is_zero()) continue;
    auto [mask, ctx] = key;
    std::string term;
    if (mask == 0) {
      term = "1";
    } else {
      term = "<";
      auto sdig = unpack_index(sdims, ctx);
      bool inner_first = true;
      for (int p = 0; p < np; ++p) {
        if (!(mask & (1 << p))) continue;
        if (!inner_first) term += " ";
        inner_first = false;
        term += s.parties[p].name + "_";
        for (int sp : s.parties[p].setting_parents)
          term += std::to_string(sdig[sp]);
      }
      term += ">";
    }
    std::string ctag = "@";
    auto sdig = unpack_index(sdims, ctx);
    for (size_t k = 0; k < sdig.size(); ++k) ctag += std::to_string(sdig[k]);
    os << (first ? "" : " + ") << c.str() << "*" << term << ctag;
    first = false;
  }
  return os.str();
}

}  // namespace

Witness extract_witness(const FeasibilityResult& result, const LinearProgram& lp) {
  if (result.feasible || result.row_multipliers.empty())
    throw CertificateInvalid("witness extraction needs an infeasibility certificate");

  Witness w;
  w.functional.shape = lp.original_shape;
  QField norm_part;
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const LpRow& row = lp.rows[i];
    const QField& y = result.row_multipliers[i];
    if (y.is_zero()) continue;
    if (row.kind == RowKind::Normalization) norm_part += y;
    if (row.kind == RowKind::Compatibility)
      w.functional.terms.push_back({y, row.compat_outcome, row.compat_context});
  }
  w.bound = -norm_part;

  // Scale to smallest integer-like coefficients: clear denominators, divide
  // by the integer content.
  Integer den_lcm = 1;
  auto fold_den = [&](const QField& q) {
    den_lcm = lcm(den_lcm, denominator(q.rational_part()));
    den_lcm = lcm(den_lcm, denominator(q.sqrt2_part()));
  };
  for (const auto& t : w.functional.terms) fold_den(t.coef);
  fold_den(w.bound);
  Integer content = 0;
  auto fold_num = [&](const QField& q) {
    Rational a = q.rational_part() * den_lcm;
    Rational b = q.sqrt2_part() * den_lcm;
    content = gcd(content, numerator(a));
    content = gcd(content, numerator(b));
  };
  for (const auto& t : w.functional.terms) fold_num(t.coef);
  fold_num(w.bound);
  if (content == 0) content = 1;
  QField scale{Rational(den_lcm, content)};
  for (auto& t : w.functional.terms) t.coef *= scale;
  w.bound *= scale;

  w.functional.presentation = correlator_presentation(w.functional);
  return w;
}

}  // namespace latent
