#include "curvjet/realization.hpp"

#include <stdexcept>

#include "curvjet/tensor_core.hpp"

namespace curvjet {

namespace {

bool is_unit_diagonal(const RatMatrix& eps) {
  for (int i = 0; i < eps.rows(); ++i)
    for (int j = 0; j < eps.cols(); ++j) {
      if (i != j && sgn(eps(i, j)) != 0) return false;
      if (i == j && eps(i, i) != 1 && eps(i, i) != -1) return false;
    }
  return true;
}

}  // namespace

RealizedGeometry realize(const CurvatureModel& m, int order) {
  if (order < 2) throw std::invalid_argument("realize: order must be >= 2");
  const int n = m.form.dim;
  SeriesMatrix g(n, n, n, order);
  const Rational third = rat(1, 3);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      TruncatedSeries entry = TruncatedSeries::constant(n, order, m.form.eps(i, k));
      for (int a = 0; a < n; ++a) {
        Rational sq = -third * m.tensor.at(i, a, a, k);
        if (sgn(sq) != 0) entry.set_coeff(mono::variable(a, n, 2), sq);
        for (int b = a + 1; b < n; ++b) {
          Rational cross = -third * (m.tensor.at(i, a, b, k) + m.tensor.at(i, b, a, k));
          if (sgn(cross) != 0)
            entry.set_coeff(mono::mul(mono::variable(a, n, 1), mono::variable(b, n, 1)), cross);
        }
      }
      g(i, k) = entry;
      if (k != i) g(k, i) = std::move(entry);
    }
  RealizedGeometry out;
  out.g = make_metric_jet(std::move(g));
  out.origin = m;
  out.provenance = Provenance::quadratic;
  return out;
}

RealizedGeometry realize_conformally_flat(const CurvatureModel& m, int order) {
  if (order < 2) throw std::invalid_argument("realize_conformally_flat: order must be >= 2");
  const int n = m.form.dim;
  if (n < 3) throw std::invalid_argument("realize_conformally_flat: requires dim >= 3");
  if (!is_unit_diagonal(m.form.eps))
    throw std::invalid_argument(
        "realize_conformally_flat: eps must be diagonal +-1; orthonormalize the model first");
  if (!is_conformally_flat(m))
    throw std::invalid_argument("realize_conformally_flat: model is not conformally flat");

  RatMatrix rho = ricci(m);
  Rational tau = scalar_curvature(m);
  TruncatedSeries phi(n, order);
  const Rational quad_den = Rational(2 * (n - 1) * (n - 2));
  const Rational cross_fac = Rational(2) / Rational(2 - n);
  for (int j = 0; j < n; ++j) {
    Rational c = (m.form.eps(j, j) * tau + Rational(2 - 2 * n) * rho(j, j)) / quad_den;
    if (sgn(c) != 0) phi.set_coeff(mono::variable(j, n, 2), c);
    for (int i = 0; i < j; ++i) {
      Rational c2 = cross_fac * rho(i, j);
      if (sgn(c2) != 0)
        phi.set_coeff(mono::mul(mono::variable(i, n, 1), mono::variable(j, n, 1)), c2);
    }
  }
  TruncatedSeries factor = phi + Rational(1);
  SeriesMatrix g = factor * SeriesMatrix::from_constant(m.form.eps, n, order);

  RealizedGeometry out;
  out.g = make_metric_jet(std::move(g));
  out.origin = m;
  out.provenance = Provenance::conformally_flat;
  return out;
}

StructureField extend_structure(const CurvatureModel& m, const HermitianStructure& h,
                                const MetricJet& g) {
  auto bad = validate_structure(m.form, h);
  if (!bad.empty()) throw std::invalid_argument("extend_structure: " + bad.front());
  if (!(g.g.constant_term() == m.form.eps))
    throw std::invalid_argument("extend_structure: g(0) must equal eps");
  SeriesMatrix big_psi = SeriesMatrix::from_constant(m.form.eps_inv, g.vars(), g.order()) * g.g;
  SeriesMatrix psi = series_sqrt(big_psi);
  SeriesMatrix j1 =
      psi.inverted() * SeriesMatrix::from_constant(h.j, g.vars(), g.order()) * psi;
  return StructureField{std::move(j1), h.rho};
}

std::array<StructureField, 3> extend_structure_hyper(const CurvatureModel& m,
                                                     const HyperStructure& q, const MetricJet& g) {
  auto bad = validate_hyper(m.form, q);
  if (!bad.empty()) throw std::invalid_argument("extend_structure_hyper: " + bad.front());
  if (!(g.g.constant_term() == m.form.eps))
    throw std::invalid_argument("extend_structure_hyper: g(0) must equal eps");
  SeriesMatrix big_psi = SeriesMatrix::from_constant(m.form.eps_inv, g.vars(), g.order()) * g.g;
  SeriesMatrix psi = series_sqrt(big_psi);
  SeriesMatrix psi_inv = psi.inverted();
  std::array<StructureField, 3> out;
  for (int a = 0; a < 3; ++a) {
    SeriesMatrix j1 = psi_inv * SeriesMatrix::from_constant(q.j[a], g.vars(), g.order()) * psi;
    out[a] = StructureField{std::move(j1), q.rho(a)};
  }
  return out;
}

RealizedGeometry realize_with_structures(const ModelBundle& bundle, int order) {
  RealizedGeometry out = realize(bundle.model, order);
  if (bundle.structure) out.structure = extend_structure(bundle.model, *bundle.structure, out.g);
  if (bundle.hyper) out.triple = extend_structure_hyper(bundle.model, *bundle.hyper, out.g);
  return out;
}

namespace {

void check_variation_inputs(const MetricJet& g, const TruncatedSeries& xi,
                            const TruncatedSeries& eta) {
  if (xi.vars() != g.vars() || eta.vars() != g.vars() || xi.order() != g.order() ||
      eta.order() != g.order())
    throw std::invalid_argument("variation: xi/eta must share the metric's (vars, order)");
  if (sgn(xi.at_origin()) != 0 || sgn(eta.at_origin()) != 0)
    throw std::invalid_argument("variation: xi and eta must vanish at the origin");
}

// (T_c)_{ab} = delta_{ca} delta_{cb} - sum_s rho_s (J_s)^c_a (J_s)^c_b.
SeriesMatrix variation_term(int c, const std::vector<const StructureField*>& structures,
                            int vars, int order) {
  const int n = structures.front()->j.rows();
  SeriesMatrix t(n, n, vars, order);
  t(c, c) = TruncatedSeries::constant(vars, order, Rational(1));
  for (const StructureField* s : structures) {
    const Rational w(-s->rho);
    for (int a = 0; a < n; ++a) {
      if (s->j(c, a).is_zero()) continue;
      for (int b = a; b < n; ++b) {
        if (s->j(c, b).is_zero()) continue;
        TruncatedSeries term = s->j(c, a) * s->j(c, b) * w;
        t(a, b) += term;
        if (b != a) t(b, a) += term;
      }
    }
  }
  return t;
}

MetricJet apply_variation(const MetricJet& g, const std::vector<const StructureField*>& structures,
                          const TruncatedSeries& xi, const TruncatedSeries& eta) {
  const int n = g.dim();
  SeriesMatrix t1 = variation_term(0, structures, g.vars(), g.order());
  SeriesMatrix tm = variation_term(n - 1, structures, g.vars(), g.order());
  TruncatedSeries two_xi = xi * Rational(2);
  TruncatedSeries two_eta = eta * Rational(2);
  SeriesMatrix h = g.g;
  h += two_xi * t1;
  h += two_eta * tm;
  return make_metric_jet(std::move(h));
}

}  // namespace

MetricJet hermitian_variation(const MetricJet& g, const StructureField& s,
                              const TruncatedSeries& xi, const TruncatedSeries& eta) {
  check_variation_inputs(g, xi, eta);
  const int n = g.dim();
  if (s.j.rows() != n || s.j.order() != g.order())
    throw std::invalid_argument("hermitian_variation: structure shape mismatch");
  if (!is_unit_diagonal(g.g.constant_term()) ||
      !(s.j.constant_term() == standard_hermitian_j(n, s.rho)))
    throw std::invalid_argument(
        "hermitian_variation: requires adapted coordinates (orthonormal frame, standard J block)");
  return apply_variation(g, {&s}, xi, eta);
}

MetricJet hyper_variation(const MetricJet& g, const std::array<StructureField, 3>& triple,
                          const TruncatedSeries& xi, const TruncatedSeries& eta) {
  check_variation_inputs(g, xi, eta);
  const int n = g.dim();
  if (n % 4 != 0) throw std::invalid_argument("hyper_variation: dim must be divisible by 4");
  HyperKind kind = (triple[1].rho == -1) ? HyperKind::hyper_pseudo : HyperKind::hyper_para;
  auto std_triple = standard_hyper_triple(n, kind);
  for (int a = 0; a < 3; ++a) {
    if (triple[a].j.rows() != n || triple[a].j.order() != g.order())
      throw std::invalid_argument("hyper_variation: structure shape mismatch");
    if (!(triple[a].j.constant_term() == std_triple[a]))
      throw std::invalid_argument(
          "hyper_variation: requires adapted coordinates (standard hyper blocks at the origin)");
  }
  if (!is_unit_diagonal(g.g.constant_term()))
    throw std::invalid_argument("hyper_variation: requires an orthonormal frame at the origin");
  return apply_variation(g, {&triple[0], &triple[1], &triple[2]}, xi, eta);
}

}  // namespace curvjet
