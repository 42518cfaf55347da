#include "curvjet/ck.hpp"

#include <set>

#include "curvjet/tensor_core.hpp"

namespace curvjet {

namespace {

std::vector<TruncatedSeries> eval_residual(const QuasilinearSystem& sys,
                                           const std::vector<TruncatedSeries>& u, int out_order) {
  auto r = sys.residual(u);
  if (static_cast<int>(r.size()) != sys.unknown_dim)
    throw QuasilinearityError("residual functional returned the wrong number of components");
  for (auto& s : r) {
    if (s.vars() != sys.vars)
      throw QuasilinearityError("residual functional returned the wrong variable count");
    if (s.order() < out_order)
      throw QuasilinearityError("residual functional returned too low an order");
    if (s.order() > out_order) s = s.truncated(out_order);
  }
  return r;
}

}  // namespace

CKSolution ck_solve(const QuasilinearSystem& sys, int order) {
  if (order < 2) throw std::invalid_argument("ck_solve: order must be >= 2");
  if (!sys.residual) throw std::invalid_argument("ck_solve: missing residual functional");
  const int m = sys.vars;
  const int d = sys.unknown_dim;
  const int res_order = order - 2;
  const int last = m - 1;

  CKSolution out;
  out.unknown.assign(d, TruncatedSeries(m, order));
  out.residual_zero_through = res_order;

  for (int a = 0; a + 2 <= order; ++a) {
    auto base = eval_residual(sys, out.unknown, res_order);
    const std::uint64_t probe_code = mono::variable(last, m, a + 2);
    const std::uint64_t row_code = a == 0 ? mono::kOne : mono::variable(last, m, a);

    // Probe the leading d x d block and check affinity of the active row.
    RatMatrix block(d, d);
    for (int w = 0; w < d; ++w) {
      auto probed = out.unknown;
      probed[w].set_coeff(probe_code, Rational(1));
      auto r1 = eval_residual(sys, probed, res_order);
      probed[w].set_coeff(probe_code, Rational(2));
      auto r2 = eval_residual(sys, probed, res_order);
      for (int row = 0; row < d; ++row) {
        TruncatedSeries d1 = r1[row] - base[row];
        TruncatedSeries d2 = r2[row] - base[row];
        block(row, w) = d1.coeff(row_code);
        TruncatedSeries gap = d2 - d1 * Rational(2);
        for (const auto& [code, c] : gap.terms())
          if (mono::last_exponent(code) == a)
            throw QuasilinearityError(
                "residual is not affine in the active coefficient block (step " +
                std::to_string(a) + ")");
      }
    }
    Rational det = block.determinant();
    out.step_blocks.push_back(block);
    out.step_dets.push_back(det);
    if (sgn(det) == 0)
      throw SingularStepError(
          a, "ck_solve: singular leading block at step " + std::to_string(a) +
                 " (det psi^mm vanishes or the system is not quasilinear)");
    RatMatrix block_inv = block.inverse();

    // Solve the active row jointly per y-degree, in graded order.
    auto cur = base;
    for (int k = 0; a + k <= res_order; ++k) {
      std::set<std::uint64_t> monos;
      for (int row = 0; row < d; ++row)
        for (const auto& [code, c] : cur[row].terms())
          if (mono::last_exponent(code) == a && mono::degree(code) == a + k) monos.insert(code);
      if (monos.empty()) continue;
      for (std::uint64_t code : monos) {
        std::vector<Rational> rhs(d);
        for (int row = 0; row < d; ++row) rhs[row] = cur[row].coeff(code);
        const std::uint64_t ucode = mono::mul(code, mono::variable(last, m, 2));
        for (int w = 0; w < d; ++w) {
          Rational delta(0);
          for (int row = 0; row < d; ++row) delta += block_inv(w, row) * rhs[row];
          if (sgn(delta) != 0)
            out.unknown[w].set_coeff(ucode, out.unknown[w].coeff(ucode) - delta);
        }
      }
      if (a + k < res_order) cur = eval_residual(sys, out.unknown, res_order);
    }
  }

  auto final_res = eval_residual(sys, out.unknown, res_order);
  for (int row = 0; row < d; ++row)
    if (!final_res[row].is_zero())
      throw QuasilinearityError(
          "ck_solve: residual did not vanish after the recursion; the functional violates the "
          "quasilinearity contract");

  out.leading_linearization = out.step_blocks.front() * rat(1, 2);
  return out;
}

// --- pipelines ---------------------------------------------------------------

namespace {

bool is_unit_diagonal(const RatMatrix& eps) {
  for (int i = 0; i < eps.rows(); ++i)
    for (int j = 0; j < eps.cols(); ++j) {
      if (i != j && sgn(eps(i, j)) != 0) return false;
      if (i == j && eps(i, i) != 1 && eps(i, i) != -1) return false;
    }
  return true;
}

bool constant_through(const TruncatedSeries& s, const Rational& value) {
  for (const auto& [code, c] : s.terms())
    if (code != mono::kOne) return false;
  return s.at_origin() == value;
}

bool two_jet_vanishes(const TruncatedSeries& s) {
  for (int deg = 0; deg <= 2 && deg <= s.order(); ++deg)
    if (!s.jet_part(deg).is_zero()) return false;
  return true;
}

bool series_compatible(const MetricJet& h, const StructureField& s) {
  SeriesMatrix lhs = s.j.transposed() * h.g * s.j;
  SeriesMatrix rhs = h.g * Rational(-s.rho);
  return lhs == rhs;
}

}  // namespace

ConformalDeformation constant_scalar_conformal(const MetricJet& g, int order) {
  const int n = g.dim();
  if (n < 2)
    throw std::invalid_argument("constant_scalar_conformal: requires dim >= 2");
  if (g.order() != order || order < 2)
    throw std::invalid_argument("constant_scalar_conformal: metric order must equal the requested order >= 2");

  // Solve in an orthonormal frame; the answer transports back by composition.
  RatMatrix frame = RatMatrix::identity(n);
  MetricJet gs = g;
  if (!is_unit_diagonal(g.g.constant_term())) {
    CurvatureModel shell{BilinearForm::from_matrix(g.g.constant_term()), CurvTensor(n)};
    frame = orthonormalize_model(shell).basis;
    gs = transform_jet(g, frame);
  }

  const Rational tau0 = scalar_series(gs).at_origin();
  QuasilinearSystem sys;
  sys.unknown_dim = 1;
  sys.vars = n;
  sys.residual = [&gs, &tau0](const std::vector<TruncatedSeries>& u) {
    TruncatedSeries factor = u[0] * Rational(2) + Rational(1);
    MetricJet h{factor * gs.g};
    std::vector<TruncatedSeries> out;
    out.push_back(scalar_series(h) - tau0);
    return out;
  };
  CKSolution sol = ck_solve(sys, order);

  ConformalDeformation out;
  out.frame = frame;
  out.phi = frame.is_identity() ? sol.unknown[0] : sol.unknown[0].composed_linear(frame.inverse());
  TruncatedSeries factor = out.phi * Rational(2) + Rational(1);
  out.h = make_metric_jet(factor * g.g);

  DeformationReport& rep = out.report;
  rep.requested_order = order;
  rep.constancy_order = order - 2;
  rep.linearization = sol.leading_linearization;
  rep.step_dets = sol.step_dets;
  rep.tau_value = scalar_series(g).at_origin();
  rep.tau_constant = constant_through(scalar_series(out.h), rep.tau_value);
  rep.two_jet_vanishes = two_jet_vanishes(out.phi);
  rep.point_model_preserved = point_model(out.h) == point_model(g);
  return out;
}

namespace {

VariationDeformation run_variation_pipeline(
    const MetricJet& g, const std::vector<StructureField>& structures,
    const std::function<MetricJet(const MetricJet&, const std::vector<StructureField>&,
                                  const TruncatedSeries&, const TruncatedSeries&)>& vary,
    const RatMatrix& frame, int order) {
  const int n = g.dim();
  const Rational tau0 = scalar_series(g).at_origin();
  auto taustar_of = [&structures](const CurvatureBundle& b) {
    TruncatedSeries acc(b.g_inv.vars(), b.r.order());
    for (const auto& s : structures) acc += star_scalar_series(b, s);
    return acc;
  };
  const Rational taustar0 = taustar_of(curvature_bundle(g)).at_origin();

  QuasilinearSystem sys;
  sys.unknown_dim = 2;
  sys.vars = n;
  sys.residual = [&](const std::vector<TruncatedSeries>& u) {
    MetricJet h = vary(g, structures, u[0], u[1]);
    CurvatureBundle b = curvature_bundle(h);
    std::vector<TruncatedSeries> out;
    out.push_back(scalar_series(b) - tau0);
    out.push_back(taustar_of(b) - taustar0);
    return out;
  };
  CKSolution sol = ck_solve(sys, order);

  VariationDeformation out;
  out.frame = frame;
  out.xi = sol.unknown[0];
  out.eta = sol.unknown[1];
  MetricJet h_solver = vary(g, structures, out.xi, out.eta);
  out.h = frame.is_identity() ? h_solver : transform_jet(h_solver, frame.inverse());

  DeformationReport& rep = out.report;
  rep.requested_order = order;
  rep.constancy_order = order - 2;
  rep.linearization = sol.leading_linearization;
  rep.step_dets = sol.step_dets;
  rep.tau_value = tau0;
  rep.taustar_value = taustar0;
  CurvatureBundle hb = curvature_bundle(h_solver);
  rep.tau_constant = constant_through(scalar_series(hb), tau0);
  rep.taustar_constant = constant_through(taustar_of(hb), taustar0);
  rep.two_jet_vanishes = two_jet_vanishes(out.xi) && two_jet_vanishes(out.eta);
  rep.point_model_preserved = point_model(h_solver) == point_model(g);
  rep.structure_compatible = true;
  for (const auto& s : structures)
    rep.structure_compatible = rep.structure_compatible && series_compatible(h_solver, s);
  return out;
}

}  // namespace

VariationDeformation constant_tau_taustar(const MetricJet& g, const StructureField& s, int order) {
  const int n = g.dim();
  if (n < 4) throw std::invalid_argument("constant_tau_taustar: requires dim >= 4");
  if (g.order() != order || order < 2)
    throw std::invalid_argument("constant_tau_taustar: metric order must equal the requested order >= 2");

  MetricJet gs = g;
  StructureField ss = s;
  RatMatrix frame = RatMatrix::identity(n);
  if (!is_unit_diagonal(g.g.constant_term()) ||
      !(s.j.constant_term() == standard_hermitian_j(n, s.rho))) {
    CurvatureModel shell{BilinearForm::from_matrix(g.g.constant_term()), CurvTensor(n)};
    HermitianStructure point{s.j.constant_term(), s.rho};
    frame = orthonormalize_model(shell, point).basis;
    gs = transform_jet(g, frame);
    ss = transform_structure(s, frame);
  }

  VariationDeformation out = run_variation_pipeline(
      gs, {ss},
      [](const MetricJet& gg, const std::vector<StructureField>& st, const TruncatedSeries& xi,
         const TruncatedSeries& eta) { return hermitian_variation(gg, st[0], xi, eta); },
      frame, order);
  if (!frame.is_identity()) {
    // Point-model preservation is frame independent; recheck in the input frame.
    out.report.point_model_preserved = point_model(out.h) == point_model(g);
  }
  return out;
}

VariationDeformation constant_tau_taustar_hyper(const MetricJet& g,
                                                const std::array<StructureField, 3>& triple,
                                                int order) {
  const int n = g.dim();
  if (n < 8) throw std::invalid_argument("constant_tau_taustar_hyper: requires dim >= 8");
  if (g.order() != order || order < 2)
    throw std::invalid_argument(
        "constant_tau_taustar_hyper: metric order must equal the requested order >= 2");

  HyperKind kind = (triple[1].rho == -1) ? HyperKind::hyper_pseudo : HyperKind::hyper_para;
  auto std_triple = standard_hyper_triple(n, kind);
  bool adapted = is_unit_diagonal(g.g.constant_term());
  for (int a = 0; a < 3 && adapted; ++a)
    adapted = triple[a].j.constant_term() == std_triple[a];

  MetricJet gs = g;
  std::vector<StructureField> ss = {triple[0], triple[1], triple[2]};
  RatMatrix frame = RatMatrix::identity(n);
  if (!adapted) {
    CurvatureModel shell{BilinearForm::from_matrix(g.g.constant_term()), CurvTensor(n)};
    HyperStructure point{{triple[0].j.constant_term(), triple[1].j.constant_term(),
                          triple[2].j.constant_term()},
                         kind};
    frame = orthonormalize_model(shell, point).basis;
    gs = transform_jet(g, frame);
    for (int a = 0; a < 3; ++a) ss[a] = transform_structure(triple[a], frame);
  }

  VariationDeformation out = run_variation_pipeline(
      gs, ss,
      [](const MetricJet& gg, const std::vector<StructureField>& st, const TruncatedSeries& xi,
         const TruncatedSeries& eta) {
        return hyper_variation(gg, {st[0], st[1], st[2]}, xi, eta);
      },
      frame, order);
  if (!frame.is_identity())
    out.report.point_model_preserved = point_model(out.h) == point_model(g);
  return out;
}

}  // namespace curvjet
