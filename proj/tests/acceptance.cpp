// Acceptance suite: one line per criterion, everything exact (tolerance zero).
// Each verdict is recomputed from the produced artifacts, not read from
// pipeline state.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "curvjet/ck.hpp"
#include "curvjet/io.hpp"
#include "curvjet/rng.hpp"
#include "oracles.hpp"

using namespace curvjet;
using namespace curvjet::testing;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, bool ok, double seconds) {
  std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", n, what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename F>
void timed(int n, const std::string& what, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
    ok = false;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  criterion(n, what, ok, secs);
}

bool constant_series(const TruncatedSeries& s, const Rational& value) {
  for (const auto& [code, c] : s.terms())
    if (code != mono::kOne) return false;
  return s.at_origin() == value;
}

// 1. Quadratic realization: R(0) = A entrywise for >= 100 seeded models.
bool criterion1() {
  int count = 0;
  for (int dim = 2; dim <= 5; ++dim)
    for (int neg = 0; neg <= dim; ++neg)
      for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        ModelBundle b = random_model(dim, neg, dim - neg, 1000 * dim + 100 * neg + seed);
        CurvTensor r0 = riemann(realize(b.model, 2).g).at_origin();
        if (!(r0 == b.model.tensor)) return false;
        ++count;
      }
  std::printf("  %d models checked\n", count);
  return count >= 100;
}

// 2. Conformal deformation to constant scalar curvature, m in {2,3,4}, N = 5.
bool criterion2() {
  int count = 0;
  for (int dim = 2; dim <= 4; ++dim)
    for (std::uint64_t seed = 1; seed <= 7; ++seed) {
      int neg = static_cast<int>(seed) % (dim + 1);
      ModelBundle b = random_model(dim, neg, dim - neg, 2000 * dim + seed);
      MetricJet g = realize(b.model, 5).g;
      ConformalDeformation d = constant_scalar_conformal(g, 5);
      TruncatedSeries tau = scalar_series(d.h);  // independent recomputation
      if (!constant_series(tau, scalar_series(g).at_origin())) return false;
      if (!d.phi.jet_part(2).is_zero()) return false;
      if (!(point_model(d.h) == point_model(g))) return false;
      ++count;
    }
  std::printf("  %d models deformed\n", count);
  return count >= 20;
}

// 3. Probed linearization of the tau residual equals (2-2m) eps^mm.
bool criterion3() {
  for (int dim = 2; dim <= 4; ++dim)
    for (int sign : {1, -1}) {
      std::vector<Rational> diag(dim, rat(1));
      diag[dim - 1] = rat(sign);
      BilinearForm form = BilinearForm::from_matrix(RatMatrix::diagonal(diag));
      ModelBundle donor = random_model(dim, 0, dim, 300 + dim + sign);
      CurvatureModel model{form, donor.model.tensor};
      MetricJet g = realize(model, 4).g;
      ConformalDeformation d = constant_scalar_conformal(g, 4);
      RatMatrix expect = RatMatrix::diagonal({rat((2 - 2 * dim) * sign)});
      if (!(d.report.linearization == expect)) return false;
    }
  return true;
}

// 4. Conformally flat realization and its constant-curvature chaining.
bool criterion4() {
  int count = 0;
  for (int dim = 3; dim <= 5; ++dim)
    for (std::uint64_t seed = 1; seed <= 7; ++seed) {
      int neg = static_cast<int>(seed) % 2;
      ModelBundle b = random_conformally_flat_model(dim, neg, dim - neg, 4000 * dim + seed);
      OrthoResult on = orthonormalize_model(b.model);
      RealizedGeometry real = realize_conformally_flat(on.model, 4);
      if (!(riemann(real.g).at_origin() == on.model.tensor)) return false;
      if (!weyl_series(real.g).is_zero()) return false;

      ConformalDeformation d = constant_scalar_conformal(real.g, 4);
      if (!constant_series(scalar_series(d.h), scalar_series(real.g).at_origin())) return false;
      if (!(riemann(d.h).at_origin() == on.model.tensor)) return false;
      if (!weyl_series(d.h).is_zero()) return false;
      ++count;
    }
  std::printf("  %d conformally flat models realized and deformed\n", count);
  return count >= 20;
}

// 5. Structure extension: square-root and compatibility identities coefficientwise.
bool criterion5() {
  int count = 0;
  struct Case {
    ModelKind kind;
    int dim, neg, order;
  };
  std::vector<Case> cases;
  for (int rep = 0; rep < 5; ++rep) {
    cases.push_back({ModelKind::hermitian, 4, 0, 4});
    cases.push_back({ModelKind::hermitian, 4, 2, 4});
    cases.push_back({ModelKind::hermitian, 4, 4, 4});
    cases.push_back({ModelKind::para, 4, 2, 4});
  }
  cases.push_back({ModelKind::hyper_pseudo, 8, 0, 3});
  cases.push_back({ModelKind::hyper_pseudo, 8, 4, 3});
  cases.push_back({ModelKind::hyper_pseudo, 8, 8, 3});
  cases.push_back({ModelKind::hyper_para, 8, 4, 3});

  std::uint64_t seed = 0;
  for (const Case& c : cases) {
    ++seed;
    ModelBundle b = random_model(c.dim, c.neg, c.dim - c.neg, 5000 + seed, c.kind);
    RealizedGeometry real = realize(b.model, c.order);
    SeriesMatrix eps_s = SeriesMatrix::from_constant(b.model.form.eps, c.dim, c.order);
    SeriesMatrix psi = series_sqrt(
        SeriesMatrix::from_constant(b.model.form.eps_inv, c.dim, c.order) * real.g.g);
    if (!(psi.transposed() * eps_s == eps_s * psi)) return false;

    SeriesMatrix id = SeriesMatrix::identity(c.dim, c.dim, c.order);
    if (b.structure) {
      StructureField f = extend_structure(b.model, *b.structure, real.g);
      if (!(f.j.constant_term() == b.structure->j)) return false;
      if (!(f.j * f.j == id * Rational(f.rho))) return false;
      if (!(f.j.transposed() * real.g.g * f.j == real.g.g * Rational(-f.rho))) return false;
    } else {
      auto triple = extend_structure_hyper(b.model, *b.hyper, real.g);
      for (int a = 0; a < 3; ++a) {
        if (!(triple[a].j.constant_term() == b.hyper->j[a])) return false;
        if (!(triple[a].j * triple[a].j == id * Rational(triple[a].rho))) return false;
        if (!(triple[a].j.transposed() * real.g.g * triple[a].j ==
              real.g.g * Rational(-triple[a].rho)))
          return false;
      }
      if (!(triple[0].j * triple[1].j == triple[2].j)) return false;
      if (!(triple[1].j * triple[0].j == triple[2].j * rat(-1))) return false;
    }
    ++count;
  }
  std::printf("  %d structure extensions verified\n", count);
  return count >= 24;
}

// 6. Hermitian/para deformation pipeline with the expected linearization matrix.
bool criterion6() {
  int pseudo = 0, para = 0;
  for (int trial = 0; trial < 20; ++trial) {
    bool is_para = trial % 2 == 1;
    ModelKind kind = is_para ? ModelKind::para : ModelKind::hermitian;
    int neg = is_para ? 2 : std::vector<int>{0, 2, 4}[(trial / 2) % 3];
    ModelBundle b = random_model(4, neg, 4 - neg, 6000 + trial, kind);
    RealizedGeometry real = realize_with_structures(b, 4);
    VariationDeformation d = constant_tau_taustar(real.g, *real.structure, 4);

    CurvatureBundle hb = curvature_bundle(d.h);
    if (!constant_series(scalar_series(hb), d.report.tau_value)) return false;
    if (!constant_series(star_scalar_series(hb, *real.structure), d.report.taustar_value))
      return false;
    for (int deg = 0; deg <= 2; ++deg)
      if (!d.xi.jet_part(deg).is_zero() || !d.eta.jet_part(deg).is_zero()) return false;
    auto [pm, pj] = point_model(d.h, *real.structure);
    if (!(pm == b.model)) return false;
    if (!(pj.j == b.structure->j)) return false;
    if (!validate_structure(pm.form, pj).empty()) return false;

    RatMatrix expect(2, 2);
    expect(0, 0) = rat(-4) * b.model.form.eps(0, 0) * b.model.form.eps(3, 3);
    expect(0, 1) = rat(-2);
    expect(1, 1) = rat(-2);
    if (!(d.report.linearization == expect)) return false;
    (is_para ? para : pseudo) += 1;
  }
  std::printf("  %d pseudo-Hermitian and %d para-Hermitian deformations verified\n", pseudo, para);
  return pseudo >= 10 && para >= 10;
}

// 7. Hyper deformation pipeline, m = 8, N = 3.
bool criterion7() {
  int count_pseudo = 0, count_para = 0;
  struct Case {
    ModelKind kind;
    int neg;
  };
  std::vector<Case> cases = {{ModelKind::hyper_pseudo, 0}, {ModelKind::hyper_pseudo, 4},
                             {ModelKind::hyper_pseudo, 8}, {ModelKind::hyper_para, 4},
                             {ModelKind::hyper_para, 4},   {ModelKind::hyper_para, 4}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    ModelBundle b = random_model(8, cases[i].neg, 8 - cases[i].neg, 7000 + i, cases[i].kind);
    RealizedGeometry real = realize_with_structures(b, 3);
    VariationDeformation d = constant_tau_taustar_hyper(real.g, *real.triple, 3);

    CurvatureBundle hb = curvature_bundle(d.h);
    if (!constant_series(scalar_series(hb), d.report.tau_value)) return false;
    TruncatedSeries star(8, 1);
    {
      TruncatedSeries acc(8, hb.r.order());
      for (const auto& s : *real.triple) acc += star_scalar_series(hb, s);
      star = acc;
    }
    if (!constant_series(star, d.report.taustar_value)) return false;
    if (!d.report.pass()) return false;

    RatMatrix expect(2, 2);
    expect(0, 0) = rat(-8) * b.model.form.eps(0, 0) * b.model.form.eps(7, 7);
    expect(0, 1) = rat(-6);
    expect(1, 1) = rat(-6);
    if (!(d.report.linearization == expect)) return false;
    (cases[i].kind == ModelKind::hyper_pseudo ? count_pseudo : count_para) += 1;
  }
  std::printf("  %d hyper-pseudo and %d hyper-para deformations verified\n", count_pseudo,
              count_para);
  return count_pseudo >= 3 && count_para >= 3;
}

// 8. CK solver against hand-derived jets at N = 6, plus uniqueness.
bool criterion8() {
  auto scalar_system = [](std::function<TruncatedSeries(const TruncatedSeries&)> f) {
    QuasilinearSystem sys;
    sys.unknown_dim = 1;
    sys.vars = 2;
    sys.residual = [f](const std::vector<TruncatedSeries>& u) {
      return std::vector<TruncatedSeries>{f(u[0])};
    };
    return sys;
  };
  auto xm = [](int k, const Rational& c) {
    TruncatedSeries s(2, 6);
    s.set_coeff(mono::variable(1, 2, k), c);
    return s;
  };

  CKSolution a = ck_solve(
      scalar_system([](const TruncatedSeries& u) { return u.derivative(1).derivative(1) + rat(2); }),
      6);
  if (!(a.unknown[0] == xm(2, rat(-1)))) return false;

  auto cosh_res = [](const TruncatedSeries& u) {
    return u.derivative(1).derivative(1) - u.truncated(u.order() - 2) - rat(1);
  };
  CKSolution b = ck_solve(scalar_system(cosh_res), 6);
  TruncatedSeries cosh_jet = xm(2, rat(1, 2)) + xm(4, rat(1, 24)) + xm(6, rat(1, 720));
  if (!(b.unknown[0] == cosh_jet)) return false;
  if (!cosh_res(cosh_jet).is_zero()) return false;  // independent jet satisfies the system

  CKSolution c = ck_solve(scalar_system([](const TruncatedSeries& u) {
                            return u.derivative(0).derivative(0) + u.derivative(1).derivative(1) -
                                   rat(2);
                          }),
                          6);
  if (!(c.unknown[0] == xm(2, rat(1)))) return false;
  return true;
}

// 9. Constant-curvature cross-check against the brute-force oracles.
bool criterion9() {
  for (int dim : {3, 4}) {
    BilinearForm e = BilinearForm::standard(0, dim);
    CurvatureModel cc{e, constant_curvature_tensor(e)};
    if (!(scalar_curvature(cc) == rat(dim * (dim - 1)))) return false;
    if (!(oracle_scalar(cc) == rat(dim * (dim - 1)))) return false;
  }
  BilinearForm e4 = BilinearForm::standard(0, 4);
  CurvatureModel cc4{e4, constant_curvature_tensor(e4)};
  HermitianStructure j{standard_hermitian_j(4, -1), -1};
  return star_scalar(cc4, j) == rat(4) && oracle_star_scalar(cc4, j.j, j.rho) == rat(4);
}

}  // namespace

int main() {
  timed(1, "quadratic realization reproduces A at the origin exactly", criterion1);
  timed(2, "conformal deformation reaches exact constant scalar curvature (m=2..4, N=5)",
        criterion2);
  timed(3, "tau-residual linearization equals (2-2m)eps^mm for both signs", criterion3);
  timed(4, "conformally flat realization + deformation keep A and kill the Weyl series",
        criterion4);
  timed(5, "structure extension satisfies the square-root and compatibility identities",
        criterion5);
  timed(6, "hermitian/para pipeline: exact constancy and [[-4e11emm,-2],[0,-2]]", criterion6);
  timed(7, "hyper pipeline (m=8): exact constancy and [[-8e11emm,-6],[0,-6]]", criterion7);
  timed(8, "formal CK solver reproduces hand-derived jets at N=6", criterion8);
  timed(9, "constant-curvature traces match the brute-force oracles", criterion9);

  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
