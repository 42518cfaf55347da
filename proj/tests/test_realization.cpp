#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvjet/realization.hpp"
#include "curvjet/rng.hpp"
#include "oracles.hpp"

using namespace curvjet;
using namespace curvjet::testing;

TEST_CASE("realize: flat model gives the constant metric") {
  CurvatureModel flat{BilinearForm::standard(1, 2), CurvTensor(3)};
  RealizedGeometry r = realize(flat, 4);
  CHECK(r.g.g == SeriesMatrix::from_constant(flat.form.eps, 3, 4));
}

TEST_CASE("realize: quadratic coefficients of the constant-curvature plane") {
  BilinearForm e2 = BilinearForm::standard(0, 2);
  CurvatureModel cc{e2, constant_curvature_tensor(e2)};
  RealizedGeometry r = realize(cc, 2);
  CHECK(r.g.g(0, 0).coeff({0, 2}) == rat(-1, 3));
  CHECK(r.g.g(0, 0).coeff({2, 0}) == rat(0));
  CHECK(r.g.g(1, 1).coeff({2, 0}) == rat(-1, 3));
  CHECK(r.g.g(0, 1).coeff({1, 1}) == rat(1, 3));
  CHECK(r.g.g(0, 0).at_origin() == rat(1));
}

TEST_CASE("realize: point model is reproduced across signatures") {
  Rng rng(41);
  for (int dim = 2; dim <= 5; ++dim)
    for (int neg = 0; neg <= dim; ++neg) {
      ModelBundle b = random_model(dim, neg, dim - neg, rng.next_u64());
      CHECK(point_model(realize(b.model, 3).g) == b.model);
    }
  CHECK_THROWS_AS(realize(CurvatureModel{BilinearForm::standard(0, 2), CurvTensor(2)}, 1),
                  std::invalid_argument);
}

TEST_CASE("conformally flat realization: flat model") {
  CurvatureModel flat{BilinearForm::standard(0, 3), CurvTensor(3)};
  RealizedGeometry r = realize_conformally_flat(flat, 3);
  CHECK(r.g.g == SeriesMatrix::from_constant(flat.form.eps, 3, 3));
}

TEST_CASE("conformally flat realization: round model coefficients") {
  BilinearForm e3 = BilinearForm::standard(0, 3);
  CurvatureModel cc{e3, constant_curvature_tensor(e3)};
  RealizedGeometry r = realize_conformally_flat(cc, 4);
  // phi = -(x1^2 + x2^2 + x3^2)/2 spread through every diagonal entry
  for (int j = 0; j < 3; ++j)
    for (int a = 0; a < 3; ++a) {
      std::vector<int> exps(3, 0);
      exps[a] = 2;
      CHECK(r.g.g(j, j).coeff(exps) == rat(-1, 2));
    }
  CHECK(r.g.g(0, 1).is_zero());
  CHECK(point_model(r.g) == cc);
  CHECK(scalar_series(r.g).at_origin() == rat(6));
}

TEST_CASE("conformally flat realization: K-N models reproduce A and kill Weyl") {
  Rng rng(42);
  for (int dim = 3; dim <= 5; ++dim)
    for (int trial = 0; trial < 3; ++trial) {
      int neg = rng.uniform_int(0, 1);
      ModelBundle b = random_conformally_flat_model(dim, neg, dim - neg, rng.next_u64());
      OrthoResult on = orthonormalize_model(b.model);
      RealizedGeometry r = realize_conformally_flat(on.model, 4);
      CHECK(point_model(r.g) == on.model);
      CHECK(weyl_series(r.g).is_zero());
      CHECK(ricci(point_model(r.g)) == ricci(on.model));
    }
}

TEST_CASE("conformally flat realization rejects bad inputs") {
  CurvatureModel flat2{BilinearForm::standard(0, 2), CurvTensor(2)};
  CHECK_THROWS_AS(realize_conformally_flat(flat2, 3), std::invalid_argument);

  CurvatureModel scaled{BilinearForm::from_matrix(RatMatrix::diagonal({rat(4), rat(1), rat(1)})),
                        CurvTensor(3)};
  CHECK_THROWS_AS(realize_conformally_flat(scaled, 3), std::invalid_argument);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ModelBundle b = random_model(4, 0, 4, seed);
    OrthoResult on = orthonormalize_model(b.model);
    if (!is_conformally_flat(on.model)) {
      CHECK_THROWS_AS(realize_conformally_flat(on.model, 3), std::invalid_argument);
      return;
    }
  }
  FAIL("no generic model found");
}

TEST_CASE("extend_structure: constant metric keeps J") {
  ModelBundle b = random_model(4, 2, 2, 50, ModelKind::para);
  MetricJet flat = make_metric_jet(SeriesMatrix::from_constant(b.model.form.eps, 4, 4));
  StructureField f = extend_structure(b.model, *b.structure, flat);
  CHECK(f.j == SeriesMatrix::from_constant(b.structure->j, 4, 4));
}

TEST_CASE("extend_structure: square-root and compatibility identities") {
  Rng rng(51);
  for (int trial = 0; trial < 4; ++trial) {
    ModelKind kind = trial % 2 ? ModelKind::para : ModelKind::hermitian;
    int neg = kind == ModelKind::para ? 2 : (trial == 0 ? 0 : 2);
    ModelBundle b = random_model(4, neg, 4 - neg, rng.next_u64(), kind);
    RealizedGeometry real = realize(b.model, 4);
    StructureField f = extend_structure(b.model, *b.structure, real.g);

    const int rho = b.structure->rho;
    CHECK(f.j.constant_term() == b.structure->j);
    CHECK(f.j * f.j == SeriesMatrix::identity(4, 4, 4) * Rational(rho));
    CHECK(f.j.transposed() * real.g.g * f.j == real.g.g * Rational(-rho));

    // psi is self-adjoint for eps.
    SeriesMatrix big_psi =
        SeriesMatrix::from_constant(b.model.form.eps_inv, 4, 4) * real.g.g;
    SeriesMatrix psi = series_sqrt(big_psi);
    SeriesMatrix eps_s = SeriesMatrix::from_constant(b.model.form.eps, 4, 4);
    CHECK(psi.transposed() * eps_s == eps_s * psi);
  }
}

TEST_CASE("extend_structure_hyper: constant metric keeps the triple") {
  ModelBundle b = random_model(8, 4, 4, 55, ModelKind::hyper_para);
  MetricJet flat = make_metric_jet(SeriesMatrix::from_constant(b.model.form.eps, 8, 3));
  auto triple = extend_structure_hyper(b.model, *b.hyper, flat);
  for (int a = 0; a < 3; ++a)
    CHECK(triple[a].j == SeriesMatrix::from_constant(b.hyper->j[a], 8, 3));
}

TEST_CASE("extend_structure_hyper: quaternion identities as series") {
  for (int which = 0; which < 2; ++which) {
    ModelKind kind = which ? ModelKind::hyper_para : ModelKind::hyper_pseudo;
    int neg = which ? 4 : 0;
    ModelBundle b = random_model(8, neg, 8 - neg, 60 + which, kind);
    RealizedGeometry real = realize(b.model, 3);
    auto triple = extend_structure_hyper(b.model, *b.hyper, real.g);

    SeriesMatrix id = SeriesMatrix::identity(8, 8, 3);
    CHECK(triple[0].j * triple[0].j == id * Rational(-1));
    CHECK(triple[1].j * triple[1].j == id * Rational(which ? 1 : -1));
    CHECK(triple[2].j * triple[2].j == id * Rational(which ? 1 : -1));
    CHECK(triple[0].j * triple[1].j == triple[2].j);
    CHECK(triple[1].j * triple[0].j == triple[2].j * rat(-1));
    for (int a = 0; a < 3; ++a)
      CHECK(triple[a].j.transposed() * real.g.g * triple[a].j ==
            real.g.g * Rational(-triple[a].rho));
  }
}

TEST_CASE("hermitian variation: zero deformation and the displayed entries") {
  ModelBundle b = random_model(4, 0, 4, 70, ModelKind::hermitian);
  MetricJet flat = make_metric_jet(SeriesMatrix::from_constant(b.model.form.eps, 4, 4));
  StructureField s{SeriesMatrix::from_constant(b.structure->j, 4, 4), -1};
  TruncatedSeries zero(4, 4);
  CHECK(hermitian_variation(flat, s, zero, zero).g == flat.g);

  TruncatedSeries xi(4, 4);
  xi.set_coeff(mono::variable(3, 4, 2), rat(1));
  MetricJet h = hermitian_variation(flat, s, xi, zero);
  TruncatedSeries bump(4, 4);
  bump.set_coeff(mono::variable(3, 4, 2), rat(2));
  CHECK(h.g(0, 0) == TruncatedSeries::constant(4, 4, rat(1)) + bump);
  CHECK(h.g(2, 2) == TruncatedSeries::constant(4, 4, rat(1)) + bump);  // J-image of dx_1
  CHECK(h.g(1, 1) == TruncatedSeries::constant(4, 4, rat(1)));
  CHECK(h.g(0, 2).is_zero());
}

TEST_CASE("variations stay structure compatible") {
  Rng rng(71);
  for (int trial = 0; trial < 2; ++trial) {
    ModelKind kind = trial ? ModelKind::para : ModelKind::hermitian;
    ModelBundle b = random_model(4, 2, 2, rng.next_u64(), kind);
    RealizedGeometry real = realize(b.model, 4);
    StructureField f = extend_structure(b.model, *b.structure, real.g);
    TruncatedSeries xi(4, 4), eta(4, 4);
    xi.set_coeff(mono::make({0, 1, 0, 2}, 4), rat(1, 2));
    xi.set_coeff(mono::variable(3, 4, 3), rat(-1));
    eta.set_coeff(mono::make({1, 0, 0, 2}, 4), rat(1, 3));
    MetricJet h = hermitian_variation(real.g, f, xi, eta);
    CHECK(f.j.transposed() * h.g * f.j == h.g * Rational(-f.rho));
    CHECK(point_model(h) == point_model(real.g));  // xi, eta vanish to second order
  }
}

TEST_CASE("hyper variation: displayed entries and invariance") {
  ModelBundle b = random_model(8, 0, 8, 80, ModelKind::hyper_pseudo);
  MetricJet flat = make_metric_jet(SeriesMatrix::from_constant(b.model.form.eps, 8, 3));
  std::array<StructureField, 3> triple;
  for (int a = 0; a < 3; ++a)
    triple[a] = StructureField{SeriesMatrix::from_constant(b.hyper->j[a], 8, 3), b.hyper->rho(a)};

  TruncatedSeries zero(8, 3), eta(8, 3);
  CHECK(hyper_variation(flat, triple, zero, zero).g == flat.g);

  eta.set_coeff(mono::variable(0, 8, 2), rat(1));
  MetricJet h = hyper_variation(flat, triple, zero, eta);
  TruncatedSeries bump(8, 3);
  bump.set_coeff(mono::variable(0, 8, 2), rat(2));
  for (int i = 0; i < 8; ++i) {
    TruncatedSeries expect = TruncatedSeries::constant(8, 3, rat(1));
    if (i >= 4) expect += bump;  // Xi_m is supported on the second quaternion block
    CHECK(h.g(i, i) == expect);
  }
  for (int a = 0; a < 3; ++a)
    CHECK(triple[a].j.transposed() * h.g * triple[a].j == h.g * Rational(-triple[a].rho));
}
