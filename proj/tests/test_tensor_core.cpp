#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvjet/rng.hpp"
#include "curvjet/tensor_core.hpp"
#include "oracles.hpp"

using namespace curvjet;
using namespace curvjet::testing;

namespace {

CurvatureModel constant_curvature_model(int neg, int pos) {
  BilinearForm form = BilinearForm::standard(neg, pos);
  return CurvatureModel{form, constant_curvature_tensor(form)};
}

}  // namespace

TEST_CASE("validation accepts the zero tensor and constant curvature") {
  CHECK(validate_curvature_tensor(CurvTensor(3)).empty());
  CurvatureModel m = constant_curvature_model(0, 3);
  CHECK(validate_curvature_tensor(m.tensor).empty());
}

TEST_CASE("validation pinpoints a broken antisymmetry") {
  CurvTensor a(2);
  a.set_entry(0, 1, 0, 1, rat(1));
  a.set_entry(1, 0, 0, 1, rat(1));  // should be -1
  auto violations = validate_curvature_tensor(a);
  REQUIRE(!violations.empty());
  bool witnessed = false;
  for (const auto& v : violations)
    if (v.identity == "antisymmetry" && v.index == std::array<int, 4>{0, 1, 0, 1}) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("ricci of model generators") {
  CurvatureModel zero{BilinearForm::standard(0, 3), CurvTensor(3)};
  CHECK(ricci(zero) == RatMatrix(3, 3));

  CurvatureModel euclid = constant_curvature_model(0, 3);
  CHECK(ricci(euclid) == euclid.form.eps * rat(2));
  CHECK(oracle_ricci(euclid) == euclid.form.eps * rat(2));

  CurvatureModel lorentz = constant_curvature_model(1, 2);
  CHECK(ricci(lorentz) == lorentz.form.eps * rat(2));
  CHECK(oracle_ricci(lorentz) == lorentz.form.eps * rat(2));
}

TEST_CASE("scalar curvature of the constant-curvature models") {
  CHECK(scalar_curvature(CurvatureModel{BilinearForm::standard(0, 3), CurvTensor(3)}) == rat(0));

  CurvatureModel m3 = constant_curvature_model(0, 3);
  CHECK(scalar_curvature(m3) == rat(6));
  CHECK(oracle_scalar(m3) == rat(6));

  CurvatureModel m4 = constant_curvature_model(0, 4);
  CHECK(scalar_curvature(m4) == rat(12));
  CHECK(oracle_scalar(m4) == rat(12));
}

TEST_CASE("ricci is symmetric and traces agree on random models") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    int dim = 2 + static_cast<int>(seed % 4);
    int neg = static_cast<int>(seed % (dim + 1));
    ModelBundle b = random_model(dim, neg, dim - neg, seed);
    CHECK(validate_curvature_tensor(b.model.tensor).empty());
    RatMatrix rho = ricci(b.model);
    CHECK(rho.is_symmetric());
    CHECK(rho == oracle_ricci(b.model));
    Rational tau(0);
    for (int i = 0; i < dim; ++i)
      for (int l = 0; l < dim; ++l) tau += b.model.form.eps_inv(i, l) * rho(i, l);
    CHECK(scalar_curvature(b.model) == tau);
    CHECK(scalar_curvature(b.model) == oracle_scalar(b.model));
  }
}

TEST_CASE("star scalar curvature") {
  BilinearForm e4 = BilinearForm::standard(0, 4);
  HermitianStructure j{standard_hermitian_j(4, -1), -1};
  REQUIRE(validate_structure(e4, j).empty());

  CurvatureModel zero{e4, CurvTensor(4)};
  CHECK(star_scalar(zero, j) == rat(0));

  CurvatureModel cc = constant_curvature_model(0, 4);
  CHECK(star_scalar(cc, j) == rat(4));
  CHECK(oracle_star_scalar(cc, j.j, j.rho) == rat(4));

  BilinearForm split = BilinearForm::standard(2, 2);
  HermitianStructure para{standard_hermitian_j(4, 1), 1};
  REQUIRE(validate_structure(split, para).empty());
  CHECK(star_scalar(CurvatureModel{split, CurvTensor(4)}, para) == rat(0));
}

TEST_CASE("star scalar is invariant under J -> -J") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ModelBundle b = random_model(4, 0, 4, seed, ModelKind::hermitian);
    HermitianStructure flipped{-b.structure->j, b.structure->rho};
    CHECK(star_scalar(b.model, *b.structure) == star_scalar(b.model, flipped));
  }
}

TEST_CASE("hyper star scalar and structure-group invariance") {
  BilinearForm e8 = BilinearForm::standard(0, 8);
  HyperStructure q{standard_hyper_triple(8, HyperKind::hyper_pseudo), HyperKind::hyper_pseudo};
  REQUIRE(validate_hyper(e8, q).empty());

  CHECK(star_scalar_hyper(CurvatureModel{e8, CurvTensor(8)}, q) == rat(0));

  CurvatureModel cc = constant_curvature_model(0, 8);
  Rational single = star_scalar(cc, HermitianStructure{q.j[0], -1});
  CHECK(star_scalar_hyper(cc, q) == single * rat(3));

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    ModelBundle b = random_model(8, 0, 8, seed, ModelKind::hyper_pseudo);
    HyperStructure cycled{{b.hyper->j[1], b.hyper->j[2], b.hyper->j[0]}, b.hyper->kind};
    REQUIRE(validate_hyper(b.model.form, cycled).empty());
    CHECK(star_scalar_hyper(b.model, b.hyper.value()) == star_scalar_hyper(b.model, cycled));
    HyperStructure flipped{{-b.hyper->j[0], -b.hyper->j[1], b.hyper->j[2]}, b.hyper->kind};
    REQUIRE(validate_hyper(b.model.form, flipped).empty());
    CHECK(star_scalar_hyper(b.model, b.hyper.value()) == star_scalar_hyper(b.model, flipped));
  }
}

TEST_CASE("kulkarni-nomizu product") {
  RatMatrix zero(3, 3);
  CHECK(kulkarni_nomizu(zero, zero).is_zero());

  BilinearForm e3 = BilinearForm::standard(0, 3);
  CurvTensor twice_cc = kulkarni_nomizu(e3.eps, e3.eps);
  CHECK(twice_cc == constant_curvature_tensor(e3) * rat(2));

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 5);
    RatMatrix h(n, n), k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        h(i, j) = h(j, i) = rng.small_rational();
        k(i, j) = k(j, i) = rng.small_rational();
      }
    CHECK(validate_curvature_tensor(kulkarni_nomizu(h, k)).empty());
  }
}

TEST_CASE("weyl tensor") {
  CurvatureModel flat{BilinearForm::standard(0, 4), CurvTensor(4)};
  CHECK(weyl(flat).is_zero());
  CHECK(is_conformally_flat(flat));

  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    RatMatrix s(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) s(i, j) = s(j, i) = rng.small_rational();
    BilinearForm form = BilinearForm::standard(trial % 2 ? 1 : 0, trial % 2 ? 3 : 4);
    CurvatureModel m{form, kulkarni_nomizu(form.eps, s)};
    CHECK(weyl(m).is_zero());
    CHECK(is_conformally_flat(m));
  }

  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ModelBundle b = random_model(3, 0, 3, seed);
    CHECK(weyl(b.model).is_zero());
  }

  // Weyl output is totally trace-free and weyl is idempotent on its image.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ModelBundle b = random_model(4, 1, 3, seed);
    CurvTensor w = weyl(b.model);
    CHECK(validate_curvature_tensor(w).empty());
    CurvatureModel wm{b.model.form, w};
    CHECK(ricci(wm) == RatMatrix(4, 4));
    CHECK(weyl(wm) == w);
  }

  CHECK_THROWS_AS(weyl(CurvatureModel{BilinearForm::standard(0, 2), CurvTensor(2)}),
                  std::invalid_argument);
}

TEST_CASE("a generic Weyl-sector model is not conformally flat") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ModelBundle b = random_model(4, 0, 4, seed);
    if (!weyl(b.model).is_zero()) {
      CHECK(!is_conformally_flat(b.model));
      return;
    }
  }
  FAIL("random models never left the conformally flat locus");
}

TEST_CASE("orthonormalize: identity on standard frames, scaling on squares") {
  CurvatureModel std_model = constant_curvature_model(1, 2);
  OrthoResult r = orthonormalize_model(std_model);
  CHECK(r.basis == RatMatrix::identity(3));
  CHECK(r.model == std_model);

  CurvatureModel scaled{BilinearForm::from_matrix(RatMatrix::diagonal({rat(4), rat(9)})),
                        CurvTensor(2)};
  OrthoResult s = orthonormalize_model(scaled);
  CHECK(s.basis == RatMatrix::diagonal({rat(1, 2), rat(1, 3)}));
  CHECK(s.model.form.eps == RatMatrix::identity(2));

  CurvatureModel bad{BilinearForm::from_matrix(RatMatrix::diagonal({rat(2), rat(1)})),
                     CurvTensor(2)};
  CHECK_THROWS_AS(orthonormalize_model(bad), std::domain_error);
}

TEST_CASE("orthonormalize recovers scrambled plain models and preserves invariants") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int dim = 2 + static_cast<int>(seed % 3);
    ModelBundle b = random_model(dim, 1, dim - 1, seed);
    OrthoResult r = orthonormalize_model(b.model);
    CHECK(r.basis.transposed() * b.model.form.eps * r.basis == r.model.form.eps);
    for (int i = 0; i < dim; ++i) {
      CHECK((r.model.form.eps(i, i) == rat(1) || r.model.form.eps(i, i) == rat(-1)));
      CHECK((i < b.model.form.neg) == (r.model.form.eps(i, i) == rat(-1)));
    }
    CHECK(scalar_curvature(r.model) == scalar_curvature(b.model));
    CHECK(validate_curvature_tensor(r.model.tensor).empty());
  }
}

TEST_CASE("orthonormalize adapts hermitian structures") {
  // Already-standard pair: identity basis change.
  ModelBundle b = random_model(4, 2, 2, 42, ModelKind::hermitian);
  OrthoResult r = orthonormalize_model(b.model, *b.structure);
  CHECK(r.basis == RatMatrix::identity(4));
  CHECK(r.structure->j == standard_hermitian_j(4, -1));

  // Signed-permutation scramble of a para pair, plus a square scaling.
  Rng rng(77);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ModelBundle p = random_model(4, 2, 2, seed, ModelKind::para);
    RatMatrix t(4, 4);
    std::array<int, 4> perm = {2, 0, 3, 1};
    for (int c = 0; c < 4; ++c) t(perm[c], c) = rat(rng.uniform_int(0, 1) ? 2 : 1) *
                                                rat(rng.uniform_int(0, 1) ? 1 : -1);
    CurvatureModel scrambled{BilinearForm::from_matrix(t.transposed() * p.model.form.eps * t),
                             transported(p.model.tensor, t)};
    HermitianStructure hs{t.inverse() * p.structure->j * t, 1};
    REQUIRE(validate_structure(scrambled.form, hs).empty());
    OrthoResult rr = orthonormalize_model(scrambled, hs);
    CHECK(rr.structure->j == standard_hermitian_j(4, 1));
    CHECK(rr.model.form.eps ==
          RatMatrix::diagonal({rat(1), rat(1), rat(-1), rat(-1)}));  // para pattern (+,+,-,-)
    CHECK(star_scalar(rr.model, *rr.structure) == star_scalar(scrambled, hs));
    CHECK(scalar_curvature(rr.model) == scalar_curvature(scrambled));
  }
}

TEST_CASE("orthonormalize adapts hyper structures") {
  ModelBundle b = random_model(8, 0, 8, 5, ModelKind::hyper_pseudo);
  OrthoResult r = orthonormalize_model(b.model, *b.hyper);
  CHECK(r.basis == RatMatrix::identity(8));

  ModelBundle hp = random_model(8, 4, 4, 6, ModelKind::hyper_para);
  RatMatrix t(8, 8);
  for (int c = 0; c < 8; ++c) t((c + 4) % 8, c) = rat(2);  // swap the two blocks, scale by 2
  CurvatureModel scrambled{BilinearForm::from_matrix(t.transposed() * hp.model.form.eps * t),
                           transported(hp.model.tensor, t)};
  HyperStructure qs{{t.inverse() * hp.hyper->j[0] * t, t.inverse() * hp.hyper->j[1] * t,
                     t.inverse() * hp.hyper->j[2] * t},
                    HyperKind::hyper_para};
  REQUIRE(validate_hyper(scrambled.form, qs).empty());
  OrthoResult rr = orthonormalize_model(scrambled, qs);
  for (int a = 0; a < 3; ++a)
    CHECK(rr.hyper->j[a] == standard_hyper_triple(8, HyperKind::hyper_para)[a]);
  CHECK(star_scalar_hyper(rr.model, *rr.hyper) == star_scalar_hyper(scrambled, qs));
}

TEST_CASE("random_model determinism and validity") {
  ModelBundle a = random_model(4, 2, 2, 1234);
  ModelBundle b = random_model(4, 2, 2, 1234);
  CHECK(a.model == b.model);

  ModelBundle h = random_model(4, 0, 4, 3, ModelKind::hermitian);
  CHECK(validate_curvature_tensor(h.model.tensor).empty());
  CHECK(validate_structure(h.model.form, *h.structure).empty());

  ModelBundle hp = random_model(8, 4, 4, 3, ModelKind::hyper_para);
  CHECK(validate_curvature_tensor(hp.model.tensor).empty());
  CHECK(validate_hyper(hp.model.form, *hp.hyper).empty());

  CHECK_THROWS_AS(random_model(3, 0, 3, 1, ModelKind::hermitian), std::invalid_argument);
  CHECK_THROWS_AS(random_model(4, 1, 3, 1, ModelKind::para), std::invalid_argument);
  CHECK_THROWS_AS(random_model(8, 2, 6, 1, ModelKind::hyper_pseudo), std::invalid_argument);
}

TEST_CASE("conformally flat generator satisfies its contract") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ModelBundle b = random_conformally_flat_model(4, 1, 3, seed);
    CHECK(validate_curvature_tensor(b.model.tensor).empty());
    CHECK(is_conformally_flat(b.model));
  }
}
