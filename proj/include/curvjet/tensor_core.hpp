#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvjet/linalg.hpp"
#include "curvjet/rational.hpp"

namespace curvjet {

// Non-degenerate symmetric bilinear form together with its inverse and
// signature. The signature convention counts (negative, positive) directions.
struct BilinearForm {
  int dim = 0;
  RatMatrix eps;
  RatMatrix eps_inv;
  int neg = 0;
  int pos = 0;

  static BilinearForm from_matrix(const RatMatrix& eps);
  static BilinearForm standard(int neg, int pos);  // diag(-1 x neg, +1 x pos)

  friend bool operator==(const BilinearForm& a, const BilinearForm& b) {
    return a.dim == b.dim && a.eps == b.eps;
  }
};

// Dense rank-4 tensor storage. set_canonical writes a value through all eight
// symmetry images of the curvature symmetries; set_entry writes one slot so
// that invalid tensors can be represented and then rejected by validation.
class CurvTensor {
 public:
  CurvTensor() = default;
  explicit CurvTensor(int dim);

  int dim() const { return dim_; }
  const Rational& at(int i, int j, int k, int l) const { return a_[idx(i, j, k, l)]; }
  void set_entry(int i, int j, int k, int l, const Rational& v) { a_[idx(i, j, k, l)] = v; }
  void set_canonical(int i, int j, int k, int l, const Rational& v);
  void add_canonical(int i, int j, int k, int l, const Rational& v);

  bool is_zero() const;
  CurvTensor& operator+=(const CurvTensor& o);
  CurvTensor& operator-=(const CurvTensor& o);
  CurvTensor& operator*=(const Rational& s);
  friend CurvTensor operator+(CurvTensor a, const CurvTensor& b) { return a += b; }
  friend CurvTensor operator-(CurvTensor a, const CurvTensor& b) { return a -= b; }
  friend CurvTensor operator*(CurvTensor a, const Rational& s) { return a *= s; }
  friend bool operator==(const CurvTensor& a, const CurvTensor& b) {
    return a.dim_ == b.dim_ && a.a_ == b.a_;
  }

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }
  int dim_ = 0;
  std::vector<Rational> a_;
};

struct CurvatureModel {
  BilinearForm form;
  CurvTensor tensor;

  friend bool operator==(const CurvatureModel& a, const CurvatureModel& b) {
    return a.form == b.form && a.tensor == b.tensor;
  }
};

// rho = -1: pseudo-Hermitian (J^2 = -id, J preserves eps);
// rho = +1: para-Hermitian (J^2 = +id, J anti-preserves eps).
struct HermitianStructure {
  RatMatrix j;
  int rho = -1;
};

enum class HyperKind { hyper_pseudo, hyper_para };

struct HyperStructure {
  std::array<RatMatrix, 3> j;
  HyperKind kind = HyperKind::hyper_pseudo;

  int rho(int a) const { return kind == HyperKind::hyper_pseudo ? -1 : (a == 0 ? -1 : +1); }
};

// --- validation ----------------------------------------------------------

struct TensorViolation {
  std::string identity;  // "antisymmetry", "pair-symmetry", "bianchi"
  std::array<int, 4> index;  // 0-based witness
};

// Checks the curvature symmetries entrywise over all index tuples.
std::vector<TensorViolation> validate_curvature_tensor(const CurvTensor& a);

// Structure invariants; returns human-readable violation messages.
std::vector<std::string> validate_structure(const BilinearForm& form, const HermitianStructure& h);
std::vector<std::string> validate_hyper(const BilinearForm& form, const HyperStructure& q);

// --- traces and derived tensors ------------------------------------------

RatMatrix ricci(const CurvatureModel& m);
Rational scalar_curvature(const CurvatureModel& m);
Rational star_scalar(const CurvatureModel& m, const HermitianStructure& h);
Rational star_scalar_hyper(const CurvatureModel& m, const HyperStructure& q);

// (h . k)_{ijkl} = h_il k_jk + h_jk k_il - h_ik k_jl - h_jl k_ik for symmetric h, k.
CurvTensor kulkarni_nomizu(const RatMatrix& h, const RatMatrix& k);

// Totally trace-free part of the curvature tensor; requires dim >= 3.
CurvTensor weyl(const CurvatureModel& m);
bool is_conformally_flat(const CurvatureModel& m);

// --- transport ------------------------------------------------------------

// Pullback along the basis change (columns of `basis` are the new basis
// vectors): A'(a,b,c,d) = A(B e_a, B e_b, B e_c, B e_d).
CurvTensor transported(const CurvTensor& a, const RatMatrix& basis);

// --- orthonormalization ----------------------------------------------------

struct OrthoResult {
  CurvatureModel model;
  std::optional<HermitianStructure> structure;
  std::optional<HyperStructure> hyper;
  RatMatrix basis;  // basis' * eps * basis = transported eps
};

// Diagonalizes eps to +-1 entries (negatives first) by an exact rational basis
// change; throws std::domain_error when a scale factor is not a rational
// square. With a structure the basis is additionally J-adapted: J goes to the
// standard block form (Hermitian) or the standard quaternion blocks (hyper).
OrthoResult orthonormalize_model(const CurvatureModel& m);
OrthoResult orthonormalize_model(const CurvatureModel& m, const HermitianStructure& h);
OrthoResult orthonormalize_model(const CurvatureModel& m, const HyperStructure& q);

// --- standard structures and generators ------------------------------------

// Shift block form: J e_i = e_{i+r} for i < r, J e_i = rho e_{i-r} otherwise.
RatMatrix standard_hermitian_j(int dim, int rho);
// Block-diagonal quaternion (or split-quaternion) left-multiplication triples.
std::array<RatMatrix, 3> standard_hyper_triple(int dim, HyperKind kind);

enum class ModelKind { plain, hermitian, para, hyper_pseudo, hyper_para };

const char* to_string(ModelKind k);
std::optional<ModelKind> model_kind_from_string(const std::string& s);

struct ModelBundle {
  ModelKind kind = ModelKind::plain;
  CurvatureModel model;
  std::optional<HermitianStructure> structure;
  std::optional<HyperStructure> hyper;
  std::uint64_t seed = 0;
};

// Deterministic in the seed. Structure kinds are emitted in the adapted frame
// (standard eps pattern and standard J blocks); plain models may carry a
// scrambled eps. Throws std::invalid_argument on incompatible arguments.
ModelBundle random_model(int dim, int neg, int pos, std::uint64_t seed,
                         ModelKind kind = ModelKind::plain);

// Conformally flat generator: A = eps (.) S for a random symmetric S.
ModelBundle random_conformally_flat_model(int dim, int neg, int pos, std::uint64_t seed);

}  // namespace curvjet
