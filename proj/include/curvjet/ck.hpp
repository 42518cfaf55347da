#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvjet/realization.hpp"

namespace curvjet {

// Quasilinear second-order system in residual form: the functional maps a
// candidate unknown jet (unknown_dim series in `vars` variables) to its
// residual, contractually psi^{ij}(x,u) d_i d_j U + psi(x,u) with u the 1-jet
// of U. The solver imposes zero Cauchy data on the hyperplane where the last
// variable vanishes and verifies the affine structure by probing.
struct QuasilinearSystem {
  int unknown_dim = 1;
  int vars = 1;
  std::function<std::vector<TruncatedSeries>(const std::vector<TruncatedSeries>&)> residual;
};

class SingularStepError : public std::runtime_error {
 public:
  SingularStepError(int step, const std::string& what) : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

class QuasilinearityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CKSolution {
  std::vector<TruncatedSeries> unknown;  // no monomials with last-variable exponent <= 1
  int residual_zero_through = 0;         // order - 2
  std::vector<RatMatrix> step_blocks;    // probed block at each step a: (a+2)(a+1) psi^mm(0)
  std::vector<Rational> step_dets;
  RatMatrix leading_linearization;       // step-0 block / 2 = psi^mm(0)
};

// Degree-by-degree recursion in the last-variable exponent. The returned jet
// is the unique one with zero Cauchy data whose residual vanishes through
// total degree order-2.
CKSolution ck_solve(const QuasilinearSystem& sys, int order);

// --- deformation pipelines -------------------------------------------------

struct DeformationReport {
  int requested_order = 0;
  int constancy_order = 0;
  bool tau_constant = false;
  bool taustar_constant = true;
  bool two_jet_vanishes = false;
  bool point_model_preserved = false;
  bool structure_compatible = true;
  Rational tau_value;
  Rational taustar_value;
  RatMatrix linearization;  // probed leading block per unit Hessian entry
  std::vector<Rational> step_dets;

  bool pass() const {
    return tau_constant && taustar_constant && two_jet_vanishes && point_model_preserved &&
           structure_compatible;
  }
};

// Conformal deformation h = (1 + 2 phi) g with constant scalar curvature
// through order-2. phi and h live in the input frame; `frame` records the
// orthonormalizing change used for the solve (identity when none was needed).
struct ConformalDeformation {
  TruncatedSeries phi;
  MetricJet h;
  RatMatrix frame;
  DeformationReport report;
};
ConformalDeformation constant_scalar_conformal(const MetricJet& g, int order);

// Structure-compatible variation with both tau and tau* constant. xi and eta
// are reported in the solver (adapted) frame; h is mapped back to the input
// frame. Requires dim >= 4 (>= 8 for the hyper version).
struct VariationDeformation {
  TruncatedSeries xi;
  TruncatedSeries eta;
  MetricJet h;
  RatMatrix frame;
  DeformationReport report;
};
VariationDeformation constant_tau_taustar(const MetricJet& g, const StructureField& s, int order);
VariationDeformation constant_tau_taustar_hyper(const MetricJet& g,
                                                const std::array<StructureField, 3>& triple,
                                                int order);

}  // namespace curvjet
