#pragma once

#include <array>
#include <optional>

#include "curvjet/geometry.hpp"

namespace curvjet {

enum class Provenance { quadratic, conformally_flat, variation };

struct RealizedGeometry {
  MetricJet g;
  std::optional<StructureField> structure;
  std::optional<std::array<StructureField, 3>> triple;
  CurvatureModel origin;
  Provenance provenance = Provenance::quadratic;
};

// Quadratic realization g_ik = eps_ik - (1/3) A_{ijlk} x^j x^l: the curvature
// of g at the origin reproduces A exactly. Requires order >= 2.
RealizedGeometry realize(const CurvatureModel& m, int order);

// Conformally flat realization g = (1 + phi) eps with the explicit quadratic
// phi matching the prescribed Ricci tensor. Requires a conformally flat model,
// dim >= 3, and eps diagonal with +-1 entries (orthonormalize first).
RealizedGeometry realize_conformally_flat(const CurvatureModel& m, int order);

// Extends a point structure J to a structure field J1 = psi^-1 J psi with
// psi = sqrt(eps^-1 g); J1 is g-compatible through the reliable order and
// J1(0) = J. Requires g(0) = eps.
StructureField extend_structure(const CurvatureModel& m, const HermitianStructure& h,
                                const MetricJet& g);
std::array<StructureField, 3> extend_structure_hyper(const CurvatureModel& m,
                                                     const HyperStructure& q, const MetricJet& g);

// Realize and extend the carried structures in one step.
RealizedGeometry realize_with_structures(const struct ModelBundle& bundle, int order);

// h = g + 2 xi {dx_1 . dx_1 - rho Jdx_1 . Jdx_1} + 2 eta {dx_m . dx_m - rho Jdx_m . Jdx_m}.
// Requires adapted coordinates: g(0) diagonal +-1 and J(0) in standard block
// form; xi and eta must vanish at the origin.
MetricJet hermitian_variation(const MetricJet& g, const StructureField& s,
                              const TruncatedSeries& xi, const TruncatedSeries& eta);

// Hyper version: h = g + 2 xi Xi_1 + 2 eta Xi_m with
// Xi_i = dx_i . dx_i - sum_a rho_a Ja*dx_i . Ja*dx_i.
MetricJet hyper_variation(const MetricJet& g, const std::array<StructureField, 3>& triple,
                          const TruncatedSeries& xi, const TruncatedSeries& eta);

}  // namespace curvjet
