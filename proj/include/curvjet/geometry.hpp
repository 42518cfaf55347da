#pragma once

#include <array>
#include <utility>

#include "curvjet/series.hpp"
#include "curvjet/tensor_core.hpp"

namespace curvjet {

// Local pseudo-Riemannian metric as a jet: a symmetric series matrix with
// invertible constant term. The order of g is the reliable jet order.
struct MetricJet {
  SeriesMatrix g;

  int dim() const { return g.rows(); }
  int vars() const { return g.vars(); }
  int order() const { return g.order(); }
};

// Validates symmetry and invertibility at the origin.
MetricJet make_metric_jet(SeriesMatrix g);

// Almost (para-)Hermitian structure extended near the origin.
struct StructureField {
  SeriesMatrix j;
  int rho = -1;
};

// Christoffel symbols of the first kind, Gamma_{ijk} = (g_{jk/i} + g_{ik/j} - g_{ij/k})/2,
// symmetric in (i,j); reliable order is one less than the metric's.
class ChristoffelField {
 public:
  ChristoffelField() = default;
  ChristoffelField(int dim, int vars, int order);
  const TruncatedSeries& at(int i, int j, int k) const { return e_[idx(i, j, k)]; }
  void set_sym(int i, int j, int k, const TruncatedSeries& v);
  int dim() const { return dim_; }
  int order() const { return order_; }

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0, order_ = 0;
  std::vector<TruncatedSeries> e_;
};

// Curvature tensor as a series, stored with the pair symmetries baked in; the
// first Bianchi identity is a computed property, not a storage fact.
class CurvatureSeries {
 public:
  CurvatureSeries() = default;
  CurvatureSeries(int dim, int vars, int order);
  const TruncatedSeries& at(int i, int j, int k, int l) const { return e_[idx(i, j, k, l)]; }
  void set_canonical(int i, int j, int k, int l, const TruncatedSeries& v);
  int dim() const { return dim_; }
  int order() const { return order_; }
  bool is_zero() const;
  CurvTensor at_origin() const;

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }
  int dim_ = 0, order_ = 0;
  std::vector<TruncatedSeries> e_;
};

ChristoffelField christoffel_first(const MetricJet& g);

// Full curvature series of the Levi-Civita connection, lowered:
// R_{ijkl} = d_i Gamma_{jkl} - d_j Gamma_{ikl} + g^{pq}(Gamma_{jlp}Gamma_{ikq} - Gamma_{ilp}Gamma_{jkq}).
// Reliable order is two less than the metric's; requires order >= 2.
CurvatureSeries riemann(const MetricJet& g);

// Shares the expensive pieces between the scalar contractions.
struct CurvatureBundle {
  CurvatureSeries r;
  SeriesMatrix g_inv;  // truncated to the curvature order
};
CurvatureBundle curvature_bundle(const MetricJet& g);

SeriesMatrix ricci_series(const CurvatureBundle& b);
TruncatedSeries scalar_series(const CurvatureBundle& b);
TruncatedSeries scalar_series(const MetricJet& g);
TruncatedSeries star_scalar_series(const CurvatureBundle& b, const StructureField& s);
TruncatedSeries star_scalar_series(const MetricJet& g, const StructureField& s);

// Trace-free part of the curvature series in the metric's own decomposition.
CurvatureSeries weyl_series(const MetricJet& g);

// Evaluation at the origin into point-level types.
CurvatureModel point_model(const MetricJet& g);
std::pair<CurvatureModel, HermitianStructure> point_model(const MetricJet& g, const StructureField& s);
std::pair<CurvatureModel, HyperStructure> point_model(const MetricJet& g,
                                                      const std::array<StructureField, 3>& triple);

// Pullback along the linear coordinate change x = map * y (columns of map are
// the new basis vectors).
MetricJet transform_jet(const MetricJet& g, const RatMatrix& map);
StructureField transform_structure(const StructureField& s, const RatMatrix& map);

}  // namespace curvjet
