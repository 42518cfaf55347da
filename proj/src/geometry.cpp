#include "curvjet/geometry.hpp"

#include <stdexcept>

namespace curvjet {

MetricJet make_metric_jet(SeriesMatrix g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("metric jet: matrix must be square");
  if (!g.is_symmetric()) throw std::invalid_argument("metric jet: matrix must be symmetric");
  if (sgn(g.constant_term().determinant()) == 0)
    throw std::invalid_argument("metric jet: degenerate at the origin");
  return MetricJet{std::move(g)};
}

ChristoffelField::ChristoffelField(int dim, int vars, int order) : dim_(dim), order_(order) {
  e_.assign(static_cast<std::size_t>(dim) * dim * dim, TruncatedSeries(vars, order));
}

void ChristoffelField::set_sym(int i, int j, int k, const TruncatedSeries& v) {
  e_[idx(i, j, k)] = v;
  e_[idx(j, i, k)] = v;
}

CurvatureSeries::CurvatureSeries(int dim, int vars, int order) : dim_(dim), order_(order) {
  e_.assign(static_cast<std::size_t>(dim) * dim * dim * dim, TruncatedSeries(vars, order));
}

void CurvatureSeries::set_canonical(int i, int j, int k, int l, const TruncatedSeries& v) {
  e_[idx(i, j, k, l)] = v;
  e_[idx(j, i, l, k)] = v;
  e_[idx(k, l, i, j)] = v;
  e_[idx(l, k, j, i)] = v;
  TruncatedSeries neg = -v;
  e_[idx(j, i, k, l)] = neg;
  e_[idx(i, j, l, k)] = neg;
  e_[idx(l, k, i, j)] = neg;
  e_[idx(k, l, j, i)] = neg;
}

bool CurvatureSeries::is_zero() const {
  for (const auto& s : e_)
    if (!s.is_zero()) return false;
  return true;
}

CurvTensor CurvatureSeries::at_origin() const {
  CurvTensor a(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) a.set_entry(i, j, k, l, at(i, j, k, l).at_origin());
  return a;
}

ChristoffelField christoffel_first(const MetricJet& g) {
  const int n = g.dim();
  if (g.order() < 1) throw std::invalid_argument("christoffel: metric order must be >= 1");
  std::vector<SeriesMatrix> dg;
  dg.reserve(n);
  for (int k = 0; k < n; ++k) {
    SeriesMatrix d(n, n, g.vars(), g.order() - 1);
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) {
        d(r, c) = g.g(r, c).derivative(k);
        if (c != r) d(c, r) = d(r, c);
      }
    dg.push_back(std::move(d));
  }
  ChristoffelField out(n, g.vars(), g.order() - 1);
  const Rational half = rat(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out.set_sym(i, j, k, (dg[i](j, k) + dg[j](i, k) - dg[k](i, j)) * half);
  return out;
}

CurvatureSeries riemann(const MetricJet& g) {
  const int n = g.dim();
  if (g.order() < 2) throw std::invalid_argument("riemann: metric order must be >= 2");
  const int ro = g.order() - 2;  // curvature order
  ChristoffelField gamma = christoffel_first(g);
  SeriesMatrix ginv = g.g.inverted().truncated(g.order() - 1);

  // Second-kind symbols: lambda_{jl}^p = g^{pq} Gamma_{jlq}, at order N-1.
  std::vector<TruncatedSeries> lambda(static_cast<std::size_t>(n) * n * n,
                                      TruncatedSeries(g.vars(), g.order() - 1));
  auto lidx = [n](int j, int l, int p) {
    return (static_cast<std::size_t>(j) * n + l) * n + p;
  };
  for (int j = 0; j < n; ++j)
    for (int l = j; l < n; ++l)
      for (int p = 0; p < n; ++p) {
        TruncatedSeries acc(g.vars(), g.order() - 1);
        for (int q = 0; q < n; ++q) {
          if (ginv(p, q).is_zero() || gamma.at(j, l, q).is_zero()) continue;
          acc += ginv(p, q) * gamma.at(j, l, q);
        }
        lambda[lidx(j, l, p)] = acc;
        lambda[lidx(l, j, p)] = std::move(acc);
      }

  CurvatureSeries out(n, g.vars(), ro);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
          TruncatedSeries r = gamma.at(j, k, l).derivative(i) - gamma.at(i, k, l).derivative(j);
          TruncatedSeries quad(g.vars(), g.order() - 1);
          for (int p = 0; p < n; ++p) {
            if (!lambda[lidx(j, l, p)].is_zero() && !gamma.at(i, k, p).is_zero())
              quad += lambda[lidx(j, l, p)] * gamma.at(i, k, p);
            if (!lambda[lidx(i, l, p)].is_zero() && !gamma.at(j, k, p).is_zero())
              quad -= lambda[lidx(i, l, p)] * gamma.at(j, k, p);
          }
          out.set_canonical(i, j, k, l, r + quad.truncated(ro));
        }
  return out;
}

CurvatureBundle curvature_bundle(const MetricJet& g) {
  CurvatureBundle b;
  b.r = riemann(g);
  b.g_inv = g.g.inverted().truncated(g.order() - 2);
  return b;
}

SeriesMatrix ricci_series(const CurvatureBundle& b) {
  const int n = b.r.dim();
  SeriesMatrix rho(n, n, b.g_inv.vars(), b.r.order());
  for (int i = 0; i < n; ++i)
    for (int l = i; l < n; ++l) {
      TruncatedSeries acc(b.g_inv.vars(), b.r.order());
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (b.g_inv(j, k).is_zero() || b.r.at(i, j, k, l).is_zero()) continue;
          acc += b.g_inv(j, k) * b.r.at(i, j, k, l);
        }
      rho(i, l) = acc;
      if (l != i) rho(l, i) = std::move(acc);
    }
  return rho;
}

TruncatedSeries scalar_series(const CurvatureBundle& b) {
  const int n = b.r.dim();
  SeriesMatrix rho = ricci_series(b);
  TruncatedSeries tau(b.g_inv.vars(), b.r.order());
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      if (b.g_inv(i, l).is_zero() || rho(i, l).is_zero()) continue;
      tau += b.g_inv(i, l) * rho(i, l);
    }
  return tau;
}

TruncatedSeries scalar_series(const MetricJet& g) { return scalar_series(curvature_bundle(g)); }

TruncatedSeries star_scalar_series(const CurvatureBundle& b, const StructureField& s) {
  const int n = b.r.dim();
  if (s.j.rows() != n) throw std::invalid_argument("star_scalar_series: structure shape mismatch");
  // p(i,q) = g^{il} J^q_l, truncated to the curvature order.
  SeriesMatrix p = b.g_inv * s.j.truncated(b.r.order()).transposed();
  TruncatedSeries acc(b.g_inv.vars(), b.r.order());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) {
        if (p(j, a).is_zero()) continue;
        for (int q = 0; q < n; ++q) {
          if (p(i, q).is_zero() || b.r.at(i, j, a, q).is_zero()) continue;
          acc += p(i, q) * (p(j, a) * b.r.at(i, j, a, q));
        }
      }
  acc *= Rational(-s.rho);
  return acc;
}

TruncatedSeries star_scalar_series(const MetricJet& g, const StructureField& s) {
  return star_scalar_series(curvature_bundle(g), s);
}

CurvatureSeries weyl_series(const MetricJet& g) {
  const int n = g.dim();
  if (n < 3) throw std::invalid_argument("weyl_series: requires dim >= 3");
  CurvatureBundle b = curvature_bundle(g);
  const int ro = b.r.order();
  SeriesMatrix rho = ricci_series(b);
  TruncatedSeries tau(g.vars(), ro);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      if (b.g_inv(i, l).is_zero() || rho(i, l).is_zero()) continue;
      tau += b.g_inv(i, l) * rho(i, l);
    }
  SeriesMatrix gt = g.g.truncated(ro);
  SeriesMatrix rho0 = rho - tau * rat(1, n) * gt;
  TruncatedSeries tau_scale = tau * (Rational(1) / (2 * n * (n - 1)));

  CurvatureSeries out(n, g.vars(), ro);
  const Rational inv_m2 = rat(1, n - 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
          auto kn = [&](const SeriesMatrix& h, const SeriesMatrix& kk) {
            return h(i, l) * kk(j, k) + h(j, k) * kk(i, l) - h(i, k) * kk(j, l) -
                   h(j, l) * kk(i, k);
          };
          TruncatedSeries w = b.r.at(i, j, k, l);
          w -= kn(rho0, gt) * inv_m2;
          w -= tau_scale * kn(gt, gt);
          out.set_canonical(i, j, k, l, w);
        }
  return out;
}

CurvatureModel point_model(const MetricJet& g) {
  CurvatureModel m;
  m.form = BilinearForm::from_matrix(g.g.constant_term());
  m.tensor = riemann(g).at_origin();
  return m;
}

std::pair<CurvatureModel, HermitianStructure> point_model(const MetricJet& g,
                                                          const StructureField& s) {
  return {point_model(g), HermitianStructure{s.j.constant_term(), s.rho}};
}

std::pair<CurvatureModel, HyperStructure> point_model(const MetricJet& g,
                                                      const std::array<StructureField, 3>& triple) {
  HyperKind kind = (triple[1].rho == -1) ? HyperKind::hyper_pseudo : HyperKind::hyper_para;
  HyperStructure q{{triple[0].j.constant_term(), triple[1].j.constant_term(),
                    triple[2].j.constant_term()},
                   kind};
  return {point_model(g), q};
}

MetricJet transform_jet(const MetricJet& g, const RatMatrix& map) {
  SeriesMatrix composed = g.g.composed_linear(map);
  SeriesMatrix out = SeriesMatrix::from_constant(map.transposed(), g.vars(), g.order()) * composed *
                     SeriesMatrix::from_constant(map, g.vars(), g.order());
  return make_metric_jet(std::move(out));
}

StructureField transform_structure(const StructureField& s, const RatMatrix& map) {
  SeriesMatrix composed = s.j.composed_linear(map);
  SeriesMatrix out = SeriesMatrix::from_constant(map.inverse(), s.j.vars(), s.j.order()) * composed *
                     SeriesMatrix::from_constant(map, s.j.vars(), s.j.order());
  return StructureField{std::move(out), s.rho};
}

}  // namespace curvjet
