#include "curvjet/tensor_core.hpp"

#include <algorithm>
#include <stdexcept>

#include "curvjet/rng.hpp"

namespace curvjet {

BilinearForm BilinearForm::from_matrix(const RatMatrix& eps) {
  if (eps.rows() != eps.cols() || eps.rows() < 1)
    throw std::invalid_argument("bilinear form: matrix must be square and nonempty");
  if (!eps.is_symmetric()) throw std::invalid_argument("bilinear form: matrix not symmetric");
  BilinearForm f;
  f.dim = eps.rows();
  f.eps = eps;
  try {
    f.eps_inv = eps.inverse();
  } catch (const std::domain_error&) {
    throw std::invalid_argument("bilinear form: degenerate matrix");
  }
  Signature sig = signature_of(eps);
  f.neg = sig.neg;
  f.pos = sig.pos;
  return f;
}

BilinearForm BilinearForm::standard(int neg, int pos) {
  std::vector<Rational> d(static_cast<std::size_t>(neg + pos));
  for (int i = 0; i < neg; ++i) d[i] = -1;
  for (int i = neg; i < neg + pos; ++i) d[i] = 1;
  return from_matrix(RatMatrix::diagonal(d));
}

CurvTensor::CurvTensor(int dim) : dim_(dim) {
  if (dim < 1 || dim > 12) throw std::invalid_argument("curvature tensor: dimension out of range");
  a_.assign(static_cast<std::size_t>(dim) * dim * dim * dim, Rational(0));
}

void CurvTensor::set_canonical(int i, int j, int k, int l, const Rational& v) {
  a_[idx(i, j, k, l)] = v;
  a_[idx(j, i, k, l)] = -v;
  a_[idx(i, j, l, k)] = -v;
  a_[idx(j, i, l, k)] = v;
  a_[idx(k, l, i, j)] = v;
  a_[idx(l, k, i, j)] = -v;
  a_[idx(k, l, j, i)] = -v;
  a_[idx(l, k, j, i)] = v;
}

void CurvTensor::add_canonical(int i, int j, int k, int l, const Rational& v) {
  set_canonical(i, j, k, l, at(i, j, k, l) + v);
}

bool CurvTensor::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

CurvTensor& CurvTensor::operator+=(const CurvTensor& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("curvature tensor dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CurvTensor& CurvTensor::operator-=(const CurvTensor& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("curvature tensor dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CurvTensor& CurvTensor::operator*=(const Rational& s) {
  for (auto& v : a_) v *= s;
  return *this;
}

std::vector<TensorViolation> validate_curvature_tensor(const CurvTensor& a) {
  constexpr std::size_t kMaxReported = 64;
  std::vector<TensorViolation> out;
  const int n = a.dim();
  auto report = [&](const char* id, int i, int j, int k, int l) {
    if (out.size() < kMaxReported) out.push_back({id, {i, j, k, l}});
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (a.at(i, j, k, l) != -a.at(j, i, k, l)) report("antisymmetry", i, j, k, l);
          if (a.at(i, j, k, l) != a.at(k, l, i, j)) report("pair-symmetry", i, j, k, l);
          if (sgn(a.at(i, j, k, l) + a.at(j, k, i, l) + a.at(k, i, j, l)) != 0)
            report("bianchi", i, j, k, l);
        }
  return out;
}

std::vector<std::string> validate_structure(const BilinearForm& form, const HermitianStructure& h) {
  std::vector<std::string> out;
  const int n = form.dim;
  if (h.rho != -1 && h.rho != 1) out.push_back("rho must be -1 or +1");
  if (h.j.rows() != n || h.j.cols() != n) {
    out.push_back("J has wrong shape");
    return out;
  }
  RatMatrix jj = h.j * h.j;
  if (!(jj == RatMatrix::identity(n) * Rational(h.rho))) out.push_back("J^2 != rho*id");
  RatMatrix pulled = h.j.transposed() * form.eps * h.j;
  if (!(pulled == form.eps * Rational(-h.rho))) out.push_back("J'*eps*J != -rho*eps");
  if (h.rho == -1) {
    if (form.neg % 2 != 0 || form.pos % 2 != 0)
      out.push_back("pseudo-Hermitian structure needs even p and q");
  } else {
    if (form.neg != form.pos) out.push_back("para-Hermitian structure needs p = q");
  }
  return out;
}

std::vector<std::string> validate_hyper(const BilinearForm& form, const HyperStructure& q) {
  std::vector<std::string> out;
  if (form.dim % 4 != 0) out.push_back("hyper structure needs dim divisible by 4");
  for (int a = 0; a < 3; ++a) {
    HermitianStructure h{q.j[a], q.rho(a)};
    for (auto& msg : validate_structure(form, h))
      out.push_back("J" + std::to_string(a + 1) + ": " + msg);
  }
  if (q.j[0].rows() == form.dim && q.j[1].rows() == form.dim && q.j[2].rows() == form.dim) {
    if (!(q.j[0] * q.j[1] == q.j[2])) out.push_back("J1*J2 != J3");
    if (!(q.j[1] * q.j[0] == -q.j[2])) out.push_back("J2*J1 != -J3");
  }
  return out;
}

RatMatrix ricci(const CurvatureModel& m) {
  const int n = m.form.dim;
  RatMatrix rho(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Rational& w = m.form.eps_inv(j, k);
      if (sgn(w) == 0) continue;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) rho(i, l) += w * m.tensor.at(i, j, k, l);
    }
  return rho;
}

Rational scalar_curvature(const CurvatureModel& m) {
  const int n = m.form.dim;
  RatMatrix rho = ricci(m);
  Rational tau(0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) tau += m.form.eps_inv(i, l) * rho(i, l);
  return tau;
}

Rational star_scalar(const CurvatureModel& m, const HermitianStructure& h) {
  auto bad = validate_structure(m.form, h);
  if (!bad.empty()) throw std::invalid_argument("star_scalar: " + bad.front());
  const int n = m.form.dim;
  RatMatrix p = m.form.eps_inv * h.j.transposed();  // p(i,q) = eps^{il} J^q_l
  Rational acc(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) {
        if (sgn(p(j, a)) == 0) continue;
        for (int b = 0; b < n; ++b) acc += p(i, b) * p(j, a) * m.tensor.at(i, j, a, b);
      }
  return acc * Rational(-h.rho);
}

Rational star_scalar_hyper(const CurvatureModel& m, const HyperStructure& q) {
  auto bad = validate_hyper(m.form, q);
  if (!bad.empty()) throw std::invalid_argument("star_scalar_hyper: " + bad.front());
  Rational acc(0);
  for (int a = 0; a < 3; ++a) acc += star_scalar(m, HermitianStructure{q.j[a], q.rho(a)});
  return acc;
}

CurvTensor kulkarni_nomizu(const RatMatrix& h, const RatMatrix& k) {
  if (h.rows() != h.cols() || !(h.rows() == k.rows() && k.rows() == k.cols()))
    throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  if (!h.is_symmetric() || !k.is_symmetric())
    throw std::invalid_argument("kulkarni_nomizu: arguments must be symmetric");
  const int n = h.rows();
  CurvTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          out.set_entry(i, j, a, b,
                        h(i, b) * k(j, a) + h(j, a) * k(i, b) - h(i, a) * k(j, b) - h(j, b) * k(i, a));
  return out;
}

CurvTensor weyl(const CurvatureModel& m) {
  const int n = m.form.dim;
  if (n < 3) throw std::invalid_argument("weyl: requires dim >= 3");
  RatMatrix rho = ricci(m);
  Rational tau(0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) tau += m.form.eps_inv(i, l) * rho(i, l);
  RatMatrix rho0 = rho - m.form.eps * (tau / n);
  CurvTensor w = m.tensor;
  w -= kulkarni_nomizu(rho0, m.form.eps) * rat(1, n - 2);
  w -= kulkarni_nomizu(m.form.eps, m.form.eps) * (tau / (2 * n * (n - 1)));
  return w;
}

bool is_conformally_flat(const CurvatureModel& m) { return weyl(m).is_zero(); }

CurvTensor transported(const CurvTensor& a, const RatMatrix& basis) {
  const int n = a.dim();
  if (basis.rows() != n || basis.cols() != n)
    throw std::invalid_argument("transported: basis shape mismatch");
  auto flat = [n](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  };
  std::vector<Rational> cur(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) cur[flat(i, j, k, l)] = a.at(i, j, k, l);
  // Contract one slot at a time; after pass s, slot s is in the new basis.
  for (int slot = 0; slot < 4; ++slot) {
    std::vector<Rational> next(cur.size(), Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const Rational& v = cur[flat(i, j, k, l)];
            if (sgn(v) == 0) continue;
            int old_idx = (slot == 0) ? i : (slot == 1) ? j : (slot == 2) ? k : l;
            for (int t = 0; t < n; ++t) {
              const Rational& b = basis(old_idx, t);
              if (sgn(b) == 0) continue;
              int ii = (slot == 0) ? t : i, jj = (slot == 1) ? t : j;
              int kk = (slot == 2) ? t : k, ll = (slot == 3) ? t : l;
              next[flat(ii, jj, kk, ll)] += v * b;
            }
          }
    cur = std::move(next);
  }
  CurvTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.set_entry(i, j, k, l, cur[flat(i, j, k, l)]);
  return out;
}

namespace {

Rational form_dot(const RatMatrix& f, const std::vector<Rational>& u, const std::vector<Rational>& v) {
  Rational acc(0);
  const int n = f.rows();
  for (int i = 0; i < n; ++i) {
    if (sgn(u[i]) == 0) continue;
    for (int j = 0; j < n; ++j) acc += u[i] * f(i, j) * v[j];
  }
  return acc;
}

std::vector<Rational> mat_apply(const RatMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.rows(), Rational(0));
  for (int c = 0; c < m.cols(); ++c) {
    if (sgn(v[c]) == 0) continue;
    for (int r = 0; r < m.rows(); ++r) out[r] += m(r, c) * v[c];
  }
  return out;
}

bool is_zero_vec(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// Diagonalize eps to +-1 by an exact basis change, keeping the diagonal order.
// Throws when a scale is not a rational square.
struct UnitDiag {
  RatMatrix basis;
  std::vector<int> signs;
};

UnitDiag unit_diagonalize(const BilinearForm& form) {
  CongruenceDiag cd = congruence_diagonalize(form.eps);
  UnitDiag out;
  out.basis = cd.basis;
  const int n = form.dim;
  out.signs.resize(n);
  for (int i = 0; i < n; ++i) {
    const Rational& d = cd.diag[i];
    if (sgn(d) == 0) throw std::domain_error("orthonormalize: degenerate form");
    Rational mag = sgn(d) < 0 ? Rational(-d) : d;
    auto root = exact_sqrt(mag);
    if (!root)
      throw std::domain_error("orthonormalize: diagonal entry " + to_string(d) +
                              " is not a rational square times a sign; no exact orthonormal frame");
    if (*root != 1) {
      Rational inv = Rational(1) / *root;
      for (int r = 0; r < n; ++r) out.basis(r, i) *= inv;
    }
    out.signs[i] = sgn(d);
  }
  return out;
}

CurvatureModel transported_model(const CurvatureModel& m, const RatMatrix& basis) {
  CurvatureModel out;
  out.form = BilinearForm::from_matrix(basis.transposed() * m.form.eps * basis);
  out.tensor = transported(m.tensor, basis);
  return out;
}

// Candidate vectors for the greedy adapted-basis search, in a fixed order:
// standard basis vectors, then pairwise sums and differences.
std::vector<std::vector<Rational>> adapted_candidates(int n) {
  std::vector<std::vector<Rational>> cands;
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> v(n, Rational(0));
    v[k] = 1;
    cands.push_back(v);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      for (int s : {1, -1}) {
        std::vector<Rational> v(n, Rational(0));
        v[k] = 1;
        v[l] = s;
        cands.push_back(v);
      }
  return cands;
}

}  // namespace

OrthoResult orthonormalize_model(const CurvatureModel& m) {
  UnitDiag ud = unit_diagonalize(m.form);
  const int n = m.form.dim;
  // Stable permutation: negative directions first.
  std::vector<int> perm;
  for (int i = 0; i < n; ++i)
    if (ud.signs[i] < 0) perm.push_back(i);
  for (int i = 0; i < n; ++i)
    if (ud.signs[i] > 0) perm.push_back(i);
  RatMatrix basis(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) basis(r, c) = ud.basis(r, perm[c]);
  OrthoResult out;
  out.basis = basis;
  out.model = transported_model(m, basis);
  return out;
}

OrthoResult orthonormalize_model(const CurvatureModel& m, const HermitianStructure& h) {
  auto bad = validate_structure(m.form, h);
  if (!bad.empty()) throw std::invalid_argument("orthonormalize: " + bad.front());
  const int n = m.form.dim;
  const int r = n / 2;

  UnitDiag ud = unit_diagonalize(m.form);
  RatMatrix d0 = ud.basis.transposed() * m.form.eps * ud.basis;
  RatMatrix j0 = ud.basis.inverse() * h.j * ud.basis;

  std::vector<std::vector<Rational>> vs, ws;
  std::vector<int> pair_sign;
  auto project = [&](std::vector<Rational> v) {
    for (std::size_t p = 0; p < vs.size(); ++p) {
      for (const auto* u : {&vs[p], &ws[p]}) {
        Rational c = form_dot(d0, v, *u) * form_dot(d0, *u, *u);  // <u,u> = +-1
        if (sgn(c) == 0) continue;
        for (int i = 0; i < n; ++i) v[i] -= c * (*u)[i];
      }
    }
    return v;
  };

  const auto candidates = adapted_candidates(n);
  for (int p = 0; p < r; ++p) {
    bool found = false;
    for (const auto& cand : candidates) {
      std::vector<Rational> v = project(cand);
      if (is_zero_vec(v)) continue;
      Rational nrm = form_dot(d0, v, v);
      if (sgn(nrm) == 0) continue;
      if (h.rho == 1 && sgn(nrm) < 0) {  // para: the +1 vector leads the pair
        v = mat_apply(j0, v);
        nrm = -nrm;
      }
      Rational mag = sgn(nrm) < 0 ? Rational(-nrm) : nrm;
      auto root = exact_sqrt(mag);
      if (!root) continue;
      Rational inv = Rational(1) / *root;
      for (auto& x : v) x *= inv;
      vs.push_back(v);
      ws.push_back(mat_apply(j0, v));
      pair_sign.push_back(sgn(nrm));
      found = true;
      break;
    }
    if (!found)
      throw std::domain_error(
          "orthonormalize: no exact J-adapted orthonormal basis found for this input");
  }

  std::vector<int> order(r);
  for (int i = 0; i < r; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pair_sign[a] < pair_sign[b]; });

  RatMatrix adapt(n, n);
  for (int p = 0; p < r; ++p)
    for (int i = 0; i < n; ++i) {
      adapt(i, p) = vs[order[p]][i];
      adapt(i, p + r) = ws[order[p]][i];
    }

  RatMatrix basis = ud.basis * adapt;
  RatMatrix j_new = basis.inverse() * h.j * basis;
  if (!(j_new == standard_hermitian_j(n, h.rho)))
    throw std::domain_error("orthonormalize: adapted basis does not standardize J");

  OrthoResult out;
  out.basis = basis;
  out.model = transported_model(m, basis);
  out.structure = HermitianStructure{j_new, h.rho};
  return out;
}

OrthoResult orthonormalize_model(const CurvatureModel& m, const HyperStructure& q) {
  auto bad = validate_hyper(m.form, q);
  if (!bad.empty()) throw std::invalid_argument("orthonormalize: " + bad.front());
  const int n = m.form.dim;
  const int blocks = n / 4;

  UnitDiag ud = unit_diagonalize(m.form);
  RatMatrix d0 = ud.basis.transposed() * m.form.eps * ud.basis;
  RatMatrix inv0 = ud.basis.inverse();
  std::array<RatMatrix, 3> j0 = {inv0 * q.j[0] * ud.basis, inv0 * q.j[1] * ud.basis,
                                 inv0 * q.j[2] * ud.basis};

  std::vector<std::array<std::vector<Rational>, 4>> quads;
  std::vector<int> block_sign;
  auto project = [&](std::vector<Rational> v) {
    for (const auto& quad : quads)
      for (const auto& u : quad) {
        Rational c = form_dot(d0, v, u) * form_dot(d0, u, u);
        if (sgn(c) == 0) continue;
        for (int i = 0; i < n; ++i) v[i] -= c * u[i];
      }
    return v;
  };

  const auto candidates = adapted_candidates(n);
  for (int b = 0; b < blocks; ++b) {
    bool found = false;
    for (const auto& cand : candidates) {
      std::vector<Rational> v = project(cand);
      if (is_zero_vec(v)) continue;
      Rational nrm = form_dot(d0, v, v);
      if (sgn(nrm) == 0) continue;
      if (q.kind == HyperKind::hyper_para && sgn(nrm) < 0) {
        v = mat_apply(j0[1], v);  // J2 flips the norm sign in the para case
        nrm = -nrm;
      }
      Rational mag = sgn(nrm) < 0 ? Rational(-nrm) : nrm;
      auto root = exact_sqrt(mag);
      if (!root) continue;
      Rational inv = Rational(1) / *root;
      for (auto& x : v) x *= inv;
      quads.push_back({v, mat_apply(j0[0], v), mat_apply(j0[1], v), mat_apply(j0[2], v)});
      block_sign.push_back(sgn(nrm));
      found = true;
      break;
    }
    if (!found)
      throw std::domain_error(
          "orthonormalize: no exact hyper-adapted orthonormal basis found for this input");
  }

  std::vector<int> order(blocks);
  for (int i = 0; i < blocks; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return block_sign[a] < block_sign[b]; });

  RatMatrix adapt(n, n);
  for (int b = 0; b < blocks; ++b)
    for (int s = 0; s < 4; ++s)
      for (int i = 0; i < n; ++i) adapt(i, 4 * b + s) = quads[order[b]][s][i];

  RatMatrix basis = ud.basis * adapt;
  RatMatrix binv = basis.inverse();
  std::array<RatMatrix, 3> j_std = standard_hyper_triple(n, q.kind);
  std::array<RatMatrix, 3> j_new = {binv * q.j[0] * basis, binv * q.j[1] * basis,
                                    binv * q.j[2] * basis};
  for (int a = 0; a < 3; ++a)
    if (!(j_new[a] == j_std[a]))
      throw std::domain_error("orthonormalize: adapted basis does not standardize the hyper triple");

  OrthoResult out;
  out.basis = basis;
  out.model = transported_model(m, basis);
  out.hyper = HyperStructure{j_new, q.kind};
  return out;
}

RatMatrix standard_hermitian_j(int dim, int rho) {
  if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("standard_hermitian_j: dim must be even");
  if (rho != -1 && rho != 1) throw std::invalid_argument("standard_hermitian_j: rho must be +-1");
  const int r = dim / 2;
  RatMatrix j(dim, dim);
  for (int i = 0; i < r; ++i) {
    j(i + r, i) = 1;
    j(i, i + r) = rho;
  }
  return j;
}

namespace {

RatMatrix block4(std::initializer_list<int> rows) {
  RatMatrix m(4, 4);
  int idx = 0;
  for (int v : rows) {
    m(idx / 4, idx % 4) = v;
    ++idx;
  }
  return m;
}

}  // namespace

std::array<RatMatrix, 3> standard_hyper_triple(int dim, HyperKind kind) {
  if (dim < 4 || dim % 4 != 0)
    throw std::invalid_argument("standard_hyper_triple: dim must be a positive multiple of 4");
  // Left multiplication by i, j, k on the (split-)quaternions in basis 1,i,j,k.
  RatMatrix li = block4({0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0});
  RatMatrix lj, lk;
  if (kind == HyperKind::hyper_pseudo) {
    lj = block4({0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0});
    lk = block4({0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0});
  } else {
    lj = block4({0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0});
    lk = block4({0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0});
  }
  std::array<RatMatrix, 3> out = {RatMatrix(dim, dim), RatMatrix(dim, dim), RatMatrix(dim, dim)};
  for (int b = 0; b < dim / 4; ++b)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        out[0](4 * b + r, 4 * b + c) = li(r, c);
        out[1](4 * b + r, 4 * b + c) = lj(r, c);
        out[2](4 * b + r, 4 * b + c) = lk(r, c);
      }
  return out;
}

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::plain:
      return "plain";
    case ModelKind::hermitian:
      return "hermitian";
    case ModelKind::para:
      return "para";
    case ModelKind::hyper_pseudo:
      return "hyper-pseudo";
    case ModelKind::hyper_para:
      return "hyper-para";
  }
  return "plain";
}

std::optional<ModelKind> model_kind_from_string(const std::string& s) {
  if (s == "plain") return ModelKind::plain;
  if (s == "hermitian") return ModelKind::hermitian;
  if (s == "para") return ModelKind::para;
  if (s == "hyper-pseudo") return ModelKind::hyper_pseudo;
  if (s == "hyper-para") return ModelKind::hyper_para;
  return std::nullopt;
}

namespace {

RatMatrix random_symmetric(Rng& rng, int n) {
  RatMatrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational v = rng.small_rational();
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

CurvTensor bianchi_projected_random(Rng& rng, int n) {
  CurvTensor raw(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) raw.set_entry(i, j, k, l, rng.small_rational(2, 2));
  // Project onto the pair symmetries, then remove the totally antisymmetric part.
  CurvTensor sym(n);
  const Rational eighth = rat(1, 8);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational v = raw.at(i, j, k, l) - raw.at(j, i, k, l) - raw.at(i, j, l, k) +
                       raw.at(j, i, l, k) + raw.at(k, l, i, j) - raw.at(l, k, i, j) -
                       raw.at(k, l, j, i) + raw.at(l, k, j, i);
          sym.set_entry(i, j, k, l, v * eighth);
        }
  CurvTensor out(n);
  const Rational third = rat(1, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational b = (sym.at(i, j, k, l) + sym.at(j, k, i, l) + sym.at(k, i, j, l)) * third;
          out.set_entry(i, j, k, l, sym.at(i, j, k, l) - b);
        }
  return out;
}

CurvTensor random_curvature_tensor(Rng& rng, int n) {
  CurvTensor a(n);
  const int kn_terms = 1 + rng.uniform_int(0, 1);
  for (int t = 0; t < kn_terms; ++t) a += kulkarni_nomizu(random_symmetric(rng, n), random_symmetric(rng, n));
  a += bianchi_projected_random(rng, n);
  return a;
}

void check_kind_signature(int dim, int neg, int pos, ModelKind kind) {
  if (dim < 1 || neg < 0 || pos < 0 || neg + pos != dim)
    throw std::invalid_argument("random_model: signature does not match dimension");
  switch (kind) {
    case ModelKind::plain:
      break;
    case ModelKind::hermitian:
      if (neg % 2 != 0 || pos % 2 != 0)
        throw std::invalid_argument("random_model: hermitian needs even p and q");
      break;
    case ModelKind::para:
      if (neg != pos) throw std::invalid_argument("random_model: para needs p = q");
      break;
    case ModelKind::hyper_pseudo:
      if (neg % 4 != 0 || pos % 4 != 0)
        throw std::invalid_argument("random_model: hyper-pseudo needs p and q divisible by 4");
      break;
    case ModelKind::hyper_para:
      if (neg != pos || dim % 4 != 0)
        throw std::invalid_argument("random_model: hyper-para needs p = q and dim divisible by 4");
      break;
  }
}

BilinearForm adapted_form(int dim, int neg, int pos, ModelKind kind) {
  std::vector<Rational> diag(dim);
  switch (kind) {
    case ModelKind::plain:
      return BilinearForm::standard(neg, pos);
    case ModelKind::hermitian: {
      const int r = dim / 2;
      for (int i = 0; i < r; ++i) diag[i] = (i < neg / 2) ? -1 : 1;
      for (int i = 0; i < r; ++i) diag[i + r] = diag[i];
      break;
    }
    case ModelKind::para: {
      const int r = dim / 2;
      for (int i = 0; i < r; ++i) diag[i] = 1;
      for (int i = r; i < dim; ++i) diag[i] = -1;
      break;
    }
    case ModelKind::hyper_pseudo: {
      for (int b = 0; b < dim / 4; ++b)
        for (int s = 0; s < 4; ++s) diag[4 * b + s] = (b < neg / 4) ? -1 : 1;
      break;
    }
    case ModelKind::hyper_para: {
      for (int b = 0; b < dim / 4; ++b)
        for (int s = 0; s < 4; ++s) diag[4 * b + s] = (s < 2) ? 1 : -1;
      break;
    }
  }
  return BilinearForm::from_matrix(RatMatrix::diagonal(diag));
}

}  // namespace

ModelBundle random_model(int dim, int neg, int pos, std::uint64_t seed, ModelKind kind) {
  check_kind_signature(dim, neg, pos, kind);
  Rng rng(seed);
  ModelBundle out;
  out.kind = kind;
  out.seed = seed;

  BilinearForm form = adapted_form(dim, neg, pos, kind);
  if (kind == ModelKind::plain && dim > 1 && rng.uniform_int(0, 2) != 0) {
    // Scramble by diag(scale) * unit-upper-triangular so an exact orthonormal
    // frame stays recoverable.
    RatMatrix t(dim, dim);
    for (int i = 0; i < dim; ++i) t(i, i) = rng.uniform_int(1, 2);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) t(i, j) = t(i, i) * rng.uniform_int(-1, 1);
    form = BilinearForm::from_matrix(t.transposed() * form.eps * t);
  }
  out.model.form = form;
  out.model.tensor = random_curvature_tensor(rng, dim);

  switch (kind) {
    case ModelKind::plain:
      break;
    case ModelKind::hermitian:
      out.structure = HermitianStructure{standard_hermitian_j(dim, -1), -1};
      break;
    case ModelKind::para:
      out.structure = HermitianStructure{standard_hermitian_j(dim, 1), 1};
      break;
    case ModelKind::hyper_pseudo:
      out.hyper = HyperStructure{standard_hyper_triple(dim, HyperKind::hyper_pseudo),
                                 HyperKind::hyper_pseudo};
      break;
    case ModelKind::hyper_para:
      out.hyper = HyperStructure{standard_hyper_triple(dim, HyperKind::hyper_para),
                                 HyperKind::hyper_para};
      break;
  }
  return out;
}

ModelBundle random_conformally_flat_model(int dim, int neg, int pos, std::uint64_t seed) {
  check_kind_signature(dim, neg, pos, ModelKind::plain);
  Rng rng(seed);
  ModelBundle out;
  out.kind = ModelKind::plain;
  out.seed = seed;
  BilinearForm form = BilinearForm::standard(neg, pos);
  if (dim > 1 && rng.uniform_int(0, 2) != 0) {
    RatMatrix t(dim, dim);
    for (int i = 0; i < dim; ++i) t(i, i) = rng.uniform_int(1, 2);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) t(i, j) = t(i, i) * rng.uniform_int(-1, 1);
    form = BilinearForm::from_matrix(t.transposed() * form.eps * t);
  }
  out.model.form = form;
  out.model.tensor = kulkarni_nomizu(form.eps, random_symmetric(rng, dim));
  return out;
}

}  // namespace curvjet
