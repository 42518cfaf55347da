#pragma once

// Brute-force reference computations for the test suites: literal index
// summations straight from the defining formulas, with no factoring or reuse
// of library contractions. These were written before the engine and stay
// independent of it.

#include <array>

#include "curvjet/tensor_core.hpp"

namespace curvjet::testing {

inline RatMatrix oracle_ricci(const CurvatureModel& m) {
  const int n = m.form.dim;
  RatMatrix rho(n, n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      Rational acc(0);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) acc += m.form.eps_inv(j, k) * m.tensor.at(i, j, k, l);
      rho(i, l) = acc;
    }
  return rho;
}

inline Rational oracle_scalar(const CurvatureModel& m) {
  const int n = m.form.dim;
  Rational acc(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += m.form.eps_inv(i, l) * m.form.eps_inv(j, k) * m.tensor.at(i, j, k, l);
  return acc;
}

// tau* summed over all index tuples, expanding A(e_i, e_j, J e_k, J e_l) inline.
inline Rational oracle_star_scalar(const CurvatureModel& m, const RatMatrix& j, int rho) {
  const int n = m.form.dim;
  Rational acc(0);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational a_twisted(0);
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) a_twisted += j(p, k) * j(q, l) * m.tensor.at(i, jj, p, q);
          acc += m.form.eps_inv(i, l) * m.form.eps_inv(jj, k) * a_twisted;
        }
  return acc * Rational(-rho);
}

// A_{ijkl} = eps_il eps_jk - eps_ik eps_jl (constant sectional curvature one).
inline CurvTensor constant_curvature_tensor(const BilinearForm& form) {
  const int n = form.dim;
  CurvTensor a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          a.set_entry(i, j, k, l, form.eps(i, l) * form.eps(j, k) - form.eps(i, k) * form.eps(j, l));
  return a;
}

}  // namespace curvjet::testing
