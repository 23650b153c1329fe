#pragma once

// Brute-force reference computations for the tests.  None of these go
// through an SVD or eigensolver: extremes are found by sampling the unit
// sphere and refining the best samples by random local search, and
// projections use classical Gram-Schmidt.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "seqforms/core.hpp"

namespace seqforms::oracle {

using Rng = std::mt19937_64;

inline Vector random_vector(Rng& rng, Index dim) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

inline Vector random_unit(Rng& rng, Index dim) {
  Vector v = random_vector(rng, dim);
  return v / v.norm();
}

inline Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) m.col(j) = random_vector(rng, rows);
  return m;
}

// sum_n |<f, x_n>|^2 by explicit loops.
inline double analysis_energy(const Matrix& x, const Vector& f) {
  double s = 0.0;
  for (Index n = 0; n < x.cols(); ++n) {
    Complex c = 0.0;
    for (Index i = 0; i < x.rows(); ++i) c += f(i) * std::conj(x(i, n));
    s += std::norm(c);
  }
  return s;
}

// Sampled minimum (sign = +1) or maximum (sign = -1) of q over the unit sphere,
// followed by random local search from the best few samples.
inline double sphere_extreme(const std::function<double(const Vector&)>& q, Index dim, int samples, double sign,
                             Rng& rng) {
  std::vector<std::pair<double, Vector>> best;
  for (int s = 0; s < samples; ++s) {
    Vector v = random_unit(rng, dim);
    const double val = sign * q(v);
    best.emplace_back(val, std::move(v));
    if (best.size() > 64) {
      std::nth_element(best.begin(), best.begin() + 8, best.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      best.resize(8);
    }
  }
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  best.resize(std::min<std::size_t>(best.size(), 4));
  double result = best.front().first;
  for (auto& [val, v] : best) {
    double step = 0.1;
    while (step > 1e-9) {
      bool improved = false;
      for (int t = 0; t < 40; ++t) {
        Vector w = v + step * random_vector(rng, dim);
        w /= w.norm();
        const double wv = sign * q(w);
        if (wv < val) {
          val = wv;
          v = w;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    result = std::min(result, val);
  }
  return sign * result;
}

struct SampledBounds {
  double lower;
  double upper;
};

inline SampledBounds sampled_frame_bounds(const Matrix& x, int samples, Rng& rng) {
  const auto q = [&](const Vector& f) { return analysis_energy(x, f); };
  return {sphere_extreme(q, x.rows(), samples, +1.0, rng), sphere_extreme(q, x.rows(), samples, -1.0, rng)};
}

// Orthonormal basis of the column space by modified Gram-Schmidt; columns
// whose residual falls below cutoff * (largest column norm) are dropped.
inline Matrix gram_schmidt(const Matrix& m, double cutoff = 1e-10) {
  double scale = 0.0;
  for (Index j = 0; j < m.cols(); ++j) scale = std::max(scale, m.col(j).norm());
  std::vector<Vector> q;
  for (Index j = 0; j < m.cols(); ++j) {
    Vector v = m.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) v -= u.dot(v) * u;
    }
    if (v.norm() > cutoff * scale) q.push_back(v / v.norm());
  }
  Matrix out(m.rows(), static_cast<Index>(q.size()));
  for (std::size_t k = 0; k < q.size(); ++k) out.col(static_cast<Index>(k)) = q[k];
  return out;
}

// inf over f with C_xi f != 0 of sup over g of |<C_xi f, C_eta g>| / (|C_xi f| |C_eta g|).
// The inner sup is the length of the projection onto R(C_eta).
inline double sampled_infsup(const Matrix& c_xi, const Matrix& c_eta, int samples, Rng& rng) {
  const Matrix q_eta = gram_schmidt(c_eta);
  const auto ratio = [&](const Vector& f) {
    const Vector u = c_xi * f;
    const double nu = u.norm();
    if (nu == 0.0) return 1.0;
    return (q_eta.adjoint() * u).norm() / nu;
  };
  return sphere_extreme(ratio, c_xi.cols(), samples, +1.0, rng);
}

// U + W fills the space with trivial intersection: checked by Gram-Schmidt
// on the stacked spanning sets (rank count) and the dimension count.
inline bool direct_sum_holds(const Matrix& u, const Matrix& w, double cutoff = 1e-8) {
  const Index n = u.rows();
  const Index du = gram_schmidt(u, cutoff).cols();
  const Index dw = gram_schmidt(w, cutoff).cols();
  if (du + dw != n) return false;
  Matrix stacked(n, u.cols() + w.cols());
  stacked.leftCols(u.cols()) = u;
  stacked.rightCols(w.cols()) = w;
  return gram_schmidt(stacked, cutoff).cols() == n;
}

}  // namespace seqforms::oracle
