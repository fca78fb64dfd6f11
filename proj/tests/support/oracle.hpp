// Copyright 2026 The Refocus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REFOCUS_TESTS_SUPPORT_ORACLE_HPP_
#define REFOCUS_TESTS_SUPPORT_ORACLE_HPP_

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <utility>

#include "refocus/statevector.hpp"

// Independent dense-matrix model used as ground truth in tests: Kronecker
// products of Pauli matrices and general matrix exponentials, no shared code
// with the simulator's in-place kernels.
namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using C = std::complex<double>;

inline Mat pauli(refocus::PauliAxis axis) {
  Mat m(2, 2);
  switch (axis) {
    case refocus::PauliAxis::X: m << 0, 1, 1, 0; break;
    case refocus::PauliAxis::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case refocus::PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Tensor product of single-qubit factors; qubit 0 is the leftmost factor.
inline Mat pauli_string(int nq, std::initializer_list<std::pair<int, refocus::PauliAxis>> ops) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < nq; ++q) {
    Mat factor = Mat::Identity(2, 2);
    for (const auto& [qubit, axis] : ops) {
      if (qubit == q) factor = pauli(axis) * factor;
    }
    out = kron(out, factor);
  }
  return out;
}

inline Mat identity(int nq) { return Mat::Identity(1 << nq, 1 << nq); }

/// exp(-i t H).
inline Mat expm(const Mat& h, double t) { return (Mat(C(0, -t) * h)).exp(); }

inline Mat rotation(int nq, int q, refocus::PauliAxis axis, double angle) {
  return expm(pauli_string(nq, {{q, axis}}), angle);
}

inline Mat ms(int nq, int q1, int q2, double eps) {
  using refocus::PauliAxis;
  return expm(pauli_string(nq, {{q1, PauliAxis::X}, {q2, PauliAxis::X}}),
              std::numbers::pi / 4 + eps);
}

inline Mat cnot(int nq, int c, int t) {
  using refocus::PauliAxis;
  const Mat zc = pauli_string(nq, {{c, PauliAxis::Z}});
  const Mat xt = pauli_string(nq, {{t, PauliAxis::X}});
  const Mat id = identity(nq);
  return 0.5 * (id + zc) + 0.5 * (id - zc) * xt;
}

inline Vec to_eigen(const refocus::Statevector& s) {
  Vec v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

inline refocus::Statevector from_eigen(const Vec& v) {
  const int nq = static_cast<int>(std::lround(std::log2(static_cast<double>(v.size()))));
  refocus::Statevector s(nq);
  for (Eigen::Index i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(i)] = v(i);
  return s;
}

/// min over phi of the Frobenius distance between a and exp(i phi) b.
inline double distance_up_to_phase(const Mat& a, const Mat& b) {
  const C inner = (b.adjoint() * a).trace();
  const C phase = std::abs(inner) > 0 ? inner / std::abs(inner) : C(1);
  return (a - phase * b).norm();
}

inline double distance_up_to_phase(const Vec& a, const Vec& b) {
  const C inner = b.dot(a);
  const C phase = std::abs(inner) > 0 ? inner / std::abs(inner) : C(1);
  return (a - phase * b).norm();
}

/// Matrix of a state map, column j = image of basis state j.
template <typename F>
Mat matrix_of(int nq, F&& apply) {
  const int dim = 1 << nq;
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    refocus::Statevector s(nq);
    s[0] = 0.0;
    s[static_cast<std::size_t>(j)] = 1.0;
    m.col(j) = to_eigen(apply(s));
  }
  return m;
}

}  // namespace oracle

#endif  // REFOCUS_TESTS_SUPPORT_ORACLE_HPP_
