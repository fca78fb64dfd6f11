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

#ifndef REFOCUS_STATEVECTOR_HPP_
#define REFOCUS_STATEVECTOR_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace refocus {

class Rng;

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 4;
inline constexpr std::size_t kMaxDim = std::size_t{1} << kMaxQubits;

enum class PauliAxis { X, Y, Z };

char axis_name(PauliAxis axis);

/// Dense state of up to four qubits.
///
/// Qubit 0 is the leftmost symbol of a ket, i.e. the most significant bit of
/// the amplitude index: |q0 q1 q2> lives at index q0*4 + q1*2 + q2 for three
/// qubits. All protocol code addresses qubits through role assignments, never
/// through raw positions.
///
/// Amplitudes live in a fixed-capacity inline buffer so copies never touch
/// the heap; the trajectory enumerators copy states at every branch point.
class Statevector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit Statevector(int num_qubits);

  /// Builds a state from 2^k amplitudes listed in index order. The state is
  /// taken as-is (no normalization).
  static Statevector from_amplitudes(std::span<const Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }

  std::span<const Complex> amplitudes() const { return {amps_.data(), dim()}; }
  std::span<Complex> mutable_amplitudes() { return {amps_.data(), dim()}; }
  Complex operator[](std::size_t index) const { return amps_[index]; }
  Complex& operator[](std::size_t index) { return amps_[index]; }

  double norm_squared() const;
  Statevector normalized() const;

  // In-place gate application. Each of these is unitary.

  /// exp(-i * angle * sigma_axis) on `qubit`.
  void rotate(int qubit, PauliAxis axis, double angle);
  /// exp(-i * (pi/4 + epsilon) * X(q1) X(q2)), the Molmer-Sorensen gate with
  /// amplitude error `epsilon`.
  void ms(int q1, int q2, double epsilon);
  /// Two-body rotation exp(-i * angle * X(q1) X(q2)).
  void rotate_xx(int q1, int q2, double angle);
  void pauli(int qubit, PauliAxis axis);

  /// Zeroes every amplitude whose `qubit` bit differs from `bit`.
  void project_z(int qubit, int bit);
  void scale(Complex factor);

  bool operator==(const Statevector&) const = default;

 private:
  void check_qubit(int qubit) const;
  std::size_t mask(int qubit) const { return std::size_t{1} << (num_qubits_ - 1 - qubit); }

  int num_qubits_;
  std::array<Complex, kMaxDim> amps_{};
};

/// Computational basis state; `bits[k]` is the value of qubit k.
Statevector basis_state(int num_qubits, std::string_view bits);

Statevector apply_single_rotation(Statevector s, int qubit, PauliAxis axis, double angle);
Statevector apply_ms(Statevector s, int q1, int q2, double epsilon);
Statevector apply_pauli(Statevector s, int qubit, PauliAxis axis);

struct ZBranches {
  Statevector zero;
  Statevector one;
};

/// Both unnormalized projections of a Z measurement of `qubit`.
ZBranches branch_z(const Statevector& s, int qubit);

struct ZSample {
  int outcome;
  Statevector collapsed;  // normalized
  double probability;
};

/// Born-rule sample of a Z measurement. `s` must be normalized.
ZSample sample_measure_z(const Statevector& s, int qubit, Rng& rng);

/// Haar-random pure state (normalized complex Gaussian vector).
Statevector haar_random_state(int num_qubits, Rng& rng);

/// <s1|s2>.
Complex overlap(const Statevector& s1, const Statevector& s2);

/// Kronecker product |a>|b>; `a` supplies the leading qubits.
Statevector tensor(const Statevector& a, const Statevector& b);

/// Drops `qubit`, keeping the amplitudes where it equals `bit`.
Statevector extract_branch(const Statevector& s, int qubit, int bit);

std::string to_string(const Statevector& s);

}  // namespace refocus

#endif  // REFOCUS_STATEVECTOR_HPP_
