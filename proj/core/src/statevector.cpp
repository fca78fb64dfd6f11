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

#include "refocus/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "refocus/rng.hpp"

namespace refocus {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_num_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("number of qubits must be in [1, 4], got " +
                                std::to_string(num_qubits));
  }
}

}  // namespace

char axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return 'X';
    case PauliAxis::Y:
      return 'Y';
    case PauliAxis::Z:
      return 'Z';
  }
  return '?';
}

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  check_num_qubits(num_qubits);
  amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::span<const Complex> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || n > kMaxDim || !std::has_single_bit(n)) {
    throw std::invalid_argument("amplitude count must be 2, 4, 8 or 16, got " +
                                std::to_string(n));
  }
  Statevector s(std::countr_zero(n));
  for (std::size_t i = 0; i < n; ++i) s.amps_[i] = amplitudes[i];
  return s;
}

double Statevector::norm_squared() const {
  double total = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) total += std::norm(amps_[i]);
  return total;
}

Statevector Statevector::normalized() const {
  const double n2 = norm_squared();
  if (n2 == 0.0) throw std::domain_error("cannot normalize the zero vector");
  Statevector out = *this;
  out.scale(1.0 / std::sqrt(n2));
  return out;
}

void Statevector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range for a " +
                            std::to_string(num_qubits_) + "-qubit state");
  }
}

void Statevector::rotate(int qubit, PauliAxis axis, double angle) {
  check_qubit(qubit);
  const std::size_t m = mask(qubit);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i & m) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | m];
    switch (axis) {
      case PauliAxis::X:
        // [[c, -is], [-is, c]]
        amps_[i] = c * a0 - kI * s * a1;
        amps_[i | m] = c * a1 - kI * s * a0;
        break;
      case PauliAxis::Y:
        // [[c, -s], [s, c]]
        amps_[i] = c * a0 - s * a1;
        amps_[i | m] = s * a0 + c * a1;
        break;
      case PauliAxis::Z:
        amps_[i] = Complex(c, -s) * a0;
        amps_[i | m] = Complex(c, s) * a1;
        break;
    }
  }
}

void Statevector::rotate_xx(int q1, int q2, double angle) {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  const std::size_t flip = mask(q1) | mask(q2);
  const Complex c = std::cos(angle);
  const Complex mis = -kI * std::sin(angle);
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::size_t j = i ^ flip;
    if (j < i) continue;
    const Complex ai = amps_[i];
    const Complex aj = amps_[j];
    amps_[i] = c * ai + mis * aj;
    amps_[j] = c * aj + mis * ai;
  }
}

void Statevector::ms(int q1, int q2, double epsilon) {
  rotate_xx(q1, q2, std::numbers::pi / 4 + epsilon);
}

void Statevector::pauli(int qubit, PauliAxis axis) {
  check_qubit(qubit);
  const std::size_t m = mask(qubit);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i & m) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | m];
    switch (axis) {
      case PauliAxis::X:
        amps_[i] = a1;
        amps_[i | m] = a0;
        break;
      case PauliAxis::Y:
        amps_[i] = -kI * a1;
        amps_[i | m] = kI * a0;
        break;
      case PauliAxis::Z:
        amps_[i | m] = -a1;
        break;
    }
  }
}

void Statevector::project_z(int qubit, int bit) {
  check_qubit(qubit);
  const std::size_t m = mask(qubit);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (((i & m) != 0) != (bit != 0)) amps_[i] = 0.0;
  }
}

void Statevector::scale(Complex factor) {
  for (std::size_t i = 0; i < dim(); ++i) amps_[i] *= factor;
}

Statevector basis_state(int num_qubits, std::string_view bits) {
  check_num_qubits(num_qubits);
  if (bits.size() != static_cast<std::size_t>(num_qubits)) {
    throw std::invalid_argument("bitstring length must equal the number of qubits");
  }
  std::size_t index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
    index = (index << 1) | static_cast<std::size_t>(b == '1');
  }
  Statevector s(num_qubits);
  s[0] = 0.0;
  s[index] = 1.0;
  return s;
}

Statevector apply_single_rotation(Statevector s, int qubit, PauliAxis axis, double angle) {
  s.rotate(qubit, axis, angle);
  return s;
}

Statevector apply_ms(Statevector s, int q1, int q2, double epsilon) {
  s.ms(q1, q2, epsilon);
  return s;
}

Statevector apply_pauli(Statevector s, int qubit, PauliAxis axis) {
  s.pauli(qubit, axis);
  return s;
}

ZBranches branch_z(const Statevector& s, int qubit) {
  ZBranches out{s, s};
  out.zero.project_z(qubit, 0);
  out.one.project_z(qubit, 1);
  return out;
}

ZSample sample_measure_z(const Statevector& s, int qubit, Rng& rng) {
  ZBranches b = branch_z(s, qubit);
  const double p0 = b.zero.norm_squared();
  const double p1 = b.one.norm_squared();
  const int outcome = rng.uniform() * (p0 + p1) < p0 ? 0 : 1;
  Statevector& chosen = outcome == 0 ? b.zero : b.one;
  const double p = outcome == 0 ? p0 : p1;
  if (p <= 0.0) throw std::logic_error("sampled a zero-probability measurement branch");
  chosen.scale(1.0 / std::sqrt(p));
  return {outcome, chosen, p / (p0 + p1)};
}

Statevector haar_random_state(int num_qubits, Rng& rng) {
  Statevector s(num_qubits);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    // Box-Muller.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    s[i] = Complex(r * std::cos(phi), r * std::sin(phi));
  }
  return s.normalized();
}

Complex overlap(const Statevector& s1, const Statevector& s2) {
  if (s1.num_qubits() != s2.num_qubits()) {
    throw std::invalid_argument("overlap of states with different qubit counts");
  }
  Complex total = 0.0;
  for (std::size_t i = 0; i < s1.dim(); ++i) total += std::conj(s1[i]) * s2[i];
  return total;
}

Statevector tensor(const Statevector& a, const Statevector& b) {
  check_num_qubits(a.num_qubits() + b.num_qubits());
  Statevector out(a.num_qubits() + b.num_qubits());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  }
  return out;
}

Statevector extract_branch(const Statevector& s, int qubit, int bit) {
  if (qubit < 0 || qubit >= s.num_qubits()) throw std::out_of_range("qubit out of range");
  if (s.num_qubits() < 2) throw std::invalid_argument("cannot drop the only qubit");
  const int low_bits = s.num_qubits() - 1 - qubit;
  Statevector out(s.num_qubits() - 1);
  for (std::size_t k = 0; k < out.dim(); ++k) {
    const std::size_t high = k >> low_bits;
    const std::size_t low = k & ((std::size_t{1} << low_bits) - 1);
    const std::size_t full = (((high << 1) | static_cast<std::size_t>(bit != 0)) << low_bits) | low;
    out[k] = s[full];
  }
  return out;
}

std::string to_string(const Statevector& s) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (std::abs(s[i]) < 1e-12) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << s[i].real() << (s[i].imag() < 0 ? "-" : "+") << std::abs(s[i].imag()) << "i)|";
    for (int q = 0; q < s.num_qubits(); ++q) os << ((i >> (s.num_qubits() - 1 - q)) & 1);
    os << '>';
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace refocus
