#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hybrid {

using Complex = std::complex<double>;
inline constexpr Complex kJ{0.0, 1.0};

/// Qubit identities that may appear in a register.
///
/// Basis ordering used by every module:
///   SignalPol, IdlerPol : H = 0, V = 1
///   IdlerPath           : F = 0, A = 1  (symmetric / antisymmetric slit modes)
/// The slit-transmission basis {+, -} (+ = 0, - = 1) only appears through
/// to_slit_basis(). Within a register the first label is the most
/// significant bit of the amplitude index.
enum class Qubit { SignalPol, IdlerPol, IdlerPath };

namespace basis {
inline constexpr int kH = 0;
inline constexpr int kV = 1;
inline constexpr int kF = 0;
inline constexpr int kA = 1;
inline constexpr int kPlus = 0;
inline constexpr int kMinus = 1;
}  // namespace basis

std::string_view to_string(Qubit q);

/// Pure state of 1 to 3 labelled qubits. Amplitudes need not be normalized;
/// call normalized() where a unit vector is required.
class QubitRegisterState {
 public:
  QubitRegisterState(std::vector<Qubit> labels, Eigen::VectorXcd amps);

  static QubitRegisterState basis_state(Qubit q, int level);

  const std::vector<Qubit>& labels() const { return labels_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  int num_qubits() const { return static_cast<int>(labels_.size()); }

  bool has(Qubit q) const;
  /// Position of q in the label list; throws if absent.
  int position(Qubit q) const;

  /// Flat amplitude index for one basis level per label, in label order.
  std::size_t index(std::span<const int> levels) const;
  Complex amplitude(std::span<const int> levels) const;
  Complex amplitude(std::initializer_list<int> levels) const;

  double norm_squared() const { return amps_.squaredNorm(); }
  QubitRegisterState normalized() const;

 private:
  std::vector<Qubit> labels_;
  Eigen::VectorXcd amps_;
};

/// Density operator on at most two qubits (reduced states only).
/// Construction validates Hermiticity and unit trace to 1e-12 and
/// eigenvalues >= -1e-10.
class DensityOp {
 public:
  DensityOp(std::vector<Qubit> labels, Eigen::MatrixXcd matrix);

  static DensityOp from_pure(const QubitRegisterState& psi);

  const std::vector<Qubit>& labels() const { return labels_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  int num_qubits() const { return static_cast<int>(labels_.size()); }

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;

 private:
  std::vector<Qubit> labels_;
  Eigen::MatrixXcd matrix_;
};

QubitRegisterState tensor(const QubitRegisterState& a, const QubitRegisterState& b);

/// Contract one qubit against the bra <bra| (bra given as ket components,
/// conjugated internally). The result is left unnormalized so its squared
/// norm is the projection probability.
QubitRegisterState project_qubit(const QubitRegisterState& psi, Qubit q,
                                 const Eigen::Vector2cd& ket);

/// Reduced state on `keep` (kept in the register's label order). The input
/// is normalized first. `keep` must be a nonempty proper subset of the labels.
DensityOp partial_trace(const QubitRegisterState& psi, std::span<const Qubit> keep);
DensityOp partial_trace(const DensityOp& rho, std::span<const Qubit> keep);

/// 2|ad - bc| for a normalized two-qubit state with amplitudes (a, b, c, d).
double concurrence_pure(const QubitRegisterState& psi);

double purity(const DensityOp& rho);
double fidelity_pure(const QubitRegisterState& psi, const QubitRegisterState& phi);

/// Re-express a single idler-path operator from the {F, A} mode basis in the
/// {+, -} slit basis.
Eigen::Matrix2cd to_slit_basis(const Eigen::Matrix2cd& rho_mode);

}  // namespace hybrid
