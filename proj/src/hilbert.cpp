#include "hybrid/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hybrid {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenFloor = -1e-10;
constexpr double kNormTol = 1e-10;

void check_labels(const std::vector<Qubit>& labels, int max_qubits) {
  if (labels.empty() || static_cast<int>(labels.size()) > max_qubits) {
    throw std::invalid_argument("register must hold 1.." + std::to_string(max_qubits) +
                                " qubits, got " + std::to_string(labels.size()));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t k = i + 1; k < labels.size(); ++k) {
      if (labels[i] == labels[k]) {
        throw std::invalid_argument("duplicate qubit label " + std::string(to_string(labels[i])));
      }
    }
  }
}

int bit_of(std::size_t index, int pos, int n) { return static_cast<int>((index >> (n - 1 - pos)) & 1U); }

// Positions (in `labels`) of the kept qubits, validated as a nonempty proper subset.
std::vector<int> kept_positions(const std::vector<Qubit>& labels, std::span<const Qubit> keep) {
  if (keep.empty() || keep.size() >= labels.size()) {
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset of the labels");
  }
  std::vector<int> pos;
  for (int p = 0; p < static_cast<int>(labels.size()); ++p) {
    if (std::find(keep.begin(), keep.end(), labels[p]) != keep.end()) pos.push_back(p);
  }
  if (pos.size() != keep.size()) {
    throw std::invalid_argument("partial_trace: keep names a qubit that is absent or repeated");
  }
  return pos;
}

// Splits a full index into (kept index, traced index).
std::pair<std::size_t, std::size_t> split_index(std::size_t idx, int n, const std::vector<int>& kept) {
  std::size_t k = 0;
  std::size_t t = 0;
  for (int p = 0; p < n; ++p) {
    const auto b = static_cast<std::size_t>(bit_of(idx, p, n));
    if (std::find(kept.begin(), kept.end(), p) != kept.end()) {
      k = (k << 1U) | b;
    } else {
      t = (t << 1U) | b;
    }
  }
  return {k, t};
}

}  // namespace

std::string_view to_string(Qubit q) {
  switch (q) {
    case Qubit::SignalPol: return "signal-pol";
    case Qubit::IdlerPol: return "idler-pol";
    case Qubit::IdlerPath: return "idler-path";
  }
  return "?";
}

QubitRegisterState::QubitRegisterState(std::vector<Qubit> labels, Eigen::VectorXcd amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
  check_labels(labels_, 3);
  if (amps_.size() != (Eigen::Index{1} << labels_.size())) {
    throw std::invalid_argument("amplitude vector length must be 2^n");
  }
  if (!amps_.allFinite()) throw std::invalid_argument("amplitudes must be finite");
}

QubitRegisterState QubitRegisterState::basis_state(Qubit q, int level) {
  if (level != 0 && level != 1) throw std::invalid_argument("basis level must be 0 or 1");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
  v(level) = 1.0;
  return {{q}, v};
}

bool QubitRegisterState::has(Qubit q) const {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

int QubitRegisterState::position(Qubit q) const {
  const auto it = std::find(labels_.begin(), labels_.end(), q);
  if (it == labels_.end()) {
    throw std::invalid_argument("register has no qubit " + std::string(to_string(q)));
  }
  return static_cast<int>(it - labels_.begin());
}

std::size_t QubitRegisterState::index(std::span<const int> levels) const {
  if (levels.size() != labels_.size()) throw std::invalid_argument("one level per qubit required");
  std::size_t idx = 0;
  for (int l : levels) {
    if (l != 0 && l != 1) throw std::invalid_argument("basis level must be 0 or 1");
    idx = (idx << 1U) | static_cast<std::size_t>(l);
  }
  return idx;
}

Complex QubitRegisterState::amplitude(std::span<const int> levels) const {
  return amps_(static_cast<Eigen::Index>(index(levels)));
}

Complex QubitRegisterState::amplitude(std::initializer_list<int> levels) const {
  return amplitude(std::span<const int>(levels.begin(), levels.size()));
}

QubitRegisterState QubitRegisterState::normalized() const {
  const double n = amps_.norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero-norm state");
  return {labels_, amps_ / n};
}

DensityOp::DensityOp(std::vector<Qubit> labels, Eigen::MatrixXcd matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
  check_labels(labels_, 2);
  const Eigen::Index dim = Eigen::Index{1} << labels_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
  if (!matrix_.allFinite()) throw std::invalid_argument("density matrix must be finite");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex{1.0}) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (eigenvalues().minCoeff() < kEigenFloor) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityOp DensityOp::from_pure(const QubitRegisterState& psi) {
  const auto unit = psi.normalized();
  return {unit.labels(), unit.amps() * unit.amps().adjoint()};
}

Eigen::VectorXd DensityOp::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

QubitRegisterState tensor(const QubitRegisterState& a, const QubitRegisterState& b) {
  std::vector<Qubit> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels, 3);
  const auto& x = a.amps();
  const auto& y = b.amps();
  Eigen::VectorXcd out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.segment(i * y.size(), y.size()) = x(i) * y;
  }
  return {std::move(labels), std::move(out)};
}

QubitRegisterState project_qubit(const QubitRegisterState& psi, Qubit q, const Eigen::Vector2cd& ket) {
  const int n = psi.num_qubits();
  if (n < 2) throw std::invalid_argument("project_qubit needs at least two qubits");
  const int pos = psi.position(q);
  std::vector<Qubit> labels;
  for (Qubit l : psi.labels()) {
    if (l != q) labels.push_back(l);
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << (n - 1));
  for (Eigen::Index idx = 0; idx < psi.amps().size(); ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const int level = bit_of(u, pos, n);
    // Drop bit `pos` from the index.
    const int low_bits = n - 1 - pos;
    const std::size_t high = u >> (low_bits + 1);
    const std::size_t low = u & ((std::size_t{1} << low_bits) - 1);
    const auto reduced = static_cast<Eigen::Index>((high << low_bits) | low);
    out(reduced) += std::conj(ket(level)) * psi.amps()(idx);
  }
  return {std::move(labels), std::move(out)};
}

DensityOp partial_trace(const QubitRegisterState& psi, std::span<const Qubit> keep) {
  const auto unit = psi.normalized();
  const int n = unit.num_qubits();
  const auto kept = kept_positions(unit.labels(), keep);
  const Eigen::Index dim = Eigen::Index{1} << kept.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const auto size = static_cast<std::size_t>(unit.amps().size());
  for (std::size_t i = 0; i < size; ++i) {
    const auto [ki, ti] = split_index(i, n, kept);
    for (std::size_t j = 0; j < size; ++j) {
      const auto [kj, tj] = split_index(j, n, kept);
      if (ti != tj) continue;
      rho(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kj)) +=
          unit.amps()(static_cast<Eigen::Index>(i)) * std::conj(unit.amps()(static_cast<Eigen::Index>(j)));
    }
  }
  std::vector<Qubit> labels;
  for (int p : kept) labels.push_back(unit.labels()[p]);
  // Hermitize away rounding so the validated invariants hold exactly.
  Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  return {std::move(labels), herm};
}

DensityOp partial_trace(const DensityOp& rho, std::span<const Qubit> keep) {
  const int n = rho.num_qubits();
  const auto kept = kept_positions(rho.labels(), keep);
  const Eigen::Index dim = Eigen::Index{1} << kept.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const auto size = static_cast<std::size_t>(rho.matrix().rows());
  for (std::size_t i = 0; i < size; ++i) {
    const auto [ki, ti] = split_index(i, n, kept);
    for (std::size_t j = 0; j < size; ++j) {
      const auto [kj, tj] = split_index(j, n, kept);
      if (ti != tj) continue;
      out(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kj)) +=
          rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  std::vector<Qubit> labels;
  for (int p : kept) labels.push_back(rho.labels()[p]);
  return {std::move(labels), out};
}

double concurrence_pure(const QubitRegisterState& psi) {
  if (psi.num_qubits() != 2) throw std::invalid_argument("concurrence_pure needs a two-qubit state");
  if (std::abs(psi.norm_squared() - 1.0) > kNormTol) {
    throw std::invalid_argument("concurrence_pure needs a normalized state");
  }
  const auto& v = psi.amps();
  return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

double purity(const DensityOp& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double fidelity_pure(const QubitRegisterState& psi, const QubitRegisterState& phi) {
  if (psi.labels() != phi.labels()) throw std::invalid_argument("fidelity_pure: label lists differ");
  if (std::abs(psi.norm_squared() - 1.0) > kNormTol || std::abs(phi.norm_squared() - 1.0) > kNormTol) {
    throw std::invalid_argument("fidelity_pure needs normalized states");
  }
  return std::norm(psi.amps().dot(phi.amps()));
}

Eigen::Matrix2cd to_slit_basis(const Eigen::Matrix2cd& rho_mode) {
  // Columns are |F> and |A> written in the {+, -} basis.
  Eigen::Matrix2cd u;
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  return u * rho_mode * u.adjoint();
}

}  // namespace hybrid
