#pragma once

// Pinching, Bohr-spectrum analysis and the structure of time-translation
// covariant channels.
//
// Energy tolerances are relative: two energies (or differences) are equal
// when they lie within tol * (1 + max level).

#include <functional>
#include <utility>
#include <vector>

#include "athermal/states.hpp"
#include "athermal/types.hpp"

namespace athermal {

inline constexpr double kEnergyRelTol = 1e-9;

struct EnergyBlock {
  double energy;
  std::vector<std::size_t> indices;
};

/// Eigenspaces of h, grouped as connected components of the tolerance
/// relation, ordered by energy.
std::vector<EnergyBlock> energy_blocks(const HamiltonianSpec& h, double tol = kEnergyRelTol);

ComplexMatrix pinch(const ComplexMatrix& m, const HamiltonianSpec& h, double tol = kEnergyRelTol);
DensityMatrix pinch(const DensityMatrix& rho, const HamiltonianSpec& h, double tol = kEnergyRelTol);

/// Energy-class weights of P_n(psi^{(x)n}) for a pure single-copy psi.
/// Throws Error(NotProductPure) for a mixed input.
std::vector<EnergyClass> pinch_n(const DensityMatrix& psi, int n, const HamiltonianSpec& h);

struct BohrReport {
  using Pair = std::pair<std::size_t, std::size_t>;
  bool non_degenerate_spectrum = true;
  bool non_degenerate_bohr = true;
  /// Level pairs whose differences coincide. A degenerate level pair (x, y)
  /// is reported against the trivial difference (x, x).
  std::vector<std::pair<Pair, Pair>> colliding_pairs;
};

BohrReport bohr_analysis(const HamiltonianSpec& h, double tol = kEnergyRelTol);

bool relatively_nondegenerate(const HamiltonianSpec& ha, const HamiltonianSpec& hb,
                              double tol = kEnergyRelTol);

/// Choi entries c_{xy,x'y'} allowed by covariance: a_x - b_y = a_x' - b_y'.
/// Row/column index of (x, y) is x * m_B + y.
class ChoiMask {
 public:
  ChoiMask(std::size_t ma, std::size_t mb) : ma_(ma), mb_(mb), allowed_(ma * mb * ma * mb, 0) {}

  std::size_t dim_a() const noexcept { return ma_; }
  std::size_t dim_b() const noexcept { return mb_; }
  std::size_t dim() const noexcept { return ma_ * mb_; }
  bool allowed(std::size_t row, std::size_t col) const { return allowed_[row * dim() + col] != 0; }
  bool operator()(std::size_t x, std::size_t y, std::size_t xp, std::size_t yp) const {
    return allowed(x * mb_ + y, xp * mb_ + yp);
  }
  void set(std::size_t row, std::size_t col, bool v) { allowed_[row * dim() + col] = v ? 1 : 0; }
  /// Only entries with x = x' and y = y'.
  bool is_classical() const;
  bool all_allowed() const;

 private:
  std::size_t ma_, mb_;
  std::vector<char> allowed_;
};

ChoiMask covariant_choi_pattern(const HamiltonianSpec& ha, const HamiltonianSpec& hb,
                                double tol = kEnergyRelTol);

/// J = sum_{x,x'} |x><x'| (x) E(|x><x'|). Construction validates PSD and
/// Tr_B J = I_A within tol; throws Error(InvalidChoi) otherwise.
class ChoiMatrix {
 public:
  ChoiMatrix(ComplexMatrix j, std::size_t ma, std::size_t mb, double tol = 1e-9);

  const ComplexMatrix& matrix() const noexcept { return j_; }
  std::size_t dim_a() const noexcept { return ma_; }
  std::size_t dim_b() const noexcept { return mb_; }

 private:
  ComplexMatrix j_;
  std::size_t ma_, mb_;
};

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

ChoiMatrix choi_of(const LinearMap& channel, std::size_t ma, std::size_t mb);

/// E(rho) = Tr_A[J (rho^T (x) I)].
ComplexMatrix apply_channel(const ChoiMatrix& j, const ComplexMatrix& rho);

/// Largest |J| entry outside the covariant pattern.
double covariance_violation(const ChoiMatrix& j, const HamiltonianSpec& ha, const HamiltonianSpec& hb,
                            double energy_tol = kEnergyRelTol);

bool is_covariant(const ChoiMatrix& j, const HamiltonianSpec& ha, const HamiltonianSpec& hb,
                  double tol = 1e-9, double energy_tol = kEnergyRelTol);

/// Spectrum of pinch(rho) in a basis that also diagonalises the Gibbs state:
/// per energy block, eigenvalues of the block paired with the block's Gibbs
/// weight. Returns (p, g) as equal-length vectors.
std::pair<ProbVector, ProbVector> joint_classical_spectrum(const DensityMatrix& rho,
                                                           const HamiltonianSpec& h,
                                                           const ProbVector& gibbs);

/// pinch(rho) == rho within tol (entrywise).
bool is_quasi_classical(const DensityMatrix& rho, const HamiltonianSpec& h, double tol = 1e-9);

}  // namespace athermal
