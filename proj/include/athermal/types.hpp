#pragma once

// Method-of-types machinery for i.i.d. pure product states psi^{(x)n} with
// |psi> = sum_x sqrt(p_x)|x>. All weights live in the log2 domain so that
// n in the tens of thousands does not underflow.

#include <cstdint>
#include <functional>
#include <vector>

#include "athermal/states.hpp"

namespace athermal {

/// Occupation counts of a sequence in [m]^n.
class TypeVector {
 public:
  explicit TypeVector(std::vector<int> counts);

  std::span<const int> counts() const noexcept { return counts_; }
  int count(std::size_t x) const { return counts_[x]; }
  int n() const noexcept { return n_; }
  std::size_t m() const noexcept { return counts_.size(); }
  std::vector<double> probabilities() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
  friend auto operator<=>(const TypeVector& a, const TypeVector& b) { return a.counts_ <=> b.counts_; }

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

inline constexpr double kMaxTypeCount = 1e7;

/// Number of types C(n+m-1, m-1), as a double.
double type_count(int n, int m);

/// Calls visit for every type in lexicographic order without materialising
/// the list. Throws Error(TooLarge) past kMaxTypeCount types.
void for_each_type(int n, int m, const std::function<void(const TypeVector&)>& visit);

std::vector<TypeVector> enumerate_types(int n, int m);

/// log2 of n! / prod_x (n t_x)!.
double multinomial_log(const TypeVector& t);

/// log2 r_{t,n}: total probability of the sequences of type t under p^n.
/// -inf when t puts mass outside supp p.
double type_weight_log(const TypeVector& t, const ProbVector& p);

/// Total energy sum_x count_x * a_x of the type's eigenspace.
double type_energy(const TypeVector& t, const HamiltonianSpec& h);

/// 1/2 ||t - p||_1.
double type_distance(const TypeVector& t, const ProbVector& p);

/// Types within total-variation distance eps of p.
std::vector<TypeVector> typical_set(int n, double eps, const ProbVector& p);

struct TailMass {
  double tail;   // exact mass of the complement of the typical set
  double bound;  // 2^{-2 n eps^2} (n+1)^m
};

TailMass tail_mass_and_bound(int n, double eps, const ProbVector& p);

struct TypedEntry {
  TypeVector type;
  double log_weight;  // log2 of the (possibly renormalised) weight
  double energy;
};

struct TypedSpectrum {
  int n = 0;
  std::vector<TypedEntry> entries;
  /// log2 of the total weight of the entries before any renormalisation.
  double log_mass = 0.0;
};

/// All types with their weights r_{t,n} and energies.
TypedSpectrum typed_spectrum(int n, const ProbVector& p, const HamiltonianSpec& h);

/// Truncation of psi^{(x)n} to the types within eps_n = n^{alpha-1} of p,
/// renormalised.
struct ChiState {
  TypedSpectrum spectrum;  // renormalised weights
  double eps = 0.0;        // n^{alpha - 1}
  double retained_mass = 0.0;
  double tail = 0.0;
  double energy_spread = 0.0;
  double spread_bound = 0.0;      // 4 n^alpha sum_x a_x
  double trace_distance = 0.0;    // 1/2 ||psi^n - chi_n||_1 = sqrt(tail)
};

ChiState chi_state(int n, double alpha, const ProbVector& p, const HamiltonianSpec& h);

struct SlarSpec {
  int n = 0;
  double alpha = 0.0;
  std::vector<double> levels;          // ascending, levels.front() == 0
  std::vector<TypeVector> level_types; // type behind each level
  ProbVector phi_weights{std::vector<double>{1.0}};
  TypeVector z_type{std::vector<int>{0}};
  double c_bound = 0.0;        // c with ||H^R|| <= c n^alpha, c = 4 sum_x a_x
  double tight_bound = 0.0;    // 2 n^alpha sum_x a_x, diagnostic only
  bool bound_holds = false;
  bool min_energy_tie = false;
};

SlarSpec slar_reference(int n, double alpha, const ProbVector& p, const HamiltonianSpec& h);

/// Energy histogram (energy -> total weight) of phi (x) |z^n> and of
/// |1> (x) chi_n; equal as multisets by construction of the reference.
struct EnergyHistograms {
  std::vector<std::pair<double, double>> reference_with_z;
  std::vector<std::pair<double, double>> ground_with_chi;
};
EnergyHistograms slar_energy_histograms(const SlarSpec& spec, const ChiState& chi,
                                        const HamiltonianSpec& h);

struct SlarBudget {
  double dmax_bound;  // beta * max lambda
  double limit;       // beta * c * n^alpha
};

SlarBudget slar_budget(const SlarSpec& spec, double beta);

/// Type in the retained set with the lowest energy; ties broken by the
/// smallest -sum_x count_x log2 g_x, then lexicographically.
TypeVector min_energy_type(const std::vector<TypeVector>& retained, const HamiltonianSpec& h,
                           const ProbVector& g, bool* tie = nullptr);

/// -sum_x t^{min,n}_x log2 g_x for the minimum-energy typical type.
double pure_cost_per_copy(int n, double alpha, const ProbVector& p, const ProbVector& g,
                          const HamiltonianSpec& h);

/// Weight of one total-energy eigenspace of H^{(n)} in psi^{(x)n}.
struct EnergyClass {
  double energy;
  double weight;
  std::size_t type_count;
};

/// Groups all types by energy (within energy_tol) and sums their weights.
/// energy_tol <= 0 selects 1e-9 * n * max level.
std::vector<EnergyClass> energy_classes(int n, const ProbVector& p, const HamiltonianSpec& h,
                                        double energy_tol = 0.0);

struct DistillRate {
  double value;          // D(P_n(psi^n) || gamma^n) / n
  double pinched_entropy;  // H(P_n(psi^n))
  double cross_term;     // Tr[P_n(psi^n) log2 gamma^n]
};

DistillRate distill_rate_estimate(int n, const ProbVector& p, const ProbVector& g,
                                  const HamiltonianSpec& h, double energy_tol = 0.0);

struct CoherenceGrowth {
  double value;  // C(psi^{(x)n}) = H(P_n(psi^{(x)n}))
  double bound;  // m log2(n + 1)
};

CoherenceGrowth coherence_growth(int n, const ProbVector& p, const HamiltonianSpec& h,
                                 double energy_tol = 0.0);

}  // namespace athermal
