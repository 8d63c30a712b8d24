#pragma once

// Shared pieces of the grid, zero-exclusion and oracle checkers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgeguard/verify.hpp"

namespace edgeguard::detail {

inline constexpr std::size_t kBatch = 512;
inline constexpr std::size_t kMaxGridSlots = 4;

enum class MemberClass { kStable, kUnstable, kSingular, kDegreeDrop };

/// Reference classification of one assembled member of degree `degree`.
MemberClass classify_member(const Polynomial& p, int degree, double tol);

/// Fills in the rightmost root when the root finder converges.
Witness make_witness(std::string problem, std::vector<double> lambdas, Polynomial p, std::string reason,
                     std::optional<double> omega = std::nullopt);

/// Result of one problem (or one oracle chunk).
struct Outcome {
  VerdictStatus status = VerdictStatus::kStable;
  std::optional<Witness> witness;
  std::uint64_t members = 0;
  std::uint64_t routh = 0;
  std::optional<double> min_modulus;
  std::optional<double> min_modulus_omega;

  /// Records a marginal finding unless one is already held.
  void mark_marginal(Witness w);
};

/// Uniform grid on [0,1]^k with `points` values per axis, slot 0 most
/// significant in the sample index.
class LambdaGrid {
 public:
  LambdaGrid(std::size_t slots, int points);

  std::uint64_t size() const { return size_; }
  std::size_t slots() const { return slots_; }
  int points() const { return points_; }
  double value(int digit) const;
  void lambdas(std::uint64_t sample, std::span<double> out) const;

  /// Sequential walk over samples without per-sample division.
  class Cursor {
   public:
    Cursor(const LambdaGrid& grid, std::uint64_t start);
    std::span<const double> lambdas() const { return lambdas_; }
    void advance();

   private:
    const LambdaGrid* grid_;
    std::vector<int> digits_;
    std::vector<double> lambdas_;
  };

 private:
  std::size_t slots_;
  int points_;
  std::uint64_t size_;
};

/// w[S] = product of lambdas[i] over the bits i of S.
void multiaffine_weights(std::span<const double> lambdas, std::span<double> w);

/// Characteristic polynomial of a problem as Σ_S (Π_{i∈S} λ_i)·q_S, exact
/// because each λ enters det affinely. Rows of ncoeff ascending coefficients.
struct MultiaffineBasis {
  std::size_t slots = 0;
  std::size_t terms = 1;
  std::size_t ncoeff = 0;
  std::vector<double> corners;
  std::vector<double> q;

  static MultiaffineBasis Build(const TestProblem& tp, const UncertainFamily& fam);
  std::span<const double> corner(std::size_t mask) const { return {corners.data() + mask * ncoeff, ncoeff}; }
  std::span<const double> term(std::size_t mask) const { return {q.data() + mask * ncoeff, ncoeff}; }
};

Outcome grid_outcome(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg);
Outcome zero_exclusion_outcome(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg);

}  // namespace edgeguard::detail
