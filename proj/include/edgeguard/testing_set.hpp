#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgeguard/family.hpp"

namespace edgeguard {

struct SlotPosition {
  MatrixTag tag;
  std::size_t row;
  std::size_t col;
  friend auto operator<=>(const SlotPosition&, const SlotPosition&) = default;
};

/// Canonical 1-based label such as "D(2,1)".
std::string slot_label(const SlotPosition& s);

/// An entry of B or D ranging over one Kharitonov edge (one λ parameter).
struct EdgeSlot {
  MatrixTag tag;
  std::size_t row;
  std::size_t col;
  Edge edge;

  SlotPosition position() const { return {tag, row, col}; }
};

/// One low-dimensional member family of a testing set: every non-slot
/// entry is a fixed Kharitonov vertex, every slot entry an edge.
struct TestProblem {
  PolynomialMatrix fixed_b;
  PolynomialMatrix fixed_d;
  std::vector<EdgeSlot> slots;
  /// Structural pattern, e.g. "B(1,2)+D(2,1)".
  std::string pattern_id;
  /// Index of this problem within its pattern.
  std::uint64_t ordinal = 0;

  std::size_t dimension() const { return slots.size(); }
  std::string id() const { return pattern_id + "#" + std::to_string(ordinal); }
};

/// Entry matrices of one member: slot entries set to their edge at the
/// matching λ. Throws std::invalid_argument for a wrong tuple length or a
/// λ outside [0, 1].
std::pair<PolynomialMatrix, PolynomialMatrix> instantiate(const TestProblem& tp, std::span<const double> lambdas);

enum class SetChoice { kMinimal, kKamalDahleh };

std::string_view set_name(SetChoice s);

struct Pattern {
  std::string id;
  /// Sorted by (tag, row, col).
  std::vector<SlotPosition> slots;
  std::uint64_t problem_count = 0;
};

/// A testing set held as structural patterns; problems are materialized on
/// demand so large sets need not be stored.
///
/// Patterns come from per-row edge placements: the Kamal–Dahleh set places
/// edges at (i, σ_B(i)) in B and (i, σ_D(i)) in D for bijections σ_B, σ_D;
/// the minimal set places one edge per row, in B or D, with columns
/// pairwise distinct among rows sharing a matrix. Placements on entries
/// without edges are dropped, identical slot sets merged, and a slot set
/// strictly contained in another is discarded (its problems are corners of
/// the larger pattern's problems).
class TestingSet {
 public:
  static TestingSet Build(const UncertainFamily& fam, SetChoice choice);

  SetChoice choice() const { return choice_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  std::uint64_t problem_count() const { return total_; }
  std::size_t max_dimension() const;

  /// Problem by global index; patterns are ordered by id, problems within a
  /// pattern in mixed-radix order over entries (B then D, row-major).
  TestProblem problem(std::uint64_t index) const;

  std::vector<TestProblem> materialize() const;

 private:
  struct EntryOptions {
    std::vector<Polynomial> vertices;
    std::vector<Edge> edges;
  };

  TestingSet(const UncertainFamily& fam, SetChoice choice, const std::vector<std::vector<SlotPosition>>& slot_sets);
  const EntryOptions& options(MatrixTag tag, std::size_t row, std::size_t col) const;

  SetChoice choice_;
  std::size_t n_ = 0;
  std::vector<EntryOptions> entries_;  // B row-major, then D row-major
  std::vector<Pattern> patterns_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t total_ = 0;
};

std::vector<TestProblem> enumerate_kamal_dahleh(const UncertainFamily& fam);
std::vector<TestProblem> enumerate_minimal(const UncertainFamily& fam);

struct SetCounts {
  std::size_t patterns = 0;
  std::uint64_t problems = 0;
  std::size_t max_dimension = 0;
  /// Closed-form problem count and dimension for an order-n system with
  /// every entry fully uncertain; shown for reference only.
  double nominal_problems = 0.0;
  std::size_t nominal_dimension = 0;
};

struct CountsReport {
  SetCounts minimal;
  SetCounts kamal_dahleh;
};

CountsReport counts_report(const UncertainFamily& fam);

}  // namespace edgeguard
