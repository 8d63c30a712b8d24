#include "edgeguard/testing_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace edgeguard {
namespace {

using SlotSet = std::vector<SlotPosition>;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("testing set is too large to index");
  }
  return a * b;
}

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

std::string pattern_id(const SlotSet& slots) {
  if (slots.empty()) return "vertices";
  std::string id;
  for (const auto& s : slots) {
    if (!id.empty()) id += '+';
    id += slot_label(s);
  }
  return id;
}

// Drops slot sets strictly contained in another one.
std::vector<SlotSet> prune_dominated(const std::set<SlotSet>& sets) {
  std::vector<SlotSet> out;
  for (const auto& s : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [&](const SlotSet& t) {
      return t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end());
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

class PlacementCollector {
 public:
  explicit PlacementCollector(const UncertainFamily& fam) : fam_(fam) {}

  void add(SlotSet raw) {
    std::erase_if(raw, [&](const SlotPosition& s) {
      return kharitonov_edges(fam_.entries(s.tag)(s.row, s.col)).empty();
    });
    std::sort(raw.begin(), raw.end());
    sets_.insert(std::move(raw));
  }

  std::vector<SlotSet> result() const { return prune_dominated(sets_); }

 private:
  const UncertainFamily& fam_;
  std::set<SlotSet> sets_;
};

std::vector<SlotSet> kamal_dahleh_slot_sets(const UncertainFamily& fam) {
  const std::size_t n = fam.order();
  PlacementCollector collector(fam);
  std::vector<std::size_t> sigma_b(n);
  std::iota(sigma_b.begin(), sigma_b.end(), 0);
  do {
    std::vector<std::size_t> sigma_d(n);
    std::iota(sigma_d.begin(), sigma_d.end(), 0);
    do {
      SlotSet raw;
      for (std::size_t i = 0; i < n; ++i) {
        raw.push_back({MatrixTag::kB, i, sigma_b[i]});
        raw.push_back({MatrixTag::kD, i, sigma_d[i]});
      }
      collector.add(std::move(raw));
    } while (std::next_permutation(sigma_d.begin(), sigma_d.end()));
  } while (std::next_permutation(sigma_b.begin(), sigma_b.end()));
  return collector.result();
}

void place_rows(std::size_t row, std::size_t n, std::vector<bool>& used_b, std::vector<bool>& used_d,
                SlotSet& current, PlacementCollector& collector) {
  if (row == n) {
    collector.add(current);
    return;
  }
  for (MatrixTag tag : {MatrixTag::kB, MatrixTag::kD}) {
    auto& used = tag == MatrixTag::kB ? used_b : used_d;
    for (std::size_t col = 0; col < n; ++col) {
      if (used[col]) continue;
      used[col] = true;
      current.push_back({tag, row, col});
      place_rows(row + 1, n, used_b, used_d, current, collector);
      current.pop_back();
      used[col] = false;
    }
  }
}

std::vector<SlotSet> minimal_slot_sets(const UncertainFamily& fam) {
  const std::size_t n = fam.order();
  PlacementCollector collector(fam);
  std::vector<bool> used_b(n, false);
  std::vector<bool> used_d(n, false);
  SlotSet current;
  place_rows(0, n, used_b, used_d, current, collector);
  return collector.result();
}

}  // namespace

std::string slot_label(const SlotPosition& s) {
  return std::string(1, tag_letter(s.tag)) + "(" + std::to_string(s.row + 1) + "," + std::to_string(s.col + 1) + ")";
}

std::string_view set_name(SetChoice s) { return s == SetChoice::kMinimal ? "minimal" : "kd"; }

std::pair<PolynomialMatrix, PolynomialMatrix> instantiate(const TestProblem& tp, std::span<const double> lambdas) {
  if (lambdas.size() != tp.slots.size()) throw std::invalid_argument("λ tuple length differs from the slot count");
  PolynomialMatrix bc = tp.fixed_b;
  PolynomialMatrix dc = tp.fixed_d;
  for (std::size_t k = 0; k < tp.slots.size(); ++k) {
    const EdgeSlot& slot = tp.slots[k];
    auto& target = slot.tag == MatrixTag::kB ? bc(slot.row, slot.col) : dc(slot.row, slot.col);
    target = slot.edge.at(lambdas[k]);
  }
  return {std::move(bc), std::move(dc)};
}

TestingSet TestingSet::Build(const UncertainFamily& fam, SetChoice choice) {
  fam.validate();
  const auto sets = choice == SetChoice::kMinimal ? minimal_slot_sets(fam) : kamal_dahleh_slot_sets(fam);
  return TestingSet(fam, choice, sets);
}

TestingSet::TestingSet(const UncertainFamily& fam, SetChoice choice, const std::vector<SlotSet>& slot_sets)
    : choice_(choice), n_(fam.order()) {
  for (MatrixTag tag : {MatrixTag::kB, MatrixTag::kD}) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& ip = fam.entries(tag)(i, j);
        entries_.push_back({kharitonov_vertices(ip), kharitonov_edges(ip)});
      }
    }
  }
  for (const auto& slots : slot_sets) {
    Pattern p{pattern_id(slots), slots, 1};
    for (MatrixTag tag : {MatrixTag::kB, MatrixTag::kD}) {
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          const bool is_slot = std::binary_search(slots.begin(), slots.end(), SlotPosition{tag, i, j});
          const auto& opt = options(tag, i, j);
          p.problem_count = checked_mul(p.problem_count, is_slot ? opt.edges.size() : opt.vertices.size());
        }
      }
    }
    patterns_.push_back(std::move(p));
  }
  std::sort(patterns_.begin(), patterns_.end(), [](const Pattern& a, const Pattern& b) { return a.id < b.id; });
  for (const auto& p : patterns_) {
    offsets_.push_back(total_);
    if (total_ > std::numeric_limits<std::uint64_t>::max() - p.problem_count) {
      throw std::overflow_error("testing set is too large to index");
    }
    total_ += p.problem_count;
  }
}

const TestingSet::EntryOptions& TestingSet::options(MatrixTag tag, std::size_t row, std::size_t col) const {
  return entries_[(tag == MatrixTag::kB ? 0 : n_ * n_) + row * n_ + col];
}

std::size_t TestingSet::max_dimension() const {
  std::size_t m = 0;
  for (const auto& p : patterns_) m = std::max(m, p.slots.size());
  return m;
}

TestProblem TestingSet::problem(std::uint64_t index) const {
  if (index >= total_) throw std::out_of_range("problem index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const std::size_t pi = static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
  const Pattern& pattern = patterns_[pi];
  const std::uint64_t ordinal = index - offsets_[pi];

  TestProblem tp;
  tp.fixed_b = PolynomialMatrix(n_);
  tp.fixed_d = PolynomialMatrix(n_);
  tp.pattern_id = pattern.id;
  tp.ordinal = ordinal;

  // Decode the mixed-radix ordinal, last entry least significant.
  std::uint64_t rest = ordinal;
  for (int tag_i = 1; tag_i >= 0; --tag_i) {
    const MatrixTag tag = tag_i == 0 ? MatrixTag::kB : MatrixTag::kD;
    auto& target = tag == MatrixTag::kB ? tp.fixed_b : tp.fixed_d;
    for (std::size_t flat = n_ * n_; flat-- > 0;) {
      const std::size_t i = flat / n_;
      const std::size_t j = flat % n_;
      const auto& opt = options(tag, i, j);
      const SlotPosition pos{tag, i, j};
      if (std::binary_search(pattern.slots.begin(), pattern.slots.end(), pos)) {
        const std::uint64_t radix = opt.edges.size();
        const Edge& e = opt.edges[static_cast<std::size_t>(rest % radix)];
        rest /= radix;
        tp.slots.push_back({tag, i, j, e});
        target(i, j) = e.endpoint_b;
      } else {
        const std::uint64_t radix = opt.vertices.size();
        target(i, j) = opt.vertices[static_cast<std::size_t>(rest % radix)];
        rest /= radix;
      }
    }
  }
  std::sort(tp.slots.begin(), tp.slots.end(),
            [](const EdgeSlot& a, const EdgeSlot& b) { return a.position() < b.position(); });
  return tp;
}

std::vector<TestProblem> TestingSet::materialize() const {
  std::vector<TestProblem> out;
  out.reserve(static_cast<std::size_t>(total_));
  for (std::uint64_t k = 0; k < total_; ++k) out.push_back(problem(k));
  return out;
}

std::vector<TestProblem> enumerate_kamal_dahleh(const UncertainFamily& fam) {
  return TestingSet::Build(fam, SetChoice::kKamalDahleh).materialize();
}

std::vector<TestProblem> enumerate_minimal(const UncertainFamily& fam) {
  return TestingSet::Build(fam, SetChoice::kMinimal).materialize();
}

CountsReport counts_report(const UncertainFamily& fam) {
  const std::size_t n = fam.order();
  const double vertex_part = std::pow(4.0, 2.0 * static_cast<double>(n * n));
  CountsReport r;
  for (SetChoice choice : {SetChoice::kMinimal, SetChoice::kKamalDahleh}) {
    const TestingSet set = TestingSet::Build(fam, choice);
    SetCounts& c = choice == SetChoice::kMinimal ? r.minimal : r.kamal_dahleh;
    c.patterns = set.patterns().size();
    c.problems = set.problem_count();
    c.max_dimension = set.max_dimension();
    if (choice == SetChoice::kMinimal) {
      c.nominal_problems = factorial(2 * n) * vertex_part * factorial(n);
      c.nominal_dimension = n;
    } else {
      c.nominal_problems = vertex_part * factorial(n) * factorial(n);
      c.nominal_dimension = 2 * n;
    }
  }
  return r;
}

}  // namespace edgeguard
