#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "freereg/poly.hpp"
#include "freereg/scalar.hpp"
#include "freereg/word.hpp"

namespace freereg {

inline constexpr std::size_t kDefaultMomentBudget = 2'000'000;

// Perfect matching of word positions (0-based, each pair stored lo < hi).
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
};

// A pairing is non-crossing when no two pairs interleave as a < c < b < d.
bool is_non_crossing(const Pairing& p);

// All non-crossing pairings of the positions of w that only match equal
// letters.  Exponential-time by nature; meant for words of modest length.
std::vector<Pairing> noncrossing_same_letter_pairings(const Word& w);

// Mixed moment of a standard semicircular family: the number of non-crossing
// pairings of the word that pair equal letters (0 for odd length).  Memoized.
Scalar semicircular_trace(const Word& w);

/*
 * A tracial state on the polynomial algebra, given on monomials.  Either the
 * canonical semicircular family trace, or a finite user-supplied table of
 * word moments (with tau(1) = 1 implied).  Lookups outside a user table
 * throw TraceUndefinedError rather than guessing.
 */
class TraceFunctional {
 public:
  enum class Kind { semicircular, user_table };
  using Table = std::map<Word, Scalar, DegLexLess>;

  static TraceFunctional semicircular();
  static TraceFunctional user_table(Table table);

  Scalar operator()(const Word& w) const;
  Kind kind() const { return kind_; }

 private:
  TraceFunctional(Kind kind, std::shared_ptr<const Table> table)
      : kind_(kind), table_(std::move(table)) {}

  Kind kind_;
  std::shared_ptr<const Table> table_;
};

// Linear extension to polynomials.
Scalar trace_poly(const NcPoly& p, const TraceFunctional& tau);

// [tau(p), tau(p^2), ..., tau(p^k)] computed by exact symbolic powering.
// Throws BudgetError once an intermediate power holds more than term_budget
// monomials; raise the budget knowingly or switch to the sampled estimator.
std::vector<Scalar> moments(const NcPoly& p, int k, const TraceFunctional& tau,
                            std::size_t term_budget = kDefaultMomentBudget);

}  // namespace freereg
