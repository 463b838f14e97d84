#pragma once

#include <string>
#include <vector>

#include "renormlab/real.hpp"

namespace renormlab {

// Finite continued-fraction data produced by expanding a real number.
// exact == true means all requested entries were extracted with the running
// remainder staying above the rational-detection threshold; false means the
// expansion was truncated early because the remainder became numerically
// rational.
struct CFExpansion {
  std::vector<int> entries;
  bool exact = false;
};

// Symbol word over the alphabet {1, .., N}: either a finite word or the
// generator of a periodic continued fraction.
struct SymbolWord {
  std::vector<int> letters;
  bool periodic = false;
};

// Iterated Gauss-map digit extraction, at most `depth` entries (depth <= 40,
// the reliability limit of binary64 expansion).
CFExpansion cf_expand(Real x, int depth);

// Value of the finite continued fraction 1/(a_1 + 1/(a_2 + ...)).
Real cf_value(const std::vector<int>& entries);

// Gauss map frac(1/x); x must be nonzero.
Real gauss(Real x);

// The purely periodic continued fraction [w, w, w, ...] as the positive root
// of its exact integer quadratic.
Real quadratic_irrational(const std::vector<int>& word);

bool is_bounded_type(const std::vector<int>& entries, int n);

// Parse "(1,2)" (periodic word) or "1,2" (finite expansion).
SymbolWord parse_cf_word(const std::string& text);

std::vector<int> rotate_right(const std::vector<int>& w, int k);

}  // namespace renormlab
