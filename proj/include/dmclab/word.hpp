#pragma once

// Fixed-length words over a finite alphabet, stored as symbol indices.

#include <vector>

#include "dmclab/channel.hpp"

namespace dmclab {

struct Word {
  std::vector<int> symbols;
  int alphabet_size = 0;

  int length() const { return static_cast<int>(symbols.size()); }
  bool operator==(const Word& o) const = default;
};

// Validating constructor; throws on out-of-range symbols.
Word make_word(std::vector<int> symbols, int alphabet_size);

// Per-symbol counts N(x|w).
std::vector<int> symbol_counts(const Word& w);

// Empirical distribution of the word (counts / n).  Requires length >= 1.
Distribution type_of(const Word& w);

// Number of positions where the words differ; requires equal length and
// alphabet.
int hamming_distance(const Word& a, const Word& b);

}  // namespace dmclab
