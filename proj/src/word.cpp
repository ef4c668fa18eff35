#include "dmclab/word.hpp"

#include <stdexcept>

namespace dmclab {

Word make_word(std::vector<int> symbols, int alphabet_size) {
  if (alphabet_size <= 0) throw std::invalid_argument("make_word: alphabet size must be positive");
  for (int s : symbols)
    if (s < 0 || s >= alphabet_size) throw std::invalid_argument("make_word: symbol index out of range");
  return Word{std::move(symbols), alphabet_size};
}

std::vector<int> symbol_counts(const Word& w) {
  std::vector<int> counts(w.alphabet_size, 0);
  for (int s : w.symbols) ++counts[s];
  return counts;
}

Distribution type_of(const Word& w) {
  if (w.length() == 0) throw std::invalid_argument("type_of: empty word");
  std::vector<int> counts = symbol_counts(w);
  std::vector<double> p(w.alphabet_size);
  for (int i = 0; i < w.alphabet_size; ++i) p[i] = static_cast<double>(counts[i]) / w.length();
  return Distribution(std::move(p));
}

int hamming_distance(const Word& a, const Word& b) {
  if (a.length() != b.length() || a.alphabet_size != b.alphabet_size)
    throw std::invalid_argument("hamming_distance: mismatched words");
  int d = 0;
  for (int i = 0; i < a.length(); ++i)
    if (a.symbols[i] != b.symbols[i]) ++d;
  return d;
}

}  // namespace dmclab
