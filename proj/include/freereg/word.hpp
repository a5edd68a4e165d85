#pragma once

#include <string>
#include <utility>
#include <vector>

namespace freereg {

// A monomial in noncommuting generators: the sequence of 1-based generator
// indices.  The empty word is the unit.
using Word = std::vector<int>;

inline int word_degree(const Word& w) { return static_cast<int>(w.size()); }

int count_letter(const Word& w, int letter);
Word reversed(const Word& w);
Word concat(const Word& a, const Word& b);

// Display form used in diagnostics: "x1*x2*x1", or "1" for the empty word.
std::string word_text(const Word& w);

// Graded lexicographic order: shorter words first, then lexicographic.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Same idea for simple tensors, graded by total degree of both legs.
struct PairDegLexLess {
  bool operator()(const std::pair<Word, Word>& a, const std::pair<Word, Word>& b) const {
    std::size_t da = a.first.size() + a.second.size();
    std::size_t db = b.first.size() + b.second.size();
    if (da != db) return da < db;
    if (a.first != b.first) {
      DegLexLess less;
      return less(a.first, b.first);
    }
    DegLexLess less;
    return less(a.second, b.second);
  }
};

}  // namespace freereg
