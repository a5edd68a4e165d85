#include "freereg/word.hpp"

#include <algorithm>

namespace freereg {

int count_letter(const Word& w, int letter) {
  return static_cast<int>(std::count(w.begin(), w.end(), letter));
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_text(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += 'x';
    out += std::to_string(w[i]);
  }
  return out;
}

}  // namespace freereg
