#include "freereg/trace.hpp"

#include <cstdint>
#include <mutex>

#include "freereg/errors.hpp"

namespace freereg {

bool is_non_crossing(const Pairing& p) {
  for (std::size_t i = 0; i < p.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < p.pairs.size(); ++j) {
      auto [a, b] = p.pairs[i];
      auto [c, d] = p.pairs[j];
      if (a > b) std::swap(a, b);
      if (c > d) std::swap(c, d);
      if (a > c) {
        std::swap(a, c);
        std::swap(b, d);
      }
      if (c < b && b < d) return false;  // a < c < b < d interleaves
    }
  return true;
}

namespace {

// Pair the first unmatched position with every later equal letter and recurse
// on what is left; keep only the crossing-free results.  Exhaustive, so only
// sensible for short words — the counting path below is the fast one.
void enumerate_matchings(const Word& w, const std::vector<int>& remaining, Pairing& partial,
                         std::vector<Pairing>& out) {
  if (remaining.empty()) {
    if (is_non_crossing(partial)) out.push_back(partial);
    return;
  }
  int first = remaining.front();
  for (std::size_t t = 1; t < remaining.size(); ++t) {
    int mate = remaining[t];
    if (w[mate] != w[first]) continue;
    std::vector<int> rest;
    rest.reserve(remaining.size() - 2);
    for (std::size_t s = 1; s < remaining.size(); ++s)
      if (s != t) rest.push_back(remaining[s]);
    partial.pairs.emplace_back(first, mate);
    enumerate_matchings(w, rest, partial, out);
    partial.pairs.pop_back();
  }
}

std::uint64_t pairing_count(const Word& w, int lo, int hi,
                            std::map<Word, std::uint64_t>& memo);

// Relabel letters by first occurrence so memo entries are shared across
// letter names: x2 x3 x3 x2 and x1 x2 x2 x1 count identically.
Word normalized_segment(const Word& w, int lo, int hi) {
  Word seg;
  seg.reserve(hi - lo);
  std::map<int, int> relabel;
  for (int i = lo; i < hi; ++i) {
    auto it = relabel.find(w[i]);
    if (it == relabel.end())
      it = relabel.emplace(w[i], static_cast<int>(relabel.size()) + 1).first;
    seg.push_back(it->second);
  }
  return seg;
}

std::uint64_t pairing_count(const Word& w, int lo, int hi,
                            std::map<Word, std::uint64_t>& memo) {
  int len = hi - lo;
  if (len == 0) return 1;
  if (len % 2 != 0) return 0;
  Word key = normalized_segment(w, lo, hi);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (int p = lo + 1; p < hi; p += 2) {
    if (w[p] != w[lo]) continue;
    std::uint64_t inner = pairing_count(w, lo + 1, p, memo);
    if (inner == 0) continue;
    total += inner * pairing_count(w, p + 1, hi, memo);
  }
  memo.emplace(std::move(key), total);
  return total;
}

std::map<Word, std::uint64_t>& semicircular_memo() {
  static std::map<Word, std::uint64_t> memo;
  return memo;
}

std::mutex& semicircular_memo_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<Pairing> noncrossing_same_letter_pairings(const Word& w) {
  std::vector<Pairing> out;
  if (w.size() % 2 != 0) return out;
  std::vector<int> all(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) all[i] = static_cast<int>(i);
  Pairing partial;
  enumerate_matchings(w, all, partial, out);
  return out;
}

Scalar semicircular_trace(const Word& w) {
  std::lock_guard<std::mutex> lock(semicircular_memo_mutex());
  std::uint64_t count = pairing_count(w, 0, static_cast<int>(w.size()), semicircular_memo());
  return Scalar(static_cast<long>(count));
}

TraceFunctional TraceFunctional::semicircular() {
  return TraceFunctional(Kind::semicircular, nullptr);
}

TraceFunctional TraceFunctional::user_table(Table table) {
  auto it = table.find(Word{});
  if (it != table.end() && it->second != Scalar(1))
    throw InvalidArgumentError("trace table must send the empty word to 1");
  return TraceFunctional(Kind::user_table,
                         std::make_shared<const Table>(std::move(table)));
}

Scalar TraceFunctional::operator()(const Word& w) const {
  if (kind_ == Kind::semicircular) return semicircular_trace(w);
  if (w.empty()) return Scalar(1);
  auto it = table_->find(w);
  if (it == table_->end())
    throw TraceUndefinedError("trace table has no entry for " + word_text(w));
  return it->second;
}

Scalar trace_poly(const NcPoly& p, const TraceFunctional& tau) {
  Scalar acc;
  for (const auto& [w, c] : p.terms()) acc += c * tau(w);
  return acc;
}

std::vector<Scalar> moments(const NcPoly& p, int k, const TraceFunctional& tau,
                            std::size_t term_budget) {
  if (k < 0) throw InvalidArgumentError("moments: order must be nonnegative");
  std::vector<Scalar> out;
  out.reserve(k);
  NcPoly power = NcPoly::constant(p.var_count(), Scalar(1));
  for (int j = 1; j <= k; ++j) {
    power = power * p;
    if (power.terms().size() > term_budget)
      throw BudgetError("moments: power " + std::to_string(j) + " holds " +
                        std::to_string(power.terms().size()) +
                        " terms, over the budget of " + std::to_string(term_budget));
    out.push_back(trace_poly(power, tau));
  }
  return out;
}

}  // namespace freereg
