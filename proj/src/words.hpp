#pragma once
// Words in a free group: sequences of signed generator indices.
// Generator i is stored as +(i+1), its inverse as -(i+1).
#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace rhm {

using Word = std::vector<int>;

inline Word reduced(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int s : w) {
    if (s == 0) continue;
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduced(out);
}

// substitute generator images into w and freely reduce; img[i] is the image
// word of generator i (0-based).
inline Word substitute(const Word& w, const std::vector<Word>& img) {
  Word out;
  for (int s : w) {
    int g = std::abs(s) - 1;
    if (s > 0)
      out.insert(out.end(), img[g].begin(), img[g].end());
    else {
      for (auto it = img[g].rbegin(); it != img[g].rend(); ++it)
        out.push_back(-*it);
    }
  }
  return reduced(out);
}

// is w2 = c * w1 * c^-1 for some word c (as cyclic words this means equality)?
// Both must be freely reduced. Returns true iff cyclic reductions are equal up
// to rotation.
inline Word cyclic_reduction(Word w) {
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

inline bool conjugate_words(const Word& a, const Word& b) {
  Word x = cyclic_reduction(reduced(a)), y = cyclic_reduction(reduced(b));
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  Word xx = x;
  xx.insert(xx.end(), x.begin(), x.end());
  return std::search(xx.begin(), xx.end(), y.begin(), y.end()) != xx.end();
}

// exponent-sum vector over ngen generators
inline std::vector<long> abelianized(const Word& w, int ngen) {
  std::vector<long> v(ngen, 0);
  for (int s : w) {
    int g = std::abs(s) - 1;
    if (g >= ngen) throw std::out_of_range("generator index");
    v[g] += s > 0 ? 1 : -1;
  }
  return v;
}

}  // namespace rhm
