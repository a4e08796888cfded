#pragma once

// Brute-force reference model working directly on 0/1 words.
//
// Nothing here touches the block representation used by the library: states are
// canonical words (leading 1's and trailing 0's stripped), moves are string
// edits on the word padded with one context particle on each side, and every
// functional is computed by counting pairs of particles.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Word = std::string;
using Q = mpq_class;

inline Word canon(const std::string& w) {
  std::size_t a = 0, b = w.size();
  while (a < b && w[a] == '1') ++a;
  while (b > a && w[b - 1] == '0') --b;
  return w.substr(a, b - a);
}

/// Positions i of "1" + w + "0" where (i, i+1) is an unlike pair, left to right.
inline std::vector<std::size_t> pairs(const Word& w) {
  const std::string pw = "1" + w + "0";
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < pw.size(); ++i) {
    if (pw[i] != pw[i + 1]) out.push_back(i);
  }
  return out;
}

inline Word voter(const Word& w, std::size_t i, char target) {
  std::string pw = "1" + w + "0";
  pw[i] = pw[i + 1] = target;
  return canon(pw);
}

inline Word swap(const Word& w, std::size_t i) {
  std::string pw = "1" + w + "0";
  std::swap(pw[i], pw[i + 1]);
  return canon(pw);
}

/// Exact one-step law.
inline std::map<Word, Q> law(const Word& w, const Q& beta, const Q& p) {
  std::map<Word, Q> out;
  const auto ps = pairs(w);
  const Q n(static_cast<long>(ps.size()));
  const std::string pw = "1" + w + "0";
  for (auto i : ps) {
    out[voter(w, i, '0')] += beta / (2 * n);
    out[voter(w, i, '1')] += beta / (2 * n);
    const Q accept = pw[i] == '1' ? Q(1 - p) : p;
    out[swap(w, i)] += (1 - beta) / n * accept;
    out[w] += (1 - beta) / n * (1 - accept);
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

/// Number of (0, 1) pairs with the 0 to the left.
inline std::int64_t f1(const Word& w) {
  std::int64_t zeros = 0, acc = 0;
  for (char c : w) {
    if (c == '0') ++zeros;
    else acc += zeros;
  }
  return acc;
}

/// Sum over 1's of (0's to the left)^2 plus sum over 0's of (1's to the right)^2, halved.
inline Q f2(const Word& w) {
  std::int64_t acc = 0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    std::int64_t k = 0;
    if (w[a] == '1') {
      for (std::size_t b = 0; b < a; ++b) k += w[b] == '0';
    } else {
      for (std::size_t b = a + 1; b < w.size(); ++b) k += w[b] == '1';
    }
    acc += k * k;
  }
  Q out(acc, 2);
  out.canonicalize();
  return out;
}

/// Staircase cell of a (0 at a, 1 at b > a) pair: (rank of the 0 from the left,
/// rank of the 1 from the right); each cell weighs (j + k)^-alpha.
template <class Weight>
auto phi_generic(const Word& w, Weight&& weight) {
  decltype(weight(2)) acc{};
  std::int64_t j = 0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a] != '0') continue;
    ++j;
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      if (w[b] != '1') continue;
      std::int64_t k = 0;
      for (std::size_t c = b; c < w.size(); ++c) k += w[c] == '1';
      acc += weight(j + k);
    }
  }
  return acc;
}

inline double phi(const Word& w, double alpha) {
  return phi_generic(w, [alpha](std::int64_t x) { return std::pow(static_cast<double>(x), -alpha); });
}

inline Q phi_exact(const Word& w, int alpha) {
  return phi_generic(w, [alpha](std::int64_t x) {
    mpz_class d = 1;
    for (int i = 0; i < alpha; ++i) d *= x;
    return Q(mpz_class(1), d);
  });
}

inline std::int64_t size(const Word& w) { return static_cast<std::int64_t>(w.size()); }

/// Number of 0-blocks.
inline std::int64_t blocks(const Word& w) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) n += w[i] == '0' && (i == 0 || w[i - 1] == '1');
  return n;
}

/// Sum of squared run lengths.
inline std::int64_t rho2(const Word& w) {
  std::int64_t acc = 0, run = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    run = (i > 0 && w[i] == w[i - 1]) ? run + 1 : 1;
    if (i + 1 == w.size() || w[i + 1] != w[i]) acc += run * run;
  }
  return acc;
}

/// Every canonical word of length <= max_len (the empty word first).
inline std::vector<Word> all_words(int max_len) {
  std::vector<Word> out{""};
  for (int len = 2; len <= max_len; ++len) {
    for (long mask = 0; mask < (1L << (len - 2)); ++mask) {
      Word w = "0";
      for (int b = len - 3; b >= 0; --b) w.push_back((mask >> b) & 1 ? '1' : '0');
      w.push_back('1');
      out.push_back(w);
    }
  }
  return out;
}

template <class F>
Q drift(const Word& w, const Q& beta, const Q& p, F&& functional) {
  Q acc = 0;
  const Q here = functional(w);
  for (const auto& [next, prob] : law(w, beta, p)) acc += prob * (functional(next) - here);
  return acc;
}

}  // namespace oracle
