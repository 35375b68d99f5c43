#pragma once

// Words in a free group over named generators.  Words are stored freely
// reduced: adjacent letters carry distinct generators and no letter has a
// zero exponent.  The empty word is the identity.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fourfold/common.hpp"

namespace fourfold {

struct Letter {
  std::string gen;
  long long exp = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }

  // Reduced length: total number of single-generator letters.
  long long length() const {
    long long n = 0;
    for (const auto& l : letters) n += l.exp < 0 ? -l.exp : l.exp;
    return n;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

inline Word free_reduce(std::vector<Letter> in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (auto& l : in) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  return Word{std::move(out)};
}

inline Word free_reduce(const Word& w) { return free_reduce(w.letters); }

inline Word inverse(const Word& w) {
  std::vector<Letter> rev;
  rev.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    rev.push_back({it->gen, -it->exp});
  return Word{std::move(rev)};
}

inline Word concat(const Word& a, const Word& b) {
  std::vector<Letter> all = a.letters;
  all.insert(all.end(), b.letters.begin(), b.letters.end());
  return free_reduce(std::move(all));
}

inline Word operator*(const Word& a, const Word& b) { return concat(a, b); }

inline Word power(const Word& w, long long e) {
  if (e == 0) return {};
  Word base = e < 0 ? inverse(w) : w;
  long long n = e < 0 ? -e : e;
  Word out;
  for (long long i = 0; i < n; ++i) out = concat(out, base);
  return out;
}

// [u,v] = u v u^-1 v^-1
inline Word commutator(const Word& u, const Word& v) {
  return concat(concat(u, v), concat(inverse(u), inverse(v)));
}

inline Word conjugate(const Word& w, const Word& by) {
  return concat(concat(by, w), inverse(by));
}

// Replace every occurrence of generator g by r (r^-1 for inverse letters).
inline Word substitute(const Word& w, const std::string& g, const Word& r) {
  std::vector<Letter> out;
  for (const auto& l : w.letters) {
    if (l.gen == g) {
      Word piece = power(r, l.exp);
      out.insert(out.end(), piece.letters.begin(), piece.letters.end());
    } else {
      out.push_back(l);
    }
  }
  return free_reduce(std::move(out));
}

// Strip conjugating prefixes: the cyclically reduced core of w.
inline Word cyclic_reduce(const Word& w) {
  std::vector<Letter> ls = free_reduce(w).letters;
  while (ls.size() >= 2 && ls.front().gen == ls.back().gen) {
    long long e = ls.front().exp + ls.back().exp;
    ls.pop_back();
    if (e == 0) {
      ls.erase(ls.begin());
    } else {
      ls.front().exp = e;
      if (ls.size() == 1) break;
      if (ls.front().gen != ls.back().gen) break;
    }
  }
  return free_reduce(std::move(ls));
}

inline bool contains_generator(const Word& w, const std::string& g) {
  for (const auto& l : w.letters)
    if (l.gen == g) return true;
  return false;
}

inline long long exponent_sum(const Word& w, const std::string& g) {
  long long s = 0;
  for (const auto& l : w.letters)
    if (l.gen == g) s += l.exp;
  return s;
}

// --- serialization ---------------------------------------------------------

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += '*';
    out += w.letters[i].gen;
    if (w.letters[i].exp != 1) out += '^' + std::to_string(w.letters[i].exp);
  }
  return out;
}

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word parse() {
    Word w = word();
    skip_ws();
    if (pos_ != s_.size())
      throw parse_error("trailing input in word: '" + std::string(s_) + "'");
    return w;
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek_atom_start() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(' || c == '1';
  }

  Word word() {
    std::vector<Letter> acc;
    skip_ws();
    if (!peek_atom_start()) return {};
    while (true) {
      Word a = atom();
      acc.insert(acc.end(), a.letters.begin(), a.letters.end());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      if (peek_atom_start()) continue;  // juxtaposition tolerated
      break;
    }
    return free_reduce(std::move(acc));
  }

  Word atom() {
    Word base = primary();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return power(base, integer());
    }
    return base;
  }

  Word primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw parse_error("unexpected end of word");
    char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return commutator(u, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size()) {
        char d = s_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')
          ++pos_;
        else
          break;
      }
      return Word{{{std::string(s_.substr(start, pos_ - start)), 1}}};
    }
    throw parse_error(std::string("unexpected character '") + c + "' in word");
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw parse_error(std::string("expected '") + c + "' in word: '" + std::string(s_) + "'");
    ++pos_;
  }

  long long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) throw parse_error("expected integer exponent");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
};

}  // namespace detail

// Accepts generator names [A-Za-z][A-Za-z0-9_']*, '^' integer exponents,
// '*' (or juxtaposition) for products, '[u,v]' commutator sugar, parentheses,
// and '1' for the identity.
inline Word parse_word(std::string_view s) { return detail::WordParser(s).parse(); }

// --- relator equivalence ----------------------------------------------------

namespace detail {

inline std::vector<std::pair<std::string, int>> expand_letters(const Word& w) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& l : w.letters) {
    int sign = l.exp < 0 ? -1 : 1;
    long long n = l.exp < 0 ? -l.exp : l.exp;
    for (long long i = 0; i < n; ++i) out.emplace_back(l.gen, sign);
  }
  return out;
}

inline std::string canonical_cyclic(const Word& w) {
  auto ls = expand_letters(cyclic_reduce(w));
  if (ls.empty()) return "";
  std::string best;
  for (size_t r = 0; r < ls.size(); ++r) {
    std::string cur;
    for (size_t i = 0; i < ls.size(); ++i) {
      const auto& [g, s] = ls[(r + i) % ls.size()];
      cur += s < 0 ? g + "^-" : g;
      cur += '.';
    }
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

}  // namespace detail

// True when u and v define the same relation: equal up to free and cyclic
// reduction, rotation, and inversion.
inline bool same_relator(const Word& u, const Word& v) {
  std::string cu = detail::canonical_cyclic(u);
  return cu == detail::canonical_cyclic(v) || cu == detail::canonical_cyclic(inverse(v));
}

}  // namespace fourfold
