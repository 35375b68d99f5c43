#pragma once

// Todd-Coxeter coset enumeration over the trivial subgroup, HLT strategy
// with a deduction-only lookahead pass when the coset limit is hit.  A
// completed table certifies the group order exactly; hitting the limits is
// reported as Exhausted, never as a conclusion.

#include <cstdint>
#include <string>
#include <vector>

#include "fourfold/presentation.hpp"

namespace fourfold {

struct CosetLimits {
  long long max_cosets = 1'000'000;
  long long max_steps = 10'000'000;
};

struct CosetResult {
  bool completed = false;  // false => Exhausted
  long long index = 0;     // group order when completed
  long long cosets_defined = 0;
  long long steps = 0;
};

namespace detail {

class CosetTable {
 public:
  CosetTable(const Presentation& p, CosetLimits limits) : limits_(limits) {
    ngens_ = p.generators.size();
    ncols_ = 2 * ngens_;
    for (const auto& r : p.relators) {
      Word cr = cyclic_reduce(r);
      if (cr.empty()) continue;
      std::vector<int> cols;
      for (const auto& l : cr.letters) {
        int g = static_cast<int>(*p.generator_index(l.gen));
        int col = l.exp > 0 ? 2 * g : 2 * g + 1;
        long long n = l.exp < 0 ? -l.exp : l.exp;
        for (long long i = 0; i < n; ++i) cols.push_back(col);
      }
      relators_.push_back(std::move(cols));
    }
    new_coset();  // coset 0 = the subgroup itself
  }

  // Passes repeat until one runs clean: coincidences can re-open entries of
  // cosets scanned earlier in the same pass, so a single sweep is not a
  // completeness certificate.
  CosetResult run() {
    CosetResult res;
    while (true) {
      std::uint64_t v0 = version_;
      bool full = false;
      for (long long alpha = 0; !full && alpha < static_cast<long long>(p_.size()); ++alpha) {
        if (!alive(alpha)) continue;
        for (const auto& rel : relators_) {
          if (!alive(alpha)) break;
          Scan s = scan_and_fill(alpha, rel);
          if (s == Scan::Budget) {
            finish(res, false);
            return res;
          }
          if (s == Scan::Full) {
            full = true;
            break;
          }
        }
        if (full || !alive(alpha)) continue;
        for (int x = 0; x < ncols_ && alive(alpha); ++x) {
          if (entry(alpha, x) < 0) {
            if (!room_for_more()) {
              full = true;
              break;
            }
            long long beta = new_coset();
            set_entry(alpha, x, beta);
          }
        }
        if (overbudget()) {
          finish(res, false);
          return res;
        }
      }
      if (full) {
        // out of room: deduction-only lookahead, then compact and restart
        if (!lookahead() || overbudget()) {
          finish(res, false);
          return res;
        }
        continue;
      }
      if (version_ == v0) break;  // stable closed table
    }
    finish(res, true);
    return res;
  }

  // Compacted fully defined table; only meaningful after a completed run.
  std::vector<long long> closed_table() {
    long long live = 0;
    for (long long c = 0; c < static_cast<long long>(p_.size()); ++c)
      if (alive(c)) ++live;
    std::vector<long long> remap(p_.size(), -1);
    long long next = 0;
    for (long long c = 0; c < static_cast<long long>(p_.size()); ++c)
      if (alive(c)) remap[c] = next++;
    std::vector<long long> out(static_cast<size_t>(live) * ncols_, -1);
    for (long long c = 0; c < static_cast<long long>(p_.size()); ++c) {
      if (remap[c] < 0) continue;
      for (int x = 0; x < ncols_; ++x) {
        long long d = entry(c, x);
        out[remap[c] * ncols_ + x] = d < 0 ? -1 : remap[rep(d)];
      }
    }
    return out;
  }

 private:
  CosetLimits limits_;
  int ngens_ = 0;
  int ncols_ = 0;
  std::vector<std::vector<int>> relators_;
  std::vector<long long> table_;  // row-major, -1 = undefined
  std::vector<long long> p_;      // union-find representatives
  std::vector<long long> dead_queue_;
  long long defined_ = 0;
  long long steps_ = 0;
  std::uint64_t version_ = 0;

  static int inv(int col) { return col ^ 1; }
  bool alive(long long c) { return rep(c) == c; }
  long long entry(long long c, int x) const { return table_[c * ncols_ + x]; }
  void put(long long c, int x, long long v) { table_[c * ncols_ + x] = v; }

  void set_entry(long long a, int x, long long b) {
    put(a, x, b);
    put(b, inv(x), a);
    ++version_;
  }

  bool room_for_more() const { return static_cast<long long>(p_.size()) < limits_.max_cosets; }
  bool overbudget() const { return steps_ > limits_.max_steps; }

  long long new_coset() {
    long long c = static_cast<long long>(p_.size());
    p_.push_back(c);
    table_.resize(table_.size() + ncols_, -1);
    ++defined_;
    ++version_;
    return c;
  }

  long long rep(long long c) {
    long long r = c;
    while (p_[r] != r) r = p_[r];
    while (p_[c] != r) {
      long long next = p_[c];
      p_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(long long a, long long b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    p_[b] = a;
    dead_queue_.push_back(b);
    ++version_;
  }

  void coincidence(long long a, long long b) {
    merge(a, b);
    for (size_t qi = 0; qi < dead_queue_.size(); ++qi) {
      long long gamma = dead_queue_[qi];
      for (int x = 0; x < ncols_; ++x) {
        long long delta = entry(gamma, x);
        if (delta < 0) continue;
        if (entry(delta, inv(x)) == gamma) put(delta, inv(x), -1);
        long long mu = rep(gamma);
        long long nu = rep(delta);
        long long mu_x = entry(mu, x);
        if (mu_x >= 0) {
          merge(nu, mu_x);
        } else {
          long long nu_back = entry(nu, inv(x));
          if (nu_back >= 0) {
            merge(mu, nu_back);
          } else {
            set_entry(mu, x, nu);
          }
        }
      }
    }
    dead_queue_.clear();
  }

  enum class Scan { Ok, Full, Budget };

  // Trace relator rel at coset alpha, defining new cosets to fill gaps of
  // more than one.
  Scan scan_and_fill(long long alpha, const std::vector<int>& rel) {
    ++steps_;
    long long f = alpha;
    long long b = alpha;
    size_t i = 0;
    size_t j = rel.size();
    while (true) {
      while (i < j && entry(f, rel[i]) >= 0) f = entry(f, rel[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return Scan::Ok;
      }
      while (j > i && entry(b, inv(rel[j - 1])) >= 0) b = entry(b, inv(rel[--j]));
      if (j == i) {
        // the two scans reached the same position; merge if they disagree
        if (f != b) coincidence(f, b);
        return Scan::Ok;
      }
      if (j == i + 1) {
        set_entry(f, rel[i], b);
        return Scan::Ok;
      }
      if (!room_for_more()) return Scan::Full;
      if (overbudget()) return Scan::Budget;
      long long c = new_coset();
      set_entry(f, rel[i], c);
    }
  }

  // Deduction-only relator pass; succeeds if coincidences freed enough room.
  bool lookahead() {
    for (long long alpha = 0; alpha < static_cast<long long>(p_.size()); ++alpha) {
      if (!alive(alpha)) continue;
      for (const auto& rel : relators_) {
        if (!alive(alpha)) break;
        ++steps_;
        scan_no_fill(alpha, rel);
        if (overbudget()) return false;
      }
    }
    long long live = 0;
    for (long long c = 0; c < static_cast<long long>(p_.size()); ++c)
      if (alive(c)) ++live;
    return live < limits_.max_cosets && compact(live);
  }

  void scan_no_fill(long long alpha, const std::vector<int>& rel) {
    long long f = alpha;
    long long b = alpha;
    size_t i = 0;
    size_t j = rel.size();
    while (i < j && entry(f, rel[i]) >= 0) f = entry(f, rel[i++]);
    if (i == j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j > i && entry(b, inv(rel[j - 1])) >= 0) b = entry(b, inv(rel[--j]));
    if (j == i) coincidence(f, b);
    else if (j == i + 1) set_entry(f, rel[i], b);
  }

  // Renumber live cosets so the table can keep growing after a lookahead.
  bool compact(long long live) {
    if (live >= static_cast<long long>(p_.size())) return false;
    std::vector<long long> remap(p_.size(), -1);
    long long next = 0;
    for (long long c = 0; c < static_cast<long long>(p_.size()); ++c)
      if (alive(c)) remap[c] = next++;
    std::vector<long long> nt(static_cast<size_t>(live) * ncols_, -1);
    for (long long c = 0; c < static_cast<long long>(p_.size()); ++c) {
      if (remap[c] < 0) continue;
      for (int x = 0; x < ncols_; ++x) {
        long long d = entry(c, x);
        nt[remap[c] * ncols_ + x] = d < 0 ? -1 : remap[rep(d)];
      }
    }
    table_ = std::move(nt);
    p_.resize(live);
    for (long long c = 0; c < live; ++c) p_[c] = c;
    return true;
  }

  void finish(CosetResult& res, bool completed) {
    res.completed = completed;
    res.cosets_defined = defined_;
    res.steps = steps_;
    if (completed) {
      long long live = 0;
      for (long long c = 0; c < static_cast<long long>(p_.size()); ++c)
        if (alive(c)) ++live;
      res.index = live;
    }
  }
};

}  // namespace detail

inline CosetResult coset_enumerate(const Presentation& p, CosetLimits limits = {}) {
  if (limits.max_cosets <= 0 || limits.max_steps <= 0)
    throw precondition_error("coset enumeration limits must be positive");
  if (p.generators.empty()) return {true, 1, 1, 0};
  return detail::CosetTable(p, limits).run();
}

// Closed regular-representation table for a finite enumeration: row-major,
// 2*ngens columns (2g = generator g, 2g+1 = its inverse), coset 0 the
// trivial subgroup.  Empty when the enumeration did not complete.
struct ClosedTable {
  CosetResult result;
  std::vector<long long> next;

  long long act(long long coset, size_t col, size_t ncols) const {
    return next[coset * ncols + col];
  }
};

inline ClosedTable coset_enumerate_table(const Presentation& p, CosetLimits limits = {}) {
  if (limits.max_cosets <= 0 || limits.max_steps <= 0)
    throw precondition_error("coset enumeration limits must be positive");
  ClosedTable out;
  if (p.generators.empty()) {
    out.result = {true, 1, 1, 0};
    return out;
  }
  detail::CosetTable t(p, limits);
  out.result = t.run();
  if (out.result.completed) out.next = t.closed_table();
  return out;
}

// Walk w through a closed table from coset 0; in the regular representation
// over the trivial subgroup, w is trivial in the group iff it returns to 0.
inline long long trace_word(const Presentation& p, const ClosedTable& table, const Word& w) {
  size_t ncols = 2 * p.generators.size();
  long long c = 0;
  for (const auto& l : w.letters) {
    auto idx = p.generator_index(l.gen);
    if (!idx) throw precondition_error("trace_word: undeclared generator '" + l.gen + "'");
    size_t col = l.exp > 0 ? 2 * *idx : 2 * *idx + 1;
    long long n = l.exp < 0 ? -l.exp : l.exp;
    for (long long i = 0; i < n; ++i) c = table.act(c, col, ncols);
  }
  return c;
}

}  // namespace fourfold
