#include <doctest.h>

#include <random>

#include "fourfold/word.hpp"

using namespace fourfold;

namespace {

Word random_word(std::mt19937& rng, int max_len = 12, int ngens = 4) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, ngens - 1);
  std::uniform_int_distribution<int> exp(-3, 3);
  std::vector<Letter> ls;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    std::string g(1, static_cast<char>('a' + gen(rng)));
    int e = exp(rng);
    ls.push_back({g, e});
  }
  return free_reduce(std::move(ls));
}

}  // namespace

TEST_CASE("free reduction basics") {
  CHECK(parse_word("a*a^-1").empty());
  CHECK(parse_word("a^-1*d*a*d^-1") == parse_word("[a^-1,d]"));
  CHECK(to_string(parse_word("[a^-1,d]")) == "a^-1*d*a*d^-1");
  CHECK(parse_word("d*b^-1*b*a") == parse_word("d*a"));
  CHECK(to_string(parse_word("1")) == "1");
  CHECK(parse_word("x^3*x^-3").empty());
  CHECK(parse_word("a^2*a^-1") == parse_word("a"));
}

TEST_CASE("parser handles sugar and exponents") {
  CHECK(parse_word("[a,b]") == parse_word("a*b*a^-1*b^-1"));
  CHECK(parse_word("[a^-1,d]^2") == parse_word("a^-1*d*a*d^-1*a^-1*d*a*d^-1"));
  CHECK(parse_word("(a*b)^-1") == parse_word("b^-1*a^-1"));
  CHECK(parse_word("a'*b_1") == Word{{{"a'", 1}, {"b_1", 1}}});
  CHECK(parse_word("  a * b ") == parse_word("a*b"));
  CHECK_THROWS_AS(parse_word("a^"), parse_error);
  CHECK_THROWS_AS(parse_word("[a,b"), parse_error);
  CHECK_THROWS_AS(parse_word("*a"), parse_error);
}

TEST_CASE("round trip through to_string") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng);
    CHECK(parse_word(to_string(w)) == w);
  }
}

TEST_CASE("free_reduce is idempotent and length-nonincreasing; w*w^-1 cancels") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng);
    Word r = free_reduce(w);
    CHECK(free_reduce(r) == r);
    CHECK(r.length() <= w.length());
    CHECK(concat(w, inverse(w)).empty());
    CHECK(concat(inverse(w), w).empty());
  }
}

TEST_CASE("cyclic reduction strips conjugation") {
  Word w = conjugate(parse_word("a*b"), parse_word("d*c^-1"));
  CHECK(cyclic_reduce(w) == parse_word("a*b"));
  CHECK(cyclic_reduce(parse_word("a*b*a^-1")) == parse_word("b"));
  CHECK(cyclic_reduce(parse_word("[a,b]")) == parse_word("[a,b]"));
  CHECK(cyclic_reduce(Word{}).empty());
}

TEST_CASE("relator equivalence up to rotation and inversion") {
  CHECK(same_relator(parse_word("a*b*c"), parse_word("b*c*a")));
  CHECK(same_relator(parse_word("a*b*c"), parse_word("c^-1*b^-1*a^-1")));
  CHECK(same_relator(parse_word("x*y*x^-1*y^-1"), parse_word("[y,x]")));
  CHECK_FALSE(same_relator(parse_word("a*b"), parse_word("a*b^-1")));
  CHECK(same_relator(conjugate(parse_word("a^2*b"), parse_word("c")), parse_word("a^2*b")));
}

TEST_CASE("substitution") {
  Word w = parse_word("a*x*a^-1*x^-1");
  CHECK(substitute(w, "x", parse_word("b*c")) == parse_word("a*b*c*a^-1*c^-1*b^-1"));
  CHECK(substitute(parse_word("x^2"), "x", parse_word("y^-1")) == parse_word("y^-2"));
  CHECK(substitute(w, "z", parse_word("b")) == w);
}

TEST_CASE("exponent sums") {
  Word w = parse_word("d*a*d^-1*b^-1*d*b*d^-1");
  CHECK(exponent_sum(w, "a") == 1);
  CHECK(exponent_sum(w, "b") == 0);
  CHECK(exponent_sum(w, "d") == 0);
  CHECK(exponent_sum(w, "q") == 0);
}
