#include <doctest.h>

#include <random>

#include "fourfold/abelian.hpp"
#include "fourfold/smith.hpp"

using namespace fourfold;

TEST_CASE("smith normal form on known matrices") {
  SUBCASE("identity") {
    SmithForm s = smith_normal_form({{1, 0}, {0, 1}});
    CHECK(s.divisors == std::vector<long long>{1, 1});
  }
  SUBCASE("diagonal gets divisibility-sorted") {
    SmithForm s = smith_normal_form({{6, 0}, {0, 4}});
    CHECK(s.divisors == std::vector<long long>{2, 12});
  }
  SUBCASE("rank deficient") {
    SmithForm s = smith_normal_form({{2, 4}, {1, 2}});
    CHECK(s.rank == 1);
    CHECK(s.divisors == std::vector<long long>{1});
  }
  SUBCASE("zero matrix") {
    SmithForm s = smith_normal_form({{0, 0}, {0, 0}});
    CHECK(s.rank == 0);
  }
  SUBCASE("textbook 3x3") {
    SmithForm s = smith_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    CHECK(s.divisors == std::vector<long long>{2, 2, 156});
  }
}

TEST_CASE("row lattice membership") {
  IntMat a = {{2, 0}, {0, 3}};
  CHECK(in_row_lattice(a, {4, 3}));
  CHECK(in_row_lattice(a, {0, 0}));
  CHECK_FALSE(in_row_lattice(a, {1, 0}));
  CHECK_FALSE(in_row_lattice(a, {2, 1}));
  CHECK(in_row_lattice({{1, 1, 0}, {0, 2, 2}}, {1, 3, 2}));
  CHECK_FALSE(in_row_lattice({{1, 1, 0}, {0, 2, 2}}, {0, 0, 1}));
  CHECK(in_row_lattice({}, {0, 0}));
  CHECK_FALSE(in_row_lattice(IntMat{{0, 0}}, {1, 0}));
}

TEST_CASE("abelianization of standard presentations") {
  CHECK(abelianization(make_presentation({"x", "y"}, {"[x,y]"})) ==
        AbelianInvariants{2, {}});
  CHECK(abelianization(make_presentation({"x"}, {"x^2"})) ==
        AbelianInvariants{0, {2}});
  CHECK(abelianization(make_presentation({"x"}, {})) == AbelianInvariants{1, {}});
  CHECK(abelianization(make_presentation({}, {})).trivial());
  // Z/2 + Z/8 from a non-diagonal relator matrix (index 16 subgroup of Z^2)
  CHECK(abelianization(make_presentation({"x", "y"}, {"x^2*y^4", "y^-4*x^2"})) ==
        AbelianInvariants{0, {2, 8}});
}

TEST_CASE("six-generator all-commutator presentation abelianizes to Z^6") {
  Presentation p = make_presentation(
      {"a1", "b1", "c1", "d1", "c2", "d2"},
      {"[a1,b1]", "[a1,c1]", "[a1,d1]", "[a1,c2]", "[a1,d2]", "[b1,c1]", "[b1,d1]",
       "[b1,c2]", "[b1,d2]", "[c1,d1]", "[c1,c2]", "[c1,d2]", "[d1,c2]", "[d1,d2]",
       "[c2,d2]"});
  CHECK(abelianization(p) == AbelianInvariants{6, {}});
}

// The twist-knot surgery presentations: the first surgery relator has
// exponent sum one on a, the second has exponent sum one on b, so both die
// in homology and the abelianization is Z^2 for every n.
TEST_CASE("twist-knot family presentations abelianize to Z^2") {
  for (int n = 1; n <= 10; ++n) {
    Presentation p = make_presentation(
        {"a", "b", "c", "d"},
        {"[a,b]", "[c,a]", "[c,b]", "[c,d]", "d*a*d^-1*[d,b^-1]^-1",
         "b*[a^-1,d]^-" + std::to_string(n)});
    CHECK(abelianization(p) == AbelianInvariants{2, {}});
    // independent cross-check: integer rank of the exponent matrix is 2
    CHECK(integer_rank(relator_matrix(p)) == 2);
  }
}

TEST_CASE("abelianization invariant under relator permutation") {
  std::mt19937 rng(3);
  Presentation p = make_presentation({"x", "y", "z"}, {"x^2*y", "[y,z]", "z^4"});
  AbelianInvariants base = abelianization(p);
  for (int i = 0; i < 20; ++i) {
    Presentation q = p;
    std::shuffle(q.relators.begin(), q.relators.end(), rng);
    CHECK(abelianization(q) == base);
  }
}

TEST_CASE("abelian descriptions") {
  CHECK(to_string(AbelianInvariants{0, {}}) == "0");
  CHECK(to_string(AbelianInvariants{2, {}}) == "Z^2");
  CHECK(to_string(AbelianInvariants{1, {2, 4}}) == "Z + Z/2 + Z/4");
  CHECK(matches_abelian(AbelianInvariants{4, {}}, "Z^4"));
  CHECK(matches_abelian(AbelianInvariants{0, {}}, "trivial"));
  CHECK_FALSE(matches_abelian(AbelianInvariants{2, {2}}, "Z^2"));
}
