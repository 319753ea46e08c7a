#include <map>
#include <random>

#include "doctest.h"
#include "groupeq/pcgroup.hpp"
#include "groupeq/system.hpp"
#include "oracles.hpp"

using namespace groupeq;

namespace {

const Variable X{"x", Symbol::kNoIndex};
const Variable Y{"y", Symbol::kNoIndex};
const Symbol A_SYM{"a", Symbol::kNoIndex};
const Symbol B_SYM{"b", Symbol::kNoIndex};

std::vector<PcGroup> small_catalog() {
  std::vector<PcGroup> out;
  out.push_back(PcGroup::cyclic(2, 3));
  out.push_back(PcGroup::cyclic(3, 2));
  out.push_back(PcGroup::heisenberg(2));
  out.push_back(PcGroup::heisenberg(3));
  out.push_back(PcGroup::dihedral_2group(3));
  out.push_back(PcGroup::dihedral_2group(4));
  out.push_back(
      PcGroup::direct_product(PcGroup::cyclic(2, 2), PcGroup::cyclic(2, 1)));
  return out;
}

}  // namespace

TEST_CASE("cyclic group arithmetic") {
  auto Z4 = PcGroup::cyclic(2, 2);
  CHECK(Z4.order() == 4);
  auto a = Z4.generator(0);
  CHECK(Z4.mul(Z4.power(a, 2), Z4.power(a, 3)) == a);  // a^2 a^3 = a
  CHECK(Z4.element_order(a) == 4);
  CHECK(Z4.is_identity(Z4.power(a, 4)));
  CHECK(Z4.inverse(a) == Z4.power(a, 3));
}

TEST_CASE("identity is neutral, exhaustively") {
  for (const auto& G : small_catalog()) {
    REQUIRE(G.order() <= 64);
    for (const auto& x : G.elements()) {
      CHECK(G.mul(G.identity(), x) == x);
      CHECK(G.mul(x, G.identity()) == x);
      CHECK(G.is_identity(G.mul(x, G.inverse(x))));
    }
  }
}

TEST_CASE("multiplication is associative, exhaustively on order <= 27") {
  for (const auto& G : {PcGroup::heisenberg(3), PcGroup::dihedral_2group(3)}) {
    auto all = G.elements();
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all)
          CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
  }
}

TEST_CASE("heisenberg groups match the unitriangular matrix model") {
  for (long p : {2L, 3L}) {
    auto H = PcGroup::heisenberg(p);
    long m = p;
    // normal form (e1, e2, e3) -> x^e1 y^e2 z^e3 as matrices
    auto to_matrix = [&](const PcGroup::Element& e) {
      oracles::HeisenbergMatrix x{m, {1, 0, 0}}, y{m, {0, 1, 0}},
          z{m, {0, 0, 1}};
      auto acc = oracles::HeisenbergMatrix::id(m);
      for (long t = 0; t < e[0]; ++t) acc = acc.mul(x);
      for (long t = 0; t < e[1]; ++t) acc = acc.mul(y);
      for (long t = 0; t < e[2]; ++t) acc = acc.mul(z);
      return acc;
    };
    // bijective on normal forms, and a homomorphism
    std::set<oracles::HeisenbergMatrix> image;
    auto all = H.elements();
    for (const auto& e : all) image.insert(to_matrix(e));
    CHECK(image.size() == all.size());
    for (const auto& a : all)
      for (const auto& b : all)
        CHECK(to_matrix(H.mul(a, b)) == to_matrix(a).mul(to_matrix(b)));
    // [g1, g2] = g3 in the chosen orientation
    CHECK(H.commutator(H.generator(0), H.generator(1)) == H.generator(2));
  }
}

TEST_CASE("commutator basics") {
  auto H = PcGroup::heisenberg(3);
  for (const auto& x : H.elements()) CHECK(H.is_identity(H.commutator(x, x)));
  auto A = PcGroup::direct_product(PcGroup::cyclic(2, 2), PcGroup::cyclic(3, 1));
  for (const auto& x : A.elements())
    for (const auto& y : A.elements())
      CHECK(A.is_identity(A.commutator(x, y)));
}

TEST_CASE("central series of basic groups") {
  auto Z8 = PcGroup::cyclic(2, 3);
  auto s = central_series(Z8, SeriesKind::Upper);
  CHECK(s.nilpotency_class == 1);
  CHECK(s.chain.back().size() == 8);

  auto H3 = PcGroup::heisenberg(3);
  auto up = central_series(H3, SeriesKind::Upper);
  auto low = central_series(H3, SeriesKind::Lower);
  CHECK(up.nilpotency_class == 2);
  CHECK(low.nilpotency_class == 2);
  CHECK(up.chain[1].size() == 3);   // Z_1 = <g3>
  CHECK(low.chain[1].size() == 3);  // gamma_2 = <g3>
  CHECK(up.chain[1] == low.chain[1]);

  auto D8 = PcGroup::dihedral_2group(3);
  auto d_up = central_series(D8, SeriesKind::Upper);
  CHECK(d_up.nilpotency_class == 2);
  CHECK(d_up.chain[1].size() == 2);

  auto D16 = PcGroup::dihedral_2group(4);
  CHECK(central_series(D16, SeriesKind::Upper).nilpotency_class == 3);
  CHECK(central_series(D16, SeriesKind::Lower).nilpotency_class == 3);
}

TEST_CASE("upper and lower central series agree on the class") {
  for (const auto& G : small_catalog()) {
    auto up = central_series(G, SeriesKind::Upper);
    auto low = central_series(G, SeriesKind::Lower);
    CHECK(up.nilpotency_class == low.nilpotency_class);
    // generator sets regenerate the subgroups
    for (std::size_t i = 0; i < up.chain.size(); ++i)
      CHECK(subgroup_closure(G, up.generator_sets[i]).size() ==
            up.chain[i].size());
  }
}

TEST_CASE("commutator identity [a,bc] = [a,c][a,b][[a,b],c]") {
  for (const auto& G :
       {PcGroup::heisenberg(2), PcGroup::dihedral_2group(4)}) {
    auto all = G.elements();
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) {
          auto lhs = G.commutator(a, G.mul(b, c));
          auto ab = G.commutator(a, b);
          auto rhs = G.mul(G.mul(G.commutator(a, c), ab), G.commutator(ab, c));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("power congruence [g, r^n] = [g, r]^n modulo gamma_3") {
  // exact equality on class-2 groups; containment in gamma_3 on dihedral 16
  auto H3 = PcGroup::heisenberg(3);
  for (const auto& g : H3.elements())
    for (const auto& r : H3.elements())
      for (long n : {2L, 3L, 5L})
        CHECK(H3.commutator(g, H3.power(r, n)) ==
              H3.power(H3.commutator(g, r), n));

  auto D16 = PcGroup::dihedral_2group(4);
  auto gamma = central_series(D16, SeriesKind::Lower);
  REQUIRE(gamma.chain.size() > 2);
  const auto& gamma3 = gamma.chain[2];
  for (const auto& g : D16.elements())
    for (const auto& r : D16.elements())
      for (long n : {2L, 3L, 5L}) {
        auto lhs = D16.commutator(g, D16.power(r, n));
        auto rhs = D16.power(D16.commutator(g, r), n);
        CHECK(gamma3.count(D16.mul(lhs, D16.inverse(rhs))) == 1);
      }
}

TEST_CASE("power subgroup containment <G^{n^s}> in G^n") {
  CHECK(power_subgroup_check(PcGroup::heisenberg(2), 2));
  CHECK(power_subgroup_check(PcGroup::heisenberg(3), 2));
  CHECK(power_subgroup_check(PcGroup::heisenberg(3), 3));
  CHECK(power_subgroup_check(PcGroup::dihedral_2group(3), 2));
  CHECK(power_subgroup_check(PcGroup::dihedral_2group(3), 3));
  CHECK(power_subgroup_check(PcGroup::cyclic(3, 3), 2));
  CHECK(power_subgroup_check(
      PcGroup::direct_product(PcGroup::cyclic(2, 2), PcGroup::cyclic(2, 3)), 2));
}

TEST_CASE("presentation validation") {
  // relation referencing an earlier generator
  PcGroup::Presentation bad1;
  bad1.orders = {2, 2};
  bad1.power_rhs = {{}, {1, 0}};
  CHECK_THROWS_AS(PcGroup::from_presentation(bad1), std::invalid_argument);

  // non prime-power order
  PcGroup::Presentation bad2;
  bad2.orders = {6};
  CHECK_THROWS_AS(PcGroup::from_presentation(bad2), std::invalid_argument);

  // inconsistent: g3 of order 4 but [g2,g1] = g3 forces g3^2 = 1
  PcGroup::Presentation bad3;
  bad3.orders = {2, 2, 4};
  bad3.power_rhs = {{}, {}, {}};
  bad3.comm_rhs.assign(3, std::vector<PcGroup::Element>(3));
  bad3.comm_rhs[1][0] = {0, 0, 1};
  CHECK_THROWS_AS(PcGroup::from_presentation(bad3), std::invalid_argument);

  // the same shape with g3 of order 2 is the dihedral group of order 8
  PcGroup::Presentation good;
  good.orders = {2, 2, 2};
  good.power_rhs = {{}, {}, {}};
  good.comm_rhs.assign(3, std::vector<PcGroup::Element>(3));
  good.comm_rhs[1][0] = {0, 0, 1};
  auto G = PcGroup::from_presentation(good);
  CHECK(G.order() == 8);
  CHECK(central_series(G, SeriesKind::Upper).nilpotency_class == 2);
}

TEST_CASE("brute force: cube roots in the Heisenberg group mod 2") {
  auto H = PcGroup::heisenberg(2);
  auto sys = parse_system_text("var x\ncoeff a\nx^3 = a\n");
  PcAssignment coeffs{{A_SYM, H.generator(2)}};  // a = g3
  auto found = brute_force_solve(sys.truncate(1), H, coeffs);
  // oracle: enumerate all 8 cubes directly
  std::set<PcGroup::Element> expect;
  for (const auto& x : H.elements())
    if (H.power(x, 3) == H.generator(2)) expect.insert(x);
  CHECK(found.size() == expect.size());
  for (const auto& assign : found) CHECK(expect.count(assign.at(X)) == 1);
}

TEST_CASE("brute force: inconsistent and trivial systems") {
  auto Z4 = PcGroup::cyclic(2, 2);
  auto sys = parse_system_text("var x\ncoeff a, b\nx = a\nx = b\n");
  PcAssignment coeffs{{A_SYM, Z4.generator(0)}, {B_SYM, Z4.identity()}};
  CHECK(brute_force_solve(sys.truncate(2), Z4, coeffs).empty());

  auto comm = parse_system_text("var x, y\n[x,y] = 1\n");
  auto all = brute_force_solve(comm.truncate(1), Z4, {});
  CHECK(all.size() == 16);  // abelian: every pair works
}

TEST_CASE("brute force budget and parallel determinism") {
  auto D8 = PcGroup::dihedral_2group(3);
  auto sys = parse_system_text("var x, y\n[x,y] = 1\n");
  auto eqs = sys.truncate(1);
  CHECK_THROWS_AS(brute_force_solve(eqs, D8, {}, 10), budget_error);
  auto seq = brute_force_solve(eqs, D8, {});
  auto par = brute_force_solve(eqs, D8, {}, 2'000'000, 3);
  CHECK(seq == par);
}

TEST_CASE("lift_solve worked examples") {
  auto H = PcGroup::heisenberg(2);
  auto sys = parse_system_text("var x\ncoeff a\nx^3 = a\n");
  PcAssignment coeffs{{A_SYM, H.generator(0)}};
  auto lifted = lift_solve(sys.truncate(1), H, coeffs);
  auto brute = brute_force_solve(sys.truncate(1), H, coeffs);
  REQUIRE(brute.size() == 1);
  CHECK(lifted == brute[0]);

  // x = a is forced
  auto forced = parse_system_text("var x\ncoeff a\nx = a\n");
  auto sol = lift_solve(forced.truncate(1), H, coeffs);
  CHECK(sol.at(X) == H.generator(0));
}

TEST_CASE("lift_solve on a 2x2 unimodular system over Z9 x Z27") {
  // exponent matrix [[1,-4],[2,-7]], det 1
  auto G = PcGroup::direct_product(PcGroup::cyclic(3, 2), PcGroup::cyclic(3, 3));
  auto sys = parse_system_text(
      "var x, y\n"
      "coeff a, b\n"
      "x y^-4 = a\n"
      "x^2 y^-7 = b\n");
  PcAssignment coeffs{{A_SYM, G.generator(0)},
                      {B_SYM, G.mul(G.generator(0), G.generator(1))}};
  auto lifted = lift_solve(sys.truncate(2), G, coeffs);
  auto brute = brute_force_solve(sys.truncate(2), G, coeffs);
  REQUIRE(brute.size() == 1);
  CHECK(lifted == brute[0]);
}

TEST_CASE("lift_solve rejects bad shapes") {
  auto Z4 = PcGroup::cyclic(2, 2);
  PcAssignment coeffs{{A_SYM, Z4.generator(0)}};
  auto nonsquare = parse_system_text("var x, y\ncoeff a\nx y = a\n");
  CHECK_THROWS_AS(lift_solve(nonsquare.truncate(1), Z4, coeffs),
                  std::invalid_argument);
  auto singular = parse_system_text("var x\ncoeff a\nx^2 = a\n");
  CHECK_THROWS_AS(lift_solve(singular.truncate(1), Z4, coeffs),
                  std::invalid_argument);
}

TEST_CASE("lift_solve equals brute force on random square systems") {
  std::mt19937 rng(777);
  std::vector<PcGroup> groups;
  groups.push_back(PcGroup::cyclic(2, 3));
  groups.push_back(PcGroup::cyclic(3, 3));
  groups.push_back(PcGroup::heisenberg(2));
  groups.push_back(PcGroup::heisenberg(3));
  groups.push_back(PcGroup::dihedral_2group(3));

  std::uniform_int_distribution<int> expd(-4, 4), len(1, 3), coin(0, 1);
  for (const auto& G : groups) {
    PcAssignment coeffs{{A_SYM, G.generator(0)},
                        {B_SYM, G.generator(G.n_gens() - 1)}};
    int accepted = 0, guard = 0;
    while (accepted < 12 && ++guard < 4000) {
      std::vector<Equation> eqs;
      for (int e = 0; e < 2; ++e) {
        std::vector<Letter> letters;
        for (int t = 0, nt = len(rng); t < nt + 1; ++t) {
          int ex = expd(rng);
          if (ex == 0) ex = 1;
          if (coin(rng))
            letters.push_back(Letter{coin(rng) ? A_SYM : B_SYM, false, ex});
          else
            letters.push_back(Letter{coin(rng) ? X : Y, true, ex});
        }
        eqs.push_back(Equation{GroupWord(std::move(letters))});
      }
      std::set<Variable> vars;
      for (const auto& e : eqs) {
        auto vs = variables_of(e.lhs);
        vars.insert(vs.begin(), vs.end());
      }
      if (vars.size() != 2) continue;
      ExponentMatrix M(2, 2);
      std::vector<Variable> vv(vars.begin(), vars.end());
      for (std::size_t i = 0; i < 2; ++i) {
        auto sums = exponent_sums(eqs[i].lhs);
        for (std::size_t j = 0; j < 2; ++j)
          if (auto it = sums.find(vv[j]); it != sums.end())
            M.at(i, j) = it->second;
      }
      if (!classify(M).unimodular) continue;
      ++accepted;
      auto lifted = lift_solve(eqs, G, coeffs);
      auto brute = brute_force_solve(eqs, G, coeffs);
      REQUIRE(brute.size() == 1);  // Shmel'kin uniqueness
      CHECK(lifted == brute[0]);
    }
    CHECK(accepted == 12);
  }
}

TEST_CASE("group file parsing") {
  auto gf = parse_group_text(
      "gens 3; orders 2 2 2; pow 1: ; pow 2: ; pow 3: ; comm 2 1: g3\n"
      "coeff a: g1 g2\n");
  REQUIRE(gf.pc);
  CHECK(gf.pc->order() == 8);
  CHECK(central_series(*gf.pc, SeriesKind::Upper).nilpotency_class == 2);
  CHECK(gf.pc_coeffs.at(A_SYM) ==
        gf.pc->mul(gf.pc->generator(0), gf.pc->generator(1)));

  auto ab = parse_group_text("abelian 4 32\ncoeff a_1: 1 0\ncoeff a_2: 0 1\n");
  REQUIRE(ab.abelian);
  CHECK(ab.abelian->size() == 128);
  CHECK(ab.ab_coeffs.at(Symbol{"a", 1}) == ab.abelian->generator(0));

  CHECK_THROWS(parse_group_text("gens 2; orders 2\n"));       // count mismatch
  CHECK_THROWS(parse_group_text("nonsense\n"));
  CHECK_THROWS(parse_group_text("gens 2; orders 2 2; comm 1 2: g2\n"));
  CHECK_THROWS(parse_group_text("gens 2; orders 2 2; pow 1: g1\n"));
}
