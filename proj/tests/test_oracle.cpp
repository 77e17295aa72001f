#include <doctest.h>

#include <algorithm>
#include <random>

#include "symbreak/oracle.hpp"
#include "symbreak/run.hpp"

using namespace symbreak;
using namespace symbreak::oracle;
using ordering::OrderingKind;

TEST_CASE("reflected list construction") {
    auto l1 = reflected_gray_list(1, 2);
    CHECK(l1 == std::vector<std::vector<int>>{{0}, {1}});
    auto l2 = reflected_gray_list(2, 3);
    CHECK(l2 == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}, {1, 0},
                                              {2, 0}, {2, 1}, {2, 2}});
    for (size_t p = 0; p < l2.size(); ++p) CHECK(gray_rank_recursive(l2[p], 3) == p);
}

TEST_CASE("canonical_in_orbit") {
    auto lin_row2 = symmetry::linearize(engine::Shape::matrix(2, 2), symmetry::Scheme::Row);
    auto group = symmetry::rowcol_symmetries(2, 2);

    SUBCASE("the identity group returns the assignment unchanged") {
        symmetry::SymmetryGroup id;
        id.elements = {symmetry::Symmetry::identity(4)};
        std::vector<int> a{1, 0, 0, 1};
        CHECK(canonical_in_orbit(a, id, OrderingKind::Lex, lin_row2, 2) == a);
    }
    SUBCASE("the 2x2 exchange matrix is its own lex canonical") {
        std::vector<int> a{0, 1, 1, 0};
        CHECK(canonical_in_orbit(a, group, OrderingKind::Lex, lin_row2, 2) == a);
    }
    SUBCASE("anti-lex canonical is the orbit maximum") {
        std::vector<int> a{0, 1, 1, 0};
        auto anti = canonical_in_orbit(a, group, OrderingKind::AntiLex, lin_row2, 2);
        CHECK(anti == std::vector<int>{1, 0, 0, 1});
    }
    SUBCASE("canonical is invariant under pre-application of group elements") {
        auto group3 = symmetry::square_symmetries(3);
        auto lin = symmetry::linearize(engine::Shape::matrix(3, 3), symmetry::Scheme::Row);
        std::vector<int> a{0, 1, 1, 0, 0, 1, 0, 0, 0};
        for (auto kind : {OrderingKind::Lex, OrderingKind::Gray, OrderingKind::AntiGray}) {
            auto canon = canonical_in_orbit(a, group3, kind, lin, 2);
            for (const auto& sigma : group3.elements)
                CHECK(canonical_in_orbit(symmetry::apply(sigma, a), group3, kind, lin, 2) ==
                      canon);
        }
    }
    SUBCASE("guard on oversized groups") {
        symmetry::SymmetryGroup big;
        big.elements.assign(kGroupGuard + 1, symmetry::Symmetry::identity(4));
        std::vector<int> a{0, 0, 0, 0};
        CHECK_THROWS_AS(canonical_in_orbit(a, big, OrderingKind::Lex, lin_row2, 2), GuardError);
    }
}

TEST_CASE("dc_closure") {
    SUBCASE("lex failure case") {
        std::vector<Domain> doms(4, Domain(2));
        doms[0].assign(1);
        doms[2].assign(0);
        auto result = dc_closure(
            [](const std::vector<int>& a) {
                return std::vector<int>{a[0], a[1]} <= std::vector<int>{a[2], a[3]};
            },
            doms);
        CHECK(result.failure);
    }
    SUBCASE("gray closure of X=(1,1), Y free") {
        std::vector<Domain> doms(4, Domain(2));
        doms[0].assign(1);
        doms[1].assign(1);
        auto result = dc_closure(
            [](const std::vector<int>& a) {
                return gray_rank_recursive({a[0], a[1]}, 2) <=
                       gray_rank_recursive({a[2], a[3]}, 2);
            },
            doms);
        REQUIRE(!result.failure);
        CHECK(result.domains[2].values() == std::vector<int>{1});
        CHECK(result.domains[3].values() == std::vector<int>{0, 1});
    }
    SUBCASE("idempotence and monotonicity") {
        std::vector<Domain> doms(4, Domain(2));
        auto pred = [](const std::vector<int>& a) {
            return gray_rank_recursive({a[0], a[1]}, 2) <= gray_rank_recursive({a[2], a[3]}, 2);
        };
        auto once = dc_closure(pred, doms);
        REQUIRE(!once.failure);
        auto twice = dc_closure(pred, once.domains);
        REQUIRE(!twice.failure);
        CHECK(twice.domains == once.domains);
        // Shrink an input: outputs stay within the original closure.
        auto shrunk = doms;
        shrunk[0].remove(0);
        auto closed = dc_closure(pred, shrunk);
        if (!closed.failure)
            for (size_t i = 0; i < doms.size(); ++i)
                CHECK(closed.domains[i].subset_of(once.domains[i]));
    }
    SUBCASE("enumeration guard") {
        std::vector<Domain> doms(23, Domain(2));
        CHECK_THROWS_AS(for_each_assignment(doms, [](const std::vector<int>&) {}), GuardError);
    }
}

TEST_CASE("direct checkers") {
    SUBCASE("the n=3 still-life pattern from the figure") {
        // . # #
        // # . #
        // # # .
        std::vector<int> board{0, 1, 1, 1, 0, 1, 1, 1, 0};
        auto r = direct_check(models::ModelKind::StillLife, 3, board);
        CHECK(r.feasible);
        CHECK(r.objective == 6);
    }
    SUBCASE("a lone live cell is not stable") {
        std::vector<int> board{0, 0, 0, 0, 1, 0, 0, 0, 0};
        CHECK(!direct_check(models::ModelKind::StillLife, 3, board).feasible);
    }
    SUBCASE("a birth just outside the board is caught") {
        // Three live cells in the top row would give birth above the board.
        std::vector<int> board{1, 1, 1, 0, 0, 0, 0, 0, 0};
        CHECK(!still_life_stable(3, board));
    }
    SUBCASE("labs constant energy") {
        CHECK(labs_energy({0, 0, 0, 0}) == 14);
        CHECK(labs_energy({1, 1, 1, 1}) == 14);
        CHECK(direct_check(models::ModelKind::Labs, 4, {0, 0, 0, 0}).objective == 14);
    }
    SUBCASE("queens with both colors in one row is infeasible") {
        std::vector<int> board{1, 0, 2, 0, 0, 0, 0, 0, 0};
        CHECK(!direct_check(models::ModelKind::QueensArmies, 3, board).feasible);
    }
    SUBCASE("queens must field equal armies") {
        std::vector<int> board{1, 0, 0, 0, 0, 0, 0, 0, 0};
        CHECK(!direct_check(models::ModelKind::QueensArmies, 3, board).feasible);
        std::vector<int> ok{1, 0, 0, 0, 0, 0, 0, 2, 0};
        auto r = direct_check(models::ModelKind::QueensArmies, 3, ok);
        CHECK(r.feasible);
        CHECK(r.objective == 1);
    }
}

TEST_CASE("verify_sound_complete") {
    auto inst = models::build_free_matrix(3, 3);
    auto group = symmetry::rowcol_symmetries(3, 3);

    SUBCASE("empty breaking keeps whole orbits") {
        BreakingUnderTest none;
        auto report = verify_sound_complete(inst, group, none);
        CHECK(report.total_solutions == 512);
        CHECK(report.surviving_solutions == 512);
        CHECK(report.orbit_count == 36);
        CHECK(report.sound());
        uint64_t covered = 0;
        for (int s : report.survivors_per_orbit) covered += s;
        CHECK(covered == 512); // survivors per orbit sum to the orbit sizes
    }
    SUBCASE("gray leader keeps exactly one canonical survivor per orbit") {
        auto spec = run::parse_break("gray row");
        auto report = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
        CHECK(report.orbit_count == 36);
        CHECK(report.sound());
        CHECK(report.complete());
        CHECK(report.survivor_histogram.at(1) == 36);
        CHECK(report.canonical_mismatches.empty());
    }
    SUBCASE("doublelex is sound but incomplete on the 3x3 instance") {
        auto spec = run::parse_break("doublelex");
        auto report = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
        CHECK(report.sound());
        CHECK(report.multi_survivor_orbits > 0);
    }
    SUBCASE("a strict leader loses symmetric orbits entirely") {
        auto spec = run::parse_break("strict-lex row");
        auto report = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
        CHECK(!report.sound());
        CHECK(!report.first_counterexample.empty());
    }
    SUBCASE("group guard") {
        symmetry::SymmetryGroup big;
        big.elements.assign(kGroupGuard + 1, symmetry::Symmetry::identity(9));
        BreakingUnderTest none;
        CHECK_THROWS_AS(verify_sound_complete(inst, big, none), GuardError);
    }
    SUBCASE("assignment-space guard") {
        auto huge = models::build_free_matrix(5, 5);
        BreakingUnderTest none;
        CHECK_THROWS_AS(verify_sound_complete(huge, symmetry::rowcol_symmetries(3, 3), none),
                        GuardError);
    }
}

TEST_CASE("leader verification across models and orderings") {
    SUBCASE("queens n=2: ternary orderings with the color-swap value map") {
        auto inst = models::build_queens_armies(2);
        auto group = symmetry::queens_symmetries(2);
        for (std::string label : {"lex row", "anti-lex col", "gray snake", "anti-gray spiral"}) {
            auto spec = run::parse_break(label);
            auto rep = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
            CHECK(rep.group_preserves_solutions);
            CHECK(rep.sound());
            CHECK(rep.complete());
        }
    }
    SUBCASE("queens n=3 under the full 16-element group") {
        auto inst = models::build_queens_armies(3);
        auto group = symmetry::queens_symmetries(3);
        for (std::string label : {"gray row", "anti-gray col"}) {
            auto spec = run::parse_break(label);
            auto rep = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
            CHECK(rep.group_preserves_solutions);
            CHECK(rep.sound());
            CHECK(rep.complete());
        }
    }
    SUBCASE("labs n=5: the whole sequence menu is sound and complete") {
        auto inst = models::build_labs(5);
        auto group = symmetry::labs_symmetries(5);
        for (std::string kind : {"lex", "anti-lex", "gray", "anti-gray"})
            for (std::string scheme : {"", " rev", " outside-in", " inside-out"}) {
                auto spec = run::parse_break(kind + scheme);
                auto rep =
                    verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
                CHECK(rep.group_preserves_solutions);
                CHECK(rep.sound());
                CHECK(rep.complete());
            }
    }
    SUBCASE("still life n=3 under the square group") {
        auto inst = models::build_still_life(3);
        auto group = symmetry::square_symmetries(3);
        for (std::string label : {"gray row", "anti-lex spiral", "anti-gray col-snake"}) {
            auto spec = run::parse_break(label);
            auto rep = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
            CHECK(rep.group_preserves_solutions);
            CHECK(rep.sound());
            CHECK(rep.complete());
        }
    }
    SUBCASE("doublelex and snakelex stay sound on a non-square matrix") {
        auto inst = models::build_free_matrix(2, 3);
        auto group = symmetry::rowcol_symmetries(2, 3);
        for (std::string label : {"doublelex", "snakelex columnwise", "snakelex rowwise"}) {
            auto spec = run::parse_break(label);
            auto rep = verify_sound_complete(inst, group, run::breaking_under_test(inst, spec));
            CHECK(rep.group_preserves_solutions);
            CHECK(rep.sound());
        }
    }
}

TEST_CASE("anti canonicals are the orbit extremes under the base order") {
    auto group = symmetry::square_symmetries(3);
    auto lin = symmetry::linearize(engine::Shape::matrix(3, 3), symmetry::Scheme::Row);
    std::mt19937 rng(101);
    for (int round = 0; round < 50; ++round) {
        std::vector<int> a(9);
        for (auto& v : a) v = int(rng() % 2);
        auto project = [&](const std::vector<int>& full) {
            std::vector<int> w(9);
            for (int t = 0; t < 9; ++t) w[t] = full[lin.order[t]];
            return w;
        };
        for (auto [kind, anti] :
             {std::pair{OrderingKind::Lex, OrderingKind::AntiLex},
              std::pair{OrderingKind::Gray, OrderingKind::AntiGray}}) {
            auto least = canonical_in_orbit(a, group, kind, lin, 2);
            auto greatest = canonical_in_orbit(a, group, anti, lin, 2);
            for (const auto& sigma : group.elements) {
                auto image = symmetry::apply(sigma, a);
                CHECK(compare_words(kind, project(least), project(image), 2) <= 0);
                CHECK(compare_words(kind, project(greatest), project(image), 2) >= 0);
            }
        }
    }
}
