#include <gtest/gtest.h>

#include "ktheory/spaces.hpp"

using namespace ktheory;

namespace {

using E = SpaceExpr;

const PrimeSpot I3 = PrimeSpot::maximal_i(3);
const PrimeSpot J3 = PrimeSpot::maximal_j(3);

std::vector<E> atoms() { return {E::point(), E::sign_line(), E::orbit()}; }

// Product-free expressions of moderate size.
std::vector<E> leaves() {
    return {E::point(),
            E::sign_line(),
            E::orbit(),
            E::make_atom("GxR"),
            E::cell(1),
            E::cell(2),
            E::free_cell(1),
            E::suspend_v(E::orbit()),
            E::suspend_r(E::sign_line()),
            E::disjoint_union({E::point(), E::sign_line()}),
            E::disjoint_union({E::orbit(), E::cell(3), E::suspend_v(E::point())})};
}

} // namespace

TEST(EvalKInvariant, Atoms) {
    EXPECT_EQ(eval_kinvariant(E::point()), catalog::point().kinv);
    EXPECT_EQ(eval_kinvariant(E::suspend_v(E::point())), catalog::sign_line().kinv);
    const KInvariant g = catalog::free_orbit().kinv;
    const KInvariant sg = eval_kinvariant(E::suspend_r(E::orbit()));
    EXPECT_EQ(sg.kg[1], g.kg[0]);
    EXPECT_EQ(sg.kg_minus[0], g.kg_minus[1]);
    EXPECT_EQ(eval_kinvariant(E::free_cell(1)), catalog::free_orbit_line().kinv);
    EXPECT_EQ(eval_kinvariant(E::cell(2)), catalog::point().kinv);
}

TEST(EvalKInvariant, RejectsProducts) {
    EXPECT_THROW(eval_kinvariant(E::product(E::point(), E::orbit())), InvalidInput);
    EXPECT_THROW(eval_kinvariant(E::suspend_v(E::product(E::point(), E::orbit()))), InvalidInput);
    EXPECT_THROW(eval_kinvariant(E::make_atom("torus")), InvalidInput);
}

TEST(EvalKInvariant, ResultsValidate) {
    for (const auto& e : leaves()) EXPECT_TRUE(validate_kinvariant(eval_kinvariant(e)).empty()) << to_string(e);
}

TEST(SpaceExpr, Construction) {
    EXPECT_THROW(E::cell(0), InvalidInput);
    EXPECT_THROW(E::free_cell(0), InvalidInput);
    EXPECT_THROW(E::product(std::vector<E>{E::point()}), InvalidInput);
    EXPECT_EQ(to_string(E::product(E::orbit(), E::suspend_r(E::cell(2)))), "(G x R^2 x R)");
    EXPECT_TRUE(is_free(E::product(E::point(), E::orbit())));
    EXPECT_FALSE(is_free(E::disjoint_union({E::point(), E::orbit()})));
    EXPECT_TRUE(is_free(E::disjoint_union({E::free_cell(2), E::orbit()})));
    EXPECT_FALSE(is_free(E::cell(1)));
}

TEST(EvalLocal, Examples) {
    const LocalEval gg = eval_local(E::product(E::orbit(), E::orbit()), I3, Side::Main);
    EXPECT_EQ(gg.graded.even, ZpModule::free(3, 4));
    EXPECT_FALSE(gg.ambiguous);
    EXPECT_EQ(eval_local(E::product(E::sign_line(), E::sign_line()), I3, Side::Main).graded,
              eval_local(E::point(), I3, Side::Main).graded);
    EXPECT_EQ(eval_local(E::product(E::point(), E::point()), J3, Side::SupportG).graded,
              (GradedZpModule{ZpModule::free(3, 1), ZpModule::zero(3)}));
}

TEST(EvalLocal, SideChecks) {
    EXPECT_THROW(eval_local(E::point(), J3, Side::Main), InvalidInput);
    EXPECT_THROW(eval_local(E::point(), I3, Side::SupportG), InvalidInput);
    EXPECT_THROW(eval_local(E::point(), PrimeSpot::maximal_i(2), Side::Main), InvalidInput);
    EXPECT_THROW(eval_local(E::point(), PrimeSpot::minimal_i(), Side::Main), InvalidInput);
    KunnethOptions opt;
    opt.experimental_p2 = true;
    EXPECT_NO_THROW(eval_local(E::point(), PrimeSpot::maximal_i(2), Side::Main, opt));
}

TEST(FreeOracle, Examples) {
    const GradedZpModule pt = free_oracle(E::product(E::point(), E::orbit()), I3);
    EXPECT_EQ(pt.total_rank(), 2U);
    EXPECT_EQ(pt.even.rank, 2U);
    EXPECT_EQ(free_oracle(E::product(E::orbit(), E::orbit()), I3).total_rank(), 4U);
    const GradedZpModule v = free_oracle(E::product(E::sign_line(), E::orbit()), I3);
    EXPECT_EQ(v, (GradedZpModule{ZpModule::zero(3), ZpModule::free(3, 2)}));
    EXPECT_THROW(free_oracle(E::product(E::point(), E::point()), I3), InvalidInput);
    EXPECT_THROW(free_oracle(E::product(E::point(), E::orbit()), PrimeSpot::maximal_i(2)), InvalidInput);
    EXPECT_THROW(free_oracle(E::orbit(), I3), InvalidInput);
}

TEST(OracleEquivalence, AtomPairs) {
    for (std::uint64_t p : {3ULL, 5ULL}) {
        const PrimeSpot s = PrimeSpot::maximal_i(p);
        for (const auto& a : atoms())
            for (const auto& b : atoms()) {
                const auto direct = direct_product(a, b, s, Side::Main);
                ASSERT_TRUE(direct.has_value());
                EXPECT_EQ(eval_local(E::product(a, b), s, Side::Main).graded, *direct) << to_string(a) << " x " << to_string(b);
            }
    }
}

TEST(OracleEquivalence, FreeShapes) {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        const PrimeSpot s = PrimeSpot::maximal_i(p);
        for (const auto& x : leaves()) {
            EXPECT_EQ(eval_local(E::product(x, E::orbit()), s, Side::Main).graded, free_oracle(E::product(x, E::orbit()), s))
                << to_string(x);
            EXPECT_EQ(eval_local(E::product(E::orbit(), x), s, Side::Main).graded, free_oracle(E::product(E::orbit(), x), s));
        }
    }
}

TEST(OracleEquivalence, SupportGPairs) {
    const std::vector<E> xs{E::point(), E::sign_line()};
    for (std::uint64_t p : {3ULL, 5ULL}) {
        const PrimeSpot s = PrimeSpot::maximal_j(p);
        for (const auto& a : xs)
            for (const auto& b : xs)
                EXPECT_EQ(eval_local(E::product(a, b), s, Side::SupportG).graded, *direct_product(a, b, s, Side::SupportG));
        EXPECT_TRUE(eval_local(E::product(E::orbit(), E::point()), s, Side::SupportG).graded.is_zero());
        EXPECT_TRUE(direct_product(E::orbit(), E::sign_line(), s, Side::SupportG)->is_zero());
    }
}

TEST(SpaceLaws, UnitSignAndUnion) {
    for (std::uint64_t p : {3ULL, 5ULL}) {
        const PrimeSpot s = PrimeSpot::maximal_i(p);
        for (const auto& e : leaves()) {
            const GradedZpModule base = eval_local(e, s, Side::Main).graded;
            EXPECT_EQ(eval_local(E::product(e, E::point()), s, Side::Main).graded, base) << to_string(e);
            EXPECT_EQ(eval_local(E::suspend_v(E::suspend_v(e)), s, Side::Main).graded, base);
            EXPECT_EQ(eval_local(E::suspend_r(E::suspend_r(e)), s, Side::Main).graded, base);
            const E prod = E::product(e, E::sign_line());
            EXPECT_EQ(eval_local(E::suspend_v(E::suspend_v(prod)), s, Side::Main).graded, eval_local(prod, s, Side::Main).graded);
            for (const auto& f : leaves()) {
                const GradedZpModule sum =
                    direct_sum(eval_local(E::product(e, f), s, Side::Main).graded, eval_local(f, s, Side::Main).graded);
                EXPECT_EQ(eval_local(E::disjoint_union({E::product(e, f), f}), s, Side::Main).graded, sum);
            }
        }
    }
}

TEST(SpaceLaws, SignSuspensionOfProducts) {
    // (V x V) x V = V, and the sign suspension may act on either factor.
    const E vv = E::product(E::sign_line(), E::sign_line());
    EXPECT_EQ(eval_local(E::suspend_v(vv), I3, Side::Main).graded, eval_local(E::sign_line(), I3, Side::Main).graded);
    const E pg = E::product(E::point(), E::orbit());
    EXPECT_EQ(eval_local(E::suspend_v(pg), I3, Side::Main).graded,
              eval_local(E::product(E::point(), E::suspend_v(E::orbit())), I3, Side::Main).graded);
}

TEST(SpaceLaws, TripleProducts) {
    const E ggg = E::product(std::vector<E>{E::orbit(), E::orbit(), E::orbit()});
    const LocalEval r = eval_local(ggg, I3, Side::Main);
    EXPECT_EQ(r.graded.even, ZpModule::free(3, 8));
    EXPECT_EQ(eval_local(E::product(E::product(E::orbit(), E::orbit()), E::orbit()), I3, Side::Main).graded, r.graded);
}

TEST(EvalNonEquivariant, Catalog) {
    EXPECT_EQ(eval_nonequivariant(E::point())[0], AbelianGroup::free(1));
    EXPECT_EQ(eval_nonequivariant(E::sign_line())[1], AbelianGroup::free(1));
    EXPECT_EQ(eval_nonequivariant(E::orbit())[0], AbelianGroup::free(2));
    EXPECT_EQ(eval_nonequivariant(E::free_cell(1))[1], AbelianGroup::free(2));
    const auto u = eval_nonequivariant(E::disjoint_union({E::point(), E::cell(1)}));
    EXPECT_EQ(u[0], AbelianGroup::free(1));
    EXPECT_EQ(u[1], AbelianGroup::free(1));
    EXPECT_THROW(eval_nonequivariant(E::product(E::point(), E::point())), InvalidInput);
}
