#include <gtest/gtest.h>

#include "equiwitt/catalog.hpp"
#include "equiwitt/cohom.hpp"
#include "test_util.hpp"

using namespace equiwitt;

namespace {

const std::vector<std::string> kAppendixSpaces = {"S(1,1)", "S(2,0)", "S(2,1)", "S(1,2)", "S(3,0)",
                                                  "theta",  "torus-SxS11", "S(2,2)", "S(1,3)", "S11xS11"};

FGAbGroup ordinary_or_zero(const SimplicialGComplex& x, const std::string& coeff, int q) {
    if (x.vertex_count() == 0 || q > x.dim()) return {};
    return ordinary_cohomology(x, standard_gmodule(coeff), q);
}

SimplicialGComplex quotient_space(const SimplicialGComplex& y) {
    return quotient(subdivide_until_quotient_ok(y).complex).complex;
}

std::string coeff_tag(const FGAbGroup& g) {
    if (g.free_rank() == 1) return "Z";
    return "Z/2";
}

}  // namespace

TEST(Appendix, BredonKOGSplitsAsFixedPlusQuotient) {
    for (auto& name : kAppendixSpaces) {
        SimplicialGComplex y = prepared(build_space(name));
        SimplicialGComplex f = fixed_subcomplex(y);
        SimplicialGComplex xg = quotient_space(y);
        for (int q : {0, -1, -2, -4}) {
            FGAbGroup k = ko_point(q);
            for (int p = 0; p <= y.dim(); ++p) {
                FGAbGroup lhs = bredon_cohomology(y, ko_g_system(q), p);
                FGAbGroup rhs = direct_sum(ordinary_or_zero(f, coeff_tag(k), p), ordinary_or_zero(xg, coeff_tag(k), p));
                EXPECT_EQ(lhs, rhs) << name << " KO_G(" << q << ") degree " << p;
            }
        }
    }
}

TEST(Appendix, KRTwoEqualsTwistedLocal) {
    GModule z1 = standard_gmodule("Z(1)");
    for (auto& name : kAppendixSpaces) {
        SimplicialGComplex y = prepared(build_space(name));
        SimplicialGComplex f = fixed_subcomplex(y);
        for (int p = 0; p <= y.dim(); ++p) {
            FGAbGroup local = local_cohomology(y, z1, p);
            EXPECT_EQ(bredon_cohomology(y, kr_system(2), p), local) << name << " degree " << p;
            EXPECT_EQ(bredon_cohomology(y, kr_system(-2), p), direct_sum(ordinary_or_zero(f, "Z/2", p), local))
                << name << " degree " << p;
        }
    }
}

TEST(Appendix, KRMinusFourInDegreeFour) {
    // dim X^G <= 2: H^4_G(X; KR^-4) = H^4(X/G; Z).
    for (auto name : {"Q2", "S2xS2-i", "S2xS2-iii", "Q1xP1", "S2xS2-swap"}) {
        SimplicialGComplex y = prepared(build_space(name));
        ASSERT_LE(fixed_subcomplex(y).dim(), 2) << name;
        ASSERT_EQ(y.dim(), 4) << name;
        EXPECT_EQ(bredon_cohomology(y, kr_system(-4), 4), ordinary_or_zero(quotient_space(y), "Z", 4)) << name;
    }
}

TEST(Appendix, GroupRingCoefficientsGiveOrdinaryCohomology) {
    GModule zg = standard_gmodule("Z[G]"), z = standard_gmodule("Z");
    for (auto& name : kAppendixSpaces) {
        SimplicialGComplex y = prepared(build_space(name));
        for (int q = 0; q <= y.dim(); ++q) {
            FGAbGroup ord = ordinary_cohomology(y, z, q);
            EXPECT_EQ(borel_cohomology(y, zg, q), ord) << name << " degree " << q;
            EXPECT_EQ(local_cohomology(y, zg, q), ord) << name << " degree " << q;
        }
    }
}

TEST(Appendix, BorelCohomologyOfPoint) {
    SimplicialGComplex pt = SimplicialGComplex::with_trivial_action({"p"}, {{0}});
    for (int q = 0; q <= 6; ++q) {
        EXPECT_EQ(borel_cohomology(pt, standard_gmodule("Z/2"), q), FGAbGroup::elementary(1)) << q;
        // Z: Z, 0, Z/2, 0, Z/2, ...; Z(1): 0, Z/2, 0, Z/2, ...
        FGAbGroup z = q == 0 ? FGAbGroup::free(1) : (q % 2 == 0 ? FGAbGroup::elementary(1) : FGAbGroup{});
        FGAbGroup z1 = q % 2 == 1 ? FGAbGroup::elementary(1) : FGAbGroup{};
        EXPECT_EQ(borel_cohomology(pt, standard_gmodule("Z"), q), z) << q;
        EXPECT_EQ(borel_cohomology(pt, standard_gmodule("Z(1)"), q), z1) << q;
    }
}

TEST(Appendix, BorelOfTrivialActionIsSumOverDegrees) {
    // X = X^G: H^n_G(X, Z/2) = sum_{p <= n} H^p(X, Z/2).
    for (auto name : {"S(0,2)", "S(0,3)", "RP2-6"}) {
        SimplicialGComplex y = prepared(build_space(name));
        for (int n = 0; n <= 4; ++n) {
            int expect = 0;
            for (int p = 0; p <= std::min(n, y.dim()); ++p)
                expect += static_cast<int>(ordinary_cohomology(y, standard_gmodule("Z/2"), p).invariant_factors().size());
            EXPECT_EQ(borel_cohomology(y, standard_gmodule("Z/2"), n), FGAbGroup::elementary(expect)) << name << " " << n;
        }
    }
}

TEST(Appendix, ConstantSystemIsQuotientCohomology) {
    for (auto& name : kAppendixSpaces) {
        SimplicialGComplex y = prepared(build_space(name));
        SimplicialGComplex xg = quotient_space(y);
        for (int q = 0; q <= y.dim(); ++q) {
            FGAbGroup ord = ordinary_or_zero(xg, "Z", q);
            EXPECT_EQ(bredon_cohomology(y, constant_system("Z"), q), ord) << name << " " << q;
            EXPECT_EQ(local_cohomology(y, standard_gmodule("Z"), q), ord) << name << " " << q;
        }
    }
}

TEST(Appendix, RelativeSystemVanishesForTrivialAction) {
    for (auto name : {"S(0,2)", "S(0,3)", "RP2-6"}) {
        SimplicialGComplex y = prepared(build_space(name));
        for (int q = 0; q <= y.dim(); ++q) EXPECT_TRUE(bredon_cohomology(y, relative_system("Z"), q).is_trivial()) << name;
    }
}

TEST(Appendix, RelativeSystemIsTwistedLocalForZ1) {
    for (auto& name : kAppendixSpaces) {
        SimplicialGComplex y = prepared(build_space(name));
        for (int q = 0; q <= y.dim(); ++q)
            EXPECT_EQ(bredon_cohomology(y, relative_system("Z(1)"), q), local_cohomology(y, standard_gmodule("Z(1)"), q))
                << name << " " << q;
    }
}

TEST(Appendix, FreeActionTheoriesAgree) {
    GModule z1 = standard_gmodule("Z(1)");
    for (auto name : {"S(2,0)", "S(3,0)", "Q2", "GxCP1", "RP2xS1-G"}) {
        SimplicialGComplex y = prepared(build_space(name));
        ASSERT_TRUE(y.is_free()) << name;
        for (int q = 0; q <= y.dim(); ++q) {
            FGAbGroup l = local_cohomology(y, z1, q);
            EXPECT_EQ(borel_cohomology(y, z1, q), l) << name << " " << q;
            EXPECT_EQ(bredon_cohomology(y, relative_system("Z(1)"), q), l) << name << " " << q;
        }
    }
}

TEST(Appendix, LowDegreeBorelSequenceForReflectionCircle) {
    // 0 -> H^1(X/G) = 0 -> H^1_G -> H^0(X^G) = (Z/2)^2 -> H^2(X/G) = 0
    EXPECT_EQ(borel_cohomology(sphere(1, 1), standard_gmodule("Z/2"), 1), FGAbGroup::elementary(2));
}

TEST(Bredon, KOGDegreeZeroCountsFixedComponents) {
    SimplicialGComplex y = prepared(sphere(2, 1));
    EXPECT_EQ(bredon_cohomology(y, ko_g_system(0), 0), FGAbGroup::free(3));
}

TEST(Borel, TruncationStability) {
    for (auto name : {"S(1,1)", "S(2,1)", "theta", "S(2,0)"}) {
        SimplicialGComplex y = prepared(build_space(name));
        for (auto tag : {"Z", "Z(1)", "Z/2"})
            for (int q = 0; q <= 4; ++q)
                EXPECT_EQ(borel_cohomology(y, standard_gmodule(tag), q, q + 2), borel_cohomology(y, standard_gmodule(tag), q, q + 5))
                    << name << " " << tag << " " << q;
    }
}

TEST(Local, ExamplesFromSphereTable) {
    EXPECT_EQ(local_cohomology(prepared(sphere(2, 1)), standard_gmodule("Z"), 2), FGAbGroup::free(1));
    SimplicialGComplex pt = SimplicialGComplex::with_trivial_action({"p"}, {{0}});
    EXPECT_TRUE(local_cohomology(pt, standard_gmodule("Z(1)"), 0).is_trivial());
}

TEST(Subdivision, CohomologyInvariantAcrossCorpus) {
    // Entries of dim <= 3; the acceptance run covers the whole corpus.
    std::vector<std::string> theories = {"ordinary:Z", "local:Z(1)", "local:Z", "borel:Z/2", "bredon:KO_G(0)", "bredon:KR(-2)"};
    int spaces = 0;
    for (auto& e : catalog()) {
        if (e.pathway != Pathway::simplicial) continue;
        SimplicialGComplex x = build_space(e.name);
        if (x.dim() > 3) continue;
        SimplicialGComplex y = prepared(x), z = prepared(barycentric_subdivide(y));
        for (auto& t : theories) {
            auto colon = t.find(':');
            CohomologyRequest r;
            r.theory = parse_theory(t.substr(0, colon));
            if (r.theory == Theory::bredon)
                r.system = parse_system(t.substr(colon + 1));
            else
                r.module = standard_gmodule(t.substr(colon + 1));
            r.lo = 0;
            r.hi = std::min(y.dim(), 4);
            EXPECT_EQ(compute(y, r), compute(z, r)) << e.name << " " << t;
        }
        ++spaces;
    }
    EXPECT_GE(spaces, 14);
}

TEST(Cup, ProjectivePlaneAndTorus) {
    SimplicialGComplex rp2 = prepared(test::real_projective_plane());
    auto h1 = mod2_basis(rp2, 1);
    ASSERT_EQ(h1.size(), 1u);
    EXPECT_FALSE(is_zero_class(rp2, cup_mod2(rp2, h1[0], h1[0])));

    SimplicialGComplex torus = prepared(build_space("torus-SxS11"));
    SimplicialGComplex plain = SimplicialGComplex::with_trivial_action(torus.names(), torus.maximal());
    plain = prepared(plain);
    auto t1 = mod2_basis(plain, 1);
    ASSERT_EQ(t1.size(), 2u);
    EXPECT_FALSE(is_zero_class(plain, cup_mod2(plain, t1[0], t1[1])));
    EXPECT_TRUE(is_zero_class(plain, cup_mod2(plain, t1[0], t1[0])));

    // 1 cup u = u
    auto h0 = mod2_basis(plain, 0);
    ASSERT_EQ(h0.size(), 1u);
    CohomClass u = cup_mod2(plain, h0[0], t1[1]);
    CohomClass diff = u;
    for (std::size_t i = 0; i < diff.cochain.size(); ++i) diff.cochain[i] = (diff.cochain[i] + t1[1].cochain[i]) % 2;
    EXPECT_TRUE(is_zero_class(plain, diff));
}

TEST(Cup, SquareOnProjectivePlaneTriangulation) {
    SimplicialGComplex cp2 = prepared(build_space("CP2-9"));
    auto h2 = mod2_basis(cp2, 2);
    ASSERT_EQ(h2.size(), 1u);
    CohomClass sq = sq2_degree2(cp2, h2[0]);
    EXPECT_EQ(sq.degree, 4);
    EXPECT_FALSE(is_zero_class(cp2, sq));
    EXPECT_THROW(sq2_degree2(cp2, mod2_basis(cp2, 0)[0]), InputError);
}

TEST(Cup, SquaresVanishOnSphereProduct) {
    SimplicialGComplex x = prepared(product(sphere(1, 2), sphere(1, 2)));
    SimplicialGComplex plain = prepared(SimplicialGComplex::with_trivial_action(x.names(), x.maximal()));
    auto h2 = mod2_basis(plain, 2);
    ASSERT_EQ(h2.size(), 2u);
    CohomClass sum = h2[0];
    for (std::size_t i = 0; i < sum.cochain.size(); ++i) sum.cochain[i] = (sum.cochain[i] + h2[1].cochain[i]) % 2;
    for (auto& u : {h2[0], h2[1], sum}) EXPECT_TRUE(is_zero_class(plain, sq2_degree2(plain, u)));
}

TEST(Bockstein, ProjectivePlane) {
    SimplicialGComplex rp2 = prepared(test::real_projective_plane());
    auto h1 = mod2_basis(rp2, 1);
    CohomClass b = bockstein_integral(rp2, h1[0], "Z");
    EXPECT_EQ(b.degree, 2);
    EXPECT_FALSE(is_zero_class(rp2, b));
    // The reduction of an integral class has zero Bockstein.
    SimplicialGComplex s = prepared(SimplicialGComplex::with_trivial_action(sphere(0, 3).names(), sphere(0, 3).maximal()));
    for (auto& u : mod2_basis(s, 2)) EXPECT_TRUE(is_zero_class(s, bockstein_integral(s, u, "Z")));
}

TEST(Hbar2, ProjectivePlaneTimesCircle) {
    SimplicialGComplex y = product(test::real_projective_plane(), sphere(0, 2));
    EXPECT_EQ(hbar2(y), FGAbGroup::elementary(1));
    EXPECT_TRUE(hbar2(test::real_projective_plane()).is_trivial());
}

TEST(Hbar2, TwistedVersionRejectsFixedPoints) {
    EXPECT_THROW(hbar2_g(sphere(1, 2)), InputError);
    EXPECT_TRUE(hbar2_g(sphere(3, 0)).is_trivial());
}

TEST(MinusOne, AntipodalAndSwap) {
    MinusOneClass m = minus_one_class(prepared(sphere(2, 0)));
    EXPECT_TRUE(m.defined);
    EXPECT_TRUE(m.nonzero);
    // G x S^2: the double cover is trivial.
    MinusOneClass g = minus_one_class(prepared(build_space("GxCP1")));
    EXPECT_TRUE(g.defined);
    EXPECT_FALSE(g.nonzero);
    EXPECT_FALSE(minus_one_class(prepared(sphere(1, 1))).defined);
}

TEST(Involution, SecondCohomologyOfSphereProducts) {
    EXPECT_EQ(comessatti_decompose(InvolutionModule{cohomology_involution(prepared(build_space("Q2")), 2)}), (Comessatti{0, 2, 0}));
    EXPECT_EQ(comessatti_decompose(InvolutionModule{cohomology_involution(prepared(build_space("S2xS2-iii")), 2)}),
              (Comessatti{1, 1, 0}));
    EXPECT_EQ(comessatti_decompose(InvolutionModule{cohomology_involution(prepared(build_space("S2xS2-swap")), 2)}),
              (Comessatti{0, 0, 1}));
}

TEST(ReductionCokernel, SmallCases) {
    EXPECT_EQ(reduction_cokernel_dim(sphere(2, 2)), 0);
    EXPECT_EQ(reduction_cokernel_dim(sphere(2, 1)), 0);
    // Trivial action: H^2_G(X; Z(1)) = 0 against H^2(X/G; Z/2) = Z/2.
    EXPECT_EQ(reduction_cokernel_dim(sphere(0, 3)), 1);
}

TEST(ReductionCokernel, RepeatedCallsAgree) {
    SimplicialGComplex y = prepared(sphere(2, 2));
    for (int i = 0; i < 50; ++i) ASSERT_EQ(reduction_cokernel_dim(y), 0) << "call " << i;
}
