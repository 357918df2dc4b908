#include <gtest/gtest.h>

#include <random>
#include <set>

#include "equiwitt/catalog.hpp"
#include "equiwitt/cohom.hpp"
#include "equiwitt/witt.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace equiwitt;

namespace {

FGAbGroup g(const char* s) { return FGAbGroup::parse(s); }

// Mod 2 Betti numbers of a complex with trivial action, straight from ordinary cohomology.
std::vector<int> betti2(const SimplicialGComplex& x) {
    std::vector<int> b;
    for (int q = 0; q <= x.dim(); ++q)
        b.push_back(test::f2_count(ordinary_cohomology(x, standard_gmodule("Z/2"), q)));
    return b;
}

}  // namespace

TEST(Spheres, WittGroupsOfCrossPolytopes) {
    struct Row {
        int p, q;
        const char* wr;
    };
    for (auto r : std::vector<Row>{{0, 2, "Z (+) Z/2"}, {1, 1, "Z^2"}, {2, 0, "Z/4"}, {0, 3, "Z (+) Z/2"},
                                   {1, 2, "Z"}, {2, 1, "Z^2 (+) Z/2"}, {3, 0, "Z/4"}, {1, 3, "Z"},
                                   {2, 2, "Z"}, {2, 3, "Z"}}) {
        WittResult w = wr(sphere(r.p, r.q));
        ASSERT_TRUE(w.resolved) << r.p << "," << r.q;
        EXPECT_EQ(w.group, g(r.wr)) << "S(" << r.p << "," << r.q << ") via " << w.provenance;
    }
}

TEST(Spheres, SubdivisionDoesNotChangeWitt) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 0}, {1, 2}, {2, 1}, {3, 0}})
        EXPECT_EQ(wr(sphere(p, q)).group, wr(barycentric_subdivide(sphere(p, q))).group) << p << "," << q;
}

TEST(Torus, ReflectionOnOneFactor) {
    EXPECT_EQ(wr(build_space("torus-SxS11")).group, g("Z^2 (+) Z/2"));
    FundamentalReport r = fundamental_check(sphere(0, 2));
    EXPECT_EQ(r.verdict, "not equal");
    EXPECT_EQ(r.lhs, "Z^2 (+) Z/2");
    EXPECT_EQ(FGAbGroup::parse(r.rhs), g("Z^2 (+) (Z/2)^2"));
}

TEST(Torus, FundamentalCheckEqualWhenItShould) {
    // WR(S11 x S11) = Z^4 = WR(S11)^2
    EXPECT_EQ(fundamental_check(sphere(1, 1)).verdict, "equal");
}

TEST(Formulas, GraphAndSurface) {
    EXPECT_EQ(graph_formula(2, 0, false), g("Z^2"));
    EXPECT_EQ(graph_formula(0, 1, true), g("Z/4"));
    EXPECT_EQ(graph_formula(0, 1, false), g("Z/4 (+) Z/2"));
    EXPECT_EQ(surface_formula(3, 2), g("Z^3 (+) (Z/2)^2"));
    EXPECT_EQ(surface_formula(0, 3), g("Z/4 (+) (Z/2)^2"));
    EXPECT_THROW(surface_formula(0, 0), InputError);
    EXPECT_EQ(g_times_y_formula(2, g("Z/2")), g("(Z/2)^4"));
}

TEST(Formulas, SujathaExample) {
    EXPECT_EQ(sujatha_witt(4, 3, 4, 0), g("Z^4 (+) (Z/4)^3 (+) Z/2"));
    EXPECT_EQ(sujatha_witt(1, 0, 0, 0), g("Z"));
    EXPECT_EQ(sujatha_witt(2, 2, 0, 1), g("Z^2 (+) Z/4"));
    EXPECT_THROW(sujatha_witt(0, 1, 1, 0), InputError);
    EXPECT_THROW(sujatha_witt(1, 1, 0, 2), InputError);
    EXPECT_THROW(sujatha_witt(1, 3, 0, 0), InputError);
}

TEST(Formulas, SujathaOrderIsTwoToTheJPlusK) {
    for (int j = 0; j <= 5; ++j)
        for (int k = 0; k <= 5; ++k)
            for (int l = 0; l <= j; ++l) {
                if (k + 2 * l < j) continue;
                FGAbGroup w = sujatha_witt(2, j, k, l);
                EXPECT_EQ(w.torsion_order(), Integer(1) << (j + k)) << j << k << l;
                EXPECT_EQ(w.free_rank(), 2);
            }
}

TEST(Formulas, NoRealPoints) {
    EXPECT_EQ(w_no_real_points(1, 0).group, g("Z/4"));
    for (int genus = 0; genus <= 5; ++genus) {
        WittResult r = w_no_real_points(genus + 1, 0);
        ASSERT_TRUE(r.resolved);
        EXPECT_EQ(r.group, direct_sum(FGAbGroup::cyclic(4), FGAbGroup::elementary(genus)));
    }
    WittResult open = w_no_real_points(2, 1);
    EXPECT_FALSE(open.resolved);
    EXPECT_EQ(open.sub, g("Z/2"));
    EXPECT_EQ(open.quot, g("Z/4 (+) Z/2"));
    EXPECT_EQ(w_no_real_points(1, 1, NoRealPointsResolution{0, 8}).group, g("Z/8"));
    EXPECT_THROW(w_no_real_points(0, 0), InputError);
    EXPECT_THROW(w_no_real_points(1, 0, NoRealPointsResolution{1, 4}), InputError);
    EXPECT_THROW(w_no_real_points(1, 1, NoRealPointsResolution{0, 16}), InputError);
}

TEST(Formulas, RuledSurfaceTable) {
    for (auto [name, want] : std::vector<std::pair<std::string, const char*>>{
             {"ruled-CxQ1-g2-nu0", "Z/4 (+) (Z/2)^2"},
             {"ruled-CxQ1-g1-nu2", "Z/2 (+) (Z/4)^2"},
             {"ruled-CxQ1-g2-nu3", "(Z/2)^2 (+) (Z/4)^3"},
             {"rational-no-real-points", "Z/4"}}) {
        WittResult r = evaluate(name);
        ASSERT_TRUE(r.resolved) << name;
        EXPECT_EQ(r.group, g(want)) << name;
    }
}

TEST(Formulas, CompareWAndWR) {
    Comparison c = compare_w_wr(2, g("Z/2"), g("0"));
    EXPECT_EQ(c.kernel, g("(Z/2)^2"));
    EXPECT_EQ(c.cokernel, g("Z/2"));
    EXPECT_THROW(compare_w_wr(-1, {}, {}), InputError);
}

TEST(Formulas, Trichotomy) {
    EXPECT_EQ(trichotomy(test::involution_block(0, 2, 0)), g("Z/4"));
    EXPECT_EQ(trichotomy(test::involution_block(0, 0, 1)), g("Z/4 (+) Z/2"));
    EXPECT_EQ(trichotomy(test::involution_block(1, 1, 0)), g("Z/4 (+) Z/2"));
    EXPECT_FALSE(trichotomy(test::involution_block(2, 0, 0)).has_value());
    EXPECT_FALSE(trichotomy(test::involution_block(1, 1, 1)).has_value());
}

TEST(SignatureLattice, MembershipAndRho) {
    SignatureLattice l = signature_lattice(3);
    EXPECT_TRUE(l.contains({1, 3, -1}));
    EXPECT_FALSE(l.contains({1, 2, 1}));
    EXPECT_FALSE(l.contains({1, 1}));
    for (long long r = -3; r <= 3; ++r) EXPECT_TRUE(l.contains(rho(r, {0, 1, -2})));
    EXPECT_EQ(l.kernel_generator(), (std::vector<long long>{2, -1, -1, -1}));
    EXPECT_THROW(signature_lattice(0), InputError);
}

TEST(PicG, SignMap) {
    PicG a = pic_g(sphere(1, 1));
    EXPECT_EQ(a.group, g("(Z/2)^2"));
    EXPECT_TRUE(a.sign_onto());
    PicG b = pic_g(sphere(2, 1));
    EXPECT_EQ(b.group, g("Z/2"));
    EXPECT_EQ(b.nu, 2);
    EXPECT_FALSE(b.sign_onto());
    PicG p = pic_g(SimplicialGComplex::with_trivial_action({"p"}, {{0}}));
    EXPECT_EQ(p.group, g("Z/2"));
    EXPECT_TRUE(p.sign_onto());
}

TEST(Evaluators, HypothesesAreChecked) {
    EXPECT_THROW(wr_dim1(sphere(1, 2)), InputError);
    EXPECT_THROW(wr_surface(sphere(2, 1)), InputError);
    EXPECT_THROW(wr_fixed4(sphere(3, 0)), InputError);
    EXPECT_THROW(wr_free4(sphere(2, 1)), InputError);
    EXPECT_THROW(wr_two_sphere(sphere(1, 2)), InputError);
    EXPECT_THROW(ko_low_dim(sphere(1, 1)), InputError);
    EXPECT_THROW(wr_dim1(build_space("S11+S11")), InputError);
}

TEST(Evaluators, KOOfTrivialSpaces) {
    EXPECT_EQ(ko_low_dim(sphere(0, 3)), g("Z (+) Z/2"));
    EXPECT_EQ(ko_low_dim(test::real_projective_plane()), g("Z (+) Z/4"));
    EXPECT_EQ(ko_low_dim(sphere(0, 2)), g("Z (+) Z/2"));
}

TEST(Evaluators, DisjointUnionIsAdditive) {
    EXPECT_EQ(wr(build_space("S11+S11")).group, direct_sum(wr(sphere(1, 1)).group, wr(sphere(1, 1)).group));
    SimplicialGComplex u = disjoint_union(sphere(2, 0), sphere(1, 2));
    EXPECT_EQ(wr(u).group, g("Z (+) Z/4"));
}

TEST(Evaluators, GTimesYUsesKunneth) {
    SimplicialGComplex y = product(test::real_projective_plane(), sphere(0, 2));
    EXPECT_EQ(hbar2(y), g("Z/2"));
    // Kunneth for H^1(Y; Z/2) from the factors.
    auto a = betti2(test::real_projective_plane()), b = betti2(sphere(0, 2));
    int h1 = a[0] * b[1] + a[1] * b[0];
    EXPECT_EQ(h1, 2);
    FGAbGroup expect = direct_sum(FGAbGroup::elementary(1 + h1), g("Z/2"));
    EXPECT_EQ(wr_g_times_y(y), expect);
    EXPECT_EQ(expect, g("(Z/2)^4"));
}

TEST(Evaluators, TrichotomyOnSimplicialModels) {
    EXPECT_EQ(wr(build_space("Q2")).group, g("Z/4"));
    EXPECT_EQ(wr(build_space("S2xS2-i")).group, g("Z/4"));
    EXPECT_EQ(wr(build_space("S2xS2-iii")).group, g("Z/4 (+) Z/2"));
}

TEST(Oracle, LowDimensionalFormulasMatchBredonData) {
    int checked = 0;
    for (auto& e : catalog()) {
        if (e.pathway != Pathway::simplicial) continue;
        SimplicialGComplex x = build_space(e.name);
        if (x.dim() > 2) continue;
        for (auto& piece : components_of(x)) {
            FGAbGroup formula;
            try {
                formula = piece.dim() <= 1 ? wr_dim1(piece) : wr_surface(piece);
            } catch (const InputError&) {
                continue;  // outside the formulas' hypotheses
            }
            test::BredonOracle o = test::bredon_oracle(piece);
            EXPECT_EQ(formula, o.group) << e.name << ": nu " << o.nu << " coker1 " << o.coker1 << " coker2 " << o.coker2;
            ++checked;
        }
    }
    EXPECT_GE(checked, 6);
}

TEST(Oracle, RandomGraphs) {
    // Reflection-symmetric graphs: two copies of a random tree-plus-edges
    // glued along fixed vertices, plus free swapped pairs.
    std::mt19937 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);  // vertices per sheet
        int fixed = static_cast<int>(rng() % 3);
        std::vector<std::string> names;
        std::vector<int> inv;
        for (int i = 0; i < fixed; ++i) {
            names.push_back("f" + std::to_string(i));
            inv.push_back(i);
        }
        for (int i = 0; i < n; ++i) {
            names.push_back("a" + std::to_string(i));
            names.push_back("b" + std::to_string(i));
            int ai = fixed + 2 * i;
            inv.push_back(ai + 1);
            inv.push_back(ai);
        }
        auto sheet = [&](int i, int s) { return fixed + 2 * i + s; };
        std::set<std::pair<int, int>> edges;
        auto add = [&](int u, int v) {
            if (u == v) return;
            edges.insert({std::min(u, v), std::max(u, v)});
            int su = inv[static_cast<std::size_t>(u)], sv = inv[static_cast<std::size_t>(v)];
            if (su != sv) edges.insert({std::min(su, sv), std::max(su, sv)});
        };
        for (int i = 1; i < n; ++i) add(sheet(i, 0), sheet(static_cast<int>(rng() % static_cast<unsigned>(i)), 0));
        for (int f = 0; f < fixed; ++f) add(f, sheet(static_cast<int>(rng() % static_cast<unsigned>(n)), 0));
        int extra = static_cast<int>(rng() % 3);
        for (int k = 0; k < extra; ++k) add(sheet(static_cast<int>(rng() % n), 0), sheet(static_cast<int>(rng() % n), static_cast<int>(rng() % 2)));
        std::vector<Simplex> maximal;
        for (auto [u, v] : edges) maximal.push_back({u, v});
        SimplicialGComplex x(names, inv, maximal);
        if (connected_components(x).count != 1) continue;
        // No edge may be flipped onto itself without a fixed midpoint; prepared() subdivides.
        FGAbGroup formula = wr_dim1(x);
        EXPECT_EQ(formula, test::bredon_oracle(x).group) << x.to_json();
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(Json, WittResultRoundTrip) {
    WittResult w = w_no_real_points(2, 1);
    EXPECT_EQ(WittResult::from_json(w.to_json()), w);
    WittResult r = wr(sphere(2, 1));
    EXPECT_EQ(WittResult::from_json(r.to_json()), r);
    EXPECT_THROW(WittResult::from_json("[]"), InputError);
}

TEST(Json, InvariantsRoundTrip) {
    AbstractInvariants a = build_invariants("Q3");
    AbstractInvariants b = AbstractInvariants::from_json(a.to_json());
    EXPECT_EQ(a.to_json(), b.to_json());
    EXPECT_EQ(wr(a), wr(b));
}

TEST(Abstract, PathwayRules) {
    AbstractInvariants a;
    a.dim = 8;
    EXPECT_THROW(wr(a), InputError);
    a.dim = 4;
    a.nu = 1;
    EXPECT_THROW(wr(a), InputError);  // needs two_h3
    a.two_h3 = g("0");
    WittResult r = wr(a);
    ASSERT_TRUE(r.resolved);
    EXPECT_EQ(r.group, g("Z"));
    a.dim = 6;
    EXPECT_THROW(wr(a), InputError);  // real points above dimension 4
}
